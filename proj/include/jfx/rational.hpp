#pragma once
// Exact rational scalars used for breakpoints, cell values and integrals.

#include <boost/multiprecision/cpp_int.hpp>

#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace jfx {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Canonical textual form: "p/q" with q > 0, or just "p" when q == 1.
inline std::string to_string(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

/// Parses "p", "p/q" or a plain decimal such as "-0.125" into an exact rational.
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    if (s.empty())
        throw std::invalid_argument("empty rational literal");
    auto bad = [&] { return std::invalid_argument("malformed rational literal: '" + s + "'"); };
    // Base-10 only: validate the digits and strip leading zeros ourselves so
    // the multiprecision constructor never sees an octal or hex prefix.
    auto parse_int = [&](const std::string& t) {
        size_t pos = 0;
        bool neg = false;
        if (pos < t.size() && (t[pos] == '+' || t[pos] == '-')) {
            neg = t[pos] == '-';
            ++pos;
        }
        if (pos == t.size())
            throw bad();
        for (size_t i = pos; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9')
                throw bad();
        while (pos + 1 < t.size() && t[pos] == '0')
            ++pos;
        BigInt v(t.substr(pos));
        return neg ? BigInt(-v) : v;
    };
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        BigInt num = parse_int(s.substr(0, slash));
        BigInt den = parse_int(s.substr(slash + 1));
        if (den == 0)
            throw std::invalid_argument("zero denominator in rational literal: '" + s + "'");
        return Rational(num, den);
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        BigInt num = parse_int(s.substr(0, dot) + s.substr(dot + 1));
        size_t frac_len = s.size() - dot - 1;
        BigInt den = 1;
        for (size_t i = 0; i < frac_len; ++i)
            den *= 10;
        return Rational(num, den);
    }
    return Rational(parse_int(s));
}

inline Rational rational_abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

inline std::vector<double> to_doubles(const std::vector<Rational>& v) {
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& r : v)
        out.push_back(to_double(r));
    return out;
}

}  // namespace jfx
