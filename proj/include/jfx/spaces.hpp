#pragma once
// 1-symmetric sequence spaces over finitely supported real vectors.
//
// Two families are supported:
//   * lp spaces, 1 < p < infinity:          ||v|| = (sum |v_i|^p)^(1/p)
//   * Lorentz spaces d(w, p), p >= 1:       ||v|| = (sum_n w_n (v*_n)^p)^(1/p)
// where v* is the decreasing rearrangement of |v| and w_1 = 1 >= w_2 >= ... > 0.
// The default Lorentz weight sequence is harmonic, w_n = 1/n.
//
// All norms are evaluated on the decreasing rearrangement of absolute values;
// this makes permutation invariance and 1-unconditionality hold bit-for-bit,
// not merely up to rounding.

#include "rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace jfx {

enum class SpaceKind { lp, lorentz };

/// Descriptor of a concrete 1-symmetric sequence space.
///
/// Construct through SymmetricSpace::lp / SymmetricSpace::lorentz or by
/// parsing a descriptor string ("lp:2", "lorentz:p=2,w=harmonic",
/// "lorentz:p=1,w=1,1/2,1/4").
struct SymmetricSpace {
    SpaceKind kind = SpaceKind::lp;
    double p = 2.0;
    /// Explicit Lorentz weights; empty means the harmonic rule w_n = 1/n.
    std::vector<double> explicit_weights;

    static SymmetricSpace lp(double p) {
        if (!(p > 1.0) || !std::isfinite(p))
            throw std::invalid_argument("lp space requires 1 < p < infinity, got p=" +
                                        std::to_string(p));
        SymmetricSpace s;
        s.kind = SpaceKind::lp;
        s.p = p;
        return s;
    }

    static SymmetricSpace lorentz(double p, std::vector<double> weights = {}) {
        if (!(p >= 1.0) || !std::isfinite(p))
            throw std::invalid_argument("lorentz space requires p >= 1, got p=" +
                                        std::to_string(p));
        if (!weights.empty()) {
            if (weights.front() != 1.0)
                throw std::invalid_argument("lorentz weights must start with w_1 = 1");
            for (size_t i = 0; i < weights.size(); ++i) {
                if (!(weights[i] > 0.0))
                    throw std::invalid_argument("lorentz weights must be positive");
                if (i > 0 && weights[i] > weights[i - 1])
                    throw std::invalid_argument("lorentz weights must be nonincreasing");
            }
        }
        SymmetricSpace s;
        s.kind = SpaceKind::lorentz;
        s.p = p;
        s.explicit_weights = std::move(weights);
        return s;
    }

    bool is_lp() const { return kind == SpaceKind::lp; }
    bool harmonic() const { return kind == SpaceKind::lorentz && explicit_weights.empty(); }

    /// w_n for n = 1, 2, ...  (Lorentz spaces only.)
    double weight(size_t n) const {
        if (kind != SpaceKind::lorentz)
            throw std::logic_error("weight() is only defined for lorentz spaces");
        if (n == 0)
            throw std::invalid_argument("weights are indexed from 1");
        if (explicit_weights.empty())
            return 1.0 / static_cast<double>(n);
        if (n > explicit_weights.size())
            throw std::invalid_argument("explicit lorentz weight list has " +
                                        std::to_string(explicit_weights.size()) +
                                        " entries but w_" + std::to_string(n) +
                                        " was requested");
        return explicit_weights[n - 1];
    }

    /// Conjugate exponent q with 1/p + 1/q = 1 (lp spaces only).
    double conjugate() const {
        if (kind != SpaceKind::lp)
            throw std::logic_error("conjugate exponent is only defined for lp spaces");
        return p / (p - 1.0);
    }

    std::string descriptor() const;
};

/// Parses the descriptor grammar:
///   "lp:<p>"
///   "lorentz:p=<p>,w=harmonic"
///   "lorentz:p=<p>,w=<v1>,<v2>,..."   (rational or decimal literals)
inline SymmetricSpace parse_space(std::string_view text) {
    auto fail = [&](const std::string& why) {
        return std::invalid_argument("bad space descriptor '" + std::string(text) + "': " + why);
    };
    if (text.rfind("lp:", 0) == 0) {
        Rational p;
        try {
            p = parse_rational(text.substr(3));
        } catch (const std::invalid_argument&) {
            throw fail("expected lp:<p>");
        }
        return SymmetricSpace::lp(to_double(p));
    }
    if (text.rfind("lorentz:", 0) == 0) {
        std::string_view rest = text.substr(8);
        if (rest.rfind("p=", 0) != 0)
            throw fail("expected lorentz:p=<p>,w=...");
        auto comma = rest.find(',');
        if (comma == std::string_view::npos)
            throw fail("missing w= clause");
        double p;
        try {
            p = to_double(parse_rational(rest.substr(2, comma - 2)));
        } catch (const std::invalid_argument&) {
            throw fail("malformed p value");
        }
        std::string_view wpart = rest.substr(comma + 1);
        if (wpart.rfind("w=", 0) != 0)
            throw fail("expected w=harmonic or w=<comma separated list>");
        std::string_view wlist = wpart.substr(2);
        if (wlist == "harmonic")
            return SymmetricSpace::lorentz(p);
        std::vector<double> weights;
        size_t pos = 0;
        while (pos <= wlist.size()) {
            auto next = wlist.find(',', pos);
            if (next == std::string_view::npos)
                next = wlist.size();
            try {
                weights.push_back(to_double(parse_rational(wlist.substr(pos, next - pos))));
            } catch (const std::invalid_argument&) {
                throw fail("malformed weight literal");
            }
            pos = next + 1;
        }
        return SymmetricSpace::lorentz(p, std::move(weights));
    }
    throw fail("unknown space family (expected lp:... or lorentz:...)");
}

inline std::string SymmetricSpace::descriptor() const {
    auto fmt = [](double x) {
        std::ostringstream os;
        os << x;
        return os.str();
    };
    if (kind == SpaceKind::lp)
        return "lp:" + fmt(p);
    std::string out = "lorentz:p=" + fmt(p) + ",w=";
    if (explicit_weights.empty())
        return out + "harmonic";
    for (size_t i = 0; i < explicit_weights.size(); ++i)
        out += (i ? "," : "") + fmt(explicit_weights[i]);
    return out;
}

namespace detail {

/// Decreasing rearrangement of absolute values, zeros dropped.
inline std::vector<double> abs_decreasing(std::span<const double> v) {
    std::vector<double> a;
    a.reserve(v.size());
    for (double x : v)
        if (x != 0.0)
            a.push_back(std::abs(x));
    std::sort(a.begin(), a.end(), std::greater<double>());
    return a;
}

inline double pow_p(double x, double p) {
    if (p == 2.0)
        return x * x;
    return std::pow(x, p);
}

}  // namespace detail

/// ||v||_X.  The empty vector (and the zero vector) has norm 0.
inline double norm(const SymmetricSpace& space, std::span<const double> v) {
    std::vector<double> a = detail::abs_decreasing(v);
    if (a.empty())
        return 0.0;
    double s = 0.0;
    if (space.kind == SpaceKind::lp) {
        // Sum smallest-first for accuracy; the sorted order fixes the
        // summation order independently of the input permutation.
        for (size_t i = a.size(); i-- > 0;)
            s += detail::pow_p(a[i], space.p);
        return std::pow(s, 1.0 / space.p);
    }
    for (size_t i = a.size(); i-- > 0;)
        s += space.weight(i + 1) * detail::pow_p(a[i], space.p);
    return std::pow(s, 1.0 / space.p);
}

inline double norm(const SymmetricSpace& space, const std::vector<double>& v) {
    return norm(space, std::span<const double>(v));
}

/// || e_1 + ... + e_n ||_X, the fundamental sequence of the space.
/// lp: n^(1/p).  Lorentz: (w_1 + ... + w_n)^(1/p).  n = 0 gives 0.
inline double fundamental(const SymmetricSpace& space, size_t n) {
    if (n == 0)
        return 0.0;
    if (space.kind == SpaceKind::lp)
        return std::pow(static_cast<double>(n), 1.0 / space.p);
    double s = 0.0;
    for (size_t i = n; i >= 1; --i)
        s += space.weight(i);
    return std::pow(s, 1.0 / space.p);
}

/// Dual norm on coefficient vectors.  Supported for lp spaces only, where the
/// dual is lq with 1/p + 1/q = 1; Lorentz duals are outside the implemented
/// surface and are rejected loudly.
inline double dual_norm(const SymmetricSpace& space, std::span<const double> v) {
    if (space.kind != SpaceKind::lp)
        throw std::logic_error(
            "dual_norm: only lp duals are implemented; Lorentz duals are unsupported");
    std::vector<double> a = detail::abs_decreasing(v);
    if (a.empty())
        return 0.0;
    double q = space.conjugate();
    double s = 0.0;
    for (size_t i = a.size(); i-- > 0;)
        s += detail::pow_p(a[i], q);
    return std::pow(s, 1.0 / q);
}

inline double dual_norm(const SymmetricSpace& space, const std::vector<double>& v) {
    return dual_norm(space, std::span<const double>(v));
}

/// Norming functional for a nonzero v in lp: coefficients b with
/// ||b||_q = 1 and sum b_i v_i = ||v||_p, namely
/// b_i = sign(v_i) |v_i|^(p-1) / ||v||_p^(p-1).
inline std::vector<double> norming_coefficients(const SymmetricSpace& space,
                                                std::span<const double> v) {
    if (space.kind != SpaceKind::lp)
        throw std::logic_error(
            "norming_coefficients: only implemented for lp spaces");
    double nv = norm(space, v);
    if (nv == 0.0)
        throw std::invalid_argument("norming_coefficients: zero vector has no norming functional");
    std::vector<double> b(v.size());
    double scale = std::pow(nv, space.p - 1.0);
    for (size_t i = 0; i < v.size(); ++i) {
        double mag = std::pow(std::abs(v[i]), space.p - 1.0) / scale;
        b[i] = v[i] < 0.0 ? -mag : (v[i] > 0.0 ? mag : 0.0);
    }
    return b;
}

/// Sums v over the blocks of a partition of {0, ..., v.size()-1}.
/// Every index must appear in exactly one block.  For nonnegative v and a
/// 1-symmetric norm, aggregation never decreases the norm; that inequality is
/// exercised by the verification suite rather than assumed here.
inline std::vector<double> aggregate(std::span<const double> v,
                                     const std::vector<std::vector<size_t>>& blocks) {
    std::vector<char> seen(v.size(), 0);
    std::vector<double> out;
    out.reserve(blocks.size());
    for (const auto& block : blocks) {
        if (block.empty())
            throw std::invalid_argument("aggregate: empty block");
        double s = 0.0;
        for (size_t idx : block) {
            if (idx >= v.size())
                throw std::invalid_argument("aggregate: block index " + std::to_string(idx) +
                                            " out of range");
            if (seen[idx])
                throw std::invalid_argument("aggregate: index " + std::to_string(idx) +
                                            " appears in two blocks");
            seen[idx] = 1;
            s += v[idx];
        }
        out.push_back(s);
    }
    for (size_t i = 0; i < seen.size(); ++i)
        if (!seen[i])
            throw std::invalid_argument("aggregate: index " + std::to_string(i) +
                                        " is not covered by any block");
    return out;
}

}  // namespace jfx
