#pragma once
// Step functions on (0, 1) with exact rational breakpoints and values, plus
// the classical generator families used throughout the test and verification
// suites: Rademacher functions, the Haar system, concentrating Haar-type
// sequences, and normalized block-pair sequences.
//
// A step function is an equivalence class modulo null sets; values at the
// breakpoints themselves never influence any computed quantity (everything
// goes through integrals).

#include "rational.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace jfx {

/// Piecewise constant function on (0, 1):
/// value values[i] on the open cell (breakpoints[i], breakpoints[i+1]).
struct StepFunction1D {
    std::vector<Rational> breakpoints;  // 0 = b_0 < b_1 < ... < b_n = 1
    std::vector<Rational> values;       // n cell values

    StepFunction1D() : breakpoints{Rational(0), Rational(1)}, values{Rational(0)} {}

    StepFunction1D(std::vector<Rational> bps, std::vector<Rational> vals)
        : breakpoints(std::move(bps)), values(std::move(vals)) {
        validate();
    }

    void validate() const {
        if (breakpoints.size() < 2)
            throw std::invalid_argument("step function needs at least two breakpoints");
        if (values.size() + 1 != breakpoints.size())
            throw std::invalid_argument(
                "step function needs exactly one value per cell: got " +
                std::to_string(values.size()) + " values for " +
                std::to_string(breakpoints.size()) + " breakpoints");
        if (breakpoints.front() != 0 || breakpoints.back() != 1)
            throw std::invalid_argument("breakpoints must start at 0 and end at 1");
        for (size_t i = 0; i + 1 < breakpoints.size(); ++i)
            if (!(breakpoints[i] < breakpoints[i + 1]))
                throw std::invalid_argument("breakpoints must be strictly increasing");
    }

    size_t pieces() const { return values.size(); }

    /// Exact integral over (a, b), 0 <= a <= b <= 1.
    Rational integral(const Rational& a, const Rational& b) const {
        if (a < 0 || b > 1 || a > b)
            throw std::invalid_argument("integral: region must satisfy 0 <= a <= b <= 1");
        Rational total(0);
        for (size_t i = 0; i < values.size(); ++i) {
            const Rational lo = std::max(breakpoints[i], a);
            const Rational hi = std::min(breakpoints[i + 1], b);
            if (lo < hi)
                total += values[i] * (hi - lo);
        }
        return total;
    }

    Rational integral() const { return integral(Rational(0), Rational(1)); }

    /// Exact integrals from 0 to each breakpoint; size pieces() + 1.
    std::vector<Rational> prefix_integrals() const {
        std::vector<Rational> pre;
        pre.reserve(breakpoints.size());
        Rational acc(0);
        pre.push_back(acc);
        for (size_t i = 0; i < values.size(); ++i) {
            acc += values[i] * (breakpoints[i + 1] - breakpoints[i]);
            pre.push_back(acc);
        }
        return pre;
    }

    /// integral of |f| over (0,1).
    Rational l1_norm() const {
        Rational total(0);
        for (size_t i = 0; i < values.size(); ++i)
            total += rational_abs(values[i]) * (breakpoints[i + 1] - breakpoints[i]);
        return total;
    }

    Rational sup_abs() const {
        Rational m(0);
        for (const auto& v : values)
            m = std::max(m, rational_abs(v));
        return m;
    }

    bool nonnegative() const {
        for (const auto& v : values)
            if (v < 0)
                return false;
        return true;
    }
};

/// Finite partition of [0, 1]: points[0] = 0 < points[1] < ... < points[m] = 1.
struct Partition1D {
    std::vector<Rational> points;

    Partition1D() : points{Rational(0), Rational(1)} {}

    explicit Partition1D(std::vector<Rational> pts) : points(std::move(pts)) { validate(); }

    void validate() const {
        if (points.size() < 2)
            throw std::invalid_argument("partition needs at least the two endpoints");
        if (points.front() != 0 || points.back() != 1)
            throw std::invalid_argument("partition must run from 0 to 1");
        for (size_t i = 0; i + 1 < points.size(); ++i)
            if (!(points[i] < points[i + 1]))
                throw std::invalid_argument("partition points must be strictly increasing");
    }

    size_t cells() const { return points.size() - 1; }

    /// Largest cell width.
    Rational mesh() const {
        Rational m(0);
        for (size_t i = 0; i + 1 < points.size(); ++i) {
            const Rational w = points[i + 1] - points[i];
            m = std::max(m, w);
        }
        return m;
    }
};

/// sum_k coeffs[k] * fs[k], on the merged breakpoint grid.
inline StepFunction1D linear_combination(const std::vector<Rational>& coeffs,
                                         const std::vector<StepFunction1D>& fs) {
    if (coeffs.size() != fs.size())
        throw std::invalid_argument("linear_combination: coefficient/function count mismatch");
    std::vector<Rational> grid{Rational(0), Rational(1)};
    for (const auto& f : fs)
        grid.insert(grid.end(), f.breakpoints.begin(), f.breakpoints.end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    std::vector<Rational> vals(grid.size() - 1, Rational(0));
    for (size_t k = 0; k < fs.size(); ++k) {
        if (coeffs[k] == 0)
            continue;
        const auto& f = fs[k];
        size_t piece = 0;
        for (size_t c = 0; c + 1 < grid.size(); ++c) {
            while (f.breakpoints[piece + 1] <= grid[c])
                ++piece;
            vals[c] += coeffs[k] * f.values[piece];
        }
    }
    return StepFunction1D(std::move(grid), std::move(vals));
}

/// Rademacher function r_n: alternates +1 / -1 on the 2^n dyadic cells of
/// level n, starting with +1.  r_0 is the constant 1.
inline StepFunction1D rademacher(unsigned n) {
    if (n > 24)
        throw std::invalid_argument("rademacher: index too large (2^n pieces)");
    const uint64_t cells = uint64_t(1) << n;
    std::vector<Rational> bps;
    bps.reserve(cells + 1);
    std::vector<Rational> vals;
    vals.reserve(cells);
    for (uint64_t i = 0; i <= cells; ++i)
        bps.emplace_back(BigInt(i), BigInt(cells));
    for (uint64_t i = 0; i < cells; ++i)
        vals.emplace_back((i % 2 == 0) ? 1 : -1);
    return StepFunction1D(std::move(bps), std::move(vals));
}

/// Haar system in its classical enumeration:
///   h_1 = 1 on (0, 1);
///   h_{2^k + i} = +1 on ((2i-2)/2^{k+1}, (2i-1)/2^{k+1}),
///                 -1 on ((2i-1)/2^{k+1}, 2i/2^{k+1}),
///                  0 elsewhere,          1 <= i <= 2^k, k = 0, 1, ...
/// So h_2 is +1/-1 on the halves of (0,1), h_3 lives on (0, 1/2),
/// h_4 on (1/2, 1), h_5 on (0, 1/4), and so on.
inline StepFunction1D haar(uint64_t index) {
    if (index == 0)
        throw std::invalid_argument("haar: indices start at 1");
    if (index == 1)
        return StepFunction1D({Rational(0), Rational(1)}, {Rational(1)});
    if (index > (uint64_t(1) << 40))
        throw std::invalid_argument("haar: index too large");
    unsigned k = 0;
    while ((uint64_t(1) << (k + 1)) < index)
        ++k;
    const uint64_t i = index - (uint64_t(1) << k);  // 1 <= i <= 2^k
    const BigInt den = BigInt(1) << (k + 1);
    const Rational left(BigInt(2 * i - 2), den);
    const Rational mid(BigInt(2 * i - 1), den);
    const Rational right(BigInt(2 * i), den);

    std::vector<Rational> bps;
    std::vector<Rational> vals;
    if (left != 0) {
        bps.push_back(Rational(0));
        vals.emplace_back(0);
    }
    bps.push_back(left);
    vals.emplace_back(1);
    bps.push_back(mid);
    vals.emplace_back(-1);
    bps.push_back(right);
    if (right != 1) {
        vals.emplace_back(0);
        bps.push_back(Rational(1));
    }
    return StepFunction1D(std::move(bps), std::move(vals));
}

/// Concentrating Haar-type sequence.  With u_n = 1 / (2^k1 * 8^(n-1)) and
/// b_n defined by b_1 = beta1, b_n = 8 b_{n-1} + 2, the n-th term is
///   x_n = +1 on (b_n u_n, (b_n + 1) u_n),  -1 on ((b_n + 1) u_n, (b_n + 2) u_n).
/// Each x_{n+1} lives inside the positive piece of x_n, and the supports
/// shrink toward the limit point  b0 = (beta1 + 2/7) / 2^k1;  over the fixed
/// interval (beta1 / 2^k1, b0) every term integrates to exactly (2/7) u_n,
/// i.e. 2/7 of the width of its positive piece.
inline std::vector<StepFunction1D> haar_concentrating(uint64_t beta1, unsigned k1,
                                                      size_t count) {
    if (beta1 == 0 || beta1 + 2 > (uint64_t(1) << k1))
        throw std::invalid_argument(
            "haar_concentrating: need 1 <= beta1 and beta1 + 2 <= 2^k1 so the first "
            "term fits inside (0,1)");
    if (count == 0 || count > 24)
        throw std::invalid_argument("haar_concentrating: count must be in 1..24");
    std::vector<StepFunction1D> out;
    out.reserve(count);
    BigInt beta = beta1;
    BigInt den = BigInt(1) << k1;  // 2^k1 * 8^(n-1)
    for (size_t n = 1; n <= count; ++n) {
        const Rational a(beta, den);
        const Rational m(beta + 1, den);
        const Rational b(beta + 2, den);
        std::vector<Rational> bps{Rational(0)};
        std::vector<Rational> vals;
        vals.emplace_back(0);  // (0, a)
        bps.push_back(a);
        vals.emplace_back(1);
        bps.push_back(m);
        vals.emplace_back(-1);
        bps.push_back(b);
        if (b != 1) {
            vals.emplace_back(0);
            bps.push_back(Rational(1));
        }
        out.emplace_back(std::move(bps), std::move(vals));
        beta = 8 * beta + 2;
        den <<= 3;
    }
    return out;
}

/// Limit point of the supports of haar_concentrating(beta1, k1, .).
inline Rational haar_concentrating_limit(uint64_t beta1, unsigned k1) {
    return (Rational(beta1) + Rational(2, 7)) / (BigInt(1) << k1);
}

/// Given successive pairwise disjoint intervals A_1 < A_2 < ... < A_{2m}
/// (as (lo, hi) pairs, equal measure within each pair), returns the
/// normalized generators
///   y_n / |A_{2n-1}|   with   y_n = indicator(A_{2n-1}) - indicator(A_{2n}).
inline std::vector<StepFunction1D> block_pair_sequence(
    const std::vector<std::pair<Rational, Rational>>& intervals) {
    if (intervals.empty() || intervals.size() % 2 != 0)
        throw std::invalid_argument("block_pair_sequence: need a nonzero even number of intervals");
    for (size_t i = 0; i < intervals.size(); ++i) {
        if (intervals[i].first < 0 || intervals[i].second > 1 ||
            !(intervals[i].first < intervals[i].second))
            throw std::invalid_argument("block_pair_sequence: interval " + std::to_string(i) +
                                        " is not a nondegenerate subinterval of [0,1]");
        if (i > 0 && intervals[i].first < intervals[i - 1].second)
            throw std::invalid_argument("block_pair_sequence: intervals must be successive "
                                        "(interval " + std::to_string(i) + " overlaps its predecessor)");
    }
    for (size_t n = 0; 2 * n + 1 < intervals.size(); ++n) {
        const Rational w0 = intervals[2 * n].second - intervals[2 * n].first;
        const Rational w1 = intervals[2 * n + 1].second - intervals[2 * n + 1].first;
        if (w0 != w1)
            throw std::invalid_argument(
                "block_pair_sequence: pair " + std::to_string(n + 1) +
                " has mismatched measures " + jfx::to_string(w0) + " vs " + jfx::to_string(w1));
    }
    std::vector<StepFunction1D> out;
    out.reserve(intervals.size() / 2);
    for (size_t n = 0; n < intervals.size() / 2; ++n) {
        const auto& plus = intervals[2 * n];
        const auto& minus = intervals[2 * n + 1];
        const Rational scale = Rational(1) / (plus.second - plus.first);
        std::vector<Rational> bps{Rational(0)};
        std::vector<Rational> vals;
        auto push_cell = [&](const Rational& to, const Rational& v) {
            if (bps.back() < to) {
                bps.push_back(to);
                vals.push_back(v);
            }
        };
        push_cell(plus.first, Rational(0));
        push_cell(plus.second, scale);
        push_cell(minus.first, Rational(0));
        push_cell(minus.second, -scale);
        push_cell(Rational(1), Rational(0));
        out.emplace_back(std::move(bps), std::move(vals));
    }
    return out;
}

}  // namespace jfx
