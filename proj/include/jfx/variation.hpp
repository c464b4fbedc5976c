#pragma once
// Paths of bounded X-variation.
//
// A SampledPath is a continuous piecewise-linear function on [0,1] with
// rational nodes and values, anchored at f(0) = 0.  For a partition P of
// [0,1] the increment score is
//     alpha(P, f) = || ( f(t_{i+1}) - f(t_i) )_i ||_X
// and the X-variation norm V_X(f) is the supremum over all partitions.  For
// piecewise-linear paths the supremum is attained on subsets of the node set
// (sliding an interior partition point moves the adjacent increments along a
// line, and a norm is convex along lines, so pushing every stray point to a
// node or merging it with a neighbour never decreases the score); vx_norm
// therefore reuses the exact segmentation engines.
//
// The Volterra map V f (t) = integral of f over (0, t) carries a step
// function to a path with the same norm: partitions of the path correspond
// to partitions of the function, with identical score vectors.

#include "partition_search.hpp"
#include "jf_norm.hpp"
#include "step_function.hpp"

#include <algorithm>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace jfx {

/// Continuous piecewise-linear path on [0,1] with f(0) = 0.
struct SampledPath {
    std::vector<Rational> nodes;   // 0 = t_0 < t_1 < ... < t_n = 1
    std::vector<Rational> values;  // f(t_i), with values[0] = 0

    SampledPath()
        : nodes{Rational(0), Rational(1)}, values{Rational(0), Rational(0)} {}

    SampledPath(std::vector<Rational> ts, std::vector<Rational> vs)
        : nodes(std::move(ts)), values(std::move(vs)) {
        validate();
    }

    void validate() const {
        if (nodes.size() < 2 || nodes.size() != values.size())
            throw std::invalid_argument("path needs matching node/value lists with >= 2 entries");
        if (nodes.front() != 0 || nodes.back() != 1)
            throw std::invalid_argument("path nodes must run from 0 to 1");
        if (values.front() != 0)
            throw std::invalid_argument("paths are anchored at f(0) = 0");
        for (size_t i = 0; i + 1 < nodes.size(); ++i)
            if (!(nodes[i] < nodes[i + 1]))
                throw std::invalid_argument("path nodes must be strictly increasing");
    }

    /// Exact value by linear interpolation.
    Rational value_at(const Rational& t) const {
        if (t < 0 || t > 1)
            throw std::invalid_argument("value_at: t must lie in [0,1]");
        size_t lo = 0, hi = nodes.size() - 1;
        while (lo + 1 < hi) {
            size_t mid = (lo + hi) / 2;
            if (nodes[mid] <= t)
                lo = mid;
            else
                hi = mid;
        }
        if (t == nodes[hi])
            return values[hi];
        const Rational w = (t - nodes[lo]) / (nodes[hi] - nodes[lo]);
        return values[lo] + (values[hi] - values[lo]) * w;
    }

    Rational sup_abs() const {
        Rational m(0);
        for (const auto& v : values)
            m = std::max(m, rational_abs(v));
        return m;
    }

    /// Largest |slope| over the segments.
    Rational max_slope() const {
        Rational m(0);
        for (size_t i = 0; i + 1 < nodes.size(); ++i) {
            const Rational s =
                rational_abs((values[i + 1] - values[i]) / (nodes[i + 1] - nodes[i]));
            m = std::max(m, s);
        }
        return m;
    }
};

/// Increment score of a specific partition (points need not be nodes).
inline double alpha(const SymmetricSpace& space, const SampledPath& f, const Partition1D& p) {
    std::vector<double> inc;
    inc.reserve(p.cells());
    for (size_t i = 0; i + 1 < p.points.size(); ++i)
        inc.push_back(to_double(
            Rational(f.value_at(p.points[i + 1]) - f.value_at(p.points[i]))));
    return norm(space, inc);
}

/// V_X(f): exact maximum over partitions through the nodes (which attains the
/// full supremum for piecewise-linear paths; see the header comment).
inline NormCertificate vx_norm(const SymmetricSpace& space, const SampledPath& f,
                               const SearchLimits& limits = {}) {
    detail::StopWatch watch;
    const std::vector<double> vals = to_doubles(f.values);
    SegmentationResult seg = best_segmentation(space, vals, limits);
    NormCertificate cert;
    cert.mode = seg.exact ? CertMode::exact : CertMode::lower_bound;
    cert.stats.nodes = seg.nodes;
    for (size_t idx : seg.cuts)
        cert.partition_points.push_back(f.nodes[idx]);
    std::vector<double> inc;
    inc.reserve(seg.cuts.size() - 1);
    for (size_t r = 0; r + 1 < seg.cuts.size(); ++r)
        inc.push_back(to_double(Rational(f.values[seg.cuts[r + 1]] - f.values[seg.cuts[r]])));
    cert.value = norm(space, inc);
    cert.stats.elapsed_ms = watch.elapsed_ms();
    return cert;
}

/// Volterra map: V f (t) = integral of f over (0, t), an exact piecewise
/// linear path on the breakpoints of f.
inline SampledPath volterra(const StepFunction1D& f) {
    return SampledPath(f.breakpoints, f.prefix_integrals());
}

namespace detail {

/// Best increment score over partitions with all cell widths <= width,
/// points restricted to the nodes of f plus the uniform grid of spacing
/// width/2.  Width feasibility is decided in exact rational arithmetic.
///
/// For lp spaces the width-constrained maximum is computed exactly by the
/// windowed dynamic program at any scale.  For other spaces the exact search
/// is exponential, so it runs only while the candidate set is small; past
/// that, the score falls back to the best of a fixed family of admissible
/// partitions (the full candidate set, its two half-density thinnings, the
/// uniform width-`width` partition, and that partition refined by the path
/// nodes).  Every member has all widths <= width by construction, so the
/// fallback is still a valid lower estimate of the constrained supremum.
inline double modulus_at_scale(const SymmetricSpace& space, const SampledPath& f,
                               const Rational& width, const SearchLimits& limits) {
    const Rational mesh = width / 2;
    std::vector<Rational> cand = f.nodes;
    for (Rational t = mesh; t < 1; t += mesh)
        cand.push_back(t);
    cand.push_back(Rational(1));
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    const size_t n = cand.size();
    if (n > 20000)
        throw std::invalid_argument("modulus: candidate set of " + std::to_string(n) +
                                    " points is too large; increase delta");
    std::vector<double> vals(n);
    for (size_t i = 0; i < n; ++i)
        vals[i] = to_double(f.value_at(cand[i]));
    // window_lo[i] = smallest j with cand[i] - cand[j] <= width
    std::vector<size_t> window_lo(n, 0);
    size_t j = 0;
    for (size_t i = 0; i < n; ++i) {
        while (cand[i] - cand[j] > width)
            ++j;
        window_lo[i] = j;
    }
    if (space.is_lp())
        return best_windowed_segmentation(space, vals, window_lo, limits);
    if (n - 1 <= limits.exhaustive_max_cells) {
        SearchLimits unbounded = limits;
        unbounded.node_budget = ~uint64_t(0);  // tree size <= 2^cells, already capped
        return best_windowed_segmentation(space, vals, window_lo, unbounded);
    }
    auto score = [&](const std::vector<size_t>& idx) {
        std::vector<double> inc;
        inc.reserve(idx.size() - 1);
        for (size_t r = 0; r + 1 < idx.size(); ++r)
            inc.push_back(vals[idx[r + 1]] - vals[idx[r]]);
        return norm(space, inc);
    };
    // Consecutive candidates are at most mesh = width/2 apart, so keeping
    // every second point still keeps all widths <= width.
    std::vector<size_t> all(n);
    for (size_t i = 0; i < n; ++i)
        all[i] = i;
    std::vector<size_t> even, odd;
    for (size_t i = 0; i < n; i += 2)
        even.push_back(i);
    if (even.back() != n - 1)
        even.push_back(n - 1);
    odd.push_back(0);
    for (size_t i = 1; i < n; i += 2)
        odd.push_back(i);
    if (odd.back() != n - 1)
        odd.push_back(n - 1);
    // Uniform partition of width exactly `width` (its points are grid points
    // of the mesh, hence present in the candidate list), plus its refinement
    // by every path node.
    std::vector<size_t> uniform, uniform_nodes;
    {
        size_t pos = 0;
        for (Rational t(0);; t += width) {
            if (t > 1)
                t = 1;
            while (cand[pos] < t)
                ++pos;
            uniform.push_back(pos);
            if (t == 1)
                break;
        }
        std::vector<Rational> merged = f.nodes;
        for (size_t i : uniform)
            merged.push_back(cand[i]);
        std::sort(merged.begin(), merged.end());
        merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
        pos = 0;
        for (const auto& t : merged) {
            while (cand[pos] < t)
                ++pos;
            uniform_nodes.push_back(pos);
        }
    }
    double best = score(all);
    best = std::max(best, score(even));
    best = std::max(best, score(odd));
    best = std::max(best, score(uniform));
    best = std::max(best, score(uniform_nodes));
    return best;
}

}  // namespace detail

/// Variation modulus estimator: a certified lower estimate of
///     sup { alpha(P, f) : every cell of P has width <= delta }.
/// The estimate is the maximum of the constrained searches at every dyadic
/// scale 2^-j <= delta down to 2^-10 (or at the single largest admissible
/// dyadic scale when delta is below that floor).  Taking the maximum over a
/// scale set that only grows with delta makes the estimator nondecreasing in
/// delta by construction, matching the behaviour of the true supremum.
inline double modulus(const SymmetricSpace& space, const SampledPath& f, const Rational& delta,
                      const SearchLimits& limits = {}) {
    if (!(delta > 0) || delta > 1)
        throw std::invalid_argument("modulus: delta must lie in (0, 1]");
    unsigned j0 = 0;
    while (Rational(BigInt(1), BigInt(1) << j0) > delta) {
        ++j0;
        if (j0 > 30)
            throw std::invalid_argument("modulus: delta below 2^-30 is not supported");
    }
    double best = 0.0;
    const unsigned j_last = std::max<unsigned>(j0, 10);
    for (unsigned j = j0; j <= j_last; ++j)
        best = std::max(best,
                        detail::modulus_at_scale(space, f, Rational(BigInt(1), BigInt(1) << j),
                                                 limits));
    return best;
}

struct SplitResult {
    SampledPath bounded;   // g: agrees with f off the exceed regions, chords across them
    SampledPath residual;  // h = f - g, vanishing outside the regions
    /// Exact measure of the closed support of h.
    Rational support_measure;
    /// Maximal open regions where |f| > eps.
    std::vector<std::pair<Rational, Rational>> regions;
};

/// Splits f = g + h with max |g| <= eps and h supported on the regions where
/// |f| exceeds eps.  Nodes are refined by the exact crossing points of the
/// levels +/-eps, g follows f off the regions and runs along the chord
/// across each region (clamped to +/-eps at t = 1 if the path ends above the
/// level), and h is the nodewise difference.
inline SplitResult split(const SampledPath& f, const Rational& eps) {
    if (!(eps > 0))
        throw std::invalid_argument("split: eps must be positive");
    // 1. refine nodes by level crossings
    std::vector<Rational> ts = f.nodes;
    for (size_t i = 0; i + 1 < f.nodes.size(); ++i) {
        for (int sgn : {+1, -1}) {
            const Rational level = sgn * eps;
            const Rational a = f.values[i] - level;
            const Rational b = f.values[i + 1] - level;
            if ((a < 0 && b > 0) || (a > 0 && b < 0)) {
                const Rational t =
                    f.nodes[i] + (f.nodes[i + 1] - f.nodes[i]) * (-a) / (b - a);
                ts.push_back(t);
            }
        }
    }
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    std::vector<Rational> vs;
    vs.reserve(ts.size());
    for (const auto& t : ts)
        vs.push_back(f.value_at(t));
    const size_t n = ts.size();

    // 2. a refined segment exceeds the level iff one endpoint does (no
    //    crossing can hide inside it any more)
    std::vector<char> exceeds(n - 1, 0);
    for (size_t i = 0; i + 1 < n; ++i)
        exceeds[i] = (rational_abs(vs[i]) > eps || rational_abs(vs[i + 1]) > eps) ? 1 : 0;

    SplitResult out;
    std::vector<Rational> g = vs;
    for (size_t i = 0; i + 1 < n;) {
        if (!exceeds[i]) {
            ++i;
            continue;
        }
        size_t j = i;
        while (j + 1 < n && exceeds[j])
            ++j;  // region spans nodes i .. j
        out.regions.emplace_back(ts[i], ts[j]);
        // chord anchors; the right anchor is clamped when the region runs
        // into t = 1 with the path still above the level
        const Rational ga = vs[i];
        Rational gb = vs[j];
        if (gb > eps)
            gb = eps;
        else if (gb < -eps)
            gb = -eps;
        g[j] = gb;
        for (size_t k = i + 1; k < j; ++k)
            g[k] = ga + (gb - ga) * (ts[k] - ts[i]) / (ts[j] - ts[i]);
        i = j;
    }
    std::vector<Rational> h(n);
    for (size_t i = 0; i < n; ++i)
        h[i] = vs[i] - g[i];

    out.support_measure = 0;
    for (size_t i = 0; i + 1 < n; ++i)
        if (h[i] != 0 || h[i + 1] != 0)
            out.support_measure += ts[i + 1] - ts[i];

    out.bounded = SampledPath(ts, std::move(g));
    out.residual = SampledPath(std::move(ts), std::move(h));
    return out;
}

/// Parses a path from CSV rows "t,f(t)" (rational or decimal literals).
/// The first data row must be "0,0" and the last must have t = 1.
inline SampledPath parse_path_csv(std::istream& in) {
    std::vector<Rational> ts, vs;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        // trim whitespace
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos)
            continue;
        const auto last = line.find_last_not_of(" \t\r");
        std::string body = line.substr(first, last - first + 1);
        if (body.empty() || body[0] == '#')
            continue;
        const auto comma = body.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("csv line " + std::to_string(lineno) +
                                        ": expected 't,f(t)'");
        ts.push_back(parse_rational(body.substr(0, comma)));
        vs.push_back(parse_rational(body.substr(comma + 1)));
    }
    if (ts.empty())
        throw std::invalid_argument("csv: no data rows");
    if (ts.front() != 0 || vs.front() != 0)
        throw std::invalid_argument(
            "csv: the first row must be '0,0' (paths are anchored at f(0) = 0)");
    return SampledPath(std::move(ts), std::move(vs));
}

inline SampledPath parse_path_csv(const std::string& text) {
    std::istringstream in(text);
    return parse_path_csv(in);
}

}  // namespace jfx
