#pragma once
// Search engines for the best segmentation of an interval.
//
// Input is a sequence S_0, ..., S_N of prefix values (running integrals of a
// step function, or node values of a path).  A segmentation is a subset
// 0 = j_0 < j_1 < ... < j_m = N; its score is || (S_{j_{r+1}} - S_{j_r})_r ||_X.
// We maximize the score over all 2^(N-1) segmentations.
//
// Three engines, chosen per space and size:
//   * lp spaces: exact O(N^2) dynamic program.  The score's p-th power is a
//     sum of |segment sum|^p terms, one per segment, so the objective is
//     additive over segments and the DP maximizes it exactly.
//   * other spaces, N <= exhaustive cap: direct enumeration of all
//     segmentations by an ascending bitmask over the interior points.
//   * other spaces, larger N: depth-first branch and bound with the pruning
//     bound  ||completed segments||_X + sum of remaining |cell sums|,  sound
//     because ||v||_X <= ||v||_1 for every 1-symmetric space with ||e_1|| = 1.
//     If the node budget runs out the incumbent is reported as a lower bound.
//
// Certificates are deterministic: the DP picks the lexicographically smallest
// optimal cut set, the enumerator keeps the lexicographically smallest among
// ties, and branch and bound keeps the first maximizer in search order.

#include "spaces.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace jfx {

struct SearchLimits {
    /// Bitmask enumeration cap (number of cells) for non-lp spaces.
    size_t exhaustive_max_cells = 22;
    /// Dynamic-program cap for lp spaces.
    size_t dp_max_cells = 16384;
    /// Full-enumeration cap (number of grid cells) for box-family search.
    size_t grid_exact_max_cells = 9;
    /// Node budget for branch and bound.
    uint64_t node_budget = 4'000'000;
    /// When a search cannot be exhausted within the caps, true degrades the
    /// result to a certified lower bound instead of raising an error.
    bool allow_lower_bound = false;
};

struct SegmentationResult {
    double value = 0.0;
    /// Chosen indices into the prefix array, always including 0 and N.
    std::vector<size_t> cuts;
    /// True when the search space was provably exhausted.
    bool exact = true;
    uint64_t nodes = 0;
};

namespace detail {

inline double segments_norm(const SymmetricSpace& space, std::span<const double> prefix,
                            const std::vector<size_t>& cuts) {
    std::vector<double> segs;
    segs.reserve(cuts.size() - 1);
    for (size_t r = 0; r + 1 < cuts.size(); ++r)
        segs.push_back(prefix[cuts[r + 1]] - prefix[cuts[r]]);
    return norm(space, segs);
}

/// Exact maximizer for lp via a suffix dynamic program on the p-th power.
inline SegmentationResult lp_dynamic_program(const SymmetricSpace& space,
                                             std::span<const double> prefix) {
    const size_t N = prefix.size() - 1;
    const double p = space.p;
    std::vector<double> E(N + 1);
    E[N] = 0.0;
    uint64_t nodes = 0;
    for (size_t i = N; i-- > 0;) {
        double best = -1.0;
        for (size_t j = i + 1; j <= N; ++j) {
            const double c = pow_p(std::abs(prefix[j] - prefix[i]), p) + E[j];
            if (c > best)
                best = c;
            ++nodes;
        }
        E[i] = best;
    }
    // Walk forward, always taking the smallest next cut that still attains
    // the optimum; this yields the lexicographically smallest optimal cut set.
    SegmentationResult res;
    res.cuts.push_back(0);
    size_t i = 0;
    while (i < N) {
        size_t next = N;
        for (size_t j = i + 1; j <= N; ++j) {
            if (pow_p(std::abs(prefix[j] - prefix[i]), p) + E[j] == E[i]) {
                next = j;
                break;
            }
        }
        res.cuts.push_back(next);
        i = next;
    }
    res.value = segments_norm(space, prefix, res.cuts);
    res.exact = true;
    res.nodes = nodes;
    return res;
}

/// Plain enumeration of all segmentations via bitmasks over interior points.
inline SegmentationResult enumerate_all(const SymmetricSpace& space,
                                        std::span<const double> prefix) {
    const size_t N = prefix.size() - 1;
    SegmentationResult best;
    best.value = -1.0;
    std::vector<size_t> cuts;
    std::vector<double> segs;
    const uint64_t masks = uint64_t(1) << (N - 1);
    for (uint64_t mask = 0; mask < masks; ++mask) {
        cuts.clear();
        segs.clear();
        cuts.push_back(0);
        for (size_t b = 0; b + 1 < N; ++b)
            if (mask & (uint64_t(1) << b))
                cuts.push_back(b + 1);
        cuts.push_back(N);
        for (size_t r = 0; r + 1 < cuts.size(); ++r)
            segs.push_back(prefix[cuts[r + 1]] - prefix[cuts[r]]);
        const double v = norm(space, segs);
        if (v > best.value || (v == best.value && cuts < best.cuts)) {
            best.value = v;
            best.cuts = cuts;
        }
    }
    best.exact = true;
    best.nodes = masks;
    return best;
}

struct BranchAndBound {
    const SymmetricSpace& space;
    std::span<const double> prefix;
    uint64_t budget;
    std::vector<double> cell_tail;  // cell_tail[i] = sum_{k >= i} |S_{k+1} - S_k|
    std::vector<size_t> stack;
    std::vector<double> completed;
    SegmentationResult best;
    uint64_t nodes = 0;
    bool exhausted = false;

    BranchAndBound(const SymmetricSpace& s, std::span<const double> pre, uint64_t b)
        : space(s), prefix(pre), budget(b) {
        const size_t N = prefix.size() - 1;
        cell_tail.assign(N + 1, 0.0);
        for (size_t i = N; i-- > 0;)
            cell_tail[i] = cell_tail[i + 1] + std::abs(prefix[i + 1] - prefix[i]);
        best.value = -1.0;
    }

    void run() {
        const size_t N = prefix.size() - 1;
        // Seed the incumbent with the two extreme segmentations so pruning has
        // traction immediately and a budget exhaust still returns something valid.
        seed({0, N});
        std::vector<size_t> fine(N + 1);
        for (size_t i = 0; i <= N; ++i)
            fine[i] = i;
        seed(fine);
        stack.push_back(0);
        descend(1, 0);
        best.exact = !exhausted;
        best.nodes = nodes;
    }

    void seed(std::vector<size_t> cuts) {
        const double v = segments_norm(space, prefix, cuts);
        if (v > best.value) {
            best.value = v;
            best.cuts = std::move(cuts);
        }
    }

    // i: next interior position to decide; j: position of the last cut.
    void descend(size_t i, size_t j) {
        if (exhausted)
            return;
        if (++nodes > budget) {
            exhausted = true;
            return;
        }
        if (norm(space, completed) + cell_tail[j] <= best.value)
            return;
        const size_t N = prefix.size() - 1;
        if (i == N) {
            completed.push_back(prefix[N] - prefix[j]);
            const double v = norm(space, completed);
            completed.pop_back();
            if (v > best.value) {
                best.value = v;
                best.cuts = stack;
                best.cuts.push_back(N);
            }
            return;
        }
        // cut at i first: reaches fine partitions early for good incumbents
        completed.push_back(prefix[i] - prefix[j]);
        stack.push_back(i);
        descend(i + 1, i);
        stack.pop_back();
        completed.pop_back();
        descend(i + 1, j);
    }
};

}  // namespace detail

/// Maximizes ||(S_{j_{r+1}} - S_{j_r})_r||_X over all segmentations of the
/// prefix sequence.  Raises when the instance exceeds the limits and
/// allow_lower_bound is off.
inline SegmentationResult best_segmentation(const SymmetricSpace& space,
                                            std::span<const double> prefix,
                                            const SearchLimits& limits = {}) {
    if (prefix.size() < 2)
        throw std::invalid_argument("best_segmentation: need at least two prefix values");
    const size_t N = prefix.size() - 1;
    if (space.is_lp()) {
        if (N > limits.dp_max_cells)
            throw std::invalid_argument("best_segmentation: " + std::to_string(N) +
                                        " cells exceeds the lp dynamic-program cap of " +
                                        std::to_string(limits.dp_max_cells));
        return detail::lp_dynamic_program(space, prefix);
    }
    if (N <= limits.exhaustive_max_cells)
        return detail::enumerate_all(space, prefix);
    if (!limits.allow_lower_bound && limits.node_budget == 0)
        throw std::invalid_argument("best_segmentation: instance too large for enumeration");
    detail::BranchAndBound bb(space, prefix, limits.node_budget);
    bb.run();
    if (!bb.best.exact && !limits.allow_lower_bound)
        throw std::runtime_error("best_segmentation: node budget exhausted at " +
                                 std::to_string(bb.nodes) +
                                 " nodes; rerun with a bounded-mode search to accept a "
                                 "lower bound");
    return bb.best;
}

/// Width-constrained variant used by the variation modulus: transition
/// j -> i is admissible iff j >= window_lo[i], where the caller derives
/// window_lo from exact rational widths.  Only the optimal value is needed.
inline double best_windowed_segmentation(const SymmetricSpace& space,
                                         std::span<const double> prefix,
                                         std::span<const size_t> window_lo,
                                         const SearchLimits& limits = {}) {
    const size_t N = prefix.size() - 1;
    if (prefix.size() != window_lo.size())
        throw std::invalid_argument("best_windowed_segmentation: array size mismatch");
    if (prefix.size() < 2)
        throw std::invalid_argument("best_windowed_segmentation: need at least two values");
    if (space.is_lp()) {
        const double p = space.p;
        constexpr double kImpossible = -1.0;
        std::vector<double> E(N + 1, kImpossible);
        E[N] = 0.0;
        for (size_t i = N; i-- > 0;) {
            double bestv = kImpossible;
            for (size_t j = i + 1; j <= N; ++j) {
                if (window_lo[j] > i)
                    break;  // windows are monotone: farther cuts are wider still
                if (E[j] == kImpossible)
                    continue;
                const double c = detail::pow_p(std::abs(prefix[j] - prefix[i]), p) + E[j];
                if (c > bestv)
                    bestv = c;
            }
            E[i] = bestv;
        }
        if (E[0] == kImpossible)
            throw std::invalid_argument(
                "best_windowed_segmentation: no admissible partition (window too narrow)");
        return std::pow(E[0], 1.0 / p);
    }
    // General spaces: depth-first enumeration with a mass bound.
    std::vector<double> cell_tail(N + 1, 0.0);
    for (size_t i = N; i-- > 0;)
        cell_tail[i] = cell_tail[i + 1] + std::abs(prefix[i + 1] - prefix[i]);
    std::vector<double> completed;
    double best = -1.0;
    uint64_t nodes = 0;
    auto rec = [&](auto&& self, size_t j) -> void {
        if (++nodes > limits.node_budget)
            throw std::runtime_error(
                "best_windowed_segmentation: node budget exhausted; reduce the candidate set");
        if (norm(space, completed) + cell_tail[j] <= best)
            return;
        if (j == N) {
            best = std::max(best, norm(space, completed));
            return;
        }
        for (size_t i = j + 1; i <= N; ++i) {
            if (window_lo[i] > j)
                break;  // windows are monotone: wider gaps only get worse
            completed.push_back(prefix[i] - prefix[j]);
            self(self, i);
            completed.pop_back();
        }
    };
    rec(rec, 0);
    if (best < 0.0)
        throw std::invalid_argument(
            "best_windowed_segmentation: no admissible partition (window too narrow)");
    return best;
}

}  // namespace jfx
