#pragma once
// The James-type function-space norm over a 1-symmetric sequence space X:
//
//   ||f||  =  sup  || ( integral of f over T_j )_j ||_X
//
// with the supremum over finite families of pairwise disjoint open
// parallelepipeds T_j inside the domain.  In one dimension the supremum is
// attained on full partitions whose points are breakpoints of f, so the
// search reduces to the segmentation engines; in higher dimensions the
// search runs over families of grid-aligned boxes (reported as exact for the
// grid-aligned family class, see norm_grid).
//
// Every computed norm comes with a replayable certificate: the achieving
// family, and for lp spaces a norming dual functional whose evaluation
// closes the duality gap.

#include "grid_function.hpp"
#include "partition_search.hpp"
#include "step_function.hpp"

#include <bit>
#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace jfx {

enum class CertMode { exact, lower_bound };

inline const char* to_string(CertMode m) {
    return m == CertMode::exact ? "exact" : "lower_bound";
}

/// Functional f |-> sum_i coefficients[i] * (integral of f over boxes[i]),
/// with pairwise disjoint boxes.  For lp spaces the certificate dual has
/// lq-coefficient norm at most 1, so it witnesses a lower bound on the norm.
struct DualFunctional {
    std::vector<Box> boxes;
    std::vector<double> coefficients;

    void validate() const {
        if (boxes.size() != coefficients.size())
            throw std::invalid_argument("dual functional: box/coefficient count mismatch");
        for (size_t i = 0; i < boxes.size(); ++i) {
            boxes[i].validate();
            for (size_t j = i + 1; j < boxes.size(); ++j)
                if (!boxes[i].disjoint(boxes[j]))
                    throw std::invalid_argument("dual functional: boxes " + std::to_string(i) +
                                                " and " + std::to_string(j) + " overlap");
        }
    }
};

struct SearchStats {
    uint64_t nodes = 0;
    int64_t elapsed_ms = 0;
};

/// Result of a norm computation.  Exactly one of partition_points / boxes is
/// populated: partition points for one-dimensional step-function inputs,
/// a box family for grid inputs.
struct NormCertificate {
    double value = 0.0;
    CertMode mode = CertMode::exact;
    std::vector<Rational> partition_points;
    std::vector<Box> boxes;
    std::optional<DualFunctional> dual;
    SearchStats stats;
};

/// tau(Q, f) = || ( integral of f over the cells of Q )_j ||_X  for a full
/// partition Q.  Cell integrals are exact rationals, rounded once.
inline double tau(const SymmetricSpace& space, const StepFunction1D& f, const Partition1D& q) {
    std::vector<double> segs;
    segs.reserve(q.cells());
    for (size_t i = 0; i + 1 < q.points.size(); ++i)
        segs.push_back(to_double(f.integral(q.points[i], q.points[i + 1])));
    return norm(space, segs);
}

namespace detail {

class StopWatch {
public:
    StopWatch() : start_(std::chrono::steady_clock::now()) {}
    int64_t elapsed_ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

inline std::optional<DualFunctional> lp_dual_from_family(const SymmetricSpace& space,
                                                         std::vector<Box> boxes,
                                                         const std::vector<double>& integrals) {
    if (!space.is_lp())
        return std::nullopt;
    double nv = norm(space, integrals);
    if (nv == 0.0)
        return std::nullopt;
    DualFunctional dual;
    dual.coefficients = norming_coefficients(space, integrals);
    dual.boxes = std::move(boxes);
    return dual;
}

}  // namespace detail

/// ||f|| for a one-dimensional step function.  The supremum over disjoint
/// interval families is attained on full partitions through breakpoints of f,
/// so the search space is the 2^(n-1) breakpoint subsets; see
/// best_segmentation for the engines and their exactness guarantees.
inline NormCertificate norm1d(const SymmetricSpace& space, const StepFunction1D& f,
                              const SearchLimits& limits = {}) {
    detail::StopWatch watch;
    const std::vector<Rational> pre = f.prefix_integrals();
    const std::vector<double> pre_d = to_doubles(pre);
    SegmentationResult seg = best_segmentation(space, pre_d, limits);

    NormCertificate cert;
    cert.mode = seg.exact ? CertMode::exact : CertMode::lower_bound;
    cert.stats.nodes = seg.nodes;
    cert.partition_points.reserve(seg.cuts.size());
    for (size_t idx : seg.cuts)
        cert.partition_points.push_back(f.breakpoints[idx]);
    // Recompute the achieved value from exact cell integrals so that
    // replaying the certificate through tau() reproduces it bit for bit.
    std::vector<double> segs;
    std::vector<Box> cells;
    segs.reserve(seg.cuts.size() - 1);
    for (size_t r = 0; r + 1 < seg.cuts.size(); ++r) {
        segs.push_back(to_double(Rational(pre[seg.cuts[r + 1]] - pre[seg.cuts[r]])));
        cells.emplace_back(std::vector<Rational>{f.breakpoints[seg.cuts[r]]},
                           std::vector<Rational>{f.breakpoints[seg.cuts[r + 1]]});
    }
    cert.value = norm(space, segs);
    cert.dual = detail::lp_dual_from_family(space, std::move(cells), segs);
    cert.stats.elapsed_ms = watch.elapsed_ms();
    return cert;
}

/// Evaluates a dual functional against a step function (1-D boxes required).
inline double eval_dual(const DualFunctional& dual, const StepFunction1D& f) {
    dual.validate();
    double s = 0.0;
    for (size_t i = 0; i < dual.boxes.size(); ++i) {
        if (dual.boxes[i].dim() != 1)
            throw std::invalid_argument("eval_dual: expected 1-D boxes for a step function");
        s += dual.coefficients[i] *
             to_double(f.integral(dual.boxes[i].lo[0], dual.boxes[i].hi[0]));
    }
    return s;
}

inline double eval_dual(const DualFunctional& dual, const GridFunction& g) {
    dual.validate();
    double s = 0.0;
    for (size_t i = 0; i < dual.boxes.size(); ++i)
        s += dual.coefficients[i] * to_double(g.integral(dual.boxes[i]));
    return s;
}

namespace detail {

/// Candidate grid-aligned box: a product of index ranges, with its cell mask
/// and exact integral precomputed.
struct GridBox {
    uint64_t mask = 0;
    size_t min_cell = 0;
    double integral = 0.0;
    std::vector<size_t> lo, hi;  // per-axis cell index ranges [lo, hi)
};

struct GridSearch {
    const GridFunction& g;
    const SymmetricSpace& space;
    uint64_t budget;
    bool prune;
    std::vector<GridBox> boxes;                  // sorted by min_cell
    std::vector<size_t> first_box_at;            // first candidate with min_cell == pos
    std::vector<double> cell_abs;                // |cell integral| per flat cell
    std::vector<double> chosen_integrals;
    std::vector<size_t> chosen_boxes;
    std::vector<size_t> best_boxes;
    double best_value = -1.0;
    uint64_t nodes = 0;
    bool exhausted = false;

    GridSearch(const GridFunction& gf, const SymmetricSpace& sp, uint64_t node_budget,
               bool use_pruning)
        : g(gf), space(sp), budget(node_budget), prune(use_pruning) {
        build_candidates();
    }

    void build_candidates() {
        const size_t d = g.dim();
        const size_t C = g.cell_count();
        cell_abs.resize(C);
        {
            std::vector<size_t> idx(d, 0);
            for (size_t flat = 0; flat < C; ++flat) {
                Rational vol(1);
                for (size_t a = 0; a < d; ++a)
                    vol *= g.axis_cuts[a][idx[a] + 1] - g.axis_cuts[a][idx[a]];
                cell_abs[flat] = to_double(Rational(rational_abs(g.cells[flat]) * vol));
                for (size_t a = d; a-- > 0;) {
                    if (++idx[a] < g.extent(a))
                        break;
                    idx[a] = 0;
                }
            }
        }
        // All index-range products.
        std::vector<size_t> lo(d), hi(d);
        build_ranges(0, lo, hi);
        std::sort(boxes.begin(), boxes.end(), [](const GridBox& a, const GridBox& b) {
            if (a.min_cell != b.min_cell)
                return a.min_cell < b.min_cell;
            return a.mask < b.mask;
        });
        first_box_at.assign(C + 1, boxes.size());
        for (size_t i = boxes.size(); i-- > 0;)
            first_box_at[boxes[i].min_cell] = i;
    }

    void build_ranges(size_t axis, std::vector<size_t>& lo, std::vector<size_t>& hi) {
        if (axis == g.dim()) {
            GridBox b;
            b.lo = lo;
            b.hi = hi;
            Rational total(0);
            std::vector<size_t> idx = lo;
            for (;;) {
                size_t flat = 0;
                for (size_t a = 0; a < g.dim(); ++a)
                    flat = flat * g.extent(a) + idx[a];
                b.mask |= uint64_t(1) << flat;
                Rational vol(1);
                for (size_t a = 0; a < g.dim(); ++a)
                    vol *= g.axis_cuts[a][idx[a] + 1] - g.axis_cuts[a][idx[a]];
                total += g.cells[flat] * vol;
                size_t a = g.dim();
                for (; a-- > 0;) {
                    if (++idx[a] < hi[a])
                        break;
                    idx[a] = lo[a];
                }
                if (a == size_t(-1))
                    break;
            }
            b.min_cell = static_cast<size_t>(std::countr_zero(b.mask));
            b.integral = to_double(total);
            boxes.push_back(std::move(b));
            return;
        }
        for (size_t a = 0; a < g.extent(axis); ++a) {
            for (size_t bnd = a + 1; bnd <= g.extent(axis); ++bnd) {
                lo[axis] = a;
                hi[axis] = bnd;
                build_ranges(axis + 1, lo, hi);
            }
        }
    }

    void run() {
        descend(0, 0);
        if (best_value < 0.0) {  // budget too small to even reach a leaf
            best_value = 0.0;
            best_boxes.clear();
        }
    }

    void descend(size_t pos, uint64_t covered) {
        if (exhausted)
            return;
        if (++nodes > budget) {
            exhausted = true;
            return;
        }
        const size_t C = g.cell_count();
        while (pos < C && (covered & (uint64_t(1) << pos)))
            ++pos;
        if (prune || best_value >= 0.0) {
            double bound = norm(space, chosen_integrals);
            for (size_t k = pos; k < C; ++k)
                if (!(covered & (uint64_t(1) << k)))
                    bound += cell_abs[k];
            if (bound <= best_value)
                return;
        }
        if (pos == C) {
            const double v = norm(space, chosen_integrals);
            if (v > best_value) {
                best_value = v;
                best_boxes = chosen_boxes;
            }
            return;
        }
        // Leave this cell uncovered.
        descend(pos + 1, covered);
        // Or cover it with any candidate box whose minimal cell it is.
        for (size_t i = first_box_at[pos]; i < boxes.size() && boxes[i].min_cell == pos; ++i) {
            if (boxes[i].mask & covered)
                continue;
            chosen_integrals.push_back(boxes[i].integral);
            chosen_boxes.push_back(i);
            descend(pos + 1, covered | boxes[i].mask);
            chosen_boxes.pop_back();
            chosen_integrals.pop_back();
        }
    }
};

}  // namespace detail

/// ||g|| for a grid function, maximizing over families of pairwise disjoint
/// grid-aligned boxes.  For one-dimensional grids this equals the full
/// supremum (partitions through breakpoints suffice).  In higher dimensions
/// the family class is the grid-aligned one; the certificate discloses the
/// mode, and `exact` means this class was provably exhausted.
inline NormCertificate norm_grid(const SymmetricSpace& space, const GridFunction& g,
                                 const SearchLimits& limits = {}) {
    detail::StopWatch watch;
    if (g.dim() == 1) {
        // Partitions through the cuts exhaust the supremum in one dimension,
        // so delegate to the segmentation engines and report the achieving
        // partition cells as a box family.
        StepFunction1D f(g.axis_cuts[0], g.cells);
        NormCertificate cert = norm1d(space, f, limits);
        for (size_t r = 0; r + 1 < cert.partition_points.size(); ++r)
            cert.boxes.emplace_back(std::vector<Rational>{cert.partition_points[r]},
                                    std::vector<Rational>{cert.partition_points[r + 1]});
        cert.partition_points.clear();
        cert.stats.elapsed_ms = watch.elapsed_ms();
        return cert;
    }
    const size_t C = g.cell_count();
    if (C > 62)
        throw std::invalid_argument("norm_grid: more than 62 cells is unsupported");
    const bool small = C <= limits.grid_exact_max_cells;
    if (!small && !limits.allow_lower_bound && limits.node_budget == 0)
        throw std::invalid_argument("norm_grid: " + std::to_string(C) +
                                    " cells exceeds the exact enumeration cap of " +
                                    std::to_string(limits.grid_exact_max_cells));
    const uint64_t budget = small ? ~uint64_t(0) : limits.node_budget;
    detail::GridSearch search(g, space, budget, /*use_pruning=*/true);
    search.run();
    if (search.exhausted && !limits.allow_lower_bound)
        throw std::runtime_error("norm_grid: node budget exhausted at " +
                                 std::to_string(search.nodes) +
                                 " nodes; rerun with a bounded-mode search to accept a lower "
                                 "bound");

    NormCertificate cert;
    cert.mode = search.exhausted ? CertMode::lower_bound : CertMode::exact;
    cert.stats.nodes = search.nodes;
    std::vector<double> integrals;
    for (size_t i : search.best_boxes) {
        const auto& gb = search.boxes[i];
        std::vector<Rational> lo(g.dim()), hi(g.dim());
        for (size_t a = 0; a < g.dim(); ++a) {
            lo[a] = g.axis_cuts[a][gb.lo[a]];
            hi[a] = g.axis_cuts[a][gb.hi[a]];
        }
        cert.boxes.emplace_back(std::move(lo), std::move(hi));
        integrals.push_back(gb.integral);
    }
    cert.value = norm(space, integrals);
    cert.dual = detail::lp_dual_from_family(space, cert.boxes, integrals);
    cert.stats.elapsed_ms = watch.elapsed_ms();
    return cert;
}

/// Cylinder extension of a grid function to a higher dimension.  The norm is
/// unchanged under this lift; the verification suite checks the isometry by
/// exhausting the search on both sides.
inline GridFunction lift(const GridFunction& g, size_t new_dim) { return g.lifted(new_dim); }

struct ProjectionResult {
    std::vector<Rational> coefficients;  // integral of f over each A_{2n-1}
    StepFunction1D projection;
};

/// Averaging projection onto the span of the normalized block-pair sequence
/// built from the given intervals:
///   P f = sum_n ( integral of f over A_{2n-1} ) * y_n / |A_{2n-1}|.
/// P fixes the span, and ||P f|| <= 2 ||f|| in every James-type norm; the
/// bound is exercised by the verification suite.
inline ProjectionResult project_blockwise(
    const StepFunction1D& f, const std::vector<std::pair<Rational, Rational>>& intervals) {
    std::vector<StepFunction1D> generators = block_pair_sequence(intervals);
    std::vector<Rational> coeffs;
    coeffs.reserve(generators.size());
    for (size_t n = 0; n < generators.size(); ++n)
        coeffs.push_back(f.integral(intervals[2 * n].first, intervals[2 * n].second));
    ProjectionResult res;
    res.projection = linear_combination(coeffs, generators);
    res.coefficients = std::move(coeffs);
    return res;
}

}  // namespace jfx
