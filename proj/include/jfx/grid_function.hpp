#pragma once
// Grid-aligned step functions on the open unit cube (0,1)^d and open
// parallelepipeds (boxes) with axis-parallel faces.
//
// A GridFunction is determined by per-axis cut lists and one rational value
// per grid cell.  Cells are stored flat in row-major order with axis 0
// outermost, so for d = 2 the flat index of cell (i, j) is i * n1 + j.

#include "rational.hpp"
#include "step_function.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace jfx {

/// Open axis-parallel box prod_i (lo[i], hi[i]) inside (0,1)^d.
struct Box {
    std::vector<Rational> lo;
    std::vector<Rational> hi;

    Box() = default;
    Box(std::vector<Rational> l, std::vector<Rational> h) : lo(std::move(l)), hi(std::move(h)) {
        validate();
    }

    void validate() const {
        if (lo.size() != hi.size() || lo.empty())
            throw std::invalid_argument("box: lo/hi must be nonempty and of equal dimension");
        for (size_t i = 0; i < lo.size(); ++i) {
            if (lo[i] < 0 || hi[i] > 1 || !(lo[i] < hi[i]))
                throw std::invalid_argument("box: axis " + std::to_string(i) +
                                            " must satisfy 0 <= lo < hi <= 1");
        }
    }

    size_t dim() const { return lo.size(); }

    Rational volume() const {
        Rational v(1);
        for (size_t i = 0; i < lo.size(); ++i)
            v *= hi[i] - lo[i];
        return v;
    }

    /// Open boxes are disjoint iff they are separated along some axis.
    bool disjoint(const Box& other) const {
        for (size_t i = 0; i < lo.size(); ++i)
            if (hi[i] <= other.lo[i] || other.hi[i] <= lo[i])
                return true;
        return false;
    }
};

struct GridFunction {
    /// axis_cuts[a] = 0 = c_0 < c_1 < ... < c_m = 1 for axis a.
    std::vector<std::vector<Rational>> axis_cuts;
    /// Flat row-major cell values (axis 0 outermost).
    std::vector<Rational> cells;

    GridFunction() = default;
    GridFunction(std::vector<std::vector<Rational>> cuts, std::vector<Rational> cell_values)
        : axis_cuts(std::move(cuts)), cells(std::move(cell_values)) {
        validate();
    }

    void validate() const {
        if (axis_cuts.empty())
            throw std::invalid_argument("grid function needs at least one axis");
        size_t expect = 1;
        for (size_t a = 0; a < axis_cuts.size(); ++a) {
            const auto& cuts = axis_cuts[a];
            if (cuts.size() < 2 || cuts.front() != 0 || cuts.back() != 1)
                throw std::invalid_argument("axis " + std::to_string(a) +
                                            " cuts must run from 0 to 1");
            for (size_t i = 0; i + 1 < cuts.size(); ++i)
                if (!(cuts[i] < cuts[i + 1]))
                    throw std::invalid_argument("axis " + std::to_string(a) +
                                                " cuts must be strictly increasing");
            expect *= cuts.size() - 1;
        }
        if (cells.size() != expect)
            throw std::invalid_argument("grid function has " + std::to_string(cells.size()) +
                                        " cells but the cuts define " + std::to_string(expect));
    }

    size_t dim() const { return axis_cuts.size(); }

    size_t extent(size_t axis) const { return axis_cuts[axis].size() - 1; }

    size_t cell_count() const { return cells.size(); }

    size_t flat_index(const std::vector<size_t>& idx) const {
        size_t flat = 0;
        for (size_t a = 0; a < axis_cuts.size(); ++a)
            flat = flat * extent(a) + idx[a];
        return flat;
    }

    const Rational& cell(const std::vector<size_t>& idx) const { return cells[flat_index(idx)]; }

    /// Exact integral over an open box of the same dimension.
    Rational integral(const Box& box) const {
        if (box.dim() != dim())
            throw std::invalid_argument("integral: box dimension " + std::to_string(box.dim()) +
                                        " does not match grid dimension " + std::to_string(dim()));
        std::vector<size_t> idx(dim(), 0);
        Rational total(0);
        for (size_t flat = 0; flat < cells.size(); ++flat) {
            if (cells[flat] != 0) {
                Rational vol(1);
                for (size_t a = 0; a < dim() && vol != 0; ++a) {
                    const Rational lo = std::max(axis_cuts[a][idx[a]], box.lo[a]);
                    const Rational hi = std::min(axis_cuts[a][idx[a] + 1], box.hi[a]);
                    if (lo < hi)
                        vol *= hi - lo;
                    else
                        vol = 0;
                }
                total += cells[flat] * vol;
            }
            // advance the multi-index (row-major, last axis fastest)
            for (size_t a = dim(); a-- > 0;) {
                if (++idx[a] < extent(a))
                    break;
                idx[a] = 0;
            }
        }
        return total;
    }

    Rational integral() const {
        Box whole(std::vector<Rational>(dim(), Rational(0)),
                  std::vector<Rational>(dim(), Rational(1)));
        return integral(whole);
    }

    Rational l1_norm() const {
        std::vector<size_t> idx(dim(), 0);
        Rational total(0);
        for (size_t flat = 0; flat < cells.size(); ++flat) {
            Rational vol(1);
            for (size_t a = 0; a < dim(); ++a)
                vol *= axis_cuts[a][idx[a] + 1] - axis_cuts[a][idx[a]];
            total += rational_abs(cells[flat]) * vol;
            for (size_t a = dim(); a-- > 0;) {
                if (++idx[a] < extent(a))
                    break;
                idx[a] = 0;
            }
        }
        return total;
    }

    /// Views a one-dimensional step function as a grid function on (0,1)^1.
    static GridFunction from_step(const StepFunction1D& f) {
        return GridFunction({f.breakpoints}, f.values);
    }

    /// Cylinder extension to a higher dimension: the new trailing axes carry
    /// the trivial cut list {0, 1}, so the function is constant along them.
    /// The flat cell array is unchanged because the appended axes have
    /// extent 1 and sit innermost.
    GridFunction lifted(size_t new_dim) const {
        if (new_dim <= dim())
            throw std::invalid_argument("lifted: target dimension " + std::to_string(new_dim) +
                                        " must exceed current dimension " + std::to_string(dim()));
        GridFunction out = *this;
        for (size_t a = dim(); a < new_dim; ++a)
            out.axis_cuts.push_back({Rational(0), Rational(1)});
        return out;
    }
};

}  // namespace jfx
