#pragma once
// The controlled-coefficient property (CCP) experiments.
//
// Fix levels n_1 < n_2 < ... and consecutive blocks sigma_k of the basis with
// #sigma_k = 2^(n_k), and let lambda_k = 1 / || sum_{e in sigma_k} e ||_X be
// the normalizing constant of the k-th block.  An instance selects, per
// block, either a subset I_k of sigma_k or coefficients alpha_i in [0,1],
// subject to the density constraint
//     sum_k #I_k / 2^(n_k) <= 1     (resp.  sum_k sum_i alpha_i / 2^(n_k) <= 1),
// and its value is  || sum_k lambda_k sum alpha_i e_i ||_X.
//
// For lp the value never exceeds 1 in the subset case and 2 in the weighted
// case; Lorentz spaces with harmonic weights admit schedules along which the
// value keeps growing, which lorentz_growth demonstrates row by row.

#include "partition_search.hpp"
#include "spaces.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "random.hpp"

namespace jfx {

struct CcpInstance {
    /// Levels n_k, strictly increasing; block k has 2^(n_k) coordinates.
    std::vector<unsigned> levels;
    /// Subset mode: #I_k per block.  Ignored when weights is nonempty.
    std::vector<uint64_t> subset_sizes;
    /// Weighted mode: per block, 2^(n_k) coefficients in [0,1].
    std::vector<std::vector<Rational>> weights;

    bool weighted() const { return !weights.empty(); }

    static CcpInstance subsets(std::vector<unsigned> levels, std::vector<uint64_t> sizes) {
        CcpInstance inst;
        inst.levels = std::move(levels);
        inst.subset_sizes = std::move(sizes);
        inst.validate();
        return inst;
    }

    static CcpInstance with_weights(std::vector<unsigned> levels,
                                    std::vector<std::vector<Rational>> w) {
        CcpInstance inst;
        inst.levels = std::move(levels);
        inst.weights = std::move(w);
        inst.validate();
        return inst;
    }

    /// Exact density sum of the constraint.
    Rational density() const {
        Rational d(0);
        for (size_t k = 0; k < levels.size(); ++k) {
            const BigInt block = BigInt(1) << levels[k];
            if (weighted()) {
                Rational s(0);
                for (const auto& a : weights[k])
                    s += a;
                d += s / block;
            } else {
                d += Rational(BigInt(subset_sizes[k]), block);
            }
        }
        return d;
    }

    void validate() const {
        if (levels.empty())
            throw std::invalid_argument("ccp instance needs at least one block");
        for (size_t k = 0; k < levels.size(); ++k) {
            if (levels[k] > 24)
                throw std::invalid_argument("ccp levels are capped at 24");
            if (k > 0 && levels[k] <= levels[k - 1])
                throw std::invalid_argument("ccp levels must be strictly increasing");
        }
        if (weighted()) {
            if (weights.size() != levels.size())
                throw std::invalid_argument("ccp instance needs one weight list per block");
            for (size_t k = 0; k < levels.size(); ++k) {
                if (weights[k].size() != (uint64_t(1) << levels[k]))
                    throw std::invalid_argument(
                        "block " + std::to_string(k) + " needs exactly 2^" +
                        std::to_string(levels[k]) + " coefficients");
                for (const auto& a : weights[k])
                    if (a < 0 || a > 1)
                        throw std::invalid_argument("ccp coefficients must lie in [0,1]");
            }
        } else {
            if (subset_sizes.size() != levels.size())
                throw std::invalid_argument("ccp instance needs one subset size per block");
            for (size_t k = 0; k < levels.size(); ++k)
                if (subset_sizes[k] > (uint64_t(1) << levels[k]))
                    throw std::invalid_argument("subset size exceeds block size 2^" +
                                                std::to_string(levels[k]));
        }
        const Rational d = density();
        if (d > 1)
            throw std::invalid_argument("ccp density constraint violated: sum = " +
                                        jfx::to_string(d) + " > 1");
    }
};

/// || sum_k lambda_k sum_{i in I_k} e_i ||_X  (resp. the weighted variant).
inline double ccp_value(const SymmetricSpace& space, const CcpInstance& inst) {
    inst.validate();
    std::vector<double> v;
    size_t total = 0;
    for (size_t k = 0; k < inst.levels.size(); ++k)
        total += inst.weighted() ? inst.weights[k].size()
                                 : static_cast<size_t>(inst.subset_sizes[k]);
    if (total > (size_t(1) << 20))
        throw std::invalid_argument("ccp instance materializes more than 2^20 coordinates");
    v.reserve(total);
    for (size_t k = 0; k < inst.levels.size(); ++k) {
        const double lambda = 1.0 / fundamental(space, size_t(1) << inst.levels[k]);
        if (inst.weighted()) {
            for (const auto& a : inst.weights[k])
                v.push_back(lambda * to_double(a));
        } else {
            for (uint64_t i = 0; i < inst.subset_sizes[k]; ++i)
                v.push_back(lambda);
        }
    }
    return norm(space, v);
}

struct GrowthRow {
    size_t K = 0;            // prefix length
    double value = 0.0;      // Lorentz d(1/n, p) value of the prefix instance
    double control = 0.0;    // lp value of the same instance: (sum_k 2^-k)^(1/p)
    double annotation = 0.0; // heuristic block scale (n_K ln 2)^(1/p)
};

/// Growth experiment for the harmonic-weight Lorentz space: block k keeps a
/// fraction 2^-k of its coordinates (subset size 2^(n_k - k)).  In lp the
/// value of every prefix stays below 1; in d(1/n, p) the reported values keep
/// climbing past the control column.
inline std::vector<GrowthRow> lorentz_growth(double p, const std::vector<unsigned>& schedule) {
    const SymmetricSpace space = SymmetricSpace::lorentz(p);
    for (size_t k = 0; k < schedule.size(); ++k)
        if (schedule[k] < k + 1)
            throw std::invalid_argument("lorentz_growth: need n_k >= k so block " +
                                        std::to_string(k + 1) +
                                        " can keep a 2^-k fraction");
    std::vector<GrowthRow> rows;
    for (size_t K = 1; K <= schedule.size(); ++K) {
        std::vector<unsigned> levels(schedule.begin(), schedule.begin() + K);
        std::vector<uint64_t> sizes;
        double control_p = 0.0;
        for (size_t k = 1; k <= K; ++k) {
            sizes.push_back(uint64_t(1) << (levels[k - 1] - k));
            control_p += std::pow(2.0, -double(k));
        }
        GrowthRow row;
        row.K = K;
        row.value = ccp_value(space, CcpInstance::subsets(levels, sizes));
        row.control = std::pow(control_p, 1.0 / p);
        row.annotation = std::pow(double(levels.back()) * std::log(2.0), 1.0 / p);
        rows.push_back(row);
    }
    return rows;
}

struct ExtremeBoundReport {
    double candidate_max = 0.0;       // max over the polytope's extreme candidates
    std::vector<double> maximizer;    // coefficients attaining candidate_max
    double sample_max = 0.0;          // max over random points of the polytope
    uint64_t candidates = 0;
    uint64_t samples = 0;
    /// True when no random sample beat the extreme candidates (+1e-9).
    bool sample_dominated = false;
    double bound = 0.0;               // C + 1
    /// candidate_max <= C + 1 + 1e-9 (the lp weighted-instance bound).
    bool bound_ok = false;
};

/// The weighted-instance value is a convex function of the coefficient
/// vector, so its maximum over the density polytope sits at an extreme
/// point: all coordinates 0/1 except at most one fractional coordinate that
/// makes the density exactly 1.  This check enumerates those candidates,
/// validates the extremality claim against a dense random sample, and
/// compares the maximum with the bound C + 1.  Unlike CcpInstance, repeated
/// levels are allowed here: this is a standalone polytope check.
inline ExtremeBoundReport extreme_bound_check(const SymmetricSpace& space,
                                              const std::vector<unsigned>& levels, double C,
                                              uint64_t samples, uint64_t seed) {
    size_t dim = 0;
    std::vector<size_t> block_of;  // block index per coordinate
    for (size_t k = 0; k < levels.size(); ++k) {
        const size_t sz = size_t(1) << levels[k];
        for (size_t i = 0; i < sz; ++i)
            block_of.push_back(k);
        dim += sz;
    }
    if (dim == 0 || dim > 16)
        throw std::invalid_argument("extreme_bound_check: total dimension must be in 1..16");

    std::vector<double> lambda(levels.size());
    std::vector<Rational> inv_block(levels.size());
    for (size_t k = 0; k < levels.size(); ++k) {
        lambda[k] = 1.0 / fundamental(space, size_t(1) << levels[k]);
        inv_block[k] = Rational(1, BigInt(1) << levels[k]);
    }
    auto value_of = [&](const std::vector<double>& alpha) {
        std::vector<double> v(dim);
        for (size_t i = 0; i < dim; ++i)
            v[i] = lambda[block_of[i]] * alpha[i];
        return norm(space, v);
    };

    ExtremeBoundReport rep;
    std::vector<double> alpha(dim);
    for (uint64_t mask = 0; mask < (uint64_t(1) << dim); ++mask) {
        Rational density(0);
        for (size_t i = 0; i < dim; ++i)
            if (mask & (uint64_t(1) << i))
                density += inv_block[block_of[i]];
        if (density > 1)
            continue;
        for (size_t i = 0; i < dim; ++i)
            alpha[i] = (mask & (uint64_t(1) << i)) ? 1.0 : 0.0;
        ++rep.candidates;
        double v = value_of(alpha);
        if (v > rep.candidate_max) {
            rep.candidate_max = v;
            rep.maximizer = alpha;
        }
        // one fractional coordinate filling the density up to exactly 1
        const Rational slack = Rational(1) - density;
        if (slack == 0)
            continue;
        for (size_t i = 0; i < dim; ++i) {
            if (mask & (uint64_t(1) << i))
                continue;
            const Rational frac = slack / inv_block[block_of[i]];
            if (frac >= 1)
                continue;  // would reach 1: already covered by another mask
            alpha[i] = to_double(frac);
            ++rep.candidates;
            v = value_of(alpha);
            if (v > rep.candidate_max) {
                rep.candidate_max = v;
                rep.maximizer = alpha;
            }
            alpha[i] = 0.0;
        }
    }

    Rng rng(seed);
    rep.samples = samples;
    for (uint64_t s = 0; s < samples; ++s) {
        double density = 0.0;
        for (size_t i = 0; i < dim; ++i) {
            alpha[i] = rng.uniform();
            density += alpha[i] * to_double(inv_block[block_of[i]]);
        }
        if (density > 1.0)
            for (auto& a : alpha)
                a /= density;  // project onto the constraint boundary
        rep.sample_max = std::max(rep.sample_max, value_of(alpha));
    }
    rep.sample_dominated = rep.sample_max <= rep.candidate_max + 1e-9;
    rep.bound = C + 1.0;
    rep.bound_ok = rep.candidate_max <= rep.bound + 1e-9;
    return rep;
}

/// Norm of a sum of normalized Rademacher functions
///   r~_n = (2^n / ||sum_{i <= 2^n} e_i||_X) r_n
/// over the given strictly increasing indices, computed from the exact
/// dyadic prefix integrals on the finest grid involved.
inline double rademacher_sum_norm(const SymmetricSpace& space,
                                  const std::vector<unsigned>& indices,
                                  const SearchLimits& limits = {}) {
    if (indices.empty())
        return 0.0;
    for (size_t i = 0; i < indices.size(); ++i) {
        if (indices[i] > 20)
            throw std::invalid_argument("rademacher_sum_norm: indices are capped at 20");
        if (i > 0 && indices[i] <= indices[i - 1])
            throw std::invalid_argument("rademacher_sum_norm: indices must be strictly increasing");
    }
    const unsigned m = indices.back();
    const size_t N = size_t(1) << m;
    std::vector<double> prefix(N + 1, 0.0);
    for (unsigned n : indices) {
        const double coeff = std::pow(2.0, double(n)) / fundamental(space, size_t(1) << n);
        // prefix integral of r_n at j / 2^m: with u = j / 2^(m-n), q = floor(u),
        // the integral is 2^-n * (frac(u) if q even else 1 - frac(u)); all
        // quantities are dyadic and exact in binary64.
        const double scale = std::pow(2.0, -double(n));
        const size_t period = size_t(1) << (m - n);  // cells per half-period
        for (size_t jj = 0; jj <= N; ++jj) {
            const size_t q = jj / period;
            const double frac = double(jj % period) / double(period);
            const double val = (q % 2 == 0) ? frac : 1.0 - frac;
            prefix[jj] += coeff * scale * val;
        }
    }
    return best_segmentation(space, prefix, limits).value;
}

}  // namespace jfx
