// Acceptance gate: thirteen numbered end-to-end checks, one PASS/FAIL line
// each, exit code = number of failures.  Tolerances and runtime caps are
// pinned in code next to each check; every check is self-contained and
// re-derives its expected values independently of the library's own
// verification suites.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "jfx/ccp.hpp"
#include "jfx/jf_norm.hpp"
#include "jfx/variation.hpp"

using jfx::BigInt;
using jfx::CcpInstance;
using jfx::GridFunction;
using jfx::Partition1D;
using jfx::Rational;
using jfx::SampledPath;
using jfx::StepFunction1D;
using jfx::SymmetricSpace;

namespace {

Rational rat(long num, long den = 1) { return Rational(num, den); }

StepFunction1D random_step(std::mt19937_64& rng, size_t max_pieces, bool nonneg) {
    std::uniform_int_distribution<size_t> pieces_dist(1, max_pieces);
    std::uniform_int_distribution<long> num_dist(nonneg ? 0 : -6, 6);
    std::uniform_int_distribution<long> den_dist(1, 4);
    const size_t pieces = pieces_dist(rng);
    std::vector<char> used(128, 0);
    std::vector<int> cuts;
    std::uniform_int_distribution<int> pos_dist(1, 127);
    while (cuts.size() + 1 < pieces) {
        const int c = pos_dist(rng);
        if (!used[c]) {
            used[c] = 1;
            cuts.push_back(c);
        }
    }
    std::sort(cuts.begin(), cuts.end());
    std::vector<Rational> bps{rat(0)};
    for (int c : cuts)
        bps.push_back(rat(c, 128));
    bps.push_back(rat(1));
    std::vector<Rational> vals;
    for (size_t i = 0; i < pieces; ++i)
        vals.push_back(rat(num_dist(rng), den_dist(rng)));
    return StepFunction1D(std::move(bps), std::move(vals));
}

struct Outcome {
    bool ok = true;
    double slack = 0.0;     // worst observed violation (<= 0 when clean)
    std::string note;
};

// --- 1: closed-form rademacher norms ---------------------------------------
Outcome rademacher_closed_form() {
    Outcome out;
    const double tol = 1e-9;
    for (const double p : {2.0, 3.0}) {
        const auto space = SymmetricSpace::lp(p);
        for (unsigned n = 0; n <= 10; ++n) {
            const double expected = std::pow(2.0, -double(n) * (p - 1.0) / p);
            const auto cert = jfx::norm1d(space, jfx::rademacher(n), {});
            const double err = std::abs(cert.value - expected);
            out.slack = std::max(out.slack, err);
            out.ok = out.ok && err <= tol && cert.mode == jfx::CertMode::exact;
        }
    }
    return out;
}

// --- 2: nonnegative functions attain their integral ------------------------
Outcome positive_cone() {
    Outcome out;
    const double tol = 1e-12;
    std::mt19937_64 rng(20001);
    const SymmetricSpace spaces[] = {SymmetricSpace::lp(2.0), SymmetricSpace::lp(3.0),
                                     SymmetricSpace::lp(1.5)};
    for (int trial = 0; trial < 200; ++trial) {
        const auto f = random_step(rng, 40, true);
        const auto cert = jfx::norm1d(spaces[trial % 3], f, {});
        const double err = std::abs(cert.value - jfx::to_double(f.integral()));
        out.slack = std::max(out.slack, err);
        out.ok = out.ok && err <= tol;
    }
    return out;
}

// --- 3: partition values never exceed the norm -----------------------------
Outcome partition_dominance() {
    Outcome out;
    const double tol = 1e-9;
    std::mt19937_64 rng(20003);
    const SymmetricSpace spaces[] = {SymmetricSpace::lp(2.0), SymmetricSpace::lp(3.0),
                                     SymmetricSpace::lorentz(2.0)};
    for (int trial = 0; trial < 120; ++trial) {
        const auto& space = spaces[trial % 3];
        const auto f = random_step(rng, space.is_lp() ? 24 : 12, false);
        const auto cert = jfx::norm1d(space, f, {});
        for (int q = 0; q < 30; ++q) {
            std::vector<Rational> pts{rat(0), rat(1)};
            std::uniform_int_distribution<long> den_dist(2, 97);
            std::uniform_int_distribution<size_t> count_dist(0, 6);
            const size_t count = count_dist(rng);
            for (size_t k = 0; k < count; ++k) {
                const long den = den_dist(rng);
                std::uniform_int_distribution<long> num_dist(1, den - 1);
                pts.push_back(rat(num_dist(rng), den));
            }
            std::sort(pts.begin(), pts.end());
            pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
            const double t = jfx::tau(space, f, Partition1D(pts));
            out.slack = std::max(out.slack, t - cert.value);
        }
        out.ok = out.ok && out.slack <= tol;
    }
    return out;
}

// --- 4: dual certificates close the gap ------------------------------------
Outcome duality_gap() {
    Outcome out;
    const double tol = 1e-9;
    std::mt19937_64 rng(20004);
    const double ps[] = {1.5, 2.0, 3.0};
    for (int trial = 0; trial < 100; ++trial) {
        const auto space = SymmetricSpace::lp(ps[trial % 3]);
        const auto f = random_step(rng, 6, false);
        const auto cert = jfx::norm1d(space, f, {});
        if (cert.value == 0.0)
            continue;
        if (!cert.dual) {
            out.ok = false;
            out.note = "missing dual";
            continue;
        }
        const double gap = std::abs(jfx::eval_dual(*cert.dual, f) - cert.value);
        const double ball = jfx::dual_norm(space, cert.dual->coefficients) - 1.0;
        out.slack = std::max({out.slack, gap, ball});
        out.ok = out.ok && gap <= tol && ball <= 1e-12;
    }
    return out;
}

// --- 5: block-pair sequences are 2-equivalent to the basis -----------------
Outcome block_equivalence() {
    Outcome out;
    const double tol = 1e-9;
    std::mt19937_64 rng(20005);
    double lo_ratio = 2.0, hi_ratio = 1.0;
    for (const size_t blocks : {4, 8, 12}) {
        std::vector<std::pair<Rational, Rational>> intervals;
        for (size_t i = 0; i < blocks; ++i)
            intervals.emplace_back(rat(long(i), long(blocks)), rat(long(i + 1), long(blocks)));
        const auto gens = jfx::block_pair_sequence(intervals);
        const SymmetricSpace spaces[] = {SymmetricSpace::lp(2.0), SymmetricSpace::lp(3.0),
                                         SymmetricSpace::lorentz(2.0)};
        for (const auto& space : spaces) {
            for (int trial = 0; trial < 20; ++trial) {
                std::uniform_int_distribution<long> num_dist(-5, 5);
                std::vector<Rational> coeffs;
                std::vector<double> a;
                bool zero = true;
                for (size_t i = 0; i < gens.size(); ++i) {
                    coeffs.push_back(rat(num_dist(rng), 2));
                    a.push_back(jfx::to_double(coeffs.back()));
                    zero = zero && coeffs.back() == 0;
                }
                if (zero)
                    continue;
                const auto f = jfx::linear_combination(coeffs, gens);
                const auto cert = jfx::norm1d(space, f, {});
                const double ratio = cert.value / jfx::norm(space, a);
                lo_ratio = std::min(lo_ratio, ratio);
                hi_ratio = std::max(hi_ratio, ratio);
            }
        }
    }
    out.slack = std::max(1.0 - lo_ratio, hi_ratio - 2.0);
    out.ok = lo_ratio >= 1.0 - tol && hi_ratio <= 2.0 + tol;
    out.note = "ratios [" + std::to_string(lo_ratio) + ", " + std::to_string(hi_ratio) + "]";
    return out;
}

// --- 6: blockwise projection is 2-bounded ----------------------------------
Outcome projection_bound() {
    Outcome out;
    const double tol = 1e-9;
    std::mt19937_64 rng(20006);
    std::vector<std::pair<Rational, Rational>> eighths;
    for (int i = 0; i < 8; ++i)
        eighths.emplace_back(rat(i, 8), rat(i + 1, 8));
    const SymmetricSpace spaces[] = {SymmetricSpace::lp(2.0), SymmetricSpace::lp(3.0),
                                     SymmetricSpace::lorentz(2.0)};
    for (int trial = 0; trial < 100; ++trial) {
        const auto& space = spaces[trial % 3];
        const auto f = random_step(rng, space.is_lp() ? 20 : 10, false);
        const auto proj = jfx::project_blockwise(f, eighths);
        const double pn = jfx::norm1d(space, proj.projection, {}).value;
        const double fn = jfx::norm1d(space, f, {}).value;
        out.slack = std::max(out.slack, pn - 2.0 * fn);
        out.ok = out.ok && pn <= 2.0 * fn + tol;
    }
    return out;
}

// --- 7: the running integral is an isometry --------------------------------
Outcome volterra_isometry() {
    Outcome out;
    const double tol = 1e-12;
    std::mt19937_64 rng(20007);
    const SymmetricSpace spaces[] = {SymmetricSpace::lp(2.0), SymmetricSpace::lp(1.5),
                                     SymmetricSpace::lorentz(2.0)};
    for (int trial = 0; trial < 200; ++trial) {
        const auto& space = spaces[trial % 3];
        const auto f = random_step(rng, space.is_lp() ? 30 : 12, false);
        const double a = jfx::norm1d(space, f, {}).value;
        const double b = jfx::vx_norm(space, jfx::volterra(f), {}).value;
        const double err = std::abs(a - b);
        out.slack = std::max(out.slack, err);
        out.ok = out.ok && err <= tol;
    }
    return out;
}

// --- 8: lifting to the plane preserves the norm ----------------------------
Outcome lift_isometry() {
    Outcome out;
    const double tol = 1e-9;
    std::mt19937_64 rng(20008);
    const SymmetricSpace spaces[] = {SymmetricSpace::lp(2.0), SymmetricSpace::lp(3.0),
                                     SymmetricSpace::lorentz(2.0)};
    for (int trial = 0; trial < 25; ++trial) {
        const auto& space = spaces[trial % 3];
        const auto f = random_step(rng, 5, false);
        const auto base = jfx::norm1d(space, f, {});
        jfx::SearchLimits limits;
        limits.grid_exact_max_cells = 16;
        const auto up = jfx::norm_grid(space, jfx::lift(GridFunction::from_step(f), 2), limits);
        if (base.mode != jfx::CertMode::exact || up.mode != jfx::CertMode::exact) {
            out.ok = false;
            out.note = "non-exhaustive search";
            continue;
        }
        const double err = std::abs(base.value - up.value);
        out.slack = std::max(out.slack, err);
        out.ok = out.ok && err <= tol;
    }
    return out;
}

// --- 9: checkerboard value and perturbation stress -------------------------
Outcome checkerboard_stress() {
    Outcome out;
    const double tol = 1e-9;
    const auto l2 = SymmetricSpace::lp(2.0);
    const GridFunction g({{rat(0), rat(1, 2), rat(1)}, {rat(0), rat(1, 2), rat(1)}},
                         {rat(1), rat(-1), rat(-1), rat(1)});
    const auto cert = jfx::norm_grid(l2, g, {});
    if (cert.value != 0.5 || cert.mode != jfx::CertMode::exact) {
        out.ok = false;
        out.note = "exhaustive value " + std::to_string(cert.value);
        return out;
    }
    std::mt19937_64 rng(20009);
    auto random_cut = [&](bool jitter) {
        if (jitter) {
            // Near the optimal cut: 1/2 +/- 2^-j.
            std::uniform_int_distribution<int> j_dist(3, 12);
            const Rational step(1, 1L << j_dist(rng));
            return (rng() & 1) ? rat(1, 2) + step : rat(1, 2) - step;
        }
        std::uniform_int_distribution<long> den_dist(3, 97);
        const long den = den_dist(rng);
        std::uniform_int_distribution<long> num_dist(1, den - 1);
        return rat(num_dist(rng), den);
    };
    for (int sample = 0; sample < 10000; ++sample) {
        // Random (mostly non-aligned) grid; every cell subset is a disjoint
        // box family, so its value must stay below the exact norm.
        std::vector<std::vector<Rational>> cuts(2);
        for (int axis = 0; axis < 2; ++axis) {
            std::vector<Rational> c{rat(0), rat(1)};
            std::uniform_int_distribution<int> extra_dist(1, 3);
            const int extra = extra_dist(rng);
            for (int k = 0; k < extra; ++k)
                c.push_back(random_cut(sample % 2 == 0));
            std::sort(c.begin(), c.end());
            c.erase(std::unique(c.begin(), c.end()), c.end());
            cuts[axis] = std::move(c);
        }
        const size_t nx = cuts[0].size() - 1, ny = cuts[1].size() - 1;
        const uint64_t cells = nx * ny;
        std::uniform_int_distribution<uint64_t> mask_dist(1, (uint64_t(1) << cells) - 1);
        const uint64_t mask = mask_dist(rng);
        std::vector<double> vals;
        for (size_t i = 0; i < nx; ++i)
            for (size_t j = 0; j < ny; ++j)
                if (mask >> (i * ny + j) & 1)
                    vals.push_back(jfx::to_double(g.integral(jfx::Box(
                        {cuts[0][i], cuts[1][j]}, {cuts[0][i + 1], cuts[1][j + 1]}))));
        const double v = jfx::norm(l2, vals);
        out.slack = std::max(out.slack, v - cert.value);
    }
    out.ok = out.slack <= tol;
    return out;
}

// --- 10: density-constrained block sums ------------------------------------
Outcome ccp_bounds() {
    Outcome out;
    std::mt19937_64 rng(20010);
    const double ps[] = {1.5, 2.0, 3.0};
    for (int trial = 0; trial < 100; ++trial) {
        const auto space = SymmetricSpace::lp(ps[trial % 3]);
        std::vector<unsigned> levels;
        std::vector<uint64_t> sizes;
        Rational remaining(1);
        unsigned level = rng() % 3;
        const size_t blocks = 1 + rng() % 4;
        for (size_t k = 0; k < blocks && level <= 10; ++k) {
            const uint64_t block = uint64_t(1) << level;
            uint64_t cap = 0;
            while (cap < block && Rational(BigInt(cap + 1), BigInt(block)) <= remaining)
                ++cap;
            const uint64_t size = cap == 0 ? 0 : rng() % (cap + 1);
            levels.push_back(level);
            sizes.push_back(size);
            remaining -= Rational(BigInt(size), BigInt(block));
            level += 1 + rng() % 3;
        }
        const double v = jfx::ccp_value(space, CcpInstance::subsets(levels, sizes));
        out.slack = std::max(out.slack, v - 1.0);
        out.ok = out.ok && v <= 1.0 + 1e-12;
    }
    for (int trial = 0; trial < 100; ++trial) {
        const auto space = SymmetricSpace::lp(ps[trial % 3]);
        std::uniform_int_distribution<long> num_dist(0, 8);
        std::vector<std::vector<Rational>> w(2);
        for (int i = 0; i < 4; ++i)
            w[0].push_back(rat(num_dist(rng), 16));
        for (int i = 0; i < 8; ++i)
            w[1].push_back(rat(num_dist(rng), 16));
        const double v = jfx::ccp_value(space, CcpInstance::with_weights({2, 3}, w));
        out.slack = std::max(out.slack, v - 2.0);
        out.ok = out.ok && v <= 2.0 + 1e-12;
    }
    // Growth schedule n_k = k + 3, k = 1..6.
    const auto rows = jfx::lorentz_growth(2.0, {4, 5, 6, 7, 8, 9});
    for (size_t k = 0; k + 1 < rows.size(); ++k)
        out.ok = out.ok && rows[k + 1].value > rows[k].value;
    for (const auto& row : rows)
        if (row.K >= 2)
            out.ok = out.ok && row.value > row.control;
    out.note = "growth " + std::to_string(rows.front().value) + " .. " +
               std::to_string(rows.back().value);
    return out;
}

// --- 11: normalized rademacher prefix sums stay bounded --------------------
Outcome rademacher_prefixes() {
    Outcome out;
    const double tol = 1e-9;
    const auto l2 = SymmetricSpace::lp(2.0);
    const std::vector<unsigned> indices{1, 3, 5, 7};
    double worst = 0.0;
    for (size_t len = 1; len <= indices.size(); ++len) {
        const std::vector<unsigned> prefix(indices.begin(), indices.begin() + len);
        worst = std::max(worst, jfx::rademacher_sum_norm(l2, prefix));
    }
    out.slack = worst - 7.0;
    out.ok = worst <= 7.0 + tol;
    out.note = "max prefix norm " + std::to_string(worst);
    return out;
}

// --- 12: haar partial sums grow monotonically ------------------------------
Outcome haar_monotone() {
    Outcome out;
    const double tol = 1e-9;
    std::mt19937_64 rng(20012);
    for (const double p : {2.0, 3.0}) {
        const auto space = SymmetricSpace::lp(p);
        for (int vec = 0; vec < 5; ++vec) {
            std::uniform_int_distribution<long> num_dist(-4, 4);
            std::vector<Rational> coeffs;
            for (int n = 0; n < 32; ++n)
                coeffs.push_back(rat(num_dist(rng), 2));
            double prev = 0.0;
            std::vector<StepFunction1D> haars;
            for (uint64_t n = 1; n <= 32; ++n)
                haars.push_back(jfx::haar(n));
            for (size_t n = 1; n <= 32; ++n) {
                const std::vector<Rational> head(coeffs.begin(), coeffs.begin() + n);
                const std::vector<StepFunction1D> gens(haars.begin(), haars.begin() + n);
                const auto sum = jfx::linear_combination(head, gens);
                const double v = jfx::norm1d(space, sum, {}).value;
                out.slack = std::max(out.slack, prev - v);
                out.ok = out.ok && prev <= v + tol;
                prev = v;
            }
        }
    }
    return out;
}

// --- 13: splitting the unit tent at one half -------------------------------
Outcome tent_split() {
    Outcome out;
    const SampledPath tent({rat(0), rat(1, 2), rat(1)}, {rat(0), rat(1), rat(0)});
    const auto res = jfx::split(tent, rat(1, 2));
    const bool measure_ok = res.support_measure == rat(1, 2);
    const double sup_g = jfx::to_double(res.bounded.sup_abs());
    out.slack = sup_g - 0.5;
    out.ok = measure_ok && sup_g <= 0.5 + 1e-12;
    out.note = measure_ok ? "support 1/2" : "support != 1/2";
    return out;
}

struct Criterion {
    int id;
    const char* what;
    double budget_seconds;
    std::function<Outcome()> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "rademacher norms match the closed form", 10, rademacher_closed_form},
        {2, "nonnegative functions attain their integral", 5, positive_cone},
        {3, "partition values never exceed the norm", 60, partition_dominance},
        {4, "dual certificates close the gap", 30, duality_gap},
        {5, "block-pair sequences are 2-equivalent to the basis", 30, block_equivalence},
        {6, "blockwise projection is 2-bounded", 30, projection_bound},
        {7, "running-integral variation equals the norm", 30, volterra_isometry},
        {8, "lifting to the plane preserves the norm", 120, lift_isometry},
        {9, "checkerboard value withstands perturbation stress", 120, checkerboard_stress},
        {10, "density-constrained block sums stay bounded", 60, ccp_bounds},
        {11, "normalized rademacher prefixes stay below 7", 120, rademacher_prefixes},
        {12, "haar partial sums grow monotonically", 60, haar_monotone},
        {13, "unit tent splits into small plus thin", 1, tent_split},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out.ok = false;
            out.note = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_budget = secs <= c.budget_seconds;
        const bool pass = out.ok && in_budget;
        failures += !pass;
        std::printf("%s %2d %-52s %7.2fs/%gs slack=%.3g%s%s\n", pass ? "PASS" : "FAIL", c.id,
                    c.what, secs, c.budget_seconds, out.slack,
                    out.note.empty() ? "" : "  ", out.note.c_str());
    }
    std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failures, criteria.size());
    return failures;
}
