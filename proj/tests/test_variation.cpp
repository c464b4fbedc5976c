#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "jfx/jf_norm.hpp"
#include "jfx/variation.hpp"

using jfx::Partition1D;
using jfx::Rational;
using jfx::SampledPath;
using jfx::SymmetricSpace;

namespace {

Rational r(long num, long den = 1) { return Rational(num, den); }

SampledPath random_path(std::mt19937_64& rng, size_t max_interior) {
    std::uniform_int_distribution<size_t> count_dist(0, max_interior);
    std::uniform_int_distribution<long> num_dist(-8, 8);
    const size_t interior = count_dist(rng);
    std::vector<char> used(64, 0);
    std::vector<int> cuts;
    std::uniform_int_distribution<int> pos_dist(1, 63);
    while (cuts.size() < interior) {
        int c = pos_dist(rng);
        if (!used[c]) {
            used[c] = 1;
            cuts.push_back(c);
        }
    }
    std::sort(cuts.begin(), cuts.end());
    std::vector<Rational> ts{r(0)}, vs{r(0)};
    for (int c : cuts) {
        ts.push_back(r(c, 64));
        vs.push_back(r(num_dist(rng), 8));
    }
    ts.push_back(r(1));
    vs.push_back(r(num_dist(rng), 8));
    return SampledPath(std::move(ts), std::move(vs));
}

const SampledPath kLine({r(0), r(1)}, {r(0), r(1)});
const SampledPath kUnitTent({r(0), r(1, 2), r(1)}, {r(0), r(1), r(0)});
const SampledPath kHalfTent({r(0), r(1, 2), r(1)}, {r(0), r(1, 2), r(0)});

}  // namespace

TEST_CASE("path validation") {
    CHECK_THROWS_AS(SampledPath({r(0), r(1)}, {r(1, 2), r(0)}), std::invalid_argument);
    CHECK_THROWS_AS(SampledPath({r(0), r(1, 2)}, {r(0), r(1)}), std::invalid_argument);
    CHECK_THROWS_AS(SampledPath({r(0), r(1, 2), r(1, 2), r(1)}, {r(0), r(1), r(1), r(0)}),
                    std::invalid_argument);
    CHECK(kUnitTent.value_at(r(1, 4)) == r(1, 2));
    CHECK(kUnitTent.value_at(r(7, 8)) == r(1, 4));
    CHECK(kUnitTent.max_slope() == 2);
    CHECK(kUnitTent.sup_abs() == 1);
}

TEST_CASE("volterra map turns step functions into their running integral") {
    const auto f = jfx::rademacher(2);
    const auto path = jfx::volterra(f);
    CHECK(path.values[0] == 0);
    CHECK(path.value_at(r(1, 4)) == r(1, 4));
    CHECK(path.value_at(r(1, 2)) == 0);
    CHECK(path.value_at(r(1)) == 0);
}

TEST_CASE("variation of the running integral equals the function norm") {
    std::mt19937_64 rng(9101);
    std::uniform_int_distribution<long> num_dist(-4, 4);
    for (auto space : {SymmetricSpace::lp(2.0), SymmetricSpace::lp(1.5),
                       SymmetricSpace::lorentz(2.0)}) {
        for (int trial = 0; trial < 30; ++trial) {
            std::vector<Rational> bps{r(0)};
            std::vector<Rational> vals;
            for (int i = 1; i < 8; ++i)
                bps.push_back(r(i, 8));
            bps.push_back(r(1));
            for (int i = 0; i < 8; ++i)
                vals.push_back(r(num_dist(rng), 3));
            const jfx::StepFunction1D f(bps, vals);
            const auto nc = jfx::norm1d(space, f, {});
            const auto vc = jfx::vx_norm(space, jfx::volterra(f), {});
            CHECK(vc.value == nc.value);  // identical arrays feed both searches
        }
    }
}

TEST_CASE("frozen variation values") {
    const auto l2 = SymmetricSpace::lp(2.0);
    CHECK(jfx::vx_norm(l2, kLine, {}).value == 1.0);
    CHECK(jfx::vx_norm(l2, kHalfTent, {}).value ==
          Catch::Approx(std::sqrt(0.5)).margin(1e-15));
    CHECK(jfx::vx_norm(l2, kUnitTent, {}).value ==
          Catch::Approx(std::sqrt(2.0)).margin(1e-15));
    const SampledPath zero({r(0), r(1)}, {r(0), r(0)});
    CHECK(jfx::vx_norm(l2, zero, {}).value == 0.0);
}

TEST_CASE("alpha of arbitrary partitions never beats the variation") {
    std::mt19937_64 rng(9102);
    const auto space = SymmetricSpace::lp(2.0);
    for (int trial = 0; trial < 30; ++trial) {
        const auto path = random_path(rng, 6);
        const auto cert = jfx::vx_norm(space, path, {});
        // Partition through points that are mostly not nodes.
        std::uniform_int_distribution<long> den_dist(3, 97);
        std::vector<Rational> pts{r(0), r(1)};
        for (int k = 0; k < 5; ++k) {
            const long den = den_dist(rng);
            std::uniform_int_distribution<long> num_dist(1, den - 1);
            pts.push_back(r(num_dist(rng), den));
        }
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        CHECK(jfx::alpha(space, path, Partition1D(pts)) <= cert.value + 1e-9);
    }
}

TEST_CASE("modulus frozen values and bounds") {
    const auto l2 = SymmetricSpace::lp(2.0);
    CHECK(jfx::modulus(l2, kLine, r(1, 4)) == Catch::Approx(0.5).margin(1e-15));
    CHECK(jfx::modulus(l2, kLine, r(1)) == 1.0);
    const SampledPath zero({r(0), r(1)}, {r(0), r(0)});
    CHECK(jfx::modulus(l2, zero, r(1, 2)) == 0.0);
    CHECK_THROWS_AS(jfx::modulus(l2, kLine, r(0)), std::invalid_argument);
    CHECK_THROWS_AS(jfx::modulus(l2, kLine, r(2)), std::invalid_argument);
}

TEST_CASE("modulus is nondecreasing in the width bound") {
    std::mt19937_64 rng(9103);
    for (auto space : {SymmetricSpace::lp(2.0), SymmetricSpace::lorentz(2.0)}) {
        for (int trial = 0; trial < 10; ++trial) {
            const auto path = random_path(rng, 5);
            double prev = 0.0;
            for (long k : {8L, 16L, 32L, 64L}) {
                const double m = jfx::modulus(space, path, r(k, 64));
                CHECK(m >= prev - 1e-12);
                prev = m;
            }
            CHECK(jfx::modulus(space, path, r(1)) ==
                  Catch::Approx(jfx::vx_norm(space, path, {}).value).margin(1e-12));
        }
    }
}

TEST_CASE("modulus vanishes at rate sqrt(width) for lipschitz paths in l2") {
    std::mt19937_64 rng(9104);
    const auto l2 = SymmetricSpace::lp(2.0);
    for (int trial = 0; trial < 5; ++trial) {
        const auto path = random_path(rng, 4);
        const double slope = jfx::to_double(path.max_slope());
        for (int k = 1; k <= 6; ++k) {
            const Rational delta(1, 1L << k);
            CHECK(jfx::modulus(l2, path, delta) <=
                  slope * std::sqrt(jfx::to_double(delta)) + 1e-9);
        }
    }
}

TEST_CASE("frozen split of the unit tent at one half") {
    const auto res = jfx::split(kUnitTent, r(1, 2));
    CHECK(res.support_measure == r(1, 2));
    REQUIRE(res.regions.size() == 1);
    CHECK(res.regions[0].first == r(1, 4));
    CHECK(res.regions[0].second == r(3, 4));
    CHECK(res.bounded.sup_abs() == r(1, 2));
    // g rides the chord at the level across the region.
    CHECK(res.bounded.value_at(r(1, 2)) == r(1, 2));
    CHECK(res.residual.value_at(r(1, 2)) == r(1, 2));
    CHECK(res.residual.value_at(r(1, 8)) == 0);
}

TEST_CASE("split soundness on random paths") {
    std::mt19937_64 rng(9105);
    for (int trial = 0; trial < 40; ++trial) {
        const auto path = random_path(rng, 6);
        const Rational eps = r(1 + static_cast<long>(rng() % 6), 8);
        const auto res = jfx::split(path, eps);
        // g + h == f at every refined node, exactly.
        REQUIRE(res.bounded.nodes == res.residual.nodes);
        for (size_t i = 0; i < res.bounded.nodes.size(); ++i) {
            const Rational t = res.bounded.nodes[i];
            CHECK(res.bounded.values[i] + res.residual.values[i] == path.value_at(t));
        }
        CHECK(res.bounded.sup_abs() <= eps);
        // h vanishes outside the union of the regions.
        for (size_t i = 0; i < res.residual.nodes.size(); ++i) {
            const Rational t = res.residual.nodes[i];
            bool inside = false;
            for (const auto& [a, b] : res.regions)
                if (a <= t && t <= b)
                    inside = true;
            if (!inside)
                CHECK(res.residual.values[i] == 0);
        }
        Rational total(0);
        for (const auto& [a, b] : res.regions)
            total += b - a;
        CHECK(res.support_measure <= total);
        CHECK(res.support_measure <= 1);
    }
}

TEST_CASE("csv path parsing") {
    const auto p = jfx::parse_path_csv("# a comment\n0,0\n0.25,1/2\n\n1,-0.5\n");
    REQUIRE(p.nodes.size() == 3);
    CHECK(p.nodes[1] == r(1, 4));
    CHECK(p.values[1] == r(1, 2));
    CHECK(p.values[2] == r(-1, 2));

    CHECK_THROWS_WITH(jfx::parse_path_csv("0.5,0\n1,1\n"),
                      Catch::Matchers::ContainsSubstring("f(0) = 0"));
    CHECK_THROWS_WITH(jfx::parse_path_csv("0,1\n1,0\n"),
                      Catch::Matchers::ContainsSubstring("first row must be '0,0'"));
    CHECK_THROWS_WITH(jfx::parse_path_csv("0,0\nnot a row\n1,1\n"),
                      Catch::Matchers::ContainsSubstring("line 2"));
    CHECK_THROWS_AS(jfx::parse_path_csv("   \n# only comments\n"), std::invalid_argument);
    CHECK_THROWS_AS(jfx::parse_path_csv("0,0\n0.75,1\n0.5,2\n1,0\n"),
                    std::invalid_argument);
}
