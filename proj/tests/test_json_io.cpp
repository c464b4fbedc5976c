#include <catch2/catch_amalgamated.hpp>

#include <variant>

#include "jfx/json_io.hpp"

using jfx::GridFunction;
using jfx::Rational;
using jfx::StepFunction1D;
using jfx::json;

namespace {
Rational r(long num, long den = 1) { return Rational(num, den); }
}  // namespace

TEST_CASE("step functions round-trip through json") {
    const StepFunction1D f({r(0), r(1, 3), r(1)}, {r(2), r(-1, 2)});
    const json j = jfx::to_json(f);
    CHECK(j["breakpoints"][1] == "1/3");
    CHECK(j["values"][1] == "-1/2");
    const auto back = jfx::step_from_json(j);
    CHECK(back.breakpoints == f.breakpoints);
    CHECK(back.values == f.values);
}

TEST_CASE("rational entries accept strings, integers, and decimals") {
    const json j{{"breakpoints", {0, "0.5", 1}}, {"values", {"-3/4", 2}}};
    const auto f = jfx::step_from_json(j);
    CHECK(f.breakpoints[1] == r(1, 2));
    CHECK(f.values[0] == r(-3, 4));
    CHECK(f.values[1] == r(2));
}

TEST_CASE("missing and malformed fields are reported by name") {
    CHECK_THROWS_WITH(jfx::step_from_json(json{{"breakpoints", {0, 1}}}),
                      Catch::Matchers::ContainsSubstring("values"));
    CHECK_THROWS_WITH(jfx::step_from_json(json{{"values", {1}}}),
                      Catch::Matchers::ContainsSubstring("breakpoints"));
    const json bad{{"breakpoints", {0, "zzz", 1}}, {"values", {1, 2}}};
    CHECK_THROWS_AS(jfx::step_from_json(bad), std::invalid_argument);
}

TEST_CASE("grid functions round-trip with axis-0-outermost nesting") {
    // 2 x 3 grid: cells[i][j] with i the axis-0 (outer) index.
    const GridFunction g({{r(0), r(1, 2), r(1)}, {r(0), r(1, 3), r(2, 3), r(1)}},
                         {r(1), r(2), r(3), r(4), r(5), r(6)});
    const json j = jfx::to_json(g);
    REQUIRE(j["cells"].size() == 2);
    REQUIRE(j["cells"][0].size() == 3);
    CHECK(j["cells"][0][2] == "3");
    CHECK(j["cells"][1][0] == "4");
    const auto back = jfx::grid_from_json(j);
    CHECK(back.axis_cuts == g.axis_cuts);
    CHECK(back.cells == g.cells);

    // Three dimensions, 2 x 1 x 2.
    const GridFunction g3(
        {{r(0), r(1, 2), r(1)}, {r(0), r(1)}, {r(0), r(1, 4), r(1)}},
        {r(1), r(2), r(3), r(4)});
    const auto back3 = jfx::grid_from_json(jfx::to_json(g3));
    CHECK(back3.cells == g3.cells);
    CHECK(back3.dim() == 3);
}

TEST_CASE("grid shape errors name the offending axis") {
    json j{{"cuts", {{0, "1/2", 1}, {0, 1}}}, {"cells", {{1}, {2}}}};
    CHECK_NOTHROW(jfx::grid_from_json(j));
    json wrong_len{{"cuts", {{0, "1/2", 1}, {0, 1}}}, {"cells", {{1}, {2}, {3}}}};
    CHECK_THROWS_WITH(jfx::grid_from_json(wrong_len),
                      Catch::Matchers::ContainsSubstring("axis 0"));
    json wrong_inner{{"cuts", {{0, "1/2", 1}, {0, 1}}}, {"cells", {{1, 5}, {2}}}};
    CHECK_THROWS_WITH(jfx::grid_from_json(wrong_inner),
                      Catch::Matchers::ContainsSubstring("axis 1"));
}

TEST_CASE("function dispatch picks the right representation") {
    const auto f = jfx::function_from_json(
        json{{"breakpoints", {0, 1}}, {"values", {1}}});
    CHECK(std::holds_alternative<StepFunction1D>(f));
    const auto g = jfx::function_from_json(
        json{{"cuts", {{0, 1}}}, {"cells", {1}}});
    CHECK(std::holds_alternative<GridFunction>(g));
    CHECK_THROWS_WITH(jfx::function_from_json(json{{"foo", 1}}),
                      Catch::Matchers::ContainsSubstring("breakpoints"));
}

TEST_CASE("boxes round-trip") {
    const jfx::Box b({r(0), r(1, 4)}, {r(1, 2), r(1)});
    const auto back = jfx::box_from_json(jfx::to_json(b));
    CHECK(back.lo == b.lo);
    CHECK(back.hi == b.hi);
}

TEST_CASE("certificates serialize with family, dual, and stats") {
    const auto cert =
        jfx::norm1d(jfx::SymmetricSpace::lp(2.0), jfx::haar(2), {});
    const json j = jfx::to_json(cert);
    CHECK(j["value"] == 0.7071067811865476);
    CHECK(j["mode"] == "exact");
    REQUIRE(j["family"].size() == 3);
    CHECK(j["family"][1] == "1/2");
    REQUIRE(!j["dual"].is_null());
    CHECK(j["dual"]["boxes"].size() == j["dual"]["coefficients"].size());
    CHECK(j["stats"].contains("nodes"));
    CHECK(j["stats"].contains("elapsed_ms"));

    const auto lorentz_cert =
        jfx::norm1d(jfx::SymmetricSpace::lorentz(2.0), jfx::haar(2), {});
    CHECK(jfx::to_json(lorentz_cert)["dual"].is_null());

    // Grid certificates report boxes instead of partition points.
    const GridFunction g({{r(0), r(1, 2), r(1)}, {r(0), r(1, 2), r(1)}},
                         {r(1), r(-1), r(-1), r(1)});
    const auto gc = jfx::norm_grid(jfx::SymmetricSpace::lp(2.0), g, {});
    const json gj = jfx::to_json(gc);
    REQUIRE(gj["family"].size() > 0);
    CHECK(gj["family"][0].contains("lo"));
    CHECK(gj["family"][0].contains("hi"));
}

TEST_CASE("paths and split results serialize") {
    const jfx::SampledPath p({r(0), r(1, 2), r(1)}, {r(0), r(1), r(0)});
    const auto back = jfx::path_from_json(jfx::to_json(p));
    CHECK(back.nodes == p.nodes);
    CHECK(back.values == p.values);
    CHECK_THROWS_AS(
        jfx::path_from_json(json{{"nodes", {0, 1}}, {"values", {1, 0}}}),
        std::invalid_argument);

    const auto res = jfx::split(p, r(1, 2));
    const json sj = jfx::to_json(res);
    CHECK(sj["support_measure"] == "1/2");
    REQUIRE(sj["regions"].size() == 1);
    CHECK(sj["regions"][0][0] == "1/4");
    CHECK(sj["regions"][0][1] == "3/4");
    CHECK(sj["bounded"]["values"].size() == sj["residual"]["values"].size());
}
