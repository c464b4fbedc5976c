#pragma once

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "jfx/grid_function.hpp"
#include "jfx/jf_norm.hpp"
#include "jfx/rational.hpp"
#include "jfx/step_function.hpp"
#include "jfx/variation.hpp"

namespace jfx {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Rationals travel as strings ("p/q" or integer form) so values stay exact.
// ---------------------------------------------------------------------------

inline json rationals_to_json(const std::vector<Rational>& v) {
    json a = json::array();
    for (const auto& r : v) a.push_back(to_string(r));
    return a;
}

inline std::vector<Rational> rationals_from_json(const json& a, const std::string& field) {
    if (!a.is_array())
        throw std::invalid_argument("field '" + field + "' must be an array of rational strings");
    std::vector<Rational> out;
    out.reserve(a.size());
    for (const auto& e : a) {
        if (e.is_string())
            out.push_back(parse_rational(e.get<std::string>()));
        else if (e.is_number_integer())
            out.push_back(Rational(e.get<long long>()));
        else
            throw std::invalid_argument("field '" + field + "' must contain rational strings");
    }
    return out;
}

inline const json& require_field(const json& j, const std::string& field) {
    if (!j.is_object() || !j.contains(field))
        throw std::invalid_argument("missing field '" + field + "'");
    return j.at(field);
}

// ---------------------------------------------------------------------------
// StepFunction1D  <->  {"breakpoints": ["0","1/3","1"], "values": ["2","-1"]}
// ---------------------------------------------------------------------------

inline json to_json(const StepFunction1D& f) {
    return json{{"breakpoints", rationals_to_json(f.breakpoints)},
                {"values", rationals_to_json(f.values)}};
}

inline StepFunction1D step_from_json(const json& j) {
    StepFunction1D f;
    f.breakpoints = rationals_from_json(require_field(j, "breakpoints"), "breakpoints");
    f.values = rationals_from_json(require_field(j, "values"), "values");
    f.validate();
    return f;
}

// ---------------------------------------------------------------------------
// Box  <->  {"lo": [...], "hi": [...]}
// ---------------------------------------------------------------------------

inline json to_json(const Box& b) {
    return json{{"lo", rationals_to_json(b.lo)}, {"hi", rationals_to_json(b.hi)}};
}

inline Box box_from_json(const json& j) {
    Box b;
    b.lo = rationals_from_json(require_field(j, "lo"), "lo");
    b.hi = rationals_from_json(require_field(j, "hi"), "hi");
    b.validate();
    return b;
}

// ---------------------------------------------------------------------------
// GridFunction  <->  {"cuts": [[...],[...]], "cells": [[...],[...]]}
// "cells" is nested d deep with axis 0 outermost.
// ---------------------------------------------------------------------------

namespace detail {

inline json cells_to_json_rec(const GridFunction& g, size_t axis, size_t offset, size_t stride) {
    const size_t extent = g.axis_cuts[axis].size() - 1;
    json a = json::array();
    if (axis + 1 == g.axis_cuts.size()) {
        for (size_t i = 0; i < extent; ++i) a.push_back(to_string(g.cells[offset + i]));
        return a;
    }
    size_t inner = stride / extent;
    for (size_t i = 0; i < extent; ++i)
        a.push_back(cells_to_json_rec(g, axis + 1, offset + i * inner, inner));
    return a;
}

inline void cells_from_json_rec(const json& a, const std::vector<size_t>& extents, size_t axis,
                                std::vector<Rational>& out) {
    if (!a.is_array() || a.size() != extents[axis])
        throw std::invalid_argument("field 'cells' has wrong shape at axis " + std::to_string(axis) +
                                    ": expected " + std::to_string(extents[axis]) + " entries");
    if (axis + 1 == extents.size()) {
        for (const auto& e : a) {
            if (e.is_string())
                out.push_back(parse_rational(e.get<std::string>()));
            else if (e.is_number_integer())
                out.push_back(Rational(e.get<long long>()));
            else
                throw std::invalid_argument("field 'cells' must contain rational strings");
        }
        return;
    }
    for (const auto& e : a) cells_from_json_rec(e, extents, axis + 1, out);
}

}  // namespace detail

inline json to_json(const GridFunction& g) {
    json cuts = json::array();
    for (const auto& axis : g.axis_cuts) cuts.push_back(rationals_to_json(axis));
    size_t total = g.cells.size();
    return json{{"cuts", cuts},
                {"cells", detail::cells_to_json_rec(g, 0, 0, total)}};
}

inline GridFunction grid_from_json(const json& j) {
    const json& cuts = require_field(j, "cuts");
    if (!cuts.is_array() || cuts.empty())
        throw std::invalid_argument("field 'cuts' must be a non-empty array of cut lists");
    GridFunction g;
    std::vector<size_t> extents;
    for (size_t a = 0; a < cuts.size(); ++a) {
        g.axis_cuts.push_back(rationals_from_json(cuts[a], "cuts[" + std::to_string(a) + "]"));
        if (g.axis_cuts.back().size() < 2)
            throw std::invalid_argument("field 'cuts' axis " + std::to_string(a) +
                                        " needs at least two cut points");
        extents.push_back(g.axis_cuts.back().size() - 1);
    }
    detail::cells_from_json_rec(require_field(j, "cells"), extents, 0, g.cells);
    g.validate();
    return g;
}

// Accepts either schema; the "breakpoints" key selects the 1-D form.
using AnyFunction = std::variant<StepFunction1D, GridFunction>;

inline AnyFunction function_from_json(const json& j) {
    if (j.is_object() && j.contains("breakpoints")) return step_from_json(j);
    if (j.is_object() && j.contains("cuts")) return grid_from_json(j);
    throw std::invalid_argument("input must contain either 'breakpoints' (1-D) or 'cuts' (grid)");
}

// ---------------------------------------------------------------------------
// NormCertificate -> {"value":…, "mode":…, "family":…, "dual":…, "stats":…}
// ---------------------------------------------------------------------------

inline json to_json(const DualFunctional& d) {
    json boxes = json::array();
    for (const auto& b : d.boxes) boxes.push_back(to_json(b));
    return json{{"boxes", boxes}, {"coefficients", d.coefficients}};
}

inline json to_json(const NormCertificate& c) {
    json family = json::array();
    if (!c.partition_points.empty()) {
        family = rationals_to_json(c.partition_points);
    } else {
        for (const auto& b : c.boxes) family.push_back(to_json(b));
    }
    json dual;
    if (c.dual)
        dual = to_json(*c.dual);
    else
        dual = nullptr;
    return json{{"value", c.value},
                {"mode", to_string(c.mode)},
                {"family", family},
                {"dual", dual},
                {"stats", json{{"nodes", c.stats.nodes}, {"elapsed_ms", c.stats.elapsed_ms}}}};
}

// ---------------------------------------------------------------------------
// SampledPath  <->  {"nodes": [...], "values": [...]}
// ---------------------------------------------------------------------------

inline json to_json(const SampledPath& p) {
    return json{{"nodes", rationals_to_json(p.nodes)}, {"values", rationals_to_json(p.values)}};
}

inline SampledPath path_from_json(const json& j) {
    SampledPath p;
    p.nodes = rationals_from_json(require_field(j, "nodes"), "nodes");
    p.values = rationals_from_json(require_field(j, "values"), "values");
    p.validate();
    return p;
}

inline json to_json(const SplitResult& s) {
    json regions = json::array();
    for (const auto& r : s.regions)
        regions.push_back(json::array({to_string(r.first), to_string(r.second)}));
    return json{{"bounded", to_json(s.bounded)},
                {"residual", to_json(s.residual)},
                {"support_measure", to_string(s.support_measure)},
                {"regions", regions}};
}

}  // namespace jfx
