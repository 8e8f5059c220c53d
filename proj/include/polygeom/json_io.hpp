#pragma once
// JSON forms of the reports.

#include "polygeom/geom_counters.hpp"
#include "polygeom/harness.hpp"
#include "polygeom/special_form.hpp"
#include "polygeom/zero_counter.hpp"

#include <json.hpp>

#include <cmath>

namespace polygeom {

using json = nlohmann::json;

namespace detail {
// NaN and infinities become null.
inline json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }
}  // namespace detail

inline json to_json(const ZeroCountReport& r) {
    return {{"count", r.count},
            {"method", to_string(r.method)},
            {"degenerate_fibers", r.degenerate_fibers},
            {"elapsed_ms", r.elapsed_ms}};
}

inline json to_json(const CountReport& r) {
    json j{{"kind", r.kind},
           {"method", r.method},
           {"count", r.count},
           {"ordered", r.ordered},
           {"max_per_plane", r.max_per_plane},
           {"max_per_line", r.max_per_line},
           {"elapsed_ms", r.elapsed_ms}};
    if (r.circles) j["circles"] = *r.circles;
    return j;
}

inline json to_json(const PopularReport& r) {
    json comps = json::array();
    for (const auto& c : r.components)
        comps.push_back({{"factor", c.factor.to_string()}, {"multiplicity", c.multiplicity}, {"popular", c.popular}});
    return {{"components", comps}, {"exceptional", r.exceptional}, {"threshold", r.threshold}};
}

inline json to_json(const FormVerdict& v) {
    json spreads = json::array();
    for (double s : v.ratio_spread) spreads.push_back(detail::number_or_null(s));
    json j{{"classification", to_string(v.classification)},
           {"ratio_spread", spreads},
           {"g_max", detail::number_or_null(v.g_max)},
           {"diagnostics", v.diagnostics}};
    j["popular"] = v.popular ? to_json(*v.popular) : json(nullptr);
    return j;
}

inline json to_json(const SlopeFit& f) {
    return {{"slope", f.slope}, {"intercept", f.intercept}, {"residual", f.residual}, {"points", f.points}};
}

inline json to_json(const ExperimentSeries& s) {
    json rows = json::array();
    for (const auto& r : s.rows) rows.push_back({{"n", r.n}, {"count", r.count}, {"elapsed_ms", r.elapsed_ms}});
    json j{{"experiment", s.id}, {"seed", s.seed}, {"rows", rows}};
    j["fit"] = s.fit ? to_json(*s.fit) : json(nullptr);
    if (!s.note.empty()) j["note"] = s.note;
    return j;
}

}  // namespace polygeom
