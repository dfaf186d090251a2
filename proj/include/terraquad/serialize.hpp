#pragma once

#include <string>

#include <json.hpp>

#include "terraquad/candidate_chords.hpp"
#include "terraquad/quad_solver.hpp"
#include "terraquad/rect_solver.hpp"
#include "terraquad/terrain.hpp"

namespace terraquad {

using nlohmann::json;

inline json to_json(Point p) { return json::array({p.x, p.y}); }

inline json to_json(const Quad& q) {
    return json::array({to_json(q.alpha), to_json(q.beta), to_json(q.gamma), to_json(q.delta)});
}

inline json to_json(const Rect& r) {
    return {{"x_left", r.x0}, {"x_right", r.x1}, {"height", r.h}, {"area", r.area()}};
}

inline json to_json(const std::array<EdgeKind, 3>& k) {
    return {{"left", to_string(k[0])}, {"top", to_string(k[1])}, {"right", to_string(k[2])}};
}

inline json to_json(const SolveStats& s) {
    return {{"left_candidates", s.left_candidates},
            {"right_candidates", s.right_candidates},
            {"pairs", s.pairs},
            {"hull_probes", s.hull_probes},
            {"pivots", s.pivots},
            {"top_edges", s.top_edges},
            {"elapsed_ms", s.elapsed_ms}};
}

inline json to_json(const SolveReport& r) {
    json passes = json::array();
    for (int i = 0; i < 4; ++i) {
        const PassResult& p = r.passes[i];
        passes.push_back({{"pass", to_string(static_cast<SolvePass>(i))},
                          {"area", p.area},
                          {"vertices", p.quad ? to_json(*p.quad) : json(nullptr)},
                          {"triangle_sup", p.triangle_sup}});
    }
    return {{"area", r.area},
            {"vertices", r.quad ? to_json(*r.quad) : json(nullptr)},
            {"pass", r.quad ? json(to_string(r.pass)) : json(nullptr)},
            {"edge_kinds", to_json(r.kinds)},
            {"degenerate_flag", r.degenerate},
            {"triangle_sup", r.triangle_sup},
            {"passes", passes},
            {"stats", to_json(r.stats)}};
}

inline json to_json(const RectReport& r) {
    json j = to_json(r.rect);
    j["stats"] = {{"events", r.stats.events}, {"leaves", r.stats.leaves}, {"elapsed_ms", r.stats.elapsed_ms}};
    return j;
}

inline json to_json(const CandidateEdge& c) {
    return {{"side", c.side == ChordSide::LEFT ? "left" : "right"},
            {"vertices", json::array({c.i, c.j})},
            {"slope", c.slope},
            {"foot", to_json(c.foot)},
            {"tip", to_json(c.tip)},
            {"tip_edge", c.tip_edge}};
}

inline json to_json(const CandidateSet& cs) {
    json l = json::array(), r = json::array();
    for (const auto& c : cs.left) l.push_back(to_json(c));
    for (const auto& c : cs.right) r.push_back(to_json(c));
    return {{"left", l}, {"right", r}};
}

inline json terrain_json(const Terrain& t) {
    json v = json::array();
    for (const Point& p : t.vertices()) v.push_back(to_json(p));
    return {{"vertices", v}};
}

}  // namespace terraquad
