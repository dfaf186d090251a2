#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "terraquad/oracle.hpp"
#include "terraquad/quad_solver.hpp"
#include "terraquad/rect_solver.hpp"
#include "terraquad/serialize.hpp"
#include "terraquad/terrain_io.hpp"

namespace terraquad {

struct VerifyOptions {
    bool structural = true;
    bool numeric = false;
    bool approx = false;
    bool paranoid = false;
    int restarts = 50;
    std::uint64_t seed = 1;
    /// solver against the structural oracle, relative to max(1, area)
    double rel_tol = 1e-6;
    /// numeric oracle above the structural supremum, relative
    double numeric_rel_tol = 1e-4;
    double rect_tol = 1e-9;
    double approx_tol = 1e-9;
    double mirror_tol = 1e-9;
};

struct Check {
    std::string name;
    bool pass = true;
    std::string detail;
};

struct VerifyReport {
    SolveReport quad;
    RectReport rect;
    std::optional<double> structural;
    std::optional<double> triangle;
    std::optional<double> numeric;
    std::optional<double> paranoid;
    double rect_oracle = 0.0;
    /// The quad supremum is a triangle (triangle oracle above the
    /// structural optimum), so no quad attains it.
    bool degenerate_instance = false;
    std::vector<Check> checks;

    bool ok() const {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
    }
    const Check* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
};

namespace detail {

inline std::string fmt(double v) { return format_double(v); }

}  // namespace detail

/// Runs the solvers against the selected oracles on one terrain.
inline VerifyReport verify_instance(const Terrain& t, const VerifyOptions& o = {}) {
    using detail::fmt;
    VerifyReport rep;
    rep.quad = max_quad(t);
    rep.rect = max_rect_report(t);
    const double area = rep.quad.area;
    const double eps = t.tolerance().eps;

    if (o.structural && t.size() <= kStructuralMaxVertices) {
        QuadOracleResult st = quad_oracle_structural(t);
        rep.structural = st.area;
        rep.triangle = triangle_oracle(t);
        rep.degenerate_instance = *rep.triangle > st.area * (1.0 + 1e-9) + eps;
        Check c{"quad_vs_structural", true, {}};
        if (rep.degenerate_instance) {
            c.pass = rep.quad.degenerate;
            c.detail = "triangle supremum " + fmt(*rep.triangle) + " > structural " + fmt(st.area) +
                       "; solver degenerate_flag=" + (rep.quad.degenerate ? "true" : "false");
        } else {
            const double diff = std::abs(area - st.area);
            c.pass = diff <= o.rel_tol * std::max(1.0, st.area);
            c.detail = "solver " + fmt(area) + " structural " + fmt(st.area) + " diff " + fmt(diff);
        }
        rep.checks.push_back(c);
    }
    if (o.numeric) {
        NumericOracleOptions no;
        no.restarts = o.restarts;
        no.seed = o.seed;
        QuadOracleResult nu = quad_oracle_numeric(t, no);
        rep.numeric = nu.area;
        double ref = rep.structural ? std::max(*rep.structural, rep.triangle.value_or(0.0)) : area;
        Check c{"numeric_vs_structural", true, {}};
        c.pass = nu.area <= ref * (1.0 + o.numeric_rel_tol) + eps;
        c.detail = "numeric " + fmt(nu.area) + " reference " + fmt(ref);
        rep.checks.push_back(c);
    }
    if (o.paranoid) {
        SolveOptions so;
        so.paranoid = true;
        SolveReport pr = max_quad(t, so);
        rep.paranoid = pr.area;
        Check c{"paranoid", true, {}};
        c.pass = pr.area == area;
        c.detail = "fast " + fmt(area) + " paranoid " + fmt(pr.area);
        rep.checks.push_back(c);
    }
    {
        RectOracleResult ro = rect_oracle(t);
        rep.rect_oracle = ro.rect.area();
        Check c{"rect_vs_oracle", true, {}};
        const double diff = std::abs(rep.rect.rect.area() - ro.rect.area());
        c.pass = diff <= o.rect_tol && contains_rect(t, rep.rect.rect);
        c.detail = "sweep " + fmt(rep.rect.rect.area()) + " oracle " + fmt(ro.rect.area()) + " diff " + fmt(diff);
        rep.checks.push_back(c);
    }
    {
        Terrain mt = mirror(t);
        const double mq = max_quad(mt).area;
        const double mr = max_rect(mt).area();
        Check c{"mirror", true, {}};
        c.pass = std::abs(mq - area) <= o.mirror_tol * std::max(1.0, area) &&
                 std::abs(mr - rep.rect.rect.area()) <= o.mirror_tol * std::max(1.0, mr);
        c.detail = "quad " + fmt(area) + " / " + fmt(mq) + ", rect " + fmt(rep.rect.rect.area()) + " / " + fmt(mr);
        rep.checks.push_back(c);
    }
    if (o.approx) {
        Check c{"half_approximation", true, {}};
        c.pass = rep.rect.rect.area() >= 0.5 * area - o.approx_tol;
        c.detail = "rect " + fmt(rep.rect.rect.area()) + " >= half of quad " + fmt(area);
        if (rep.quad.quad) {
            Rect w = inscribed_half_rectangle(*rep.quad.quad);
            bool wit = rect_in_quad(w, *rep.quad.quad) && w.area() >= 0.5 * area - o.approx_tol;
            c.pass = c.pass && wit;
            c.detail += "; witness " + fmt(w.area()) + (wit ? " inside" : " FAILED");
        }
        rep.checks.push_back(c);
    }
    return rep;
}

inline json to_json(const VerifyReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
    return {{"ok", r.ok()},
            {"quad", to_json(r.quad)},
            {"rect", to_json(r.rect)},
            {"oracles",
             {{"structural", opt(r.structural)},
              {"triangle", opt(r.triangle)},
              {"numeric", opt(r.numeric)},
              {"paranoid", opt(r.paranoid)},
              {"rect", r.rect_oracle}}},
            {"degenerate_instance", r.degenerate_instance},
            {"checks", checks}};
}

/// Writes DIR/STEM.json (terrain) and DIR/STEM.report.json (sidecar).
/// Returns the terrain path.
inline std::string persist_counterexample(const std::string& dir, const std::string& stem, const Terrain& t,
                                          const json& sidecar) {
    std::filesystem::create_directories(dir);
    const std::string base = (std::filesystem::path(dir) / stem).string();
    write_file(base + ".json", vertices_to_json(t.vertices()));
    write_file(base + ".report.json", sidecar.dump(2) + "\n");
    return base + ".json";
}

}  // namespace terraquad
