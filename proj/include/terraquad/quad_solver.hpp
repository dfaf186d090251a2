#pragma once

#include <algorithm>
#include <array>
#include <cassert>
#include <chrono>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "terraquad/butterfly.hpp"
#include "terraquad/candidate_chords.hpp"
#include "terraquad/hull.hpp"
#include "terraquad/rmq.hpp"
#include "terraquad/terrain.hpp"

namespace terraquad {

enum class SolvePass { EXTREMAL, BALANCED_LEFT, EXTREMAL_MIRRORED, BALANCED_RIGHT };

inline const char* to_string(SolvePass p) {
    switch (p) {
        case SolvePass::EXTREMAL: return "extremal";
        case SolvePass::BALANCED_LEFT: return "balanced_left";
        case SolvePass::EXTREMAL_MIRRORED: return "extremal_mirrored";
        case SolvePass::BALANCED_RIGHT: return "balanced_right";
    }
    return "unknown";
}

enum class EdgeKind { EXTREMAL, BALANCED };

inline const char* to_string(EdgeKind k) { return k == EdgeKind::EXTREMAL ? "extremal" : "balanced"; }

/// Best quad of one pass together with the side-edge kinds.
struct PassResult {
    std::optional<Quad> quad;
    double area = 0.0;
    /// Largest inscribed triangle met while searching; a triangle above
    /// `area` means the pass supremum is not attained.
    double triangle_sup = 0.0;
    std::array<EdgeKind, 3> kinds{EdgeKind::EXTREMAL, EdgeKind::EXTREMAL, EdgeKind::EXTREMAL};  // L, T, R
};

struct SolveStats {
    long left_candidates = 0;
    long right_candidates = 0;
    long pairs = 0;
    long hull_probes = 0;
    long pivots = 0;
    long top_edges = 0;
    double elapsed_ms = 0.0;
};

struct SolveOptions {
    /// Rebuild the hull for every pair and scan all candidates.
    bool paranoid = false;
    /// Interior angle closer than this to pi, in radians, flags a
    /// near-triangle.
    double angle_eps = 1e-7;
};

struct SolveReport {
    std::optional<Quad> quad;
    double area = 0.0;
    SolvePass pass = SolvePass::EXTREMAL;
    std::array<EdgeKind, 3> kinds{EdgeKind::EXTREMAL, EdgeKind::EXTREMAL, EdgeKind::EXTREMAL};
    std::array<PassResult, 4> passes;
    /// Set when the supremum is only approached by collapsing quads, or
    /// the returned quad is within angle_eps of a triangle.
    bool degenerate = false;
    double triangle_sup = 0.0;
    SolveStats stats;
};

namespace detail {

inline bool better(const Quad& a, double area_a, const Quad& b, double area_b) {
    double tol = 1e-12 * std::max(1.0, std::max(area_a, area_b));
    if (area_a > area_b + tol) return true;
    if (area_a < area_b - tol) return false;
    if (a.alpha.x != b.alpha.x) return a.alpha.x < b.alpha.x;
    return a.beta.x < b.beta.x;
}

inline void offer(PassResult& r, const Quad& q, double area, std::array<EdgeKind, 3> kinds) {
    if (!r.quad || better(q, area, *r.quad, r.area)) {
        r.quad = q;
        r.area = area;
        r.kinds = kinds;
    }
}

inline bool near_triangle(const Quad& q, double angle_eps, double eps) {
    auto pts = q.points();
    double diam = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) diam = std::max(diam, distance(pts[i], pts[j]));
    for (int i = 0; i < 4; ++i) {
        Point a = pts[(i + 3) % 4], b = pts[i], c = pts[(i + 1) % 4];
        if (distance(a, b) < eps * diam) return true;
        Point u = a - b, v = c - b;
        double ang = std::atan2(std::abs(cross(u, v)), dot(u, v));
        if (ang > std::numbers::pi - angle_eps) return true;
    }
    return false;
}

}  // namespace detail

/// Best top edge for one (l, r) pair, built from scratch: the lower hull
/// of the tips and the chain vertices between them, with the wedge apex
/// added when it pokes below that hull.
inline TopChordOutcome optimal_top_chord(const Terrain& t, const CandidateEdge& l, const CandidateEdge& r,
                                         bool linear_scan = false) {
    const Tolerance tol = t.tolerance();
    TopChordOutcome out;
    auto g = PairGeometry::make(l, r, tol);
    if (!g) return out;
    const Point p = l.tip;
    const Point q = r.tip;
    if (g->apex_inside(tol.eps)) {
        out.sup_area = g->triangle_area();
        return out;
    }
    if (!(p.x < q.x - tol.eps)) return out;
    std::vector<Point> pts{p};
    for (int k = l.tip_edge + 1; k <= r.tip_edge; ++k)
        if (t[k].x > p.x && t[k].x < q.x) pts.push_back(t[k]);
    pts.push_back(q);
    bool o_outside = g->apex.x < p.x || g->apex.x > q.x;
    std::vector<Point> base = lower_hull(pts);
    bool o_below = !o_outside && g->apex.y < chain_y_at(base, g->apex.x);
    std::vector<Point> hull = base;
    if (o_outside || o_below) {
        pts.push_back(g->apex);
        std::sort(pts.begin(), pts.end(), [](Point a, Point b) { return a.x < b.x; });
        hull = lower_hull(pts);
    }
    std::vector<Point> left_part;
    auto it = std::find(hull.begin(), hull.end(), g->apex);
    if (it != hull.end() && it != hull.end() - 1) {
        left_part.assign(hull.begin(), it);
        hull.erase(hull.begin(), it);
    }
    return optimize_top_chord(hull, *g, tol, linear_scan, &left_part);
}

/// Both side edges extremal: for every (l, r) pair, the top edge is
/// optimized over the lower hull of the chain between the tips. Right
/// chords are taken one at a time; left chords by decreasing tip so
/// the hull of the chain vertices only grows at its left end.
inline PassResult max_quad_extremal(const Terrain& t, const CandidateSet& cs, SolveStats& stats,
                                    const SolveOptions& opt = {}) {
    const Tolerance tol = t.tolerance();
    const double eps = tol.eps;
    PassResult res;
    std::vector<const CandidateEdge*> lefts;
    for (const auto& l : cs.left) lefts.push_back(&l);
    std::sort(lefts.begin(), lefts.end(), [](const CandidateEdge* a, const CandidateEdge* b) {
        if (a->tip.x != b->tip.x) return a->tip.x > b->tip.x;
        return a->foot.x < b->foot.x;
    });
    LeftGrowingHull stack;
    for (const auto& r : cs.right) {
        const Point q = r.tip;
        stack.clear();
        stack.push_left(q);
        int next_vertex = r.tip_edge;  // next chain vertex to push
        for (const CandidateEdge* lp : lefts) {
            const CandidateEdge& l = *lp;
            auto g = PairGeometry::make(l, r, tol);
            if (!g) continue;
            ++stats.pairs;
            const Point p = l.tip;
            if (g->apex_inside(eps)) {
                res.triangle_sup = std::max(res.triangle_sup, g->triangle_area());
                continue;
            }
            if (!(p.x < q.x - eps)) continue;
            TopChordOutcome oc;
            if (opt.paranoid) {
                oc = optimal_top_chord(t, l, r, true);
            } else {
                while (next_vertex > l.tip_edge) {
                    if (t[next_vertex].x < q.x) stack.push_left(t[next_vertex]);
                    --next_vertex;
                }
                HullView view(stack);
                view.drop_front(left_tangent(view, p));
                view.push_front(p);
                HullView left_part;
                if (g->apex.x < p.x) {
                    view.drop_front(left_tangent(view, g->apex));
                    view.push_front(g->apex);
                } else if (g->apex.x > q.x) {
                    int keep = right_tangent(view, g->apex);
                    view.drop_back(static_cast<int>(view.size()) - 1 - keep);
                    view.push_back(g->apex);
                } else if (g->apex.y < chain_y_at(view, g->apex.x)) {
                    int split = 0, hi = static_cast<int>(view.size()) - 1;  // last vertex left of the apex
                    while (split < hi) {
                        int m = (split + hi + 1) / 2;
                        if (view[m].x <= g->apex.x) split = m; else hi = m - 1;
                    }
                    left_part = view;
                    left_part.drop_back(static_cast<int>(view.size()) - 1 - split);
                    left_part.drop_back(static_cast<int>(left_part.size()) - 1 - right_tangent(left_part, g->apex));
                    HullView right_part = view;
                    right_part.drop_front(split + 1);
                    right_part.drop_front(left_tangent(right_part, g->apex));
                    right_part.push_front(g->apex);
                    view = right_part;
                }
                oc = optimize_top_chord(view, *g, tol, false, &left_part);
            }
            stats.hull_probes += oc.evaluations;
            res.triangle_sup = std::max(res.triangle_sup, oc.sup_area);
            if (oc.best) {
                EdgeKind tk = oc.best->kind == TopChordKind::BALANCED ? EdgeKind::BALANCED : EdgeKind::EXTREMAL;
                detail::offer(res, oc.best->quad, oc.best->area, {EdgeKind::EXTREMAL, tk, EdgeKind::EXTREMAL});
            }
        }
    }
    return res;
}

/// A chain vertex v about which a left edge can be balanced for a given
/// right chord, with the interval of top-left corner abscissae at
/// height 2*y(v) that keep the left edge and the trapezoid below the
/// top edge inside the terrain.
struct BalancedPivot {
    int vertex = 0;
    double height = 0.0;  // 2 * y(v)
    double beta_lo = 0.0;
    double beta_hi = 0.0;
    double right_x = 0.0;  // abscissa of the right chord at this height
};

namespace detail {

struct BalancedContext {
    const Terrain& t;
    ShortestPathTree left_tree;
    MinSparseTable heights;

    explicit BalancedContext(const Terrain& terrain)
        : t(terrain), left_tree(shortest_path_tree(terrain, TreeRoot::LEFT_BASE)), heights([&] {
              std::vector<double> ys;
              for (const Point& p : terrain.vertices()) ys.push_back(p.y);
              return ys;
          }()) {}
};

// Pivot feasibility interval; nullopt if empty.
inline std::optional<BalancedPivot> pivot_interval(const BalancedContext& ctx, const CandidateEdge& r, int k) {
    const Terrain& t = ctx.t;
    const double eps = t.tolerance().eps;
    const Point v = t[k];
    const double H = 2.0 * v.y;
    const int jq = r.tip_edge;
    const double right_x = r.foot.x + H / r.slope;
    int par = ctx.left_tree.parent[k];
    if (par < 0) return std::nullopt;
    double ps = slope_of(t[par], v);
    if (!(ps > 0.0)) return std::nullopt;
    double hi = std::min(right_x, v.x + v.y / ps);
    // last vertex below H before the tip: the top of the trapezoid starts after it
    int m = ctx.heights.last_below(k, jq, H);
    const Point a = t[m];
    const Point b = m < jq ? t[m + 1] : r.tip;
    double lo = a.x + (H - a.y) * (b.x - a.x) / (b.y - a.y);
    for (int w = k + 1; w <= m && lo < hi - eps; ++w) {
        const Point& pw = t[w];
        if (pw.y >= H) continue;
        double c = v.x + (pw.x - v.x) * v.y / (pw.y - v.y);
        lo = std::max(lo, c);
    }
    if (!(lo < hi - eps)) return std::nullopt;
    return BalancedPivot{k, H, lo, hi, right_x};
}

}  // namespace detail

/// Chain vertices that can anchor a balanced left edge against r: lower
/// than every vertex between them and the tip of r, and at most half as
/// high as the tip. Ordered left to right, so heights increase.
inline std::vector<int> pivot_candidates(const Terrain& t, const CandidateEdge& r) {
    std::vector<int> out;
    double run_min = std::numeric_limits<double>::infinity();
    for (int k = r.tip_edge; k >= 1; --k) {
        if (t[k].y < run_min) {
            if (2.0 * t[k].y < r.tip.y - t.tolerance().eps) out.push_back(k);
            run_min = t[k].y;
        }
    }
    std::reverse(out.begin(), out.end());
    return out;
}

/// Pivots with a non-empty corner interval, in left-to-right order.
inline std::vector<BalancedPivot> balanced_pivots(const Terrain& t, const CandidateEdge& r) {
    detail::BalancedContext ctx(t);
    std::vector<BalancedPivot> out;
    for (int k : pivot_candidates(t, r))
        if (auto p = detail::pivot_interval(ctx, r, k)) out.push_back(*p);
    return out;
}

/// Left edge balanced at a vertex, right edge extremal, top edge an
/// extremal chord through two hull points above the trapezoid.
inline PassResult max_quad_balanced_left(const Terrain& t, const CandidateSet& cs, SolveStats& stats,
                                         const SolveOptions& = {}) {
    const double eps = t.tolerance().eps;
    PassResult res;
    detail::BalancedContext ctx(t);
    const int n = static_cast<int>(t.size());
    std::vector<int> nxt(t.size(), -1);
    std::vector<int> stack;
    std::vector<double> xs;
    for (const Point& p : t.vertices()) xs.push_back(p.x);
    for (const auto& r : cs.right) {
        const Point q = r.tip;
        const int jq = r.tip_edge;
        std::vector<int> cands = pivot_candidates(t, r);
        if (cands.empty()) continue;
        // successor pointers of the lower hulls of every suffix of
        // vertices 1..jq closed by q (index n stands for q)
        stack.assign(1, n);
        auto pt = [&](int i) { return i == n ? q : t[i]; };
        for (int k = jq; k >= 1; --k) {
            while (stack.size() >= 2) {
                Point top = pt(stack.back());
                Point below = pt(stack[stack.size() - 2]);
                if (cross(top - t[k], below - t[k]) > 0.0) break;
                stack.pop_back();
            }
            nxt[k] = stack.back();
            stack.push_back(k);
        }
        for (int k : cands) {
            ++stats.pivots;
            auto piv = detail::pivot_interval(ctx, r, k);
            if (!piv) continue;
            const Point v = t[k];
            const double H = piv->height;
            // collapsed top edge: beta and gamma meet on the right chord
            if (piv->beta_hi >= piv->right_x - eps) {
                double ax = 2.0 * v.x - piv->right_x;
                res.triangle_sup = std::max(res.triangle_sup, 0.5 * (r.foot.x - ax) * H);
            }
            int s0 = static_cast<int>(std::upper_bound(xs.begin(), xs.end(), piv->beta_lo) - xs.begin());
            if (s0 < 1) s0 = 1;
            if (s0 > jq + 1) continue;
            // 1 keeps walking, 0 skips the edge, -1 ends the walk
            auto try_edge = [&](int a) {
                ++stats.top_edges;
                Point pa = t[a];
                Point pb = pt(nxt[a]);
                double s = detail::slope_of(pa, pb);
                if (!(s > 0.0)) return 0;
                double bx = pa.x + (H - pa.y) / s;
                if (bx < piv->beta_lo - eps) return 0;
                if (bx > piv->beta_hi + eps) return -1;
                double sl = v.y / (bx - v.x);
                if (!(s < sl) || detail::flush(s, sl)) return -1;
                if (detail::flush(s, r.slope)) {
                    // top along the right chord: the quad collapses to alpha, beta, foot
                    res.triangle_sup = std::max(res.triangle_sup, 0.5 * (r.foot.x - (2.0 * v.x - bx)) * H);
                    return 0;
                }
                double kk = pa.y - s * pa.x;
                double cx = (kk + r.slope * r.foot.x) / (r.slope - s);
                double cy = kk + s * cx;
                if (cy > q.y + eps) return -1;
                if (!(cx - bx > eps)) return 0;
                Quad quad{{2.0 * v.x - bx, 0.0}, {bx, H}, {cx, cy}, r.foot};
                detail::offer(res, quad, quad.area(), {EdgeKind::BALANCED, EdgeKind::EXTREMAL, EdgeKind::EXTREMAL});
                return 1;
            };
            // the hull edge leaving the last vertex left of beta_lo can
            // still cross the feasible segment when it lies along the chain
            if (s0 - 1 >= 1 && s0 - 1 <= jq) try_edge(s0 - 1);
            if (s0 > jq) continue;
            for (int a = s0; a != n; a = nxt[a])
                if (try_edge(a) < 0) break;
        }
    }
    return res;
}

/// Maximum-area convex quad with its base on the base line.
inline SolveReport max_quad(const Terrain& t, const SolveOptions& opt = {}) {
    auto t0 = std::chrono::steady_clock::now();
    SolveReport rep;
    CandidateSet cs = candidate_edges(t);
    Terrain mt = mirror(t);
    CandidateSet mcs = candidate_edges(mt);
    rep.stats.left_candidates = static_cast<long>(cs.left.size());
    rep.stats.right_candidates = static_cast<long>(cs.right.size());

    auto unmirror = [&](PassResult r) {
        if (r.quad) r.quad = mirror_quad(mt, *r.quad);
        std::swap(r.kinds[0], r.kinds[2]);
        return r;
    };
    rep.passes[0] = max_quad_extremal(t, cs, rep.stats, opt);
    rep.passes[1] = max_quad_balanced_left(t, cs, rep.stats, opt);
    rep.passes[2] = unmirror(max_quad_extremal(mt, mcs, rep.stats, opt));
    rep.passes[3] = unmirror(max_quad_balanced_left(mt, mcs, rep.stats, opt));

    for (int i = 0; i < 4; ++i) {
        const PassResult& pr = rep.passes[i];
        rep.triangle_sup = std::max(rep.triangle_sup, pr.triangle_sup);
        if (!pr.quad) continue;
        if (!rep.quad || detail::better(*pr.quad, pr.area, *rep.quad, rep.area)) {
            rep.quad = pr.quad;
            rep.area = pr.area;
            rep.pass = static_cast<SolvePass>(i);
            rep.kinds = pr.kinds;
        }
    }
    const double eps = t.tolerance().eps;
    rep.degenerate = rep.triangle_sup > rep.area * (1.0 + 1e-9) + eps ||
                     (rep.quad && detail::near_triangle(*rep.quad, opt.angle_eps, eps));
    rep.stats.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace terraquad
