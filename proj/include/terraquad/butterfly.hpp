#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "terraquad/candidate_chords.hpp"
#include "terraquad/geometry.hpp"
#include "terraquad/terrain.hpp"

namespace terraquad {

/// Builds the quad bounded by left edge L, top edge T, right edge R and
/// the base. nullopt unless the result is a strictly convex quad with
/// L rising, R falling and both top corners strictly above the base.
inline std::optional<Quad> quad_from_lines(const Line& L, const Line& T, const Line& R, Tolerance tol = {}) {
    const Line base = Line::horizontal(0.0);
    auto a = line_intersection(L, base, tol);
    auto b = line_intersection(L, T, tol);
    auto c = line_intersection(T, R, tol);
    auto d = line_intersection(R, base, tol);
    if (!a || !b || !c || !d) return std::nullopt;
    Quad q{*a, *b, *c, *d};
    q.alpha.y = 0.0;
    q.delta.y = 0.0;
    if (!(q.beta.y > tol.eps) || !(q.gamma.y > tol.eps)) return std::nullopt;
    if (!(q.alpha.x < q.delta.x)) return std::nullopt;
    if (!(q.beta.x > q.alpha.x) || !(q.gamma.x < q.delta.x)) return std::nullopt;
    if (!(q.beta.x < q.gamma.x)) return std::nullopt;
    const auto pts = q.points();
    for (int i = 0; i < 4; ++i) {
        if (orientation(pts[i], pts[(i + 1) % 4], pts[(i + 2) % 4], tol) != Orientation::RIGHT) return std::nullopt;
    }
    return q;
}

/// Lower convex hull of the tips p (of l) and q (of r) and the chain
/// vertices strictly between them, left to right.
inline std::vector<Point> lower_hull_between(const Terrain& t, const CandidateEdge& l, const CandidateEdge& r) {
    const double eps = t.tolerance().eps;
    if (l.side != ChordSide::LEFT || r.side != ChordSide::RIGHT)
        throw std::invalid_argument("lower_hull_between: expects a left and a right chord");
    if (l.tip.x > r.tip.x + eps) throw std::invalid_argument("lower_hull_between: l is not left of r");
    if (near(l.tip, r.tip, eps)) return {l.tip};
    std::vector<Point> pts{l.tip};
    for (int k = l.tip_edge + 1; k <= r.tip_edge; ++k) {
        if (t[k].x > l.tip.x && t[k].x < r.tip.x) pts.push_back(t[k]);
    }
    pts.push_back(r.tip);
    std::vector<Point> hull;
    for (const Point& p : pts) {
        while (hull.size() >= 2 && cross(hull.back() - hull[hull.size() - 2], p - hull[hull.size() - 2]) <= 0.0)
            hull.pop_back();
        hull.push_back(p);
    }
    return hull;
}

enum class ButterflyClass { A, V };

/// Two chords crossing at center. Tips are the segments joining the
/// chord endpoints on either side of the center; apex is where the tip
/// lines meet.
struct Butterfly {
    Segment chord1;
    Segment chord2;
    Point center;
    Segment tip_left;
    Segment tip_right;
    std::optional<Point> apex;
};

inline std::optional<Butterfly> make_butterfly(const Segment& c1, const Segment& c2, Tolerance tol = {}) {
    auto u = line_intersection(Line::through(c1.a, c1.b), Line::through(c2.a, c2.b), tol);
    if (!u) return std::nullopt;
    Butterfly b{c1, c2, *u, {c1.a, c2.a}, {c1.b, c2.b}, std::nullopt};
    if (!near(c1.a, c2.a, tol.eps) && !near(c1.b, c2.b, tol.eps))
        b.apex = line_intersection(Line::through(c1.a, c2.a), Line::through(c1.b, c2.b), tol);
    return b;
}

/// V when the apex lies on the interior side of the chord (the side
/// holding interior_ref), A otherwise or when the tips are parallel.
inline ButterflyClass classify(const Butterfly& b, const Segment& chord, Point interior_ref) {
    if (!b.apex) return ButterflyClass::A;
    Line c = Line::through(chord.a, chord.b);
    bool same = (c.side(*b.apex) > 0) == (c.side(interior_ref) > 0);
    return same ? ButterflyClass::V : ButterflyClass::A;
}

enum class TopChordKind { EXTREMAL, BALANCED };

struct TopChordResult {
    TopChordKind kind = TopChordKind::EXTREMAL;
    Segment chord;  // beta -> gamma
    Quad quad;
    double area = 0.0;
    double slope = 0.0;
};

/// Fixed (L, R) pair: wedge apex O, base corners alpha and delta.
struct PairGeometry {
    Point alpha;
    Point delta;
    Point apex;
    double sl = 0.0;  // slope of L (> 0)
    double sr = 0.0;  // slope of R (< 0)
    Point pl;         // tip of L
    Point pr;         // tip of R

    static std::optional<PairGeometry> make(const CandidateEdge& l, const CandidateEdge& r, Tolerance tol) {
        if (!(l.foot.x < r.foot.x)) return std::nullopt;
        auto o = line_intersection(l.line, r.line, tol);
        if (!o) return std::nullopt;
        return PairGeometry{l.foot, r.foot, *o, l.slope, r.slope, l.tip, r.tip};
    }

    /// The triangle alpha-apex-delta fits: both chords reach the apex.
    bool apex_inside(double eps) const { return apex.x <= pl.x + eps && apex.x >= pr.x - eps; }

    double triangle_area() const { return 0.5 * (delta.x - alpha.x) * apex.y; }
};

/// Outcome of optimizing the top edge over a fixed pair. sup_area is the
/// least upper bound over all inscribed quads of the pair, which exceeds
/// best->area only when the bound is approached by a collapsing quad.
struct TopChordOutcome {
    std::optional<TopChordResult> best;
    double sup_area = 0.0;
    long evaluations = 0;
};

namespace detail {

// Tangent of the angle below which a top edge counts as flush with a side.
inline constexpr double kFlushTan = 1e-9;

inline bool flush(double a, double b) { return std::abs(a - b) <= kFlushTan * std::abs(1.0 + a * b); }

// Quad cut by the line through u with slope s; nullopt unless proper.
// A top flush with a side collapses the quad to a triangle.
inline std::optional<TopChordResult> cut_quad(const PairGeometry& g, Point u, double s, TopChordKind kind, double eps) {
    if (!(s < g.sl) || !(s > g.sr) || flush(s, g.sl) || flush(s, g.sr)) return std::nullopt;
    double k = u.y - s * u.x;
    double bx = (k + g.sl * g.alpha.x) / (g.sl - s);
    double cx = (k + g.sr * g.delta.x) / (g.sr - s);
    Point beta{bx, k + s * bx};
    Point gamma{cx, k + s * cx};
    if (!(beta.y > eps) || !(gamma.y > eps)) return std::nullopt;
    if (!(gamma.x - beta.x > eps)) return std::nullopt;
    Quad q{g.alpha, beta, gamma, g.delta};
    return TopChordResult{kind, {beta, gamma}, q, q.area(), s};
}

inline double slope_of(Point a, Point b) { return (b.y - a.y) / (b.x - a.x); }

enum class Dir { LEFT, HERE, RIGHT };

}  // namespace detail

/// Smallest slope from a (left of every vertex) to a vertex of the
/// convex lower chain c. O(log n).
template <class Chain>
double min_slope_from(const Chain& c, Point a) {
    int lo = 0, hi = static_cast<int>(c.size()) - 1;
    while (lo < hi) {
        int m = (lo + hi) / 2;
        if (detail::slope_of(a, c[m]) > detail::slope_of(c[m], c[m + 1])) lo = m + 1;
        else hi = m;
    }
    return detail::slope_of(a, c[lo]);
}

/// Largest slope from a vertex of the convex lower chain c to d (right
/// of every vertex). O(log n).
template <class Chain>
double max_slope_to(const Chain& c, Point d) {
    int lo = 0, hi = static_cast<int>(c.size()) - 1;
    while (lo < hi) {
        int m = (lo + hi) / 2;
        if (detail::slope_of(c[m], d) > detail::slope_of(c[m], c[m + 1])) lo = m + 1;
        else hi = m;
    }
    return detail::slope_of(c[lo], d);
}

/// Optimal top edge over the support lines of a lower convex chain
/// `hull` (random access, left to right) for the pair g. The quad area
/// is unimodal in the support slope, so a binary search over hull
/// vertices finds the peak; linear_scan evaluates every candidate.
///
/// `extra`, when given, holds further constraint points (a convex chain
/// left of the hull) that only matter for the collapsing limits.
template <class Chain, class Extra = Chain>
TopChordOutcome optimize_top_chord(const Chain& hull, const PairGeometry& g, Tolerance tol, bool linear_scan = false,
                                   const Extra* extra = nullptr) {
    using detail::Dir;
    const double eps = tol.eps;
    const double inf = std::numeric_limits<double>::infinity();
    const int h = static_cast<int>(hull.size());
    TopChordOutcome out;
    if (h == 0) return out;

    Point dl = g.alpha - g.apex;
    Point dr = g.delta - g.apex;
    auto edge = [&](int k) { return k < 0 ? -inf : (k >= h - 1 ? inf : detail::slope_of(hull[k], hull[k + 1])); };
    auto on_line = [&](Point u, Point a, double s) { return std::abs(a.y + s * (u.x - a.x) - u.y) <= eps; };

    struct Probe {
        Dir dir;
        double balanced_slope;
    };
    auto probe = [&](int k) -> Probe {
        ++out.evaluations;
        Point u = hull[k];
        double lo = edge(k - 1);
        double hi = edge(k);
        if (hi <= g.sr) return {Dir::RIGHT, 0.0};
        if (lo >= g.sl) return {Dir::LEFT, 0.0};
        if (on_line(u, g.alpha, g.sl)) return {Dir::RIGHT, 0.0};
        if (on_line(u, g.delta, g.sr)) return {Dir::LEFT, 0.0};
        auto seg = bisected_segment_through(u, g.apex, dl, dr);
        if (!seg) return {u.x < g.apex.x ? Dir::RIGHT : Dir::LEFT, 0.0};
        double sb = detail::slope_of(seg->a, seg->b);
        if (sb < lo) return {Dir::LEFT, sb};
        if (sb > hi) return {Dir::RIGHT, sb};
        return {Dir::HERE, sb};
    };

    auto beta_above = [&](Point u, double s) {
        if (!(s < g.sl)) return false;
        double kk = u.y - s * u.x;
        double bx = (kk + g.sl * g.alpha.x) / (g.sl - s);
        return kk + s * bx > eps;
    };
    auto gamma_above = [&](Point u, double s) {
        if (!(s > g.sr)) return false;
        double kk = u.y - s * u.x;
        double cx = (kk + g.sr * g.delta.x) / (g.sr - s);
        return kk + s * cx > eps;
    };

    auto consider = [&](const std::optional<TopChordResult>& c) {
        if (!c) return;
        if (!out.best || c->area > out.best->area) out.best = c;
    };

    auto edge_quad = [&](int e) { return detail::cut_quad(g, hull[e], edge(e), TopChordKind::EXTREMAL, eps); };

    if (linear_scan) {
        for (int e = 0; e + 1 < h; ++e) consider(edge_quad(e));
        for (int k = 0; k < h; ++k) {
            Probe p = probe(k);
            if (p.dir == Dir::HERE) consider(detail::cut_quad(g, hull[k], p.balanced_slope, TopChordKind::BALANCED, eps));
        }
    } else {
        // first vertex whose probe is not RIGHT
        int lo = 0, hi = h;
        Probe found{Dir::LEFT, 0.0};
        while (lo < hi) {
            int mid = (lo + hi) / 2;
            Probe p = probe(mid);
            if (p.dir == Dir::RIGHT) {
                lo = mid + 1;
            } else {
                hi = mid;
                found = p;
            }
        }
        const int k = lo;
        std::optional<TopChordResult> peak;
        bool too_steep;  // peak slope is above every feasible slope
        if (k < h && found.dir == Dir::HERE) {
            peak = detail::cut_quad(g, hull[k], found.balanced_slope, TopChordKind::BALANCED, eps);
            too_steep = !beta_above(hull[k], found.balanced_slope);
        } else if (k == 0) {
            too_steep = false;
        } else if (k >= h) {
            too_steep = true;
        } else {
            peak = edge_quad(k - 1);
            too_steep = !beta_above(hull[k - 1], edge(k - 1));
        }
        if (peak) {
            consider(peak);
        } else if (h >= 2) {
            // Area is monotone on the feasible slopes; take the feasible
            // edge nearest the peak. beta feasibility is a prefix of the
            // edges, gamma feasibility a suffix.
            if (too_steep) {
                int a = -1, b = h - 2;  // largest e with beta above the base
                while (a < b) {
                    int m = (a + b + 1) / 2;
                    if (beta_above(hull[m], edge(m))) a = m; else b = m - 1;
                }
                if (a >= 0) consider(edge_quad(a));
            } else {
                int a = 0, b = h - 1;  // smallest e with gamma above the base
                while (a < b) {
                    int m = (a + b) / 2;
                    if (gamma_above(hull[m], edge(m))) b = m; else a = m + 1;
                }
                if (a <= h - 2) consider(edge_quad(a));
            }
        }
    }

    // Collapsing limits: the top edge pivots into alpha or delta.
    out.sup_area = out.best ? out.best->area : 0.0;
    double s_alpha = min_slope_from(hull, g.alpha);
    double s_delta = max_slope_to(hull, g.delta);
    if (extra && extra->size() > 0) {
        s_alpha = std::min(s_alpha, min_slope_from(*extra, g.alpha));
        s_delta = std::max(s_delta, max_slope_to(*extra, g.delta));
    }
    if (s_alpha < g.sl && s_alpha > g.sr) {
        double cx = (-s_alpha * g.alpha.x + g.sr * g.delta.x) / (g.sr - s_alpha);
        double cy = s_alpha * (cx - g.alpha.x);
        if (cy > eps) out.sup_area = std::max(out.sup_area, 0.5 * (g.delta.x - g.alpha.x) * cy);
    }
    if (s_delta < g.sl && s_delta > g.sr) {
        double bx = (-s_delta * g.delta.x + g.sl * g.alpha.x) / (g.sl - s_delta);
        double by = s_delta * (bx - g.delta.x);
        if (by > eps) out.sup_area = std::max(out.sup_area, 0.5 * (g.delta.x - g.alpha.x) * by);
    }
    return out;
}

}  // namespace terraquad
