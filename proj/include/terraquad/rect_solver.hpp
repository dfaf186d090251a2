#pragma once

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "terraquad/geometry.hpp"
#include "terraquad/rmq.hpp"
#include "terraquad/terrain.hpp"

namespace terraquad {

/// One node of the minimum-height decomposition. The node owns the
/// interior vertices first..last; u is the lowest of them. Its region is
/// the trapezoid between the edges (first-1, first) and (last, last+1)
/// from y_prev up to y(u). A leaf has no vertex besides u, so the region
/// closes at u.
struct EventNode {
    int u = -1;
    int first = 0;
    int last = 0;
    double y_prev = 0.0;
    /// Boundary crossings at y_prev (bottom corners of the trapezoid).
    Point left;
    Point right;
    /// Boundary crossings at y(u) (top corners of the trapezoid).
    Point top_left;
    Point top_right;
    int left_child = -1;
    int right_child = -1;

    bool leaf() const { return left_child < 0 && right_child < 0; }
};

struct EventTree {
    std::vector<EventNode> nodes;
    int root = -1;
};

/// Region under a trapezoid extended straight down to the base: width
/// constant on [0, y_prev], linear on [y_prev, y_top].
struct Hexagon {
    double x_a = 0.0;
    double x_d = 0.0;
    double y_prev = 0.0;
    double y_top = 0.0;
    double top_left = 0.0;
    double top_right = 0.0;

    double left_at(double h) const {
        if (h <= y_prev || y_top <= y_prev) return x_a;
        return x_a + (top_left - x_a) * (h - y_prev) / (y_top - y_prev);
    }
    double right_at(double h) const {
        if (h <= y_prev || y_top <= y_prev) return x_d;
        return x_d + (top_right - x_d) * (h - y_prev) / (y_top - y_prev);
    }
    double width(double h) const { return right_at(h) - left_at(h); }
};

namespace detail {

/// x where the edge from a (lower end) to b reaches height y, clamped to the edge.
inline double edge_x_at(Point a, Point b, double y) {
    const double den = b.y - a.y;
    if (den <= 0.0) return b.x;
    const double u = std::clamp((y - a.y) / den, 0.0, 1.0);
    return a.x + u * (b.x - a.x);
}

}  // namespace detail

/// Cartesian tree by height over the interior vertices, built with a
/// sparse-table range minimum and an explicit stack. O(n log n).
inline EventTree event_decomposition(const Terrain& t) {
    EventTree tree;
    const int n = static_cast<int>(t.size());
    if (n < 3) return tree;
    std::vector<double> ys;
    ys.reserve(t.size());
    for (const Point& p : t.vertices()) ys.push_back(p.y);
    MinSparseTable rmq(std::move(ys));

    struct Task {
        int first, last;
        double y_prev;
        Point left, right;
        int parent;
        bool is_left;
    };
    std::vector<Task> todo{{1, n - 2, 0.0, t[0], t[n - 1], -1, false}};
    tree.nodes.reserve(static_cast<std::size_t>(n));
    while (!todo.empty()) {
        Task k = todo.back();
        todo.pop_back();
        EventNode node;
        node.first = k.first;
        node.last = k.last;
        node.y_prev = k.y_prev;
        node.left = k.left;
        node.right = k.right;
        node.u = rmq.argmin(k.first, k.last);
        const double yu = t[node.u].y;
        // the bounding edges run straight from below y_prev to above y(u)
        assert(t[k.first - 1].y <= k.y_prev + t.tolerance().eps && t[k.first].y >= yu);
        assert(t[k.last + 1].y <= k.y_prev + t.tolerance().eps && t[k.last].y >= yu);
        node.top_left = node.u == k.first ? t[node.u] : Point{detail::edge_x_at(t[k.first - 1], t[k.first], yu), yu};
        node.top_right = node.u == k.last ? t[node.u] : Point{detail::edge_x_at(t[k.last + 1], t[k.last], yu), yu};
        const int id = static_cast<int>(tree.nodes.size());
        if (k.parent < 0) tree.root = id;
        else if (k.is_left) tree.nodes[k.parent].left_child = id;
        else tree.nodes[k.parent].right_child = id;
        tree.nodes.push_back(node);
        if (node.u < k.last) todo.push_back({node.u + 1, k.last, yu, t[node.u], node.top_right, id, false});
        if (node.u > k.first) todo.push_back({k.first, node.u - 1, yu, node.top_left, t[node.u], id, true});
    }
    return tree;
}

inline Hexagon hexagon_of(const EventNode& e) {
    return {e.left.x, e.right.x, e.y_prev, e.top_left.y, e.top_left.x, e.top_right.x};
}

/// Largest rectangle standing on the base inside h. Closed form: the
/// area h * width(h) is quadratic on the slanted piece.
inline Rect max_rect_in_hexagon(const Hexagon& hx) {
    auto rect_at = [&](double h) { return Rect{hx.left_at(h), hx.right_at(h), h}; };
    Rect best = rect_at(hx.y_prev);
    if (hx.y_top <= hx.y_prev) return best;
    auto consider = [&](double h) {
        Rect r = rect_at(h);
        if (r.area() > best.area()) best = r;
    };
    consider(hx.y_top);
    // width(h) = a + k h on [y_prev, y_top]
    const double w0 = hx.x_d - hx.x_a;
    const double w1 = hx.top_right - hx.top_left;
    const double k = (w1 - w0) / (hx.y_top - hx.y_prev);
    if (k < 0.0) {
        const double a = w0 - k * hx.y_prev;
        const double hs = -a / (2.0 * k);
        if (hs > hx.y_prev && hs < hx.y_top) consider(hs);
    }
    return best;
}

struct RectStats {
    long events = 0;
    long leaves = 0;
    double elapsed_ms = 0.0;
};

struct RectReport {
    Rect rect;
    /// Node of the decomposition holding the optimum.
    int event = -1;
    RectStats stats;
};

/// Maximum-area axis-parallel rectangle inside the terrain. O(n log n).
inline RectReport max_rect_report(const Terrain& t) {
    auto t0 = std::chrono::steady_clock::now();
    RectReport rep;
    EventTree tree = event_decomposition(t);
    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
        const EventNode& e = tree.nodes[i];
        ++rep.stats.events;
        if (e.leaf()) ++rep.stats.leaves;
        Rect r = max_rect_in_hexagon(hexagon_of(e));
        if (rep.event < 0 || r.area() > rep.rect.area()) {
            rep.rect = r;
            rep.event = static_cast<int>(i);
        }
    }
    rep.stats.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

inline Rect max_rect(const Terrain& t) { return max_rect_report(t).rect; }

namespace detail {

/// Right boundary of a quad at height h (h between 0 and the higher top corner).
inline double quad_right_at(const Quad& q, double h) {
    if (h <= q.gamma.y) return q.delta.x + (q.gamma.x - q.delta.x) * h / q.gamma.y;
    return q.gamma.x + (q.beta.x - q.gamma.x) * (h - q.gamma.y) / (q.beta.y - q.gamma.y);
}

inline Quad mirror_quad_about(const Quad& q, double s) {
    return {{s - q.delta.x, q.delta.y}, {s - q.gamma.x, q.gamma.y}, {s - q.beta.x, q.beta.y}, {s - q.alpha.x, q.alpha.y}};
}

}  // namespace detail

/// Axis-parallel rectangle inside q with at least half its area, built
/// from the midpoint of the higher side edge. Throws on a quad whose
/// side slopes have the wrong sign.
inline Rect inscribed_half_rectangle(const Quad& q, double eps = Tolerance{}.eps) {
    if (!(q.beta.x > q.alpha.x) || !(q.gamma.x < q.delta.x) || !(q.beta.y > 0.0) || !(q.gamma.y > 0.0))
        throw std::invalid_argument("inscribed_half_rectangle: not a base-anchored convex quad");
    if (std::abs(q.beta.y - q.gamma.y) <= eps) {
        // parallel top: the rectangle between the midpoints of both sides
        Point i = midpoint(q.alpha, q.beta);
        Point l = midpoint(q.delta, q.gamma);
        return {i.x, l.x, std::min(i.y, l.y)};
    }
    if (q.beta.y < q.gamma.y) {
        const double s = q.alpha.x + q.delta.x;
        Rect r = inscribed_half_rectangle(detail::mirror_quad_about(q, s), eps);
        return {s - r.x1, s - r.x0, r.h};
    }
    // beta higher: the horizontal through the midpoint of the left side
    // meets either the top edge or the right edge
    Point rm = midpoint(q.alpha, q.beta);
    return {rm.x, detail::quad_right_at(q, rm.y), rm.y};
}

/// Corner containment of r in the convex quad q.
inline bool rect_in_quad(const Rect& r, const Quad& q, double eps = Tolerance{}.eps) {
    auto pts = q.points();
    for (Point c : r.points()) {
        for (int i = 0; i < 4; ++i) {
            Point a = pts[i], b = pts[(i + 1) % 4];
            if (cross(b - a, c - a) > eps * std::max(1.0, norm(b - a))) return false;
        }
    }
    return r.x0 <= r.x1 && r.h >= 0.0;
}

}  // namespace terraquad
