#pragma once

#include <cmath>
#include <vector>

#include "terraquad/geometry.hpp"
#include "terraquad/terrain.hpp"

namespace terraquad {

enum class TreeRoot { LEFT_BASE, RIGHT_BASE };

/// Geodesic tree from a base vertex. parent[root] == -1.
struct ShortestPathTree {
    TreeRoot root = TreeRoot::LEFT_BASE;
    std::vector<int> parent;
};

/// Geodesics from a base endpoint run below the chain, so the path to
/// v_k is the lower convex hull of the vertices between the root and
/// v_k. One monotone-chain sweep yields every parent.
inline ShortestPathTree shortest_path_tree(const Terrain& t, TreeRoot root) {
    const int n = static_cast<int>(t.size());
    ShortestPathTree spt{root, std::vector<int>(t.size(), -1)};
    std::vector<int> stack;
    stack.reserve(t.size());
    auto step = [&](int k, bool left_to_right) {
        // pop while the top is not strictly below the chord from below-top to k
        while (stack.size() >= 2) {
            const Point& a = t[stack[stack.size() - 2]];
            const Point& b = t[stack.back()];
            double c = cross(b - a, t[k] - a);
            bool b_on_hull = left_to_right ? c > 0 : c < 0;
            if (b_on_hull) break;
            stack.pop_back();
        }
        if (!stack.empty()) spt.parent[k] = stack.back();
        stack.push_back(k);
    };
    if (root == TreeRoot::LEFT_BASE) {
        for (int k = 0; k < n; ++k) step(k, true);
    } else {
        for (int k = n - 1; k >= 0; --k) step(k, false);
    }
    return spt;
}

enum class ChordSide { LEFT, RIGHT };

/// A maximal segment of a line through two vertices that runs inside
/// the terrain from the base (foot) up to where it leaves (tip).
/// LEFT chords rise to the right, RIGHT chords fall to the right.
/// tip_edge is the index k of the chain edge (v_k, v_{k+1}) holding the tip.
struct CandidateEdge {
    ChordSide side = ChordSide::LEFT;
    int i = 0;  // lower-indexed defining vertex
    int j = 0;  // higher-indexed defining vertex
    Line line;
    double slope = 0.0;
    Point foot;
    Point tip;
    int tip_edge = 0;

    Segment segment() const { return {foot, tip}; }
};

struct CandidateSet {
    std::vector<CandidateEdge> left;
    std::vector<CandidateEdge> right;
};

namespace detail {

inline double line_y(Point a, double slope, double x) { return a.y + slope * (x - a.x); }

// Walks away from vertex `from` along the line until the chain drops
// below it. dir = +1 walks right, -1 walks left.
inline void find_tip(const Terrain& t, CandidateEdge& c, int from, int dir) {
    const int n = static_cast<int>(t.size());
    const Point a = t[from];
    int k = from;
    while (true) {
        int nk = k + dir;
        if (nk < 0 || nk >= n) {
            c.tip = t[k];
            c.tip_edge = dir > 0 ? k : k - 1;
            return;
        }
        const Point& p = t[k];
        const Point& q = t[nk];
        double dp = line_y(a, c.slope, p.x) - p.y;
        double dq = line_y(a, c.slope, q.x) - q.y;
        if (k == from) dp = 0.0;
        if (dq > 0.0) {
            if (dp >= 0.0) {
                c.tip = p;
            } else {
                double u = dp / (dp - dq);
                c.tip = {p.x + u * (q.x - p.x), p.y + u * (q.y - p.y)};
            }
            c.tip_edge = dir > 0 ? k : nk;
            return;
        }
        k = nk;
    }
}

inline CandidateEdge make_left(const Terrain& t, int i, int j) {
    CandidateEdge c;
    c.side = ChordSide::LEFT;
    c.i = i;
    c.j = j;
    c.line = Line::through(t[i], t[j]);
    c.slope = (t[j].y - t[i].y) / (t[j].x - t[i].x);
    c.foot = i == 0 ? t[0] : Point{t[i].x - t[i].y / c.slope, 0.0};
    find_tip(t, c, j, +1);
    return c;
}

inline CandidateEdge make_right(const Terrain& t, int i, int j) {
    CandidateEdge c;
    c.side = ChordSide::RIGHT;
    c.i = i;
    c.j = j;
    c.line = Line::through(t[i], t[j]);
    c.slope = (t[j].y - t[i].y) / (t[j].x - t[i].x);
    const int last = static_cast<int>(t.size()) - 1;
    c.foot = j == last ? t[last] : Point{t[j].x - t[j].y / c.slope, 0.0};
    find_tip(t, c, i, -1);
    return c;
}

}  // namespace detail

/// Candidate side edges from the two base-rooted geodesic trees: a line
/// through two vertices reaches the base inside the terrain exactly when
/// it supports the prefix (or suffix) hull, i.e. is a tree edge.
inline CandidateSet candidate_edges(const Terrain& t) {
    CandidateSet out;
    const int n = static_cast<int>(t.size());
    ShortestPathTree lt = shortest_path_tree(t, TreeRoot::LEFT_BASE);
    ShortestPathTree rt = shortest_path_tree(t, TreeRoot::RIGHT_BASE);
    for (int k = 1; k < n; ++k) {
        int p = lt.parent[k];
        if (p >= 0 && t[k].y > t[p].y) out.left.push_back(detail::make_left(t, p, k));
    }
    for (int k = n - 2; k >= 0; --k) {
        int p = rt.parent[k];
        if (p >= 0 && t[k].y > t[p].y) out.right.push_back(detail::make_right(t, k, p));
    }
    return out;
}

/// Reference enumeration over all vertex pairs, O(n^3) or worse. Shares
/// no code with candidate_edges beyond the containment predicate.
inline CandidateSet candidate_edges_brute(const Terrain& t) {
    CandidateSet out;
    const int n = static_cast<int>(t.size());
    const double eps = t.tolerance().eps;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            Point a = t[i], b = t[j];
            double m = (b.y - a.y) / (b.x - a.x);
            if (m == 0.0) continue;
            Line line = Line::through(a, b);
            CandidateEdge c;
            c.i = i;
            c.j = j;
            c.line = line;
            c.slope = m;
            Point anchor;
            if (m > 0) {
                c.side = ChordSide::LEFT;
                c.foot = {a.x - a.y / m, 0.0};
                anchor = b;
            } else {
                c.side = ChordSide::RIGHT;
                c.foot = {b.x - b.y / m, 0.0};
                anchor = a;
            }
            if (c.foot.x < t.x_min() - eps || c.foot.x > t.x_max() + eps) continue;
            if (!contains_segment(t, {c.foot, anchor})) continue;
            // Tip: farthest crossing of the line with a chain edge beyond the
            // anchor such that the whole stretch stays inside.
            std::vector<Point> cands{anchor};
            for (int k = 0; k + 1 < n; ++k) {
                Line e = Line::through(t[k], t[k + 1]);
                auto x = line_intersection(line, e);
                if (!x) continue;
                if (x->x < t[k].x || x->x > t[k + 1].x) continue;
                bool beyond = m > 0 ? x->x > anchor.x : x->x < anchor.x;
                if (beyond) cands.push_back(*x);
            }
            Point best = anchor;
            for (const Point& p : cands) {
                bool farther = m > 0 ? p.x > best.x : p.x < best.x;
                if (farther && contains_segment(t, {anchor, p})) best = p;
            }
            c.tip = best;
            c.tip_edge = static_cast<int>(t.edge_at(best.x));
            if (m > 0 && best.x == t[c.tip_edge + 1].x && c.tip_edge + 2 < n) c.tip_edge += 1;
            if (m < 0 && best.x == t[c.tip_edge].x && c.tip_edge > 0) c.tip_edge -= 1;
            (m > 0 ? out.left : out.right).push_back(c);
        }
    }
    return out;
}

}  // namespace terraquad
