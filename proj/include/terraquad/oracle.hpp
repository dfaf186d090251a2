#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "terraquad/butterfly.hpp"
#include "terraquad/candidate_chords.hpp"
#include "terraquad/geometry.hpp"
#include "terraquad/rng.hpp"
#include "terraquad/terrain.hpp"

namespace terraquad {

/// Size guard for the O(n^5) structural enumeration.
inline constexpr std::size_t kStructuralMaxVertices = 14;

struct QuadOracleResult {
    std::optional<Quad> quad;
    double area = 0.0;
    long candidates = 0;
};

namespace oracle_detail {

inline void keep(QuadOracleResult& r, const Terrain& t, const std::optional<Quad>& q) {
    ++r.candidates;
    if (!q || !contains_quad(t, *q)) return;
    double a = q->area();
    if (!r.quad || a > r.area) {
        r.quad = q;
        r.area = a;
    }
}

// Balanced edge through v inside the wedge at apex with rays d1, d2,
// returned as a line; nullopt when v is outside the wedge.
inline std::optional<Line> balanced_line(Point v, Point apex, Point d1, Point d2) {
    auto seg = bisected_segment_through(v, apex, d1, d2);
    if (!seg || near(seg->a, seg->b, 0.0)) return std::nullopt;
    return Line::through(seg->a, seg->b);
}

}  // namespace oracle_detail

/// Exhaustive enumeration of the structural candidate set: side edges
/// from the brute-force chord lists, top edges through pairs of vertices
/// or chord exit points, and every way of balancing one edge about a vertex against the
/// other two. O(n^4) quads, each checked for containment in O(n).
inline QuadOracleResult quad_oracle_structural(const Terrain& t) {
    if (t.size() > kStructuralMaxVertices) throw std::invalid_argument("quad_oracle_structural: instance too large");
    using oracle_detail::balanced_line;
    using oracle_detail::keep;
    const Tolerance tol = t.tolerance();
    const int n = static_cast<int>(t.size());
    QuadOracleResult res;
    CandidateSet cs = candidate_edges_brute(t);
    std::vector<Line> pair_lines;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!(t[i].y == 0.0 && t[j].y == 0.0)) pair_lines.push_back(Line::through(t[i], t[j]));
    const Line base = Line::horizontal(0.0);

    for (const auto& l : cs.left) {
        for (const auto& r : cs.right) {
            for (const Line& T : pair_lines) keep(res, t, quad_from_lines(l.line, T, r.line, tol));
            // top lines through a chord's exit point on the chain
            for (Point tip : {l.tip, r.tip}) {
                for (int k = 0; k < n; ++k)
                    if (!near(tip, t[k], tol.eps)) keep(res, t, quad_from_lines(l.line, Line::through(tip, t[k]), r.line, tol));
            }
            if (!near(l.tip, r.tip, tol.eps)) keep(res, t, quad_from_lines(l.line, Line::through(l.tip, r.tip), r.line, tol));
            auto o = line_intersection(l.line, r.line, tol);
            if (!o) continue;
            for (int k = 0; k < n; ++k) {
                auto T = balanced_line(t[k], *o, l.foot - *o, r.foot - *o);
                if (T) keep(res, t, quad_from_lines(l.line, *T, r.line, tol));
            }
        }
    }
    for (const Line& T : pair_lines) {
        if (T.is_vertical() || std::abs(T.slope()) < 1e-15) continue;
        auto x = line_intersection(T, base, tol);
        if (!x) continue;
        double s = T.slope();
        // balanced left edge: wedge between the base and T, opening toward the quad
        Point d_base = s > 0 ? Point{1.0, 0.0} : Point{-1.0, 0.0};
        Point d_top = s > 0 ? Point{1.0, s} : Point{-1.0, -s};
        for (int k = 0; k < n; ++k) {
            // the same segment serves as a left or a right edge by its slope
            auto B = balanced_line(t[k], *x, d_base, d_top);
            if (!B) continue;
            for (const auto& r : cs.right) keep(res, t, quad_from_lines(*B, T, r.line, tol));
            for (const auto& l : cs.left) keep(res, t, quad_from_lines(l.line, T, *B, tol));
        }
    }
    return res;
}

struct NumericOracleOptions {
    int restarts = 50;
    std::uint64_t seed = 1;
    int max_iterations = 4000;
    double min_step = 1e-7;
};

/// Derivative-free local search over the six free corner coordinates
/// with an exact L-infinity containment penalty. Returns the best
/// strictly feasible quad seen. A lower bound only.
inline QuadOracleResult quad_oracle_numeric(const Terrain& t, const NumericOracleOptions& opt = {}) {
    QuadOracleResult res;
    const double eps = t.tolerance().eps;
    const double x0 = t.x_min(), x1 = t.x_max();
    const double H = t.max_height();
    const double D = std::max(t.width(), H);
    const double lambda = 1e3 * std::max(1.0, t.width() * H);
    const auto& v = t.vertices();

    // z = {a, bx, by, cx, cy, d}
    auto violation = [&](const std::array<double, 6>& z) {
        double a = z[0], bx = z[1], by = z[2], cx = z[3], cy = z[4], d = z[5];
        double viol = 0.0;
        auto pos = [](double u) { return u > 0 ? u : 0.0; };
        viol += pos(x0 - a) + pos(d - x1);
        viol += pos(a - bx) + pos(bx - cx) + pos(cx - d);
        viol += pos(-by) + pos(-cy);
        if (bx > a && cx > bx && d > cx && by > 0 && cy > 0) {
            double sl = by / (bx - a), st = (cy - by) / (cx - bx), sr = -cy / (d - cx);
            viol += D * (pos(st - sl) + pos(sr - st));
            // top polyline vs chain at every breakpoint
            auto poly = [&](double x) {
                if (x <= bx) return sl * (x - a);
                if (x <= cx) return by + st * (x - bx);
                return sr * (x - d);
            };
            double worst = 0.0;
            for (double x : {bx, cx}) {
                if (x >= x0 && x <= x1) worst = std::max(worst, poly(x) - chain_height_at(t, x));
            }
            auto it = std::upper_bound(v.begin(), v.end(), a, [](double xv, const Point& p) { return xv < p.x; });
            for (; it != v.end() && it->x < d; ++it) worst = std::max(worst, poly(it->x) - it->y);
            viol += worst;
        } else {
            viol += D;
        }
        return viol;
    };
    auto area = [](const std::array<double, 6>& z) {
        Quad q{{z[0], 0}, {z[1], z[2]}, {z[3], z[4]}, {z[5], 0}};
        return q.area();
    };
    auto objective = [&](const std::array<double, 6>& z) { return area(z) - lambda * violation(z); };
    auto to_quad = [](const std::array<double, 6>& z) {
        return Quad{{z[0], 0.0}, {z[1], z[2]}, {z[3], z[4]}, {z[5], 0.0}};
    };
    auto record = [&](const std::array<double, 6>& z) {
        if (violation(z) > 0.0) return;
        Quad q = to_quad(z);
        if (!contains_quad(t, q)) return;
        if (orientation(q.alpha, q.beta, q.gamma) != Orientation::RIGHT ||
            orientation(q.beta, q.gamma, q.delta) != Orientation::RIGHT)
            return;
        double a = q.area();
        if (!res.quad || a > res.area) {
            res.quad = q;
            res.area = a;
        }
    };

    Rng rng(opt.seed);
    auto gauss = [&] {
        // Box-Muller on the 53-bit stream
        double u1 = std::max(rng.uniform(), 0x1.0p-53), u2 = rng.uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    };
    // homothety about the base point below the centroid; keeps the base on y = 0
    auto shrink = [](const std::array<double, 6>& z, double s) {
        const double c = 0.25 * (z[0] + z[1] + z[3] + z[5]);
        return std::array<double, 6>{c + s * (z[0] - c), c + s * (z[1] - c), s * z[2],
                                     c + s * (z[3] - c), s * z[4], c + s * (z[5] - c)};
    };
    auto polish = [&](const std::array<double, 6>& z) {
        if (violation(z) <= 0.0) return;
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 60; ++it) {
            double m = 0.5 * (lo + hi);
            if (violation(shrink(z, m)) <= 0.0) lo = m;
            else hi = m;
        }
        if (lo > 0.0) record(shrink(z, lo));
    };

    for (int rs = 0; rs < opt.restarts; ++rs) {
        // random trapezoid under the chain
        double a = rng.uniform(x0, x1), d = rng.uniform(x0, x1);
        if (a > d) std::swap(a, d);
        if (d - a < 1e-6 * t.width()) continue;
        double lowest = std::min(chain_height_at(t, a), chain_height_at(t, d));
        for (const Point& p : v)
            if (p.x > a && p.x < d) lowest = std::min(lowest, p.y);
        double h = 0.5 * lowest;
        if (h <= eps) continue;
        double w = d - a;
        std::array<double, 6> z{a, a + 0.25 * w, h, d - 0.25 * w, h, d};
        double f = objective(z);
        record(z);
        double step = D / 4;
        int it = 0;
        while (step > opt.min_step && it < opt.max_iterations) {
            ++it;
            bool improved = false;
            for (int c = 0; c < 6 && !improved; ++c) {
                for (double sgn : {1.0, -1.0}) {
                    auto z2 = z;
                    z2[c] += sgn * step;
                    double f2 = objective(z2);
                    if (f2 > f) {
                        z = z2;
                        f = f2;
                        improved = true;
                        record(z);
                        break;
                    }
                }
            }
            // random directions escape the ridges of the penalty
            for (int k = 0; k < 8 && !improved; ++k) {
                auto z2 = z;
                double nrm = 0.0;
                std::array<double, 6> dir{};
                for (auto& e : dir) {
                    e = gauss();
                    nrm += e * e;
                }
                nrm = std::sqrt(nrm);
                for (int c = 0; c < 6; ++c) z2[c] += step * dir[c] / nrm;
                double f2 = objective(z2);
                if (f2 > f) {
                    z = z2;
                    f = f2;
                    improved = true;
                    record(z);
                }
            }
            if (!improved) step *= 0.5;
        }
        record(z);
        polish(z);
    }
    return res;
}

/// Largest triangle with its base on the base line inside the terrain
/// (exact for a given apex, apex searched over vertices, crossings of
/// vertex-pair lines, and 1D maximization along chain edges and
/// vertex-pair lines). Used to recognise instances whose quad supremum
/// is a triangle.
inline double triangle_oracle(const Terrain& t) {
    const int n = static_cast<int>(t.size());
    const double eps = t.tolerance().eps;
    const auto& v = t.vertices();
    auto tri = [&](Point o) -> double {
        if (!(o.y > eps) || o.x <= t.x_min() || o.x >= t.x_max()) return 0.0;
        const double h = chain_height_at(t, o.x);
        if (o.y > h + eps) return 0.0;
        o.y = std::min(o.y, h);
        double a = t.x_min(), d = t.x_max();
        for (const Point& w : v) {
            if (w.y >= o.y) continue;
            double xi = w.x - w.y * (o.x - w.x) / (o.y - w.y);
            if (w.x < o.x) a = std::max(a, xi);
            else if (w.x > o.x) d = std::min(d, xi);
            else return 0.0;
        }
        if (!(d > a)) return 0.0;
        return 0.5 * o.y * (d - a);
    };
    double best = 0.0;
    for (const Point& w : v) best = std::max(best, tri(w));
    std::vector<Line> lines;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) lines.push_back(Line::through(v[i], v[j]));
    for (std::size_t i = 0; i < lines.size(); ++i)
        for (std::size_t j = i + 1; j < lines.size(); ++j)
            if (auto x = line_intersection(lines[i], lines[j])) best = std::max(best, tri(*x));
    auto search = [&](Point p, Point q) {
        const int samples = 256;
        double bu = 0.0, bv = -1.0;
        for (int s = 0; s <= samples; ++s) {
            double u = static_cast<double>(s) / samples;
            double val = tri(p + u * (q - p));
            if (val > bv) {
                bv = val;
                bu = u;
            }
        }
        double lo = std::max(0.0, bu - 1.0 / samples), hi = std::min(1.0, bu + 1.0 / samples);
        const double g = 0.5 * (std::sqrt(5.0) - 1.0);
        for (int it = 0; it < 80; ++it) {
            double m1 = hi - g * (hi - lo), m2 = lo + g * (hi - lo);
            if (tri(p + m1 * (q - p)) < tri(p + m2 * (q - p))) lo = m1;
            else hi = m2;
        }
        best = std::max({best, bv, tri(p + (0.5 * (lo + hi)) * (q - p))});
    };
    for (int k = 0; k + 1 < n; ++k) search(v[k], v[k + 1]);
    for (const Line& l : lines) {
        if (l.is_vertical()) continue;
        // clip the line to the terrain's x-range and positive heights
        double xa = t.x_min(), xb = t.x_max();
        Point p{xa, l.y_at(xa)}, q{xb, l.y_at(xb)};
        search(p, q);
    }
    return best;
}

struct RectOracleResult {
    Rect rect;
    long pieces = 0;
};

/// Exact maximum rectangle by scanning heights: between consecutive
/// distinct vertex heights every component of {chain >= h} keeps its
/// two boundary edges, so each component's width is linear and the
/// area quadratic there. O(n^2).
inline RectOracleResult rect_oracle(const Terrain& t) {
    RectOracleResult res;
    const auto& v = t.vertices();
    const int n = static_cast<int>(v.size());
    std::vector<double> hs{0.0};
    for (const Point& p : v) hs.push_back(p.y);
    std::sort(hs.begin(), hs.end());
    hs.erase(std::unique(hs.begin(), hs.end()), hs.end());
    auto cross_x = [&](int k, double h) {
        // edge (k, k+1) crosses height h
        const Point& a = v[k];
        const Point& b = v[k + 1];
        return a.x + (b.x - a.x) * (h - a.y) / (b.y - a.y);
    };
    auto offer = [&](double x0, double x1, double h) {
        Rect r{x0, x1, h};
        if (r.area() > res.rect.area()) res.rect = r;
    };
    for (std::size_t s = 0; s + 1 < hs.size(); ++s) {
        const double lo = hs[s], hi = hs[s + 1];
        const double mid = 0.5 * (lo + hi);
        // components of {chain >= mid}: from an upward crossing to the next downward one
        int k = 0;
        while (k + 1 < n) {
            if (!(v[k].y < mid && v[k + 1].y > mid)) {
                ++k;
                continue;
            }
            const int a = k;
            int b = k + 1;
            while (b + 1 < n && !(v[b].y > mid && v[b + 1].y < mid)) ++b;
            if (b + 1 >= n) break;
            ++res.pieces;
            // left x(h) = p0 + p1 h, right x(h) = q0 + q1 h
            const double p1 = (v[a + 1].x - v[a].x) / (v[a + 1].y - v[a].y);
            const double q1 = (v[b + 1].x - v[b].x) / (v[b + 1].y - v[b].y);
            const double w1 = q1 - p1;
            auto left = [&](double h) { return cross_x(a, h); };
            auto right = [&](double h) { return cross_x(b, h); };
            offer(left(lo), right(lo), lo);
            offer(left(hi), right(hi), hi);
            if (w1 < 0.0) {
                const double w0 = right(0.0) - left(0.0);
                const double hs_ = -w0 / (2.0 * w1);
                if (hs_ > lo && hs_ < hi) offer(left(hs_), right(hs_), hs_);
            }
            k = b + 1;
        }
    }
    return res;
}

}  // namespace terraquad
