#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "terraquad/geometry.hpp"

namespace terraquad {

enum class TerrainErrorCode {
    TOO_FEW_VERTICES,
    NOT_MONOTONE,
    BASE_NOT_ZERO,
    NONPOSITIVE_HEIGHT,
    COLLINEAR_TRIPLE,
};

inline const char* to_string(TerrainErrorCode c) {
    switch (c) {
        case TerrainErrorCode::TOO_FEW_VERTICES: return "TOO_FEW_VERTICES";
        case TerrainErrorCode::NOT_MONOTONE: return "NOT_MONOTONE";
        case TerrainErrorCode::BASE_NOT_ZERO: return "BASE_NOT_ZERO";
        case TerrainErrorCode::NONPOSITIVE_HEIGHT: return "NONPOSITIVE_HEIGHT";
        case TerrainErrorCode::COLLINEAR_TRIPLE: return "COLLINEAR_TRIPLE";
    }
    return "UNKNOWN";
}

/// Rejection of a malformed vertex chain. indices() names the offending
/// vertices (0-based): one index, or three for a collinear triple.
class TerrainError : public std::runtime_error {
public:
    TerrainError(TerrainErrorCode code, std::vector<int> indices)
        : std::runtime_error(describe(code, indices)), code_(code), indices_(std::move(indices)) {}

    TerrainErrorCode code() const { return code_; }
    const std::vector<int>& indices() const { return indices_; }

private:
    static std::string describe(TerrainErrorCode code, const std::vector<int>& idx) {
        std::string s = to_string(code);
        if (!idx.empty()) {
            s += " at (";
            for (std::size_t i = 0; i < idx.size(); ++i) {
                if (i) s += ",";
                s += std::to_string(idx[i]);
            }
            s += ")";
        }
        return s;
    }

    TerrainErrorCode code_;
    std::vector<int> indices_;
};

/// A validated 1.5D terrain: x-monotone chain from (x1, 0) to (xn, 0)
/// with every interior vertex strictly above the base line.
class Terrain {
public:
    Terrain() = default;

    std::size_t size() const { return v_.size(); }
    const Point& operator[](std::size_t i) const { return v_[i]; }
    const std::vector<Point>& vertices() const { return v_; }
    double x_min() const { return v_.front().x; }
    double x_max() const { return v_.back().x; }
    double width() const { return x_max() - x_min(); }
    double max_height() const {
        double h = 0.0;
        for (const Point& p : v_) h = std::max(h, p.y);
        return h;
    }
    const Tolerance& tolerance() const { return tol_; }

    /// Index k of the edge (v_k, v_{k+1}) containing abscissa x; the
    /// rightmost edge for x == x_max.
    std::size_t edge_at(double x) const {
        auto it = std::upper_bound(v_.begin(), v_.end(), x, [](double xv, const Point& p) { return xv < p.x; });
        std::size_t k = static_cast<std::size_t>(it - v_.begin());
        if (k == 0) return 0;
        return std::min(k - 1, v_.size() - 2);
    }

    friend Terrain validate(std::vector<Point> pts, Tolerance tol);
    friend Terrain make_unchecked(std::vector<Point> pts, Tolerance tol);

private:
    std::vector<Point> v_;
    Tolerance tol_;
};

inline Terrain make_unchecked(std::vector<Point> pts, Tolerance tol = {}) {
    Terrain t;
    t.v_ = std::move(pts);
    t.tol_ = tol;
    return t;
}

namespace detail {

// A collinear triple through vertex i, found by sorting the slopes seen
// from i; x-monotonicity makes slope a complete direction key. Every
// collinear triple holding i shows up here, whichever vertex is between.
inline std::optional<std::array<int, 3>> collinear_through(const std::vector<Point>& v, int i, Tolerance tol,
                                                           std::vector<std::pair<double, int>>& dirs) {
    const int n = static_cast<int>(v.size());
    dirs.clear();
    for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        dirs.emplace_back((v[j].y - v[i].y) / (v[j].x - v[i].x), j);
    }
    std::sort(dirs.begin(), dirs.end());
    for (std::size_t k = 0; k + 1 < dirs.size(); ++k) {
        int a = dirs[k].second;
        int b = dirs[k + 1].second;
        if (orientation(v[i], v[a], v[b], tol) == Orientation::COLLINEAR) {
            std::array<int, 3> t{i, a, b};
            std::sort(t.begin(), t.end());
            return t;
        }
    }
    return std::nullopt;
}

// Up to `limit` collinear triples (sorted indices), at most one per vertex.
inline std::vector<std::array<int, 3>> find_collinear_triples(const std::vector<Point>& v, Tolerance tol,
                                                              std::size_t limit) {
    std::vector<std::array<int, 3>> out;
    std::vector<std::pair<double, int>> dirs;
    dirs.reserve(v.size());
    for (int i = 0; i < static_cast<int>(v.size()) && out.size() < limit; ++i)
        if (auto t = collinear_through(v, i, tol, dirs)) out.push_back(*t);
    return out;
}

inline std::optional<std::array<int, 3>> find_collinear_triple(const std::vector<Point>& v, Tolerance tol) {
    auto all = find_collinear_triples(v, tol, 1);
    if (all.empty()) return std::nullopt;
    return all.front();
}

}  // namespace detail

/// Checks the chain invariants and returns the terrain, or throws TerrainError.
inline Terrain validate(std::vector<Point> pts, Tolerance tol = {}) {
    const int n = static_cast<int>(pts.size());
    if (n < 3) throw TerrainError(TerrainErrorCode::TOO_FEW_VERTICES, {});
    for (int i = 0; i < n; ++i) {
        if (!std::isfinite(pts[i].x) || !std::isfinite(pts[i].y))
            throw TerrainError(TerrainErrorCode::NOT_MONOTONE, {i});
    }
    for (int i = 1; i < n; ++i) {
        if (!(pts[i].x > pts[i - 1].x + tol.eps)) throw TerrainError(TerrainErrorCode::NOT_MONOTONE, {i});
    }
    if (std::abs(pts.front().y) > tol.eps) throw TerrainError(TerrainErrorCode::BASE_NOT_ZERO, {0});
    if (std::abs(pts.back().y) > tol.eps) throw TerrainError(TerrainErrorCode::BASE_NOT_ZERO, {n - 1});
    for (int i = 1; i + 1 < n; ++i) {
        if (!(pts[i].y > tol.eps)) throw TerrainError(TerrainErrorCode::NONPOSITIVE_HEIGHT, {i});
    }
    pts.front().y = 0.0;
    pts.back().y = 0.0;
    if (auto t = detail::find_collinear_triple(pts, tol))
        throw TerrainError(TerrainErrorCode::COLLINEAR_TRIPLE, {(*t)[0], (*t)[1], (*t)[2]});
    Terrain out;
    out.v_ = std::move(pts);
    out.tol_ = tol;
    return out;
}

/// Height of the chain at x by binary search. Throws std::out_of_range
/// outside [x_min - eps, x_max + eps].
inline double chain_height_at(const Terrain& t, double x) {
    const double eps = t.tolerance().eps;
    if (x < t.x_min() - eps || x > t.x_max() + eps) throw std::out_of_range("chain_height_at: x outside terrain");
    x = std::clamp(x, t.x_min(), t.x_max());
    std::size_t k = t.edge_at(x);
    const Point& p = t[k];
    const Point& q = t[k + 1];
    if (x == q.x) return q.y;
    double u = (x - p.x) / (q.x - p.x);
    return p.y + u * (q.y - p.y);
}

/// True when p lies in the closed region between the base and the chain.
inline bool contains_point(const Terrain& t, Point p) {
    const double eps = t.tolerance().eps;
    if (p.x < t.x_min() - eps || p.x > t.x_max() + eps) return false;
    if (p.y < -eps) return false;
    return p.y <= chain_height_at(t, p.x) + eps;
}

/// Closed-region containment of a segment, absolute tolerance eps.
inline bool contains_segment(const Terrain& t, const Segment& s) {
    const double eps = t.tolerance().eps;
    Point p = s.a;
    Point q = s.b;
    if (p.x > q.x) std::swap(p, q);
    if (!contains_point(t, p) || !contains_point(t, q)) return false;
    double dx = q.x - p.x;
    if (dx <= 0.0) return true;
    const auto& v = t.vertices();
    auto first = std::upper_bound(v.begin(), v.end(), p.x, [](double xv, const Point& w) { return xv < w.x; });
    for (auto it = first; it != v.end() && it->x < q.x; ++it) {
        double u = (it->x - p.x) / dx;
        double y = p.y + u * (q.y - p.y);
        if (y > it->y + eps) return false;
    }
    return true;
}

/// Convex quadrilateral with its base on the x-axis, corners listed
/// clockwise from the bottom-left: alpha, beta (top-left), gamma
/// (top-right), delta (bottom-right).
struct Quad {
    Point alpha;
    Point beta;
    Point gamma;
    Point delta;

    std::vector<Point> points() const { return {alpha, beta, gamma, delta}; }
    double area() const { return polygon_area(points()); }
};

inline bool contains_quad(const Terrain& t, const Quad& q) {
    const double eps = t.tolerance().eps;
    if (std::abs(q.alpha.y) > eps || std::abs(q.delta.y) > eps) return false;
    return contains_segment(t, {q.alpha, q.beta}) && contains_segment(t, {q.beta, q.gamma}) &&
           contains_segment(t, {q.gamma, q.delta});
}

/// Axis-parallel rectangle [x0, x1] x [0, h].
struct Rect {
    double x0 = 0.0;
    double x1 = 0.0;
    double h = 0.0;

    double area() const { return (x1 - x0) * h; }
    std::vector<Point> points() const { return {{x0, 0.0}, {x0, h}, {x1, h}, {x1, 0.0}}; }
};

/// The chain stays above the top side and the base covers [x0, x1].
inline bool contains_rect(const Terrain& t, const Rect& r) {
    if (!(r.x0 <= r.x1) || r.h < 0.0) return false;
    return contains_segment(t, {{r.x0, r.h}, {r.x1, r.h}});
}

/// Reflection x -> x_min + x_max - x with vertex order reversed.
inline Terrain mirror(const Terrain& t) {
    const double s = t.x_min() + t.x_max();
    std::vector<Point> out;
    out.reserve(t.size());
    for (std::size_t i = t.size(); i-- > 0;) out.push_back({s - t[i].x, t[i].y});
    out.front() = {t.x_min(), 0.0};
    out.back() = {t.x_max(), 0.0};
    return make_unchecked(std::move(out), t.tolerance());
}

inline Point mirror_point(const Terrain& t, Point p) { return {t.x_min() + t.x_max() - p.x, p.y}; }

inline Quad mirror_quad(const Terrain& t, const Quad& q) {
    return {mirror_point(t, q.delta), mirror_point(t, q.gamma), mirror_point(t, q.beta), mirror_point(t, q.alpha)};
}

}  // namespace terraquad
