#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

namespace terraquad {

/// Absolute/relative snapping threshold shared by every predicate.
struct Tolerance {
    double eps = 1e-9;
};

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
    friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
    friend Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
    friend bool operator==(Point a, Point b) { return a.x == b.x && a.y == b.y; }
};

inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(b - a); }
inline Point midpoint(Point a, Point b) { return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)}; }

inline bool near(Point a, Point b, double eps) {
    return std::abs(a.x - b.x) <= eps && std::abs(a.y - b.y) <= eps;
}

struct Segment {
    Point a;
    Point b;
};

/// Line a*x + b*y + c = 0 with (a, b) scaled to unit length.
struct Line {
    double a = 0.0;
    double b = 1.0;
    double c = 0.0;

    static Line through(Point p, Point q) {
        double la = p.y - q.y;
        double lb = q.x - p.x;
        double len = std::hypot(la, lb);
        if (len == 0.0) throw std::invalid_argument("Line::through: coincident points");
        la /= len;
        lb /= len;
        return {la, lb, -(la * p.x + lb * p.y)};
    }

    /// y = m*x + k
    static Line from_slope(double m, double k) {
        double len = std::hypot(m, 1.0);
        return {-m / len, 1.0 / len, -k / len};
    }

    static Line horizontal(double y) { return {0.0, 1.0, -y}; }

    bool is_vertical(double eps = 1e-15) const { return std::abs(b) <= eps; }
    double slope() const { return -a / b; }
    double y_at(double x) const { return -(a * x + c) / b; }
    double x_at(double y) const { return -(b * y + c) / a; }
    /// Signed distance; positive on the side the normal (a, b) points to.
    double side(Point p) const { return a * p.x + b * p.y + c; }
};

enum class Orientation { LEFT, RIGHT, COLLINEAR };

/// Sign of the turn p -> q -> r. COLLINEAR when |cross| <= eps * |pq| * |pr|.
inline Orientation orientation(Point p, Point q, Point r, Tolerance tol = {}) {
    Point u = q - p;
    Point v = r - p;
    double c = cross(u, v);
    double scale = norm(u) * norm(v);
    if (std::abs(c) <= tol.eps * scale) return Orientation::COLLINEAR;
    return c > 0 ? Orientation::LEFT : Orientation::RIGHT;
}

/// Unsigned shoelace area. Throws on fewer than three points.
inline double polygon_area(const std::vector<Point>& pts) {
    if (pts.size() < 3) throw std::invalid_argument("polygon_area: fewer than 3 points");
    double s = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const Point& p = pts[i];
        const Point& q = pts[(i + 1) % pts.size()];
        s += p.x * q.y - q.x * p.y;
    }
    return 0.5 * std::abs(s);
}

/// Intersection of two lines; nullopt when parallel within eps.
inline std::optional<Point> line_intersection(const Line& l1, const Line& l2, Tolerance tol = {}) {
    double det = l1.a * l2.b - l2.a * l1.b;
    if (std::abs(det) <= tol.eps) return std::nullopt;
    double x = (l1.b * l2.c - l2.b * l1.c) / det;
    double y = (l2.a * l1.c - l1.a * l2.c) / det;
    return Point{x, y};
}

/// The unique segment with endpoints on the rays origin + s*d1 and
/// origin + t*d2 (s, t > 0) whose midpoint is m. nullopt if m is not
/// strictly inside the wedge or the rays are parallel.
inline std::optional<Segment> bisected_segment_through(Point m, Point origin, Point d1, Point d2) {
    double det = cross(d1, d2);
    double scale = norm(d1) * norm(d2);
    if (std::abs(det) <= 1e-15 * scale) return std::nullopt;
    Point rhs = 2.0 * (m - origin);
    double s = cross(rhs, d2) / det;
    double t = cross(d1, rhs) / det;
    if (!(s > 0.0) || !(t > 0.0)) return std::nullopt;
    return Segment{origin + s * d1, origin + t * d2};
}

/// Point on line l directly below or above p (same x).
inline std::optional<Point> vertical_projection(Point p, const Line& l) {
    if (l.is_vertical()) return std::nullopt;
    return Point{p.x, l.y_at(p.x)};
}

}  // namespace terraquad
