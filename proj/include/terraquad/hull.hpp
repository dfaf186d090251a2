#pragma once

#include <algorithm>
#include <array>
#include <cassert>
#include <vector>

#include "terraquad/geometry.hpp"

namespace terraquad {

/// Lower convex hull that only ever grows at its left end. Points must
/// arrive with strictly decreasing x. Stored rightmost-first, so the
/// hull read left to right is the stack read top-down.
class LeftGrowingHull {
public:
    void clear() { pts_.clear(); }
    std::size_t size() const { return pts_.size(); }
    const std::vector<Point>& raw() const { return pts_; }

    void push_left(Point w) {
        while (pts_.size() >= 2) {
            const Point& top = pts_.back();
            const Point& below = pts_[pts_.size() - 2];
            if (cross(top - w, below - w) > 0.0) break;
            pts_.pop_back();
        }
        pts_.push_back(w);
    }

private:
    std::vector<Point> pts_;
};

/// Random-access window onto a hull assembled from at most two loose
/// points on the left, a contiguous slice of a LeftGrowingHull, and at
/// most one loose point on the right. Copying is O(1).
class HullView {
public:
    HullView() = default;
    explicit HullView(const LeftGrowingHull& h) : stack_(&h.raw()), top_(static_cast<int>(h.size()) - 1), bottom_(0) {}

    std::size_t size() const { return static_cast<std::size_t>(nhead_ + mid() + ntail_); }

    Point operator[](std::size_t idx) const {
        int i = static_cast<int>(idx);
        if (i < nhead_) return head_[i];
        i -= nhead_;
        if (i < mid()) return (*stack_)[top_ - i];
        return tail_;
    }

    void drop_front(int k) {
        for (; k > 0 && nhead_ > 0; --k) {
            head_[0] = head_[1];
            --nhead_;
        }
        int m = std::min(k, mid());
        top_ -= m;
        k -= m;
        if (k > 0) ntail_ = 0;
    }

    void drop_back(int k) {
        if (k > 0 && ntail_ > 0) {
            ntail_ = 0;
            --k;
        }
        int m = std::min(k, mid());
        bottom_ += m;
        k -= m;
        nhead_ = std::max(0, nhead_ - k);
    }

    void push_front(Point p) {
        assert(nhead_ < 2);
        head_[1] = head_[0];
        head_[0] = p;
        ++nhead_;
    }

    void push_back(Point p) {
        assert(ntail_ == 0);
        tail_ = p;
        ntail_ = 1;
    }

private:
    int mid() const { return stack_ ? top_ - bottom_ + 1 : 0; }

    std::array<Point, 2> head_{};
    int nhead_ = 0;
    const std::vector<Point>* stack_ = nullptr;
    int top_ = -1;
    int bottom_ = 0;
    Point tail_{};
    int ntail_ = 0;
};

/// Index of the first vertex of convex lower chain c that survives when
/// a new point x is added on the left. O(log n).
template <class Chain>
int left_tangent(const Chain& c, Point x) {
    int lo = 0, hi = static_cast<int>(c.size()) - 1;
    while (lo < hi) {
        int m = (lo + hi) / 2;
        if (cross(c[m] - x, c[m + 1] - x) > 0.0) hi = m;
        else lo = m + 1;
    }
    return lo;
}

/// Index of the last vertex of convex lower chain c that survives when
/// a new point x is added on the right. O(log n).
template <class Chain>
int right_tangent(const Chain& c, Point x) {
    int lo = 0, hi = static_cast<int>(c.size()) - 1;
    while (lo < hi) {
        int m = (lo + hi + 1) / 2;
        if (cross(c[m] - c[m - 1], x - c[m - 1]) > 0.0) lo = m;
        else hi = m - 1;
    }
    return lo;
}

/// Height of convex chain c at abscissa x (x within its range). O(log n).
template <class Chain>
double chain_y_at(const Chain& c, double x) {
    int lo = 0, hi = static_cast<int>(c.size()) - 1;
    if (hi == 0) return c[0].y;
    while (hi - lo > 1) {
        int m = (lo + hi) / 2;
        if (c[m].x <= x) lo = m;
        else hi = m;
    }
    Point a = c[lo], b = c[hi];
    if (b.x == a.x) return std::min(a.y, b.y);
    return a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x);
}

/// Explicit lower hull of points sorted by x.
inline std::vector<Point> lower_hull(const std::vector<Point>& pts) {
    std::vector<Point> hull;
    for (const Point& p : pts) {
        while (hull.size() >= 2 && cross(hull.back() - hull[hull.size() - 2], p - hull[hull.size() - 2]) <= 0.0)
            hull.pop_back();
        hull.push_back(p);
    }
    return hull;
}

}  // namespace terraquad
