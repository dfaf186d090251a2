#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "terraquad/rng.hpp"
#include "terraquad/terrain.hpp"

namespace terraquad {

enum class Profile { RANDOM_WALK, PEAKS, SAWTOOTH, PLATEAU };

inline const char* to_string(Profile p) {
    switch (p) {
        case Profile::RANDOM_WALK: return "RANDOM_WALK";
        case Profile::PEAKS: return "PEAKS";
        case Profile::SAWTOOTH: return "SAWTOOTH";
        case Profile::PLATEAU: return "PLATEAU";
    }
    return "UNKNOWN";
}

inline Profile parse_profile(const std::string& s) {
    if (s == "RANDOM_WALK" || s == "random_walk") return Profile::RANDOM_WALK;
    if (s == "PEAKS" || s == "peaks") return Profile::PEAKS;
    if (s == "SAWTOOTH" || s == "sawtooth") return Profile::SAWTOOTH;
    if (s == "PLATEAU" || s == "plateau") return Profile::PLATEAU;
    throw std::invalid_argument("unknown profile: " + s);
}

struct GenConfig {
    int n = 10;
    std::uint64_t seed = 1;
    double x_span = 100.0;
    double h_min = 1.0;
    double h_max = 40.0;
    Profile profile = Profile::RANDOM_WALK;
    /// Minimal vertex spacing as a fraction of x_span.
    double min_feature = 1e-4;
    /// Relative size of the general-position jitter.
    double perturbation = 1e-6;
};

namespace detail {

inline std::vector<double> gen_heights(const GenConfig& c, Rng& rng, const std::vector<double>& xs) {
    const int n = c.n;
    const double lo = c.h_min, hi = c.h_max, span = hi - lo;
    std::vector<double> ys(n, 0.0);
    switch (c.profile) {
        case Profile::RANDOM_WALK: {
            double y = rng.uniform(lo, hi);
            for (int i = 1; i + 1 < n; ++i) {
                y += rng.uniform(-0.35, 0.35) * span;
                if (y < lo) y = 2 * lo - y;
                if (y > hi) y = 2 * hi - y;
                ys[i] = std::clamp(y, lo, hi);
            }
            break;
        }
        case Profile::PEAKS: {
            int k = std::max(3, n / 20);
            std::vector<double> cx(k), amp(k), wid(k);
            for (int j = 0; j < k; ++j) {
                cx[j] = xs.front() + (j + rng.uniform(0.2, 0.8)) * (xs.back() - xs.front()) / k;
                amp[j] = rng.uniform(0.4, 1.0) * span;
                wid[j] = rng.uniform(0.15, 0.35) * (xs.back() - xs.front()) / k;
            }
            for (int i = 1; i + 1 < n; ++i) {
                double y = lo;
                for (int j = 0; j < k; ++j) y += amp[j] * std::exp(-std::pow((xs[i] - cx[j]) / wid[j], 2));
                y += rng.uniform(0.0, 0.02) * span;
                ys[i] = std::min(y, hi);
            }
            break;
        }
        case Profile::SAWTOOTH: {
            // tall teeth over shallow valleys that drift; every tooth
            // anchors a left and a right chord
            double drift = rng.uniform(0.0, 0.1);
            for (int i = 1; i + 1 < n; ++i) {
                double u = static_cast<double>(i) / n;
                if (i % 2 == 1) ys[i] = lo + span * (0.6 + 0.4 * rng.uniform());
                else ys[i] = lo + span * (0.05 + drift * std::sin(6.0 * u) + 0.1 * rng.uniform());
                ys[i] = std::clamp(ys[i], lo, hi);
            }
            break;
        }
        case Profile::PLATEAU: {
            double top = rng.uniform(0.8, 1.0) * span + lo;
            int rise = std::max(1, (n - 2) / 6);
            for (int i = 1; i + 1 < n; ++i) {
                int from_edge = std::min(i, n - 1 - i);
                if (from_edge <= rise && n > 4) {
                    ys[i] = lo + (top - lo) * from_edge / (rise + 1.0) * rng.uniform(0.7, 1.0);
                } else {
                    // strictly concave arc: no three plateau vertices are collinear
                    double u = 2.0 * (xs[i] - xs.front()) / (xs.back() - xs.front()) - 1.0;
                    ys[i] = top * (1.0 - 0.02 * u * u);
                }
            }
            break;
        }
    }
    return ys;
}

}  // namespace detail

/// Seeded terrain in general position. Deterministic in the config.
/// Throws std::runtime_error if jittering fails to remove collinear
/// triples within the retry budget.
inline Terrain generate(const GenConfig& c) {
    if (c.n < 3) throw std::invalid_argument("generate: n must be at least 3");
    if (c.min_feature * c.n > 1.0) throw std::invalid_argument("generate: min_feature * n exceeds 1");
    Rng rng(c.seed ^ (static_cast<std::uint64_t>(c.profile) << 56) ^ (static_cast<std::uint64_t>(c.n) << 32));
    const int n = c.n;
    const double gap = c.x_span / (n - 1);
    const double min_gap = std::max(c.min_feature * c.x_span, 1e-3 * gap);
    std::vector<double> xs(n);
    xs[0] = 0.0;
    xs[n - 1] = c.x_span;
    for (int i = 1; i + 1 < n; ++i) xs[i] = i * gap + rng.uniform(-0.3, 0.3) * gap;
    for (int i = 1; i < n; ++i) xs[i] = std::max(xs[i], xs[i - 1] + min_gap);
    if (xs[n - 1] != c.x_span) {
        double s = c.x_span / xs[n - 1];
        for (double& x : xs) x *= s;
        xs[n - 1] = c.x_span;
    }
    std::vector<double> ys = detail::gen_heights(c, rng, xs);

    std::vector<Point> pts(n);
    for (int i = 0; i < n; ++i) pts[i] = {xs[i], ys[i]};
    pts.front().y = 0.0;
    pts.back().y = 0.0;

    Tolerance strict{10.0 * Tolerance{}.eps};
    const double jitter = c.perturbation * (c.h_max - c.h_min);
    std::vector<double> base(n);
    for (int i = 0; i < n; ++i) base[i] = pts[i].y;
    // Each round redraws the height offset of the middle vertex of every
    // collinear triple until that vertex sees no collinear pair. The offset
    // range doubles each time the same vertex is moved again. Triples
    // only visible from an end vertex are caught by the confirming full scan.
    auto triples = detail::find_collinear_triples(pts, strict, pts.size());
    std::vector<std::pair<double, int>> dirs;
    std::vector<int> moves(pts.size(), 0);
    for (int attempt = 0; attempt < 100; ++attempt) {
        if (triples.empty()) {
            triples = detail::find_collinear_triples(pts, strict, pts.size());
            if (triples.empty()) return validate(std::move(pts));
        }
        std::vector<int> moved;
        std::vector<char> seen(pts.size(), 0);
        for (const auto& triple : triples) {
            const int m = triple[1];
            if (seen[m]) continue;
            seen[m] = 1;
            moved.push_back(m);
            // a vertex that keeps reappearing sits on a long, flat triple
            const double scale = std::ldexp(jitter, std::min(moves[m]++, 12));
            for (int draw = 0; draw < 16; ++draw) {
                pts[m].y = base[m] + (1.0 + rng.uniform(-1.0, 1.0)) * scale;
                if (!detail::collinear_through(pts, m, strict, dirs)) break;
            }
        }
        std::vector<int> recheck = moved;
        for (const auto& triple : triples)
            for (int e : {triple[0], triple[2]})
                if (!seen[e]) {
                    seen[e] = 1;
                    recheck.push_back(e);
                }
        triples.clear();
        for (int m : recheck)
            if (auto t = detail::collinear_through(pts, m, strict, dirs)) triples.push_back(*t);
    }
    throw std::runtime_error("generate: could not reach general position");
}

}  // namespace terraquad
