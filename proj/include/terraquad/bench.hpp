#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "terraquad/instance_gen.hpp"
#include "terraquad/quad_solver.hpp"
#include "terraquad/rect_solver.hpp"

namespace terraquad {

struct BenchConfig {
    std::vector<int> sizes{100, 200, 400, 800, 1600, 3200};
    int reps = 5;
    std::uint64_t seed = 1;
    Profile profile = Profile::SAWTOOTH;
    bool quad = true;
    bool rect = true;
    /// Each timing repeats the call until this much time has passed.
    double min_sample_ms = 20.0;
};

struct BenchRow {
    int n = 0;
    double quad_ms = 0.0;
    double rect_ms = 0.0;
    long candidates = 0;
};

struct BenchResult {
    std::vector<BenchRow> rows;
    double quad_slope = 0.0;
    double rect_slope = 0.0;
};

namespace detail {

/// Wall time of one call: the fastest per-call mean over five batches,
/// each repeating the call until min_ms / 5 has elapsed.
inline double time_call(const std::function<void()>& f, double min_ms) {
    using clock = std::chrono::steady_clock;
    double best = std::numeric_limits<double>::infinity();
    for (int batch = 0; batch < 5; ++batch) {
        auto t0 = clock::now();
        int calls = 0;
        double ms = 0.0;
        do {
            f();
            ++calls;
            ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
        } while (ms < min_ms / 5);
        best = std::min(best, ms / calls);
    }
    return best;
}

inline double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace detail

/// Least-squares slope of log(y) against log(x).
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t k = std::min(x.size(), y.size());
    if (k < 2) return 0.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < k; ++i) {
        double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double den = k * sxx - sx * sx;
    return den == 0.0 ? 0.0 : (k * sxy - sx * sy) / den;
}

/// Median wall time per size over `reps` generated instances.
inline BenchResult run_bench(const BenchConfig& c) {
    BenchResult res;
    std::vector<double> xs, qs, rs;
    for (int n : c.sizes) {
        BenchRow row;
        row.n = n;
        std::vector<double> qt, rt;
        for (int r = 0; r < c.reps; ++r) {
            GenConfig g;
            g.n = n;
            g.seed = c.seed + static_cast<std::uint64_t>(r);
            g.profile = c.profile;
            Terrain t = generate(g);
            if (c.quad) {
                long cand = 0;
                qt.push_back(detail::time_call(
                    [&] {
                        SolveReport s = max_quad(t);
                        cand = s.stats.left_candidates + s.stats.right_candidates;
                    },
                    c.min_sample_ms));
                row.candidates = std::max(row.candidates, cand);
            }
            if (c.rect) rt.push_back(detail::time_call([&] { (void)max_rect(t); }, c.min_sample_ms));
        }
        if (c.quad) row.quad_ms = detail::median(qt);
        if (c.rect) row.rect_ms = detail::median(rt);
        xs.push_back(n);
        qs.push_back(row.quad_ms);
        rs.push_back(row.rect_ms);
        res.rows.push_back(row);
    }
    if (c.quad) res.quad_slope = loglog_slope(xs, qs);
    if (c.rect) res.rect_slope = loglog_slope(xs, rs);
    return res;
}

}  // namespace terraquad
