// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <mutex>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "invariants.hpp"
#include "terraquad/bench.hpp"
#include "terraquad/parallel.hpp"
#include "terraquad/terraquad.hpp"
#include "terraquad/verify.hpp"

using namespace terraquad;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

double ms_of(const std::function<void()>& f) {
    auto t0 = Clock::now();
    f();
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct Outcome {
    int id;
    std::string name;
    bool pass;
    std::string detail;
};

std::vector<Outcome> outcomes;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
    outcomes.push_back({id, name, pass, detail});
    std::printf("%s criterion %d (%s): %s\n", pass ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

GenConfig small_config(int i) {
    GenConfig g;
    g.n = 4 + i % 7;
    g.seed = 1000 + static_cast<std::uint64_t>(i);
    g.profile = static_cast<Profile>(i % 4);
    return g;
}

GenConfig rect_config(int i) {
    GenConfig g;
    g.n = 3 + i % 198;
    g.seed = 5000 + static_cast<std::uint64_t>(i);
    g.profile = static_cast<Profile>(i % 4);
    return g;
}

/// One generated small instance with both oracles and the solver.
struct Small {
    int index = 0;
    GenConfig config;
    Terrain t;
    SolveReport quad;
    double structural = 0.0;
    double triangle = 0.0;
    /// Maximum quad degenerates to a triangle: outside the problem domain.
    bool excluded = false;
    double numeric = 0.0;
    double rect = 0.0;
};

json sidecar(const Small& s, const std::string& why) {
    return {{"criterion", why},
            {"index", s.index},
            {"generator", {{"n", s.config.n}, {"seed", s.config.seed}, {"profile", to_string(s.config.profile)}}},
            {"solver", to_json(s.quad)},
            {"structural", s.structural},
            {"triangle", s.triangle},
            {"numeric", s.numeric}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"terraquad acceptance suite"};
    std::string out_dir = "counterexamples";
    unsigned threads = thread_budget();
    int count = 300;
    app.add_option("--out", out_dir, "directory for persisted counterexamples");
    app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--count", count, "instances per randomized criterion")->check(CLI::PositiveNumber);
    CLI11_PARSE(app, argc, argv);
    auto start = Clock::now();
    std::printf("threads %u, counterexamples -> %s\n", threads, out_dir.c_str());

    // 1. golden instances
    {
        Terrain t0 = validate({{0, 0}, {1, 2}, {3, 2}, {4, 0}});
        Terrain t4 = validate({{0, 0}, {1, 2}, {2, 1.2}, {3, 2}, {4, 0}});
        SolveReport q0, q4;
        Rect r0, r4;
        double worst_ms = 0.0;
        worst_ms = std::max(worst_ms, ms_of([&] { q0 = max_quad(t0); }));
        worst_ms = std::max(worst_ms, ms_of([&] { r0 = max_rect(t0); }));
        worst_ms = std::max(worst_ms, ms_of([&] { q4 = max_quad(t4); }));
        worst_ms = std::max(worst_ms, ms_of([&] { r4 = max_rect(t4); }));
        bool chord = q4.quad && near(q4.quad->beta, {0.6, 1.2}, 1e-9) && near(q4.quad->gamma, {3.4, 1.2}, 1e-9) &&
                     q4.kinds[1] == EdgeKind::BALANCED;
        bool pass = std::abs(q0.area - 6) <= 1e-9 && std::abs(r0.area() - 4) <= 1e-9 && std::abs(q4.area - 4.08) <= 1e-9 &&
                    std::abs(r4.area() - 3.36) <= 1e-9 && chord && worst_ms < 10.0;
        report(1, "golden instances", pass,
               fmt("T0 quad %.12g rect %.12g; T4 quad %.12g (balanced top %s) rect %.12g; slowest call %.3f ms",
                   q0.area, r0.area(), q4.area, chord ? "yes" : "no", r4.area(), worst_ms));
    }

    // 2 and 3 share the first `count` in-domain small instances.
    std::vector<Small> domain;
    std::vector<Small> excluded;
    double c2_seconds = 0.0;
    {
        auto t0 = Clock::now();
        int scanned = 0;
        while (static_cast<int>(domain.size()) < count) {
            const int batch = 100;
            std::vector<Small> got(batch);
            parallel_for(batch, threads, [&](int k) {
                Small& s = got[k];
                s.index = scanned + k;
                s.config = small_config(s.index);
                s.t = generate(s.config);
                s.quad = max_quad(s.t);
                s.structural = quad_oracle_structural(s.t).area;
                s.triangle = triangle_oracle(s.t);
                s.excluded = s.triangle > s.structural * (1.0 + 1e-9) + s.t.tolerance().eps;
                s.rect = max_rect(s.t).area();
            });
            scanned += batch;
            for (auto& s : got) {
                if (static_cast<int>(domain.size()) == count) break;
                (s.excluded ? excluded : domain).push_back(std::move(s));
            }
        }
        c2_seconds = seconds_since(t0);

        int mismatches = 0;
        double worst = 0.0;
        int worst_index = -1;
        for (const Small& s : domain) {
            double diff = std::abs(s.quad.area - s.structural);
            double rel = diff / std::max(1.0, s.structural);
            if (rel > worst) {
                worst = rel;
                worst_index = s.index;
            }
            if (diff > 1e-6 * std::max(1.0, s.structural)) {
                ++mismatches;
                persist_counterexample(out_dir, fmt("c2_instance_%d", s.index), s.t, sidecar(s, "2"));
            }
        }
        int unflagged = 0;
        for (const Small& s : excluded) {
            if (!s.quad.degenerate) {
                ++unflagged;
                persist_counterexample(out_dir, fmt("c2_unflagged_%d", s.index), s.t, sidecar(s, "2"));
            }
        }
        bool pass = mismatches == 0 && unflagged == 0 && c2_seconds < 120.0;
        report(2, "oracle equivalence", pass,
               fmt("%d/%zu in-domain instances within 1e-6 (worst rel %.3g at #%d); %zu of %d scanned seeds have a "
                   "triangle optimum and are out of domain, %d of them not flagged degenerate; %.1f s",
                   static_cast<int>(domain.size()) - mismatches, domain.size(), worst, worst_index, excluded.size(),
                   static_cast<int>(domain.size() + excluded.size()), unflagged, c2_seconds));
    }

    // 3. numeric oracle never beats the structural one
    {
        auto t0 = Clock::now();
        parallel_for(static_cast<int>(domain.size()), threads, [&](int k) {
            NumericOracleOptions o;
            o.restarts = 50;
            o.seed = domain[k].config.seed;
            domain[k].numeric = quad_oracle_numeric(domain[k].t, o).area;
        });
        int above = 0;
        double worst = 0.0;
        std::string where;
        for (const Small& s : domain) {
            double rel = (s.numeric - s.structural) / std::max(1.0, s.structural);
            if (s.numeric > s.structural * (1.0 + 1e-4) + s.t.tolerance().eps) {
                ++above;
                persist_counterexample(out_dir, fmt("c3_instance_%d", s.index), s.t, sidecar(s, "3"));
                if (!where.empty()) where += ", ";
                where += fmt("#%d +%.3g%%", s.index, 100 * rel);
            }
            worst = std::max(worst, rel);
        }
        report(3, "characterization completeness", above == 0,
               fmt("numeric above structural by >1e-4 rel on %d/%zu instances%s%s (worst rel %.3g); %.1f s", above,
                   domain.size(), above ? ": " : "", where.c_str(), worst, seconds_since(t0)));
    }

    // 4. rectangle sweep against the exact oracle
    std::vector<std::pair<Terrain, double>> rect_cases(count);
    {
        auto t0 = Clock::now();
        std::vector<double> diff(count);
        std::vector<char> inside(count);
        parallel_for(count, threads, [&](int i) {
            Terrain t = generate(rect_config(i));
            Rect r = max_rect(t);
            diff[i] = std::abs(r.area() - rect_oracle(t).rect.area());
            inside[i] = contains_rect(t, r);
            rect_cases[i] = {std::move(t), r.area()};
        });
        int bad = 0;
        double worst = 0.0;
        for (int i = 0; i < count; ++i) {
            worst = std::max(worst, diff[i]);
            if (diff[i] > 1e-9 || !inside[i]) ++bad;
        }
        double secs = seconds_since(t0);
        report(4, "rectangle correctness", bad == 0 && secs < 60.0,
               fmt("%d/%d instances (n up to 200) within 1e-9 and contained (worst %.3g); %.2f s", count - bad, count,
                   worst, secs));
    }

    // 5. half approximation
    {
        int total = 0, bad = 0;
        auto check = [&](const Terrain& t, const SolveReport& q, double rect) {
            ++total;
            bool ok = rect >= 0.5 * q.area - 1e-9;
            if (q.quad) {
                Rect w = inscribed_half_rectangle(*q.quad);
                ok = ok && rect_in_quad(w, *q.quad) && contains_rect(t, w) && w.area() >= 0.5 * q.area - 1e-9;
            }
            if (!ok) ++bad;
        };
        for (const auto& pts : {std::vector<Point>{{0, 0}, {1, 2}, {3, 2}, {4, 0}},
                                std::vector<Point>{{0, 0}, {1, 2}, {2, 1.2}, {3, 2}, {4, 0}}}) {
            Terrain t = validate(pts);
            check(t, max_quad(t), max_rect(t).area());
        }
        for (const Small& s : domain) check(s.t, s.quad, s.rect);
        for (const Small& s : excluded) check(s.t, s.quad, s.rect);

        Rng rng(2024);
        int cases[2] = {0, 0};
        int quad_bad = 0;
        for (int k = 0; k < 1000; ++k) {
            const bool parallel_top = k % 2 == 1;
            Quad q;
            do {
                double w = rng.uniform(1, 20);
                double by = rng.uniform(0.1, 10);
                double gy = parallel_top ? by : rng.uniform(0.1, 10);
                double bx = rng.uniform(0, w), gx = rng.uniform(0, w);
                q = {{0, 0}, {std::min(bx, gx), by}, {std::max(bx, gx), gy}, {w, 0}};
            } while (!(q.gamma.x - q.beta.x > 1e-3) || !(q.beta.x > 1e-3) || !(q.delta.x - q.gamma.x > 1e-3) ||
                     cross(q.beta - q.alpha, q.gamma - q.alpha) >= 0 || cross(q.gamma - q.beta, q.delta - q.beta) >= 0 ||
                     (!parallel_top && std::abs(q.beta.y - q.gamma.y) <= 1e-6));
            ++cases[parallel_top ? 1 : 0];
            Rect r = inscribed_half_rectangle(q);
            if (!rect_in_quad(r, q, 1e-9) || r.area() < 0.5 * q.area() - 1e-9) ++quad_bad;
        }
        bool pass = bad == 0 && quad_bad == 0 && cases[0] >= 300 && cases[1] >= 300;
        report(5, "half approximation", pass,
               fmt("max_rect >= max_quad/2 with contained witness on %d/%d terrains; random quads %d/1000 "
                   "(unequal tops %d, parallel top %d)",
                   total - bad, total, 1000 - quad_bad, cases[0], cases[1]));
    }

    // 6. invariant suites
    {
        std::vector<std::string> failed;
        Rng rng(99);
        double mid_err = 0.0;
        for (int k = 0; k < 1000; ++k) {
            Point o{rng.uniform(-10, 10), rng.uniform(-10, 10)};
            double a1 = rng.uniform(0, 6.283185307179586), a2 = a1 + rng.uniform(0.05, 3.09);
            Point d1{std::cos(a1), std::sin(a1)}, d2{std::cos(a2), std::sin(a2)};
            Point m = midpoint(o + rng.uniform(0.1, 5) * d1, o + rng.uniform(0.1, 5) * d2);
            auto seg = bisected_segment_through(m, o, d1, d2);
            if (!seg) {
                mid_err = INFINITY;
                continue;
            }
            mid_err = std::max(mid_err, distance(midpoint(seg->a, seg->b), m));
        }
        if (!(mid_err <= 1e-12)) failed.push_back(fmt("midpoint error %.3g", mid_err));

        int pairs = 0, peaks = 0;
        for (int i = 0; pairs < 100 && i < 1000; ++i) {
            GenConfig g;
            g.n = 8 + i % 30;
            g.seed = 7000 + static_cast<std::uint64_t>(i);
            g.profile = static_cast<Profile>(i % 4);
            Terrain t = generate(g);
            CandidateSet cs = candidate_edges(t);
            for (const auto& l : cs.left)
                for (const auto& r : cs.right) {
                    if (pairs >= 100) break;
                    auto a = tq_test::hull_edge_areas(t, l, r);
                    if (!a || a->size() < 3) continue;
                    ++pairs;
                    peaks += tq_test::single_peak(*a, 1e-9 * std::max(1.0, *std::max_element(a->begin(), a->end())));
                }
        }
        if (pairs < 100 || peaks != pairs) failed.push_back(fmt("unimodal %d/%d", peaks, pairs));

        std::atomic<int> cand_bad{0};
        parallel_for(100, threads, [&](int i) {
            GenConfig g;
            g.n = 4 + i % 47;
            g.seed = 4000 + static_cast<std::uint64_t>(i);
            g.profile = static_cast<Profile>(i % 4);
            Terrain t = generate(g);
            CandidateSet a = candidate_edges(t), b = candidate_edges_brute(t);
            auto keys = [](const std::vector<CandidateEdge>& v) {
                std::vector<std::pair<int, int>> k;
                for (const auto& c : v) k.emplace_back(c.i, c.j);
                std::sort(k.begin(), k.end());
                return k;
            };
            if (keys(a.left) != keys(b.left) || keys(a.right) != keys(b.right)) ++cand_bad;
        });
        if (cand_bad) failed.push_back(fmt("candidate sets differ on %d seeds", cand_bad.load()));

        long pivot_calls = 0, order_bad = 0;
        for (const auto* set : {&domain, &excluded})
            for (const Small& s : *set)
                for (const Terrain& t : {s.t, mirror(s.t)}) {
                    for (const auto& r : candidate_edges(t).right) {
                        auto ps = balanced_pivots(t, r);
                        ++pivot_calls;
                        for (std::size_t k = 0; k + 1 < ps.size(); ++k) {
                            bool ok = t[ps[k].vertex].x < t[ps[k + 1].vertex].x &&
                                      t[ps[k].vertex].y < t[ps[k + 1].vertex].y && ps[k].height < ps[k + 1].height;
                            if (!ok) ++order_bad;
                        }
                    }
                }
        if (order_bad) failed.push_back(fmt("pivot order broken %ld times", order_bad));

        double mirror_quad = 0.0, mirror_rect = 0.0;
        std::mutex mu;
        std::vector<const Terrain*> all;
        for (const auto* set : {&domain, &excluded})
            for (const Small& s : *set) all.push_back(&s.t);
        for (const auto& rc : rect_cases) all.push_back(&rc.first);
        parallel_for(static_cast<int>(all.size()), threads, [&](int k) {
            const Terrain& t = *all[k];
            Terrain m = mirror(t);
            double dq = std::abs(max_quad(t).area - max_quad(m).area);
            double dr = std::abs(max_rect(t).area() - max_rect(m).area());
            std::lock_guard<std::mutex> lk(mu);
            mirror_quad = std::max(mirror_quad, dq);
            mirror_rect = std::max(mirror_rect, dr);
        });
        if (mirror_quad > 1e-9 || mirror_rect > 1e-9)
            failed.push_back(fmt("mirror diff quad %.3g rect %.3g", mirror_quad, mirror_rect));

        std::string detail = fmt(
            "midpoint err %.3g over 1000 wedges; single peak %d/%d pairs; candidates = brute on %d/100 seeds; "
            "%ld balanced_pivots calls ordered; mirror diff quad %.3g rect %.3g over %zu terrains",
            mid_err, peaks, pairs, 100 - cand_bad.load(), pivot_calls, mirror_quad, mirror_rect, all.size());
        for (const auto& f : failed) detail += "; FAILED " + f;
        report(6, "invariant suites", failed.empty(), detail);
    }

    // 7. complexity
    {
        auto t0 = Clock::now();
        BenchConfig c;
        c.reps = 3;
        BenchResult b = run_bench(c);
        GenConfig g;
        g.n = 2000;
        g.seed = 1;
        g.profile = Profile::SAWTOOTH;
        Terrain big = generate(g);
        double ms = ms_of([&] { (void)max_quad(big); });
        bool pass = b.quad_slope >= 1.7 && b.quad_slope <= 2.5 && b.rect_slope >= 0.9 && b.rect_slope <= 1.4 &&
                    ms < 30000.0;
        std::string rows;
        for (const auto& r : b.rows) rows += fmt(" n=%d:%.3g/%.3g", r.n, r.quad_ms, r.rect_ms);
        report(7, "complexity", pass,
               fmt("slopes quad %.3f rect %.3f (ms quad/rect:%s); quad n=2000 %.0f ms; %.1f s", b.quad_slope,
                   b.rect_slope, rows.c_str(), ms, seconds_since(t0)));
    }

    // 8. paranoid cross-check
    {
        std::vector<double> fast(50), slow(50);
        parallel_for(50, threads, [&](int i) {
            GenConfig g;
            g.n = 4 + i % 97;
            g.seed = 20000 + static_cast<std::uint64_t>(i);
            g.profile = static_cast<Profile>(i % 4);
            Terrain t = generate(g);
            SolveOptions o;
            o.paranoid = true;
            fast[i] = max_quad(t).area;
            slow[i] = max_quad(t, o).area;
        });
        int same = 0;
        for (int i = 0; i < 50; ++i) same += fast[i] == slow[i];
        report(8, "paranoid cross-check", same == 50, fmt("%d/50 instances (n <= 100) equal bit for bit", same));
    }

    int failed = 0;
    for (const auto& o : outcomes) failed += !o.pass;
    std::printf("%d/%zu criteria passed in %.1f s\n", static_cast<int>(outcomes.size()) - failed, outcomes.size(),
                seconds_since(start));
    return failed ? 1 : 0;
}
