// terraquad command-line front end.
//
// Exit codes: 0 ok, 1 I/O error, 2 invalid terrain or input, 3 only
// degenerate optima, 4 verification disagreement, 64 usage error.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "terraquad/bench.hpp"
#include "terraquad/terraquad.hpp"

namespace tq = terraquad;
using nlohmann::json;

namespace {

enum Exit { OK = 0, IO = 1, INVALID = 2, DEGENERATE = 3, DISAGREE = 4, USAGE = 64 };

struct Common {
    std::string file;
    std::string svg;
    std::string manifest;
    bool json_format = false;
    bool structural = false;
    bool numeric = false;
    bool approx = false;
    bool paranoid = false;
    double eps = tq::Tolerance{}.eps;
    double rel_tol = 1e-6;
    std::uint64_t seed = 1;
    int n = 10;
    std::string profile = "RANDOM_WALK";
    std::string bench_profile = "SAWTOOTH";
    int count = 1;
    int restarts = 50;
    std::string out;
    std::vector<int> sizes;
    int reps = 5;
};

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

void write_manifest(const Common& c, const std::string& command, const std::vector<std::string>& argv, double ms,
                    const json& result) {
    if (c.manifest.empty()) return;
    json m{{"command", command},
           {"argv", argv},
           {"input", c.file.empty() ? json{{"seed", c.seed}, {"n", c.n}, {"profile", c.profile}, {"count", c.count}}
                                    : json{{"path", c.file}}},
           {"tolerance", {{"eps", c.eps}, {"rel_tol", c.rel_tol}}},
           {"outputs", {{"svg", c.svg.empty() ? json(nullptr) : json(c.svg)}, {"manifest", c.manifest}}},
           {"timing_ms", ms},
           {"result", result}};
    tq::write_file(c.manifest, m.dump(2) + "\n");
}

tq::Terrain load(const Common& c) { return tq::load_terrain(c.file, tq::Tolerance{c.eps}); }

int cmd_solve_quad(const Common& c, json& out) {
    tq::Terrain t = load(c);
    tq::SolveOptions so;
    so.paranoid = c.paranoid;
    tq::SolveReport r = tq::max_quad(t, so);
    out = tq::to_json(r);
    emit(out);
    if (!c.svg.empty()) {
        tq::SvgOverlay o;
        o.quad = r.quad;
        o.kinds = r.kinds;
        o.title = "max quad " + tq::format_double(r.area);
        tq::write_file(c.svg, tq::render_svg(t, o));
    }
    return (!r.quad || r.degenerate) ? DEGENERATE : OK;
}

int cmd_solve_rect(const Common& c, json& out) {
    tq::Terrain t = load(c);
    tq::RectReport r = tq::max_rect_report(t);
    out = tq::to_json(r);
    emit(out);
    if (!c.svg.empty()) {
        tq::SvgOverlay o;
        o.rect = r.rect;
        o.title = "max rect " + tq::format_double(r.rect.area());
        tq::write_file(c.svg, tq::render_svg(t, o));
    }
    return r.rect.area() > 0.0 ? OK : DEGENERATE;
}

tq::VerifyOptions verify_options(const Common& c) {
    tq::VerifyOptions v;
    v.structural = c.structural;
    v.numeric = c.numeric;
    v.approx = c.approx;
    v.paranoid = c.paranoid;
    v.restarts = c.restarts;
    v.seed = c.seed;
    v.rel_tol = c.rel_tol;
    return v;
}

int cmd_verify(const Common& c, json& out) {
    const std::string dir = c.out.empty() ? "counterexamples" : c.out;
    tq::VerifyOptions vo = verify_options(c);
    if (!c.file.empty()) {
        tq::Terrain t = load(c);
        tq::VerifyReport r = tq::verify_instance(t, vo);
        out = tq::to_json(r);
        if (!r.ok()) {
            json side = out;
            side["source"] = c.file;
            side["seed"] = c.seed;
            out["counterexample"] = tq::persist_counterexample(
                dir, std::filesystem::path(c.file).stem().string() + "_counterexample", t, side);
        }
        emit(out);
        return r.ok() ? OK : DISAGREE;
    }
    // batch over generated instances: n cycles through [4, N], profiles through all four
    const int count = std::max(1, c.count);
    const int span = std::max(1, c.n - 3);
    std::vector<std::optional<tq::VerifyReport>> reports(count);
    std::vector<tq::GenConfig> cfgs(count);
    for (int i = 0; i < count; ++i) {
        cfgs[i].n = 4 + i % span;
        cfgs[i].seed = c.seed + static_cast<std::uint64_t>(i);
        cfgs[i].profile = static_cast<tq::Profile>(i % 4);
    }
    tq::parallel_for(count, tq::thread_budget(), [&](int i) {
        tq::VerifyOptions v = vo;
        v.seed = c.seed + static_cast<std::uint64_t>(i);
        reports[i] = tq::verify_instance(tq::generate(cfgs[i]), v);
    });
    json failures = json::array();
    json tally = json::object();
    int degenerate = 0;
    for (int i = 0; i < count; ++i) {
        const tq::VerifyReport& r = *reports[i];
        if (r.degenerate_instance) ++degenerate;
        for (const auto& ch : r.checks) {
            auto& e = tally[ch.name];
            if (e.is_null()) e = {{"pass", 0}, {"fail", 0}};
            e[ch.pass ? "pass" : "fail"] = e[ch.pass ? "pass" : "fail"].get<int>() + 1;
        }
        if (!r.ok()) {
            const tq::GenConfig& g = cfgs[i];
            json side = tq::to_json(r);
            side["gen"] = {{"seed", g.seed}, {"n", g.n}, {"profile", tq::to_string(g.profile)}};
            std::string path =
                tq::persist_counterexample(dir, "seed_" + std::to_string(g.seed), tq::generate(g), side);
            failures.push_back({{"index", i}, {"seed", g.seed}, {"n", g.n}, {"profile", tq::to_string(g.profile)},
                                {"path", path}});
        }
    }
    out = {{"instances", count}, {"degenerate_instances", degenerate}, {"checks", tally}, {"failures", failures}};
    emit(out);
    return failures.empty() ? OK : DISAGREE;
}

int cmd_gen(const Common& c, json& out) {
    tq::GenConfig g;
    g.n = c.n;
    g.profile = tq::parse_profile(c.profile);
    auto render = [&](const tq::Terrain& t) {
        return c.json_format ? tq::vertices_to_json(t.vertices()) : tq::vertices_to_text(t.vertices());
    };
    json files = json::array();
    if (c.count <= 1 && c.out.empty()) {
        g.seed = c.seed;
        std::cout << render(tq::generate(g));
        out = {{"seed", g.seed}, {"n", g.n}, {"profile", c.profile}};
        return OK;
    }
    std::string dir = c.out.empty() ? "." : c.out;
    std::filesystem::create_directories(dir);
    for (int i = 0; i < std::max(1, c.count); ++i) {
        g.seed = c.seed + static_cast<std::uint64_t>(i);
        std::string name = tq::to_string(g.profile) + std::string("_n") + std::to_string(g.n) + "_s" +
                           std::to_string(g.seed) + (c.json_format ? ".json" : ".txt");
        std::string path = (std::filesystem::path(dir) / name).string();
        tq::write_file(path, render(tq::generate(g)));
        files.push_back(path);
    }
    out = {{"files", files}};
    emit(out);
    return OK;
}

int cmd_bench(const Common& c, json& out) {
    tq::BenchConfig b;
    if (!c.sizes.empty()) b.sizes = c.sizes;
    b.reps = c.reps;
    b.seed = c.seed;
    b.profile = tq::parse_profile(c.bench_profile);
    tq::BenchResult r = tq::run_bench(b);
    json rows = json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"n", row.n}, {"quad_ms", row.quad_ms}, {"rect_ms", row.rect_ms}, {"candidates", row.candidates}});
    out = {{"profile", tq::to_string(b.profile)},
           {"reps", b.reps},
           {"rows", rows},
           {"slopes", {{"quad", r.quad_slope}, {"rect", r.rect_slope}}}};
    emit(out);
    return OK;
}

int cmd_chords(const Common& c, json& out) {
    tq::Terrain t = load(c);
    out = tq::to_json(tq::candidate_edges(t));
    json spt = json::array();
    for (int p : tq::shortest_path_tree(t, tq::TreeRoot::LEFT_BASE).parent) spt.push_back(p);
    out["left_tree_parent"] = spt;
    spt = json::array();
    for (int p : tq::shortest_path_tree(t, tq::TreeRoot::RIGHT_BASE).parent) spt.push_back(p);
    out["right_tree_parent"] = spt;
    emit(out);
    return OK;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Largest convex quadrilateral and axis-parallel rectangle inside a 1.5D terrain"};
    app.require_subcommand(1);
    Common c;
    const std::vector<std::string> args(argv, argv + argc);

    auto common = [&](CLI::App* s, bool file_required) {
        auto* f = s->add_option("file", c.file, "terrain file (JSON or text)");
        if (file_required) f->required();
        s->add_option("--eps", c.eps, "absolute tolerance for predicates")->check(CLI::PositiveNumber);
        s->add_option("--manifest", c.manifest, "write a run manifest JSON to this path");
    };
    auto* sq = app.add_subcommand("solve-quad", "maximum-area convex quadrilateral");
    common(sq, true);
    sq->add_option("--svg", c.svg, "render terrain and solution");
    sq->add_flag("--paranoid", c.paranoid, "rebuild the hull per chord pair and scan linearly");

    auto* sr = app.add_subcommand("solve-rect", "maximum-area axis-parallel rectangle");
    common(sr, true);
    sr->add_option("--svg", c.svg, "render terrain and solution");

    auto* ve = app.add_subcommand("verify", "check the solvers against the oracles");
    common(ve, false);
    ve->add_flag("--structural", c.structural, "compare against the structural enumeration (n <= 14)");
    ve->add_flag("--numeric", c.numeric, "compare against the hill-climbing search");
    ve->add_flag("--approx", c.approx, "check the half-area rectangle bound");
    ve->add_flag("--paranoid", c.paranoid, "compare against the rebuilt-hull pass");
    ve->add_option("--rel-tol", c.rel_tol, "relative tolerance for solver vs structural")->check(CLI::PositiveNumber);
    ve->add_option("--restarts", c.restarts, "numeric oracle restarts")->check(CLI::PositiveNumber);
    ve->add_option("--seed", c.seed, "base seed for generated batches and the numeric oracle");
    ve->add_option("--n", c.n, "largest n in a generated batch")->check(CLI::Range(4, 1 << 20));
    ve->add_option("--count", c.count, "instances in a generated batch")->check(CLI::PositiveNumber);
    ve->add_option("--out", c.out, "directory for counterexamples");

    auto* ge = app.add_subcommand("gen", "generate terrains");
    ge->add_option("--seed", c.seed, "seed");
    ge->add_option("--n", c.n, "vertex count")->check(CLI::Range(3, 1 << 24));
    ge->add_option("--profile", c.profile, "RANDOM_WALK, PEAKS, SAWTOOTH or PLATEAU");
    ge->add_flag("--json", c.json_format, "JSON format instead of text");
    ge->add_option("--count", c.count, "number of consecutive seeds")->check(CLI::PositiveNumber);
    ge->add_option("--out", c.out, "output directory (default: stdout for a single terrain)");
    ge->add_option("--manifest", c.manifest, "write a run manifest JSON to this path");

    auto* be = app.add_subcommand("bench", "time both solvers over growing n");
    be->add_option("--sizes", c.sizes, "vertex counts")->check(CLI::Range(3, 1 << 24));
    be->add_option("--reps", c.reps, "instances per size")->check(CLI::PositiveNumber);
    be->add_option("--seed", c.seed, "base seed");
    be->add_option("--profile", c.bench_profile, "generator profile");
    be->add_option("--manifest", c.manifest, "write a run manifest JSON to this path");

    auto* ch = app.add_subcommand("chords", "dump candidate side chords and shortest path trees");
    common(ch, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? OK : USAGE;
    }

    auto t0 = std::chrono::steady_clock::now();
    json result;
    int rc = OK;
    std::string command = app.get_subcommands().front()->get_name();
    try {
        if (sq->parsed()) rc = cmd_solve_quad(c, result);
        else if (sr->parsed()) rc = cmd_solve_rect(c, result);
        else if (ve->parsed()) rc = cmd_verify(c, result);
        else if (ge->parsed()) rc = cmd_gen(c, result);
        else if (be->parsed()) rc = cmd_bench(c, result);
        else if (ch->parsed()) rc = cmd_chords(c, result);
        double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        write_manifest(c, command, args, ms, result);
    } catch (const tq::TerrainError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return INVALID;
    } catch (const tq::FormatError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return INVALID;
    } catch (const tq::IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return IO;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return IO;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return INVALID;
    }
    return rc;
}
