#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "amoebot/counter.hpp"
#include "amoebot/hull_oracle.hpp"
#include "amoebot/render.hpp"
#include "amoebot/runner.hpp"
#include "amoebot/shapes.hpp"

using namespace amoebot;

namespace {

enum Exit { kOk = 0, kValidation = 2, kNoTermination = 3, kMismatch = 4, kInvariant = 5 };

struct Config {
    std::string object;
    int particles = 0;
    std::string placement;
    std::uint64_t seed = 1;
    std::string mode = "strong";
    long long max_rounds = -1;
    std::string trace;
    std::string metrics;
    std::string render = "none";
    std::string out;
    bool debug = false;
};

void add_run_flags(CLI::App* app, Config& c) {
    app->add_option("--object", c.object, "Object file (one \"x y\" node per line)")->required();
    app->add_option("--particles", c.particles, "Number of particles");
    app->add_option("--placement", c.placement, "Particle node file; the first node holds the leader");
    app->add_option("--seed", c.seed, "Scheduler and placement seed");
    app->add_option("--mode", c.mode, "solo, strong or weak")->check(CLI::IsMember({"solo", "strong", "weak"}));
    app->add_option("--max-rounds", c.max_rounds, "Round limit (default depends on the instance)");
    app->add_option("--trace", c.trace, "Write a JSONL activation trace");
    app->add_option("--metrics", c.metrics, "Write metrics JSON");
    app->add_option("--render", c.render, "Final configuration picture")->check(CLI::IsMember({"none", "ascii", "svg"}));
    app->add_option("--out", c.out, "Render destination (default stdout)");
    app->add_flag("--debug-invariants", c.debug, "Check invariants after every activation");
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << text;
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty()) std::cout << text;
    else write_file(path, text);
}

std::string render(const RunOutcome& r, const std::string& kind) {
    const ObjectShape& O = *r.object;
    std::vector<Particle> ps;
    if (r.world) ps = r.world->particles();
    else if (r.mode == Mode::Solo) {
        Particle p;
        p.role = Role::Leader;
        p.head = p.tail = r.solo.state.pos;
        ps.push_back(p);
    }
    if (kind == "ascii") return render_ascii(O, ps, r.hulls.strong_cycle);
    return render_svg(O, ps, r.hulls.strong_cycle, r.mode == Mode::Weak ? r.hulls.weak_cycle : std::vector<Node>{});
}

// Runs the configured simulation; returns the exit code for `cmd_run`.
int run_and_report(const Config& c, bool check, std::ostream& log) {
    RunSpec spec;
    spec.object = std::make_shared<const ObjectShape>(load_object(c.object));
    spec.mode = parse_mode(c.mode);
    spec.seed = c.seed;
    spec.max_rounds = c.max_rounds;
    spec.debug = c.debug;
    if (!c.placement.empty()) {
        std::ifstream f(c.placement);
        std::vector<Node> ordered;
        std::string line;
        while (std::getline(f, line)) {
            if (line.empty() || line[0] == '#') continue;
            std::istringstream ls(line);
            Node v;
            if (ls >> v.x >> v.y) ordered.push_back(v);
        }
        spec.placement = ordered;
    } else {
        spec.particles = c.particles;
    }
    if (spec.mode != Mode::Solo && spec.placement.empty() && spec.particles <= 0)
        throw ValidationError("--particles or --placement is required");
    std::ofstream trace;
    if (!c.trace.empty()) {
        trace.open(c.trace, std::ios::binary);
        if (!trace) throw std::runtime_error("cannot write " + c.trace);
        spec.trace = &trace;
    }
    RunOutcome r = execute(spec);
    Verdict v = verify(r);
    if (!c.metrics.empty()) write_file(c.metrics, metrics_json(r, &v) + "\n");
    if (c.render != "none") emit(c.out, render(r, c.render));

    const auto ph = phase_rounds(r);
    log << "mode " << mode_name(r.mode) << "  B " << r.object->boundary().size() << "  H " << r.hulls.strong_cycle.size()
        << "  n " << r.n << "  rounds " << r.rounds << "  phases " << ph[0] << "/" << ph[1] << "/" << ph[2] << "/"
        << ph[3] << "\n";
    if (!r.violations.empty()) {
        log << "invariant violation: " << r.violations.front() << "\n";
        return kInvariant;
    }
    if (!r.error.empty()) {
        log << "simulation error: " << r.error << "\n";
        return kInvariant;
    }
    if (!r.terminated) {
        log << "did not terminate within " << r.max_rounds << " rounds\n";
        return kNoTermination;
    }
    if (!check) {
        log << "terminated\n";
        return kOk;
    }
    log << (v.ok ? "" : "mismatch: ") << v.verdict << (v.detail.empty() ? "" : " at " + v.detail) << "\n";
    return v.ok ? kOk : kMismatch;
}

void print_cycle(std::ostream& os, const std::vector<Node>& c) {
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? " " : "") << c[i].x << "," << c[i].y;
    os << "\n";
}

int cmd_oracle(const Config& c) {
    const ObjectShape O = load_object(c.object);
    const HullSets h = hulls(O);
    std::cout << "B " << O.boundary().size() << "\nH " << h.strong_cycle.size() << "\nH' " << h.weak_cycle.size() << "\n";
    std::cout << "strong_cycle ";
    print_cycle(std::cout, h.strong_cycle);
    std::cout << "weak_cycle ";
    print_cycle(std::cout, h.weak_cycle);
    if (c.render == "svg") emit(c.out, render_svg(O, {}, h.strong_cycle, h.weak_cycle));
    else if (c.render == "ascii") emit(c.out, render_ascii(O, {}, h.strong_cycle));
    return kOk;
}

int particle_count(const std::string& rule, int H) {
    if (rule == "H") return H;
    if (rule == "half-1") return (H + 1) / 2 - 1;
    if (rule == "half") return (H + 1) / 2;
    if (rule.rfind("H+", 0) == 0) return H + std::stoi(rule.substr(2));
    if (rule.rfind("H-", 0) == 0) return H - std::stoi(rule.substr(2));
    return std::stoi(rule);
}

struct BenchArgs {
    std::string family = "hexagon";
    std::vector<int> sizes{48, 96, 192, 384};
    int seeds = 10;
    std::string n_rule = "H";
};

int cmd_bench(const BenchArgs& a, const Config& c) {
    struct Job {
        int b;
        std::uint64_t seed;
    };
    std::vector<Job> jobs;
    for (int b : a.sizes)
        for (int s = 0; s < a.seeds; ++s) jobs.push_back({b, c.seed + static_cast<std::uint64_t>(s)});
    std::vector<std::string> rows(jobs.size());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    auto work = [&]() {
        for (std::size_t i; (i = next++) < jobs.size();) {
            try {
                RunSpec spec;
                spec.object =
                    std::make_shared<const ObjectShape>(family_member(a.family, jobs[i].b, jobs[i].seed));
                const int H = static_cast<int>(hulls(*spec.object).strong_cycle.size());
                spec.particles = particle_count(a.n_rule, H);
                spec.seed = jobs[i].seed;
                spec.mode = parse_mode(c.mode);
                spec.max_rounds = c.max_rounds;
                spec.debug = c.debug;
                const RunOutcome r = execute(spec);
                const auto ph = phase_rounds(r);
                std::ostringstream row;
                row << r.object->boundary().size() << "," << H << "," << r.n << "," << jobs[i].seed << "," << ph[0]
                    << "," << ph[1] << "," << ph[2] << "," << ph[3] << "," << (r.terminated ? r.rounds : -1) << "\n";
                rows[i] = row.str();
                if (!r.terminated) failed = true;
            } catch (const std::exception& e) {
                rows[i] = "# " + std::string(e.what()) + "\n";
                failed = true;
            }
        }
    };
    const unsigned threads = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                                              static_cast<unsigned>(jobs.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    std::string csv = "B,H,n,seed,learning_rounds,closing_rounds,filling_rounds,weak_rounds,total_rounds\n";
    for (const auto& r : rows) csv += r;
    emit(c.out, csv);
    return failed ? kNoTermination : kOk;
}

int cmd_counter(const std::string& ops_path, std::size_t cells, const Config& c) {
    std::ifstream f(ops_path);
    if (!f) throw ValidationError("cannot read " + ops_path);
    std::stringstream ss;
    ss << f.rdbuf();
    const std::vector<int> ops = parse_operations(ss.str());
    const CounterRunResult r = run_counter(ops, cells, c.seed);
    std::cout << "operations " << ops.size() << "\nreference " << r.reference << "\nvalue " << r.value << "\nrounds "
              << r.rounds << "\nactivations " << r.activations << "\nzero_test_mismatches " << r.zero_test_mismatches
              << "\n";
    if (r.overflow || !r.settled) return kNoTermination;
    return r.value == r.reference && r.zero_test_mismatches == 0 ? kOk : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Amoebot convex hull simulator"};
    app.require_subcommand(1);
    Config run_cfg, verify_cfg, oracle_cfg, bench_cfg, counter_cfg;

    auto* run = app.add_subcommand("run", "Simulate a configuration");
    add_run_flags(run, run_cfg);
    auto* ver = app.add_subcommand("verify", "Simulate and check the final configuration against the oracle");
    add_run_flags(ver, verify_cfg);

    auto* orc = app.add_subcommand("oracle", "Print B(O), H(O), H'(O) and the hull cycles");
    orc->add_option("--object", oracle_cfg.object, "Object file")->required();
    orc->add_option("--render", oracle_cfg.render, "Hull overlay")->check(CLI::IsMember({"none", "ascii", "svg"}));
    orc->add_option("--out", oracle_cfg.out, "Render destination (default stdout)");

    BenchArgs bench_args;
    std::string sizes_text = "48,96,192,384";
    auto* bench = app.add_subcommand("bench", "Round counts over a size-parameterized object family");
    bench->add_option("family", bench_args.family, "hexagon, triangle or blob")
        ->check(CLI::IsMember({"hexagon", "triangle", "blob"}));
    bench->add_option("sizes", sizes_text, "Comma-separated boundary sizes");
    bench->add_option("seeds", bench_args.seeds, "Seeds per size");
    bench->add_option("n", bench_args.n_rule, "Particle count: H, H+k, H-k, half, half-1 or a number");
    bench->add_option("--seed", bench_cfg.seed, "First seed");
    bench->add_option("--mode", bench_cfg.mode, "strong or weak")->check(CLI::IsMember({"strong", "weak"}));
    bench->add_option("--max-rounds", bench_cfg.max_rounds, "Round limit per run");
    bench->add_option("--out", bench_cfg.out, "CSV destination (default stdout)");
    bench->add_flag("--debug-invariants", bench_cfg.debug, "Check invariants after every activation");

    std::string ops_path;
    std::size_t cells = 14;
    auto* counter = app.add_subcommand("counter-harness", "Drive the distributed counter with an operation file");
    counter->add_option("operations", ops_path, "File of '+' and '-' characters")->required();
    counter->add_option("cells", cells, "Path length")->check(CLI::Range(2, 64));
    counter->add_option("--seed", counter_cfg.seed, "Scheduler seed");

    CLI11_PARSE(app, argc, argv);
    try {
        if (*run) return run_and_report(run_cfg, false, std::cerr);
        if (*ver) return run_and_report(verify_cfg, true, std::cout);
        if (*orc) return cmd_oracle(oracle_cfg);
        if (*bench) {
            bench_args.sizes.clear();
            std::stringstream ss(sizes_text);
            for (std::string tok; std::getline(ss, tok, ',');) bench_args.sizes.push_back(std::stoi(tok));
            return cmd_bench(bench_args, bench_cfg);
        }
        if (*counter) return cmd_counter(ops_path, cells, counter_cfg);
    } catch (const ObjectError& e) {
        std::cerr << "invalid object: " << e.what() << "\n";
        return kValidation;
    } catch (const ValidationError& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return kValidation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kOk;
}
