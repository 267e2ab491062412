#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "amoebot/render.hpp"
#include "amoebot/runner.hpp"
#include "amoebot/shapes.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace amoebot;
namespace fs = std::filesystem;

namespace {

RunSpec spec_for(const ObjectShape& O, int n, Mode mode, std::uint64_t seed = 1) {
    RunSpec s;
    s.object = std::make_shared<const ObjectShape>(O);
    s.particles = n;
    s.mode = mode;
    s.seed = seed;
    return s;
}

int hull_size(const ObjectShape& O) { return static_cast<int>(hulls(O).strong_cycle.size()); }

struct TempDir {
    fs::path dir;
    TempDir() {
        dir = fs::temp_directory_path() / ("amoebot_test_" + std::to_string(std::rand()));
        fs::create_directories(dir);
    }
    ~TempDir() { fs::remove_all(dir); }
    std::string file(const std::string& name, const std::string& text) const {
        const fs::path p = dir / name;
        std::ofstream(p) << text;
        return p.string();
    }
};

int cli(const std::string& args) {
    const std::string cmd = std::string(AMOEBOT_CLI) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("validation rejects too few particles") {
    const ObjectShape O = hexagon(3);
    const int H = hull_size(O);
    CHECK_THROWS_AS(validate(spec_for(O, 0, Mode::Strong), H), ValidationError);
    CHECK_THROWS_AS(validate(spec_for(O, 4, Mode::Strong), H), ValidationError);
    CHECK_NOTHROW(validate(spec_for(O, 5, Mode::Strong), H));
    CHECK_THROWS_AS(validate(spec_for(O, H - 1, Mode::Weak), H), ValidationError);
    CHECK_NOTHROW(validate(spec_for(O, 0, Mode::Solo), H));
    RunSpec off = spec_for(O, H, Mode::Strong);
    off.leader = Node{20, 20};
    CHECK_THROWS_AS(execute(off), ValidationError);
}

TEST_CASE("verdicts for each mode") {
    const ObjectShape O = random_blob(30, 12);
    const int H = hull_size(O);
    const Verdict solo = verify(execute(spec_for(O, 0, Mode::Solo)));
    CHECK(solo.ok);
    CHECK(solo.verdict == "solo estimate exact");
    const Verdict full = verify(execute(spec_for(O, H, Mode::Strong, 3)));
    CHECK(full.ok);
    CHECK(full.verdict == "hull filled");
    const Verdict few = verify(execute(spec_for(O, H / 2 - 1, Mode::Strong, 4)));
    CHECK(few.ok);
    CHECK(few.verdict == "all expanded on hull");
    const Verdict closed = verify(execute(spec_for(O, H - 1, Mode::Strong, 5)));
    CHECK(closed.ok);
    CHECK(closed.verdict == "hull closed");
    const Verdict weak = verify(execute(spec_for(O, H, Mode::Weak, 6)));
    CHECK(weak.ok);
    CHECK(weak.verdict == "weak hull formed");
}

TEST_CASE("a run cut short is reported as not terminated") {
    RunSpec s = spec_for(hexagon(3), 24, Mode::Strong);
    s.max_rounds = 5;
    const RunOutcome r = execute(s);
    CHECK_FALSE(r.terminated);
    CHECK(r.rounds == 5);
    CHECK(verify(r).verdict == "did not terminate");
}

TEST_CASE("metrics json carries the run summary") {
    const ObjectShape O = hexagon(2);
    const RunOutcome r = execute(spec_for(O, hull_size(O), Mode::Strong, 8));
    const Verdict v = verify(r);
    const auto j = nlohmann::json::parse(metrics_json(r, &v));
    CHECK(j["mode"] == "strong");
    CHECK(j["B"] == O.boundary().size());
    CHECK(j["H"] == hull_size(O));
    CHECK(j["n"] == hull_size(O));
    CHECK(j["terminated"] == true);
    CHECK(j["rounds"] == r.rounds);
    const auto ph = phase_rounds(r);
    CHECK(j["phase_rounds"]["learning"] == ph[0]);
    CHECK(ph[0] > 0);
    CHECK(ph[3] == -1);
    CHECK(ph[0] + ph[1] + ph[2] <= r.rounds);
    CHECK(j["verdict"]["ok"] == true);
    CHECK(j["invariant_violations"] == 0);
}

TEST_CASE("ascii and svg renders show the same particles") {
    const ObjectShape O = random_blob(20, 2);
    const RunOutcome r = execute(spec_for(O, hull_size(O) + 3, Mode::Strong, 9));
    const auto ps = r.world->particles();
    NodeSet want;
    for (const Particle& p : ps) want.insert(p.head), want.insert(p.tail);
    const std::string ascii = render_ascii(O, ps, r.hulls.strong_cycle);
    const std::string svg = render_svg(O, ps, r.hulls.strong_cycle);
    CHECK(ascii_particle_nodes(ascii, O, ps, r.hulls.strong_cycle) == want);
    CHECK(svg_particle_nodes(svg) == want);
    CHECK(ascii.find('#') != std::string::npos);
}

TEST_CASE("generated shapes are valid objects") {
    CHECK(hexagon(2).boundary().size() == 18);
    CHECK(triangle(3).size() == 6);
    for (const std::string fam : {"hexagon", "triangle", "blob"}) {
        const ObjectShape O = family_member(fam, 60, 1);
        CHECK(O.boundary().size() >= 60);
        CHECK(is_simply_connected(O.nodes()));
        CHECK_FALSE(has_width1_tunnel(O.nodes()));
    }
    const ObjectShape a = random_blob(50, 4), b = random_blob(50, 4);
    CHECK(a.nodes() == b.nodes());
    CHECK(a.size() == 50);
    for (const ObjectShape& O : object_sample(10, 20, 80, 3)) {
        CHECK(O.boundary().size() >= 20);
        CHECK(O.boundary().size() <= 80);
    }
}

TEST_CASE("command line exit codes") {
    TempDir t;
    const ObjectShape hex = hexagon(2);
    std::ostringstream obj;
    for (const Node& v : hex.nodes()) obj << v.x << " " << v.y << "\n";
    const std::string o = t.file("hex.txt", obj.str());
    const std::string bad = t.file("bad.txt", "0 0\n3 0\n");
    const std::string plus = t.file("ops.txt", "+++");
    const std::string metrics = (t.dir / "m.json").string();
    const std::string trace = (t.dir / "t.jsonl").string();

    CHECK(cli("verify --object " + o + " --particles 18 --metrics " + metrics + " --trace " + trace) == 0);
    CHECK(fs::file_size(metrics) > 0);
    CHECK(fs::file_size(trace) > 0);
    CHECK(cli("run --object " + o + " --particles 18 --render ascii") == 0);
    CHECK(cli("verify --object " + o + " --mode solo") == 0);
    CHECK(cli("verify --object " + o + " --particles 18 --mode weak --debug-invariants") == 0);
    CHECK(cli("run --object " + o + " --particles 18 --max-rounds 3") == 3);
    CHECK(cli("oracle --object " + o + " --render svg --out " + (t.dir / "h.svg").string()) == 0);
    CHECK(cli("bench hexagon 18,24 1 H --out " + (t.dir / "b.csv").string()) == 0);
    CHECK(cli("counter-harness " + plus + " 6") == 0);

    CHECK(cli("verify --object " + bad + " --particles 5") == 2);
    CHECK(cli("verify --object " + o + " --particles 3") == 2);
    CHECK(cli("verify --object " + o + " --particles 10 --mode weak") == 2);
    CHECK(cli("verify --object " + o) == 2);
}
