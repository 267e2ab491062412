#include <set>
#include <sstream>

#include "amoebot/engine.hpp"
#include "amoebot/hull_algo.hpp"
#include "amoebot/hull_oracle.hpp"
#include "amoebot/runner.hpp"
#include "amoebot/shapes.hpp"
#include "doctest.h"

using namespace amoebot;

namespace {

struct Snapshot {
    Role role;
    Node head, tail;
    std::optional<Node> parent;
    std::array<CounterSlot, 6> slots;
    bool operator==(const Snapshot&) const = default;
};

Snapshot snap(const Particle& p) { return {p.role, p.head, p.tail, p.parent, p.slots}; }

int object_dir(const ObjectShape& O, Node v) {
    for (int g = 0; g < 6; ++g)
        if (O.contains(neighbor(v, g))) return g;
    return -1;
}

}  // namespace

TEST_CASE("an idle particle without non-idle neighbours does nothing") {
    const ObjectShape O = hexagon(1);
    const Node s = O.boundary().front();
    // Leader, then a straight line of idle particles leading away.
    const int g = opposite(object_dir(O, s));
    const Node a = neighbor(s, g), b = neighbor(a, g), c = neighbor(b, g);
    World w(O, 1);
    w.place_nodes({s, a, b, c});
    w.set_dispatcher(strong_dispatcher());
    const Snapshot before = snap(w.particle(3));
    w.activate(3);
    CHECK(snap(w.particle(3)) == before);
    CHECK(w.role_count(Role::Idle) == 3);
}

TEST_CASE("expanding into the object is rejected and rolled back") {
    const ObjectShape O = hexagon(1);
    const Node s = O.boundary().front();
    World w(O, 2);
    w.place_nodes({s});
    const int g = object_dir(O, s);
    w.set_dispatcher([g](View& v) { v.expand(v.to_local(g)); });
    CHECK_THROWS_AS(w.activate(0), SimulationError);
    CHECK_FALSE(w.particle(0).expanded());
    CHECK(w.occupant(s) == 0);
}

TEST_CASE("a round ends once every particle has been activated") {
    const ObjectShape O = hexagon(1);
    World w(O, 9);
    w.place_blob(O.boundary().front(), 5);
    std::set<int> seen;
    w.set_dispatcher([&seen](View& v) { seen.insert(v.me().id); });
    while (seen.size() < 5) {
        CHECK(w.rounds() == 0);
        w.step();
    }
    CHECK(w.rounds() == 1);
}

TEST_CASE("a run whose predicate already holds takes no rounds") {
    const ObjectShape O = hexagon(1);
    World w(O, 9);
    w.place_blob(O.boundary().front(), 4);
    w.set_dispatcher([](View&) {});
    CHECK(w.run([](const World&) { return true; }, 10));
    CHECK(w.rounds() == 0);
    CHECK(w.steps() == 0);
    CHECK_FALSE(w.run([](const World&) { return false; }, 3));
    CHECK(w.rounds() == 3);
}

TEST_CASE("reading a non-neighbour is a simulation error") {
    const ObjectShape O = hexagon(2);
    World w(O, 4);
    w.place_blob(O.boundary().front(), 12);
    int far = -1;
    for (int id = 1; id < 12 && far < 0; ++id)
        if (!adjacent(w.particle(0).head, w.particle(id).head)) far = id;
    REQUIRE(far > 0);
    w.set_dispatcher([far](View& v) { (void)v.peek(far); });
    CHECK_THROWS_AS(w.activate(0), SimulationError);
    w.set_dispatcher([](View& v) {
        for (int q : v.neighbors()) (void)v.peek(q);
    });
    CHECK_NOTHROW(w.activate(0));
}

TEST_CASE("blob placement is connected, contracted and seeded") {
    const ObjectShape O = random_blob(40, 3);
    World a(O, 17), b(O, 17);
    a.place_blob(default_start(O), 30);
    b.place_blob(default_start(O), 30);
    std::vector<Node> nodes;
    for (int i = 0; i < 30; ++i) {
        CHECK_FALSE(a.particle(i).expanded());
        CHECK(a.particle(i).head == b.particle(i).head);
        CHECK(a.particle(i).offset == b.particle(i).offset);
        nodes.push_back(a.particle(i).head);
    }
    CHECK(is_connected(nodes));
    CHECK(a.particle(0).role == Role::Leader);
    CHECK(check_invariants(a, {static_cast<int>(hulls(O).strong_cycle.size())}).empty());
}

TEST_CASE("identical seeds give identical traces") {
    const ObjectShape O = random_blob(25, 8);
    auto trace = [&](std::uint64_t seed) {
        std::ostringstream out;
        World w(O, seed);
        w.place_blob(default_start(O), static_cast<int>(hulls(O).strong_cycle.size()));
        w.set_dispatcher(strong_dispatcher());
        w.set_trace(&out);
        for (int i = 0; i < 3000; ++i) w.step();
        return out.str();
    };
    const std::string a = trace(5);
    CHECK_FALSE(a.empty());
    CHECK(a == trace(5));
    CHECK(a != trace(6));
}

TEST_CASE("deleting a mid-chain counter bit is reported") {
    const ObjectShape O = hexagon(4);
    const int H = static_cast<int>(hulls(O).strong_cycle.size());
    World w(O, 21);
    w.place_blob(default_start(O), H);
    w.set_dispatcher(strong_dispatcher());
    w.set_debug(true, {H});
    int h = -1;
    std::vector<int> chain;
    for (int i = 0; i < 200000 && h < 0; ++i) {
        w.step();
        REQUIRE(w.violations().empty());
        if (!w.counters_live()) continue;
        for (int k = 0; k < 6 && h < 0; ++k) {
            chain = counter_chain(w, k);
            if (chain.size() >= 3) h = k;
        }
    }
    REQUIRE(h >= 0);
    CHECK(check_invariants(w, {H}).empty());
    CounterSlot& s = w.particle_mut(chain[1]).slots[static_cast<std::size_t>(h)];
    s.bit_l = Bit::Blank;
    s.bit_m = Bit::Blank;
    s.tok_l.clear();
    s.tok_m.clear();
    const auto v = check_invariants(w, {H});
    REQUIRE_FALSE(v.empty());
    bool counter_msg = false;
    for (const auto& m : v) counter_msg = counter_msg || m.find("counter") != std::string::npos;
    CHECK(counter_msg);
}

TEST_CASE("a handover keeps the system connected and single-occupied") {
    const ObjectShape O = hexagon(2);
    const int H = static_cast<int>(hulls(O).strong_cycle.size());
    World w(O, 33);
    w.place_blob(default_start(O), H);
    w.set_dispatcher(strong_dispatcher());
    long long pulls = 0;
    for (int i = 0; i < 20000; ++i) {
        w.step();
        if (w.metrics().pulls + w.metrics().pushes > pulls) {
            pulls = w.metrics().pulls + w.metrics().pushes;
            CHECK(check_invariants(w, {H}).empty());
        }
    }
    CHECK(pulls > 0);
}
