#include "amoebot/hull_algo.hpp"
#include "amoebot/hull_oracle.hpp"
#include "amoebot/runner.hpp"
#include "amoebot/shapes.hpp"
#include "doctest.h"

using namespace amoebot;

namespace {

struct Scene {
    ObjectShape O = hexagon(2);
    Node s, on_b, off_b;

    Scene() {
        s = O.boundary().front();
        bool got_on = false, got_off = false;
        for (int g = 0; g < 6; ++g) {
            const Node u = neighbor(s, g);
            if (O.contains(u)) continue;
            if (O.on_boundary(u) && !got_on) on_b = u, got_on = true;
            if (!O.on_boundary(u) && !got_off) off_b = u, got_off = true;
        }
        REQUIRE(got_on);
        REQUIRE(got_off);
    }
};

// Leader at s with two children: particle 1 on the boundary, particle 2 off it.
World make_world(const Scene& sc) {
    World w(sc.O, 1);
    w.place_nodes({sc.s, sc.on_b, sc.off_b});
    for (int id : {1, 2}) {
        Particle& p = w.particle_mut(id);
        p.role = Role::Follower;
        p.parent = sc.s;
    }
    return w;
}

int query_next(World& w, int h) {
    int out = -2;
    w.set_dispatcher([&](View& v) { out = next_counter_particle(v, h); });
    w.activate(0);
    return out;
}

}  // namespace

TEST_CASE("plane_to_dir follows each side of the hull clockwise") {
    for (const ObjectShape& O : {hexagon(3), triangle(5), random_blob(60, 4)}) {
        const auto& ring = hulls(O).strong_cycle;
        std::vector<int> planes;
        for (std::size_t k = 0; k < ring.size(); ++k) {
            const Node u = ring[k], w = ring[(k + 1) % ring.size()];
            const auto du = distances_to_strong_hull(u, O), dw = distances_to_strong_hull(w, O);
            std::vector<int> shared;
            for (int h = 0; h < 6; ++h)
                if (du[h] == 0 && dw[h] == 0) shared.push_back(h);
            REQUIRE(shared.size() == 1);
            CHECK(plane_to_dir(shared[0]) == direction_to(u, w));
            if (planes.empty() || planes.back() != shared[0]) planes.push_back(shared[0]);
        }
        if (planes.size() > 1 && planes.front() == planes.back()) planes.pop_back();
        for (std::size_t k = 0; k + 1 < planes.size(); ++k) {
            int h = planes[k];
            // Sides of length zero are skipped by next_plane steps.
            int steps = 0;
            while (h != planes[k + 1] && steps < 6) h = next_plane(h), ++steps;
            CHECK(h == planes[k + 1]);
            CHECK(steps >= 1);
        }
    }
}

TEST_CASE("next counter particle prefers a child holding the counter") {
    const Scene sc;
    World w = make_world(sc);
    w.particle_mut(2).slots[0].bit_l = Bit::One;
    CHECK(query_next(w, 0) == 2);
    CHECK(query_next(w, 1) == 1);
}

TEST_CASE("next counter particle falls back to the follower child on the boundary") {
    const Scene sc;
    World w = make_world(sc);
    for (int h = 0; h < 6; ++h) CHECK(query_next(w, h) == 1);
}

TEST_CASE("next counter particle takes a hull child before a boundary child") {
    const Scene sc;
    World w = make_world(sc);
    w.particle_mut(0).phase = Phase::Closing;
    w.particle_mut(2).role = Role::Hull;
    CHECK(query_next(w, 3) == 2);
}

TEST_CASE("one pending increment is consumed and other counters stay put") {
    const Scene sc;
    World w(sc.O, 1);
    w.place_nodes({sc.s});
    Particle& l = w.particle_mut(0);
    l.slots[0].tok_l.push(Tok::Inc);
    const auto before = l.slots;
    w.set_dispatcher([](View& v) { process_hull_counters(v); });
    w.activate(0);
    const Particle& after = w.particle(0);
    CHECK(after.slots[0].bit_l == Bit::One);
    CHECK(after.slots[0].tok_l.empty());
    for (int h = 1; h < 6; ++h) CHECK(after.slots[h] == before[h]);
}

TEST_CASE("counters with nothing pending are left alone") {
    const Scene sc;
    World w = make_world(sc);
    const auto before = w.particle(0).slots;
    w.set_dispatcher([](View& v) { process_hull_counters(v); });
    w.activate(0);
    CHECK(w.particle(0).slots == before);
}

TEST_CASE("handover safety per counter") {
    Particle P, Q;
    CHECK(handover_is_safe(P, Q));
    P.slots[2].bit_l = Bit::One;
    CHECK_FALSE(handover_is_safe(P, Q));
    Q.slots[2].bit_l = Bit::Zero;
    CHECK(handover_is_safe(P, Q));
    Particle R;
    R.slots[4].tok_l.push(Tok::Final);
    CHECK(handover_is_safe(Particle{}, R));
    Particle S;
    S.slots[4].bit_m = Bit::One;
    CHECK_FALSE(handover_is_safe(Particle{}, S));
    R.slots[4].bit_m = Bit::One;
    CHECK(handover_is_safe(Particle{}, R));
}

TEST_CASE("leader zero tests are true before anything moves") {
    const Scene sc;
    World w(sc.O, 1);
    w.place_nodes({sc.s});
    std::array<ZeroResult, 6> z{};
    w.set_dispatcher([&](View& v) {
        for (int h = 0; h < 6; ++h) z[h] = leader_zero_test(v, h);
    });
    w.activate(0);
    for (ZeroResult r : z) CHECK(r == ZeroResult::True);
}

TEST_CASE("counter chains survive a swap into their own final token and split tail children") {
    // Two instances where the chain loops back in front of the leader.
    const auto objs = object_sample(50, 12, 400, 2024);
    for (int k : {31, 47}) {
        RunSpec spec;
        spec.object = std::make_shared<const ObjectShape>(objs[static_cast<std::size_t>(k)]);
        spec.particles = static_cast<int>(hulls(*spec.object).strong_cycle.size()) + 5;
        spec.seed = 4;
        spec.debug = true;
        const RunOutcome r = execute(spec);
        CHECK(r.violations.empty());
        CHECK(verify(r).verdict == "hull filled");
    }
}
