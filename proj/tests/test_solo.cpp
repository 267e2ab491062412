#include <set>

#include "amoebot/hull_oracle.hpp"
#include "amoebot/shapes.hpp"
#include "amoebot/solo.hpp"
#include "brute_oracle.hpp"
#include "doctest.h"

using namespace amoebot;

namespace {

std::array<bool, 6> mask(std::initializer_list<int> dirs) {
    std::array<bool, 6> m{};
    for (int g : dirs) m[static_cast<std::size_t>(g)] = true;
    return m;
}

}  // namespace

TEST_CASE("get_rhr examples") {
    CHECK(get_rhr(mask({0})) == 5);
    CHECK(get_rhr(mask({0, 1, 2})) == 5);
    CHECK(get_rhr(mask({5, 0})) == 4);
    CHECK(get_rhr(mask({})) == -1);
    CHECK(get_rhr(mask({0, 1, 2, 3, 4, 5})) == -1);
}

TEST_CASE("get_rhr exits just counterclockwise of an object neighbour") {
    for (int bits = 1; bits < 63; ++bits) {
        std::array<bool, 6> m{};
        int arcs = 0;
        for (int g = 0; g < 6; ++g) m[static_cast<std::size_t>(g)] = bits >> g & 1;
        for (int g = 0; g < 6; ++g) arcs += m[static_cast<std::size_t>(g)] && !m[static_cast<std::size_t>(mod6(g + 5))];
        const int base = get_rhr(m);
        REQUIRE(base >= 0);
        CHECK_FALSE(m[static_cast<std::size_t>(base)]);
        CHECK(m[static_cast<std::size_t>(mod6(base + 1))]);
        if (arcs != 1) continue;
        for (int k = 1; k < 6; ++k) {
            std::array<bool, 6> r{};
            for (int g = 0; g < 6; ++g) r[static_cast<std::size_t>(mod6(g + k))] = m[static_cast<std::size_t>(g)];
            CHECK(get_rhr(r) == mod6(base + k));
        }
    }
}

TEST_CASE("a move without a push marks the zero distances") {
    const ObjectShape O({{0, 0}});
    SoloState s;
    s.pos = {1, 0};
    s.d = {2, 2, 1, 0, 0, 1};
    const SoloState t = solo_step(s, O);
    CHECK(t.pos == Node{1, -1});
    CHECK(t.d == std::array<long long, 6>{1, 2, 2, 1, 0, 0});
    CHECK(t.d == distances_to_strong_hull(t.pos, O));
    CHECK(t.b == std::array<std::uint8_t, 6>{0, 0, 0, 0, 1, 1});
    CHECK_FALSE(t.terminated);
}

TEST_CASE("a move that pushes a supporting line clears the bits") {
    const ObjectShape O({{0, 0}});
    SoloState s;
    s.pos = {1, 0};
    s.d = {0, 2, 1, 0, 0, 1};
    s.b = {1, 0, 0, 1, 1, 0};
    const SoloState t = solo_step(s, O);
    CHECK(t.d == std::array<long long, 6>{0, 2, 2, 1, 0, 0});
    CHECK(t.b == std::array<std::uint8_t, 6>{});
}

TEST_CASE("solo particle around a single node") {
    const ObjectShape O({{0, 0}});
    for (const Node& start : O.boundary()) {
        const SoloResult r = run_solo(O, start);
        REQUIRE(r.terminated);
        CHECK(r.steps <= 12);
        CHECK(r.state.d == distances_to_strong_hull(r.state.pos, O));
    }
}

TEST_CASE("solo estimates equal the true distances on generated objects") {
    for (const ObjectShape& O : object_sample(25, 12, 150, 77)) {
        const SoloResult r = run_solo(O, O.boundary().front());
        REQUIRE(r.terminated);
        const auto want = brute::distances(r.state.pos, O.nodes());
        bool some_zero = false;
        for (int h = 0; h < 6; ++h) {
            CHECK(r.state.d[static_cast<std::size_t>(h)] == want[h]);
            some_zero = some_zero || want[h] == 0;
        }
        CHECK(some_zero);
        const auto walk = static_cast<long long>(O.boundary().size());
        CHECK(r.steps <= 3 * walk);
        // The estimated hull lies inside H(O), so no estimate exceeds the true distance.
        SoloState s;
        s.pos = O.boundary().front();
        for (long long k = 0; k < r.steps; ++k) {
            s = solo_step(s, O);
            const auto d = brute::distances(s.pos, O.nodes());
            for (int h = 0; h < 6; ++h) CHECK(s.d[static_cast<std::size_t>(h)] <= d[h]);
        }
        CHECK(s.pos == r.state.pos);
    }
}

TEST_CASE("solo start must be on the boundary") {
    CHECK_THROWS(run_solo(hexagon(2), {10, 10}));
}
