#include <algorithm>
#include <set>
#include <sstream>

#include "amoebot/lattice.hpp"
#include "doctest.h"

using namespace amoebot;

namespace {

int brute_boundary_size(const std::vector<Node>& O) {
    std::set<Node> in(O.begin(), O.end()), out;
    for (const Node& v : O)
        for (const Node& d : kDirVec)
            if (!in.count(v + d)) out.insert(v + d);
    return static_cast<int>(out.size());
}

std::vector<Node> hex_nodes(int r) {
    std::vector<Node> out;
    for (int x = -r; x <= r; ++x)
        for (int y = -r; y <= r; ++y)
            if (hex_distance({0, 0}, {x, y}) <= r) out.push_back({x, y});
    return out;
}

}  // namespace

TEST_CASE("direction zero is +x and opposite directions cancel") {
    CHECK(neighbor({0, 0}, 0) == Node{1, 0});
    for (int x = -3; x <= 3; ++x)
        for (int y = -3; y <= 3; ++y)
            for (int g = 0; g < 6; ++g) CHECK(neighbor(neighbor({x, y}, g), opposite(g)) == Node{x, y});
}

TEST_CASE("direction_to and adjacency agree with the direction table") {
    for (int g = 0; g < 6; ++g) {
        CHECK(direction_to({2, -1}, neighbor({2, -1}, g)) == g);
        CHECK(adjacent({2, -1}, neighbor({2, -1}, g)));
    }
    CHECK(direction_to({0, 0}, {2, 0}) == -1);
    CHECK_FALSE(adjacent({0, 0}, {0, 0}));
    CHECK(hex_distance({0, 0}, {2, -1}) == 2);
    CHECK(hex_distance({0, 0}, {1, 1}) == 2);
}

TEST_CASE("rotation by 60 degrees maps direction g to g+1") {
    for (int g = 0; g < 6; ++g) CHECK(rotate(kDirVec[g], 1) == kDirVec[(g + 1) % 6]);
    CHECK(rotate({3, -1}, 6) == Node{3, -1});
}

TEST_CASE("delta table rows") {
    CHECK(delta(0) == Delta{1, 1, 0, -1, -1, 0});
    CHECK(delta(3) == Delta{-1, -1, 0, 1, 1, 0});
    for (int i = 0; i < 6; ++i) {
        for (int h = 0; h < 6; ++h) {
            CHECK(delta(i)[h] + delta(i + 3)[h] == 0);
            CHECK(delta(i + 1)[(h + 1) % 6] == delta(i)[h]);
            CHECK(functional(h, kDirVec[i]) == delta(i)[h]);
        }
        int plus = 0, minus = 0;
        for (int h = 0; h < 6; ++h) plus += delta(i)[h] == 1, minus += delta(i)[h] == -1;
        CHECK(plus == 2);
        CHECK(minus == 2);
    }
}

TEST_CASE("boundary sizes match an adjacency scan") {
    CHECK(boundary({{0, 0}}).size() == 6);
    CHECK(boundary({{0, 0}, {1, 0}}).size() == 8);
    for (int r = 0; r < 4; ++r) {
        const auto O = hex_nodes(r);
        CHECK(static_cast<int>(boundary(O).size()) == brute_boundary_size(O));
        CHECK(boundary(O).size() == static_cast<std::size_t>(6 * (r + 1)));
    }
    const std::vector<Node> L{{0, 0}, {1, 0}, {2, 0}, {2, 1}, {2, 2}};
    CHECK(static_cast<int>(boundary(L).size()) == brute_boundary_size(L));
}

TEST_CASE("simple connectivity") {
    CHECK(is_simply_connected({{0, 0}}));
    std::vector<Node> ring;
    for (const Node& d : kDirVec) ring.push_back(d);
    CHECK(is_connected(ring));
    CHECK_FALSE(is_simply_connected(ring));
    CHECK(is_simply_connected(hex_nodes(3)));
    CHECK_FALSE(is_connected({{0, 0}, {2, 0}}));
}

TEST_CASE("width-1 tunnels") {
    CHECK_FALSE(has_width1_tunnel({{0, 0}}));
    CHECK_FALSE(has_width1_tunnel(hex_nodes(2)));
    std::vector<Node> bars;
    for (int x = 0; x < 5; ++x) {
        bars.push_back({x, 0});
        bars.push_back({x, 2});
    }
    bars.push_back({0, 1});
    CHECK(has_width1_tunnel(bars));
    CHECK_THROWS_AS(ObjectShape{bars}, ObjectError);
}

TEST_CASE("object validation") {
    CHECK_THROWS_AS(ObjectShape(std::vector<Node>{}), ObjectError);
    CHECK_THROWS_AS(ObjectShape(std::vector<Node>{{0, 0}, {3, 0}}), ObjectError);
    std::vector<Node> ring;
    for (const Node& d : kDirVec) ring.push_back(d);
    CHECK_THROWS_AS(ObjectShape{ring}, ObjectError);
    const ObjectShape O(hex_nodes(1));
    CHECK(O.size() == 7);
    CHECK(O.contains({0, 0}));
    CHECK(O.on_boundary({2, 0}));
    CHECK_FALSE(O.on_boundary({0, 0}));
}

TEST_CASE("clockwise walk around a single node") {
    const ObjectShape O({{0, 0}});
    for (int g = 0; g < 6; ++g) {
        const auto w = clockwise_boundary_walk(O, kDirVec[g]);
        REQUIRE(w.size() == 6);
        for (int k = 0; k < 6; ++k) CHECK(w[k] == kDirVec[(g + k) % 6]);
    }
    CHECK_THROWS(clockwise_boundary_walk(O, {5, 5}));
}

TEST_CASE("clockwise walk visits every boundary node of a hexagon once") {
    const ObjectShape O(hex_nodes(2));
    const auto w = clockwise_boundary_walk(O, O.boundary().front());
    CHECK(w.size() == O.boundary().size());
    CHECK(std::set<Node>(w.begin(), w.end()).size() == w.size());
    for (std::size_t k = 0; k < w.size(); ++k) CHECK(adjacent(w[k], w[(k + 1) % w.size()]));
}

TEST_CASE("right-hand rule rotates counterclockwise past object nodes") {
    auto blocked_at = [](std::set<int> dirs) {
        return [dirs](Node v) {
            for (int g : dirs)
                if (v == kDirVec[g]) return true;
            return false;
        };
    };
    CHECK(rhr_direction(blocked_at({0}), {0, 0}) == 5);
    CHECK(rhr_direction(blocked_at({0, 1, 2}), {0, 0}) == 5);
    CHECK(rhr_direction(blocked_at({}), {0, 0}) == -1);
    CHECK(rhr_direction(blocked_at({0, 1, 2, 3, 4, 5}), {0, 0}) == -1);
}

TEST_CASE("object text round trip") {
    const ObjectShape O({{0, 0}, {1, 0}, {1, 1}, {-1, 2}, {0, 1}});
    std::istringstream in(format_object(O));
    const ObjectShape back = parse_object(in);
    auto a = O.nodes(), b = back.nodes();
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    CHECK(a == b);
    std::istringstream bad("1 2\nx y\n");
    CHECK_THROWS_AS(parse_object(bad), ObjectError);
}
