#pragma once

#include <array>
#include <vector>

#include "amoebot/lattice.hpp"

namespace amoebot {

using Distances = std::array<long long, 6>;

struct HullSets {
    std::vector<Node> strong_cycle;  // H(O), clockwise
    std::vector<Node> weak_cycle;    // H'(O), clockwise
    NodeSet strong_region;
    NodeSet weak_region;
    std::array<int, 6> minima{};     // m_h = min over O of f_h
};

// Minimum of each functional over O.
std::array<int, 6> half_plane_minima(const ObjectShape& O);

HullSets strong_hull(const ObjectShape& O);
HullSets weak_hull(const ObjectShape& O);
HullSets hulls(const ObjectShape& O);

// Ring of nodes outside `region` adjacent to it, walked clockwise from its
// lexicographically smallest node.
std::vector<Node> ring_around(const NodeSet& region);

// Closure of the line-fill operation along the three lattice axes.
NodeSet line_fill_fixpoint(const std::vector<Node>& seed);

// Whether every axis line meets the set in a contiguous run.
bool is_axis_convex(const NodeSet& s);

// Distance from v to each supporting line of H(O) in label order; zero on
// H(O) nodes that lie on that line. Requires v inside the ring's closure.
Distances distances_to_strong_hull(Node v, const ObjectShape& O);

}  // namespace amoebot
