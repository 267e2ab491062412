#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "amoebot/lattice.hpp"

namespace amoebot {

struct SoloState {
    Node pos;
    std::array<long long, 6> d{};
    std::array<std::uint8_t, 6> b{};
    bool terminated = false;
};

// Right-hand-rule exit over the six local labels; object_at[l] marks object
// neighbours. -1 if there is no object neighbour or no free one.
int get_rhr(const std::array<bool, 6>& object_at);

// One move along the boundary with clamped distance updates.
SoloState solo_step(const SoloState& s, const ObjectShape& O);

struct SoloResult {
    SoloState state;
    long long steps = 0;
    long long rounds = 0;
    bool terminated = false;
    std::vector<Node> path;  // positions visited, start first
};

// Runs to termination or max_steps (default 10 * |B(O)|).
SoloResult run_solo(const ObjectShape& O, Node start, long long max_steps = -1);

}  // namespace amoebot
