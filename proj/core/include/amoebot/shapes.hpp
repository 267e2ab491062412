#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "amoebot/lattice.hpp"

namespace amoebot {

// Nodes within hex distance r of the origin; |B| = 6(r + 1).
ObjectShape hexagon(int r);

// Filled triangle with k nodes per side.
ObjectShape triangle(int k);

// Seeded random simply connected, tunnel-free object grown to `size` nodes.
ObjectShape random_blob(int size, std::uint64_t seed);

// Member of a named family ("hexagon", "triangle", "blob") whose boundary is
// closest to `boundary_target` from above.
ObjectShape family_member(const std::string& family, int boundary_target, std::uint64_t seed);

// Mixed sample of valid objects with boundary sizes in [min_b, max_b].
std::vector<ObjectShape> object_sample(int count, int min_b, int max_b, std::uint64_t seed);

}  // namespace amoebot
