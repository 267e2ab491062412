#pragma once

#include <string>
#include <vector>

#include "amoebot/engine.hpp"

namespace amoebot {

// One-letter glyph per role; heads upper case, tails lower case.
char role_glyph(Role r);

// Text picture: rows from top, each node two columns wide, odd rows shifted.
// '#' object, '.' strong hull ring node left empty.
std::string render_ascii(const ObjectShape& O, const std::vector<Particle>& ps, const std::vector<Node>& ring = {});

std::string render_svg(const ObjectShape& O, const std::vector<Particle>& ps, const std::vector<Node>& ring = {},
                       const std::vector<Node>& ring2 = {});

// Occupied node sets recovered from a render, for cross-checking outputs.
NodeSet ascii_particle_nodes(const std::string& ascii, const ObjectShape& O, const std::vector<Particle>& ps,
                             const std::vector<Node>& ring = {});
NodeSet svg_particle_nodes(const std::string& svg);

}  // namespace amoebot
