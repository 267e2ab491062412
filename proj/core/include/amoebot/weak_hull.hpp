#pragma once

#include "amoebot/engine.hpp"

namespace amoebot {

enum class Corner : std::uint8_t { Neither, Convex, Reflex };

// Shape of the tightening cycle at the activated particle.
Corner classify(const View& v);

// One activation of the weak hull extension; other roles run the strong algorithm.
void activate_weak(View& v);

Dispatcher weak_dispatcher();

}  // namespace amoebot
