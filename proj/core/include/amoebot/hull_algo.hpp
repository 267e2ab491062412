#pragma once

#include "amoebot/engine.hpp"

namespace amoebot {

// Direction followed clockwise along the boundary line of half-plane h
// (the direction i with delta(i)[h] == 0 that continues the clockwise walk).
constexpr int plane_to_dir(int h) { return mod6(h + 4); }
constexpr int next_plane(int h) { return mod6(h + 1); }

// Whether contracted P and expanded Q may hand over without splitting a counter.
bool handover_is_safe(const Particle& P, const Particle& Q);

// Child of the activated particle that continues counter h, or -1.
int next_counter_particle(const View& v, int h);

// Forward bits and process tokens of all six counters against their successors.
void process_hull_counters(View& v);

// Zero-test of the leader's counter h.
ZeroResult leader_zero_test(const View& v, int h);

// Exchange memory with the contracted particle `q` ahead of the leader.
void role_swap(View& v, int q, bool closing);

struct StrongOptions {
    bool weak = false;  // the completed all_con token starts tightening instead of halting
};

// One activation of the convex hull algorithm for any strong-phase role.
void activate_strong(View& v, const StrongOptions& opt = {});

Dispatcher strong_dispatcher(StrongOptions opt = {});

}  // namespace amoebot
