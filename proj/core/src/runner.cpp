#include "amoebot/runner.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "amoebot/hull_algo.hpp"
#include "amoebot/weak_hull.hpp"
#include "json.hpp"

namespace amoebot {

namespace {

std::string where(Node v) { return "(" + std::to_string(v.x) + "," + std::to_string(v.y) + ")"; }

// Numeric value represented by counter h, pending operations included.
long long counter_value(const World& w, int h) {
    const auto hh = static_cast<std::size_t>(h);
    long long v = 0;
    long long weight = 1;
    for (int id : counter_chain(w, h)) {
        const CounterSlot& s = w.particle(id).slots[hh];
        std::vector<std::pair<Bit, const TokenQueue*>> cells{{s.bit_l, &s.tok_l}};
        if (s.bit_m != Bit::Blank) cells.push_back({s.bit_m, &s.tok_m});
        for (const auto& [bit, q] : cells) {
            if (bit == Bit::One) v += weight;
            for (std::size_t k = 0; k < q->size(); ++k) {
                if ((*q)[k] == Tok::Inc) v += weight;
                else if ((*q)[k] == Tok::Dec) v -= weight;
            }
            if (q->contains(Tok::Final)) return v;
            weight *= 2;
        }
    }
    return v;
}

bool strong_done(const World& w, int hull_size) {
    const int n = w.size();
    if (w.terminated_count() == n) return true;
    return n < hull_size && w.role_count(Role::Finished) == n;
}

}  // namespace

Mode parse_mode(const std::string& s) {
    if (s == "solo") return Mode::Solo;
    if (s == "strong") return Mode::Strong;
    if (s == "weak") return Mode::Weak;
    throw ValidationError("unknown mode: " + s);
}

const char* mode_name(Mode m) {
    switch (m) {
        case Mode::Solo: return "solo";
        case Mode::Strong: return "strong";
        case Mode::Weak: return "weak";
    }
    return "?";
}

Node default_start(const ObjectShape& O) { return *std::min_element(O.boundary().begin(), O.boundary().end()); }

void validate(const RunSpec& spec, int hull_size) {
    const int n = spec.placement.empty() ? spec.particles : static_cast<int>(spec.placement.size());
    if (spec.mode == Mode::Solo) return;
    if (n < 1) throw ValidationError("need at least one particle");
    if (!(n > std::log2(static_cast<double>(hull_size))))
        throw ValidationError("need more than log2(|H(O)|) = " + std::to_string(std::log2(static_cast<double>(hull_size))) +
                              " particles, got " + std::to_string(n));
    if (spec.mode == Mode::Weak && n < hull_size)
        throw ValidationError("weak mode needs at least |H(O)| = " + std::to_string(hull_size) + " particles, got " +
                              std::to_string(n));
}

RunOutcome execute(const RunSpec& spec) {
    if (!spec.object) throw ValidationError("no object");
    const ObjectShape& O = *spec.object;
    RunOutcome r;
    r.object = spec.object;
    r.hulls = hulls(O);
    r.mode = spec.mode;
    const int H = static_cast<int>(r.hulls.strong_cycle.size());
    const int B = static_cast<int>(O.boundary().size());
    r.start = spec.leader ? *spec.leader : !spec.placement.empty() ? spec.placement.front() : default_start(O);
    if (!O.on_boundary(r.start)) throw ValidationError("leader start " + where(r.start) + " is not on the object boundary");
    if (spec.mode == Mode::Solo) {
        r.n = 1;
        r.max_rounds = spec.max_rounds > 0 ? spec.max_rounds : 10LL * B;
        r.solo = run_solo(O, r.start, r.max_rounds);
        r.terminated = r.solo.terminated;
        r.rounds = r.solo.rounds;
        r.metrics.rounds = r.solo.rounds;
        r.metrics.activations = r.solo.steps;
        r.metrics.learning_rounds = r.solo.terminated ? r.solo.rounds : -1;
        return r;
    }
    validate(spec, H);
    r.world = std::make_unique<World>(O, spec.seed);
    World& w = *r.world;
    if (!spec.placement.empty()) w.place_nodes(spec.placement);
    else w.place_blob(r.start, spec.particles);
    r.n = w.size();
    if (spec.mode == Mode::Weak) w.set_dispatcher(weak_dispatcher());
    else w.set_dispatcher(strong_dispatcher());
    w.set_trace(spec.trace);
    w.set_debug(spec.debug, InvariantContext{H});
    r.max_rounds = spec.max_rounds > 0 ? spec.max_rounds : 100LL * (B + H) + 20LL * r.n + 2000;
    auto done = [&]() {
        if (spec.mode == Mode::Weak) return w.role_count(Role::TightFinished) == r.n;
        return strong_done(w, H);
    };
    bool learned = false;
    try {
        while (!done()) {
            if (w.rounds() >= r.max_rounds) break;
            w.step();
            if (spec.debug && !w.violations().empty()) break;
            if (!learned && w.metrics().learning_rounds >= 0) {
                learned = true;
                const Particle& l = w.particle(w.leader_id());
                const auto d = distances_to_strong_hull(l.head, O);
                const int rot = mod6(l.offset - l.compass);
                std::ostringstream msg;
                for (int h = 0; h < 6; ++h) {
                    const long long got = counter_value(w, h);
                    const long long want = d[static_cast<std::size_t>(mod6(h + rot))];
                    if (got != want) {
                        r.counters_matched = false;
                        msg << kHalfPlaneNames[static_cast<std::size_t>(mod6(h + rot))] << ": counter " << got
                            << " oracle " << want << "; ";
                    }
                }
                const bool on_hull = std::find(r.hulls.strong_cycle.begin(), r.hulls.strong_cycle.end(), l.head) !=
                                     r.hulls.strong_cycle.end();
                if (!on_hull || !O.on_boundary(l.head)) {
                    r.counters_matched = false;
                    msg << "learning ended at " << where(l.head) << " outside B(O) and H(O)";
                }
                r.counter_detail = msg.str();
            }
        }
        r.terminated = done();
    } catch (const SimulationError& e) {
        r.error = e.what();
    }
    r.violations = w.violations();
    r.metrics = w.metrics();
    r.rounds = w.rounds();
    if (r.terminated) {
        if (spec.mode == Mode::Strong && r.metrics.filling_rounds < 0) r.metrics.filling_rounds = r.rounds;
        if (spec.mode == Mode::Weak) r.metrics.weak_rounds = r.rounds;
    }
    return r;
}

std::array<long long, 4> phase_rounds(const RunOutcome& r) {
    const Metrics& m = r.metrics;
    std::array<long long, 4> out{-1, -1, -1, -1};
    out[0] = m.learning_rounds;
    if (m.closing_rounds >= 0 && m.learning_rounds >= 0) out[1] = m.closing_rounds - m.learning_rounds;
    if (m.filling_rounds >= 0 && m.closing_rounds >= 0) out[2] = m.filling_rounds - m.closing_rounds;
    if (m.weak_rounds >= 0 && m.filling_rounds >= 0) out[3] = m.weak_rounds - m.filling_rounds;
    return out;
}

Verdict verify(const RunOutcome& r) {
    Verdict v;
    if (!r.error.empty()) {
        v.verdict = "simulation error";
        v.detail = r.error;
        return v;
    }
    if (!r.violations.empty()) {
        v.verdict = "invariant violation";
        v.detail = r.violations.front();
        return v;
    }
    if (!r.terminated) {
        v.verdict = "did not terminate";
        v.detail = "stopped after " + std::to_string(r.rounds) + " rounds";
        return v;
    }
    const ObjectShape& O = *r.object;
    const auto& ring = r.hulls.strong_cycle;
    const NodeSet hull(ring.begin(), ring.end());
    if (r.mode == Mode::Solo) {
        const SoloState& s = r.solo.state;
        if (!O.on_boundary(s.pos) || !hull.count(s.pos)) {
            v.verdict = "solo ended off the hull";
            v.detail = where(s.pos);
            return v;
        }
        const auto d = distances_to_strong_hull(s.pos, O);
        for (std::size_t h = 0; h < 6; ++h)
            if (d[h] != s.d[h]) {
                v.verdict = "solo distances differ";
                v.detail = std::string(kHalfPlaneNames[h]) + ": " + std::to_string(s.d[h]) + " vs " + std::to_string(d[h]);
                return v;
            }
        v.ok = true;
        v.verdict = "solo estimate exact";
        return v;
    }
    const World& w = *r.world;
    if (!r.counters_matched) {
        v.verdict = "learning estimate wrong";
        v.detail = r.counter_detail;
        return v;
    }
    const int H = static_cast<int>(ring.size());
    const int n = r.n;
    if (r.mode == Mode::Weak) {
        const auto& wc = r.hulls.weak_cycle;
        const NodeSet want(wc.begin(), wc.end());
        NodeSet got;
        for (const Particle& p : w.particles()) {
            if (p.succ < 0) continue;
            if (p.expanded()) {
                v.verdict = "tightening particle expanded";
                v.detail = where(p.head);
                return v;
            }
            got.insert(p.head);
        }
        for (const Node& u : wc)
            if (!got.count(u)) {
                v.verdict = "weak hull node empty";
                v.detail = where(u);
                return v;
            }
        for (const Node& u : got)
            if (!want.count(u)) {
                v.verdict = "tightening particle off the weak hull";
                v.detail = where(u);
                return v;
            }
        v.ok = true;
        v.verdict = "weak hull formed";
        return v;
    }
    if (n >= H) {
        for (const Node& u : ring) {
            const int q = w.occupant(u);
            if (q < 0 || w.particle(q).role != Role::Finished || w.particle(q).expanded()) {
                v.verdict = "hull node not held by a contracted finished particle";
                v.detail = where(u);
                return v;
            }
        }
        if (w.terminated_count() != n) {
            v.verdict = "not all particles terminated";
            return v;
        }
        v.ok = true;
        v.verdict = "hull filled";
        return v;
    }
    for (const Particle& p : w.particles())
        for (Node u : {p.head, p.tail})
            if (!hull.count(u)) {
                v.verdict = "particle off the hull";
                v.detail = where(u);
                return v;
            }
    if (2 * n < H) {
        for (const Particle& p : w.particles())
            if (!p.expanded() || !p.terminated) {
                v.verdict = "particle not terminated expanded";
                v.detail = where(p.head);
                return v;
            }
        v.ok = true;
        v.verdict = "all expanded on hull";
        return v;
    }
    for (const Particle& p : w.particles())
        if (p.role != Role::Finished) {
            v.verdict = "particle not finished";
            v.detail = where(p.head);
            return v;
        }
    for (const Node& u : ring)
        if (w.occupant(u) < 0) {
            v.verdict = "hull not closed";
            v.detail = where(u);
            return v;
        }
    v.ok = true;
    v.verdict = "hull closed";
    return v;
}

std::string metrics_json(const RunOutcome& r, const Verdict* verdict) {
    nlohmann::json j;
    const Metrics& m = r.metrics;
    const auto ph = phase_rounds(r);
    j["mode"] = mode_name(r.mode);
    j["B"] = r.object->boundary().size();
    j["H"] = r.hulls.strong_cycle.size();
    j["H_weak"] = r.hulls.weak_cycle.size();
    j["n"] = r.n;
    j["terminated"] = r.terminated;
    j["rounds"] = r.rounds;
    j["max_rounds"] = r.max_rounds;
    j["activations"] = m.activations;
    j["phase_rounds"] = {{"learning", ph[0]}, {"closing", ph[1]}, {"filling", ph[2]}, {"weak", ph[3]}};
    j["movements"] = {{"expansions", m.expansions}, {"contractions", m.contractions}, {"pulls", m.pulls},
                      {"pushes", m.pushes}, {"role_swaps", m.role_swaps}};
    j["max_neighbor_writes"] = m.max_neighbor_writes;
    j["multi_write_activations"] = m.multi_write_activations;
    if (r.world) j["leader_path_length"] = r.world->leader_path_length();
    j["invariant_violations"] = r.violations.size();
    if (!r.violations.empty()) j["first_violation"] = r.violations.front();
    if (!r.error.empty()) j["error"] = r.error;
    if (verdict) j["verdict"] = {{"ok", verdict->ok}, {"verdict", verdict->verdict}, {"detail", verdict->detail}};
    return j.dump(2);
}

}  // namespace amoebot
