#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "amoebot/engine.hpp"
#include "amoebot/hull_oracle.hpp"
#include "amoebot/solo.hpp"

namespace amoebot {

enum class Mode { Solo, Strong, Weak };

Mode parse_mode(const std::string& s);
const char* mode_name(Mode m);

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunSpec {
    std::shared_ptr<const ObjectShape> object;
    int particles = 0;             // ignored when placement is given
    std::vector<Node> placement;   // first node holds the leader
    std::optional<Node> leader;    // start node for blob placement and solo runs
    std::uint64_t seed = 1;
    Mode mode = Mode::Strong;
    long long max_rounds = -1;     // -1 picks a limit from the instance size
    std::ostream* trace = nullptr;
    bool debug = false;
};

struct RunOutcome {
    std::shared_ptr<const ObjectShape> object;
    HullSets hulls;
    Mode mode = Mode::Strong;
    int n = 0;
    bool terminated = false;  // reached the mode's final configuration
    std::string error;        // simulation error, if any
    std::vector<std::string> violations;
    std::unique_ptr<World> world;
    SoloResult solo;
    Node start;
    long long rounds = 0;
    long long max_rounds = 0;
    Metrics metrics;
    bool counters_matched = true;  // leader counters equalled the oracle when learning ended
    std::string counter_detail;
};

// Default leader start: the lexicographically smallest boundary node.
Node default_start(const ObjectShape& O);

// Throws ValidationError for configurations outside the algorithm's assumptions.
void validate(const RunSpec& spec, int hull_size);

RunOutcome execute(const RunSpec& spec);

struct Verdict {
    bool ok = false;
    std::string verdict;
    std::string detail;
};

// Final-configuration check against the oracle hulls.
Verdict verify(const RunOutcome& r);

// Phase lengths in rounds: learning, closing, filling, weak (-1 if absent).
std::array<long long, 4> phase_rounds(const RunOutcome& r);

std::string metrics_json(const RunOutcome& r, const Verdict* v = nullptr);

}  // namespace amoebot
