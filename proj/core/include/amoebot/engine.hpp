#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "amoebot/counter.hpp"
#include "amoebot/lattice.hpp"

namespace amoebot {

enum class Role : std::uint8_t {
    Idle,
    Follower,
    Leader,
    Hull,
    PreMarker,
    Marker,
    Finished,
    PreFiller,
    Filler,
    Trapped,
    PreFinished,
    Tightening,
    NonTightening,
    TightFinished,
};
inline constexpr int kRoleCount = 14;

const char* role_name(Role r);

// Which part of the algorithm a particle is executing.
enum class Phase : std::uint8_t { Learning, Closing, Filling, Weak };

const char* phase_name(Phase p);

struct Particle {
    int id = 0;
    Role role = Role::Idle;
    Phase phase = Phase::Learning;
    Node head;
    Node tail;
    int offset = 0;              // local label l is global direction (l + offset) mod 6
    std::optional<Node> parent;  // node of the parent, seen by the particle as a port

    std::array<CounterSlot, 6> slots{};
    std::array<std::uint8_t, 6> b{};  // terminating bits
    int plane = -1;                   // half-plane followed while closing
    int compass = 0;                  // frame label = local label + compass
    bool marked = false;              // leader: the start node has been handed on
    bool skip_mark = true;            // leader: no terminating-bit update owed for the last move

    bool all_exp = false;
    bool termination = false;  // relayed along the hull chain
    bool halt = false;         // broadcast after the hull is complete
    bool sent_all_exp = false;
    int all_con = -1;  // turn counter of a held all_con token, -1 if none
    bool terminated = false;

    int succ = -1;  // tightening cycle neighbours (particle ids)
    int pred = -1;
    bool is_first = false;
    int tight_token = -1;  // value of a held tight-termination token, -1 if none
    bool tight_started = false;
    bool tight_moved = false;  // moved since the token last passed

    bool expanded() const { return head != tail; }
    bool occupies(Node v) const { return v == head || v == tail; }
};

struct SimulationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Occ : std::uint8_t { Empty, Object, Particle };

struct Metrics {
    long long activations = 0;
    long long rounds = 0;
    long long expansions = 0, contractions = 0, pulls = 0, pushes = 0, role_swaps = 0;
    long long learning_rounds = -1;  // round at which the leader finished learning
    long long closing_rounds = -1;   // round at which the hull closed or the leader terminated
    long long filling_rounds = -1;   // round at which the strong phase completed
    long long weak_rounds = -1;      // round at which the weak phase completed
    long long max_neighbor_writes = 0;
    long long multi_write_activations = 0;
};

class World;

// Activation-scoped window onto one particle and its neighbourhood.
class View {
public:
    struct Slot {
        Node node;
        int pid = -1;  // -1 unless occ == Particle
        Occ occ = Occ::Empty;
        bool at_head = true;  // adjacent to the head (else to the tail)
        int gdir = 0;         // global direction from the adjacent own node
    };

    const Particle& me() const { return *self_; }
    Particle& mine() { return *self_; }
    bool expanded() const { return self_->expanded(); }

    int to_global(int ldir) const { return mod6(ldir + self_->offset); }
    int to_local(int gdir) const { return mod6(gdir - self_->offset); }

    // External ports clockwise: 6 when contracted, 10 when expanded.
    std::span<const Slot> ports() const { return {slots_.data(), n_}; }
    int port_count() const { return static_cast<int>(n_); }
    // Neighbour of the head in local direction l (the tail itself when l points there).
    Slot head_dir(int ldir) const;
    // Neighbour of the tail in local direction l (contracted: same as head_dir).
    Slot tail_dir(int ldir) const;
    // Local direction from the head to the tail, -1 when contracted.
    int tail_ldir() const;

    // Distinct neighbouring particles in port order.
    std::span<const int> neighbors() const { return {nbrs_.data(), nn_}; }
    const Particle& peek(int pid) const;
    // Writable neighbour memory; journalled so the activation stays atomic.
    Particle& write(int pid);
    int rel_offset(int pid) const { return mod6(peek(pid).offset - self_->offset); }

    bool is_parent(int pid) const;
    bool is_child(int pid) const;
    bool has_children() const;
    bool has_idle_neighbor() const;
    int parent_id() const;  // -1 if none
    // Local direction from the own node adjacent to the parent pointer, -1 if none.
    int parent_ldir() const;
    bool child_on_boundary(int pid) const;
    bool peer_adjacent_to_tail(int pid) const;
    bool peer_tail_is(int pid, Node v) const;
    // Port index of the parent / of a neighbour (first port touching it), -1 if none.
    int port_of(int pid) const;
    int port_of_node(Node v) const;

    void set_parent(int pid);                // nearest node of pid, tail preferred
    void set_parent_to_node(Node v) { self_->parent = v; }
    void clear_parent() { self_->parent.reset(); }
    void set_parent_of(int child, int pid);  // in a neighbour's memory

    void expand(int ldir);
    void contract_tail();
    void pull(int child);
    // Expand into the node of the expanded neighbour `pid`; it contracts away.
    void push(int pid, Node into);
    void push_parent();
    void note_role_swap() { role_swap_ = true; }
    void note_leader_move() { leader_move_ = true; }
    void note_token(std::string what) { tokens_.push_back(std::move(what)); }
    void note_phase(Phase p);

private:
    friend class World;
    View(World& w, Particle& p);
    void refresh();
    Slot make_slot(Node u, bool at_head, int g) const;
    void journal(int pid);
    void moved();

    World* world_;
    Particle* self_;
    std::array<Slot, 10> slots_{};
    std::size_t n_ = 0;
    std::array<int, 10> nbrs_{};
    std::size_t nn_ = 0;
    std::vector<int> journal_ids_;
    std::vector<Particle> journal_;
    int movement_ = 0;  // 0 none, 1 expand, 2 contract, 3 pull, 4 push
    bool role_swap_ = false;
    bool leader_move_ = false;
    int writes_ = 0;
    std::vector<std::string> tokens_;
};

using Dispatcher = std::function<void(View&)>;

struct InvariantContext {
    int hull_size = 0;  // H
};

class World {
public:
    World(const ObjectShape& O, std::uint64_t seed);

    // Leader at `leader`, the rest grown as a seeded connected contracted blob.
    void place_blob(Node leader, int n);
    // Explicit placement: the first node holds the leader.
    void place_nodes(const std::vector<Node>& nodes);

    const ObjectShape& object() const { return *object_; }
    const std::vector<Particle>& particles() const { return ps_; }
    const Particle& particle(int id) const { return ps_[static_cast<std::size_t>(id)]; }
    // Direct mutation for setup and constructed tests; bypasses the journal.
    Particle& particle_mut(int id) { return ps_[static_cast<std::size_t>(id)]; }
    int size() const { return static_cast<int>(ps_.size()); }

    Occ occ(Node v) const;
    int occupant(Node v) const;  // particle id, or -1

    void set_dispatcher(Dispatcher d) { dispatcher_ = std::move(d); }
    void set_trace(std::ostream* out) { trace_ = out; }
    void set_debug(bool on, InvariantContext ctx);
    bool debug() const { return debug_; }

    void activate(int pid);
    void step();
    // Steps until pred holds; false if max_rounds passes first.
    bool run(const std::function<bool(const World&)>& pred, long long max_rounds);

    long long steps() const { return metrics_.activations; }
    long long rounds() const { return metrics_.rounds; }
    Metrics& metrics() { return metrics_; }
    const Metrics& metrics() const { return metrics_; }

    int role_count(Role r) const { return role_count_[static_cast<std::size_t>(r)]; }
    int terminated_count() const { return terminated_count_; }
    int leader_id() const { return leader_id_; }

    // Bookkeeping for metrics and invariant checks; never visible to particles.
    long long leader_path_length() const { return leader_moves_ + 1; }
    std::optional<Node> start_node() const { return start_node_; }
    const std::vector<std::string>& violations() const { return violations_; }
    bool counters_live() const;

    std::mt19937_64& rng() { return rng_; }

private:
    friend class View;
    friend std::vector<std::string> check_invariants(const World& w, const InvariantContext& ctx);
    std::size_t index(Node v) const;
    bool in_grid(Node v) const;
    void init_grid(int n);
    void set_cell(Node v, int value);
    void finish_placement();
    void restore(View& v);
    bool connected_without(Node t) const;
    void on_phase(Phase p, const Particle& who);
    void account(const View& v);
    void trace_event(const View& v);
    void incremental_check(const View& v);

    const ObjectShape* object_;
    std::vector<Particle> ps_;
    std::vector<int> grid_;  // -2 object, -1 empty, else particle id
    int gx0_ = 0, gy0_ = 0, gw_ = 0, gh_ = 0;
    std::mt19937_64 rng_;
    Dispatcher dispatcher_;
    std::ostream* trace_ = nullptr;
    bool debug_ = false;
    InvariantContext ctx_;
    Metrics metrics_;
    std::vector<long long> seen_round_;
    int seen_count_ = 0;
    long long occupied_nodes_ = 0;
    long long leader_moves_ = 0;
    int leader_id_ = -1;
    std::array<int, kRoleCount> role_count_{};
    int terminated_count_ = 0;
    std::array<int, 6> participants_{};
    std::optional<Node> start_node_;
    bool closing_ = false;
    std::vector<std::string> violations_;
};

// Full invariant evaluation: occupancy, connectivity, counter chains,
// counter length and the marker. Empty means all hold.
std::vector<std::string> check_invariants(const World& w, const InvariantContext& ctx);

// Particles on counter h's chain, leader first, following the bit holders.
// Appends a description to `problem` if the chain is malformed.
std::vector<int> counter_chain(const World& w, int h, std::string* problem = nullptr);

}  // namespace amoebot
