#include "amoebot/engine.hpp"

#include <algorithm>
#include <deque>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace amoebot {

const char* role_name(Role r) {
    switch (r) {
        case Role::Idle: return "idle";
        case Role::Follower: return "follower";
        case Role::Leader: return "leader";
        case Role::Hull: return "hull";
        case Role::PreMarker: return "pre-marker";
        case Role::Marker: return "marker";
        case Role::Finished: return "finished";
        case Role::PreFiller: return "pre-filler";
        case Role::Filler: return "filler";
        case Role::Trapped: return "trapped";
        case Role::PreFinished: return "pre-finished";
        case Role::Tightening: return "tightening";
        case Role::NonTightening: return "non-tightening";
        case Role::TightFinished: return "tight-finished";
    }
    return "?";
}

const char* phase_name(Phase p) {
    switch (p) {
        case Phase::Learning: return "learning";
        case Phase::Closing: return "closing";
        case Phase::Filling: return "filling";
        case Phase::Weak: return "weak";
    }
    return "?";
}

namespace {

std::string where(Node v) {
    std::ostringstream s;
    s << "(" << v.x << "," << v.y << ")";
    return s.str();
}

}  // namespace

// ---------------------------------------------------------------- View

View::View(World& w, Particle& p) : world_(&w), self_(&p) {
    journal(p.id);
    refresh();
}

View::Slot View::make_slot(Node u, bool at_head, int g) const {
    Slot s;
    s.node = u;
    s.at_head = at_head;
    s.gdir = g;
    const int c = world_->in_grid(u) ? world_->grid_[world_->index(u)] : -1;
    if (c == -2) {
        s.occ = Occ::Object;
    } else if (c >= 0) {
        s.occ = Occ::Particle;
        s.pid = c;
    }
    return s;
}

void View::refresh() {
    const Particle& p = *self_;
    n_ = 0;
    if (!p.expanded()) {
        for (int l = 0; l < 6; ++l) {
            const int g = to_global(l);
            slots_[n_++] = make_slot(neighbor(p.head, g), true, g);
        }
    } else {
        const int e = direction_to(p.head, p.tail);
        std::array<Slot, 10> tmp;
        for (int k = 1; k <= 5; ++k) tmp[static_cast<std::size_t>(k - 1)] = make_slot(neighbor(p.head, e + k), true, mod6(e + k));
        for (int k = 1; k <= 5; ++k)
            tmp[static_cast<std::size_t>(4 + k)] = make_slot(neighbor(p.tail, e + 3 + k), false, mod6(e + 3 + k));
        const int k0 = mod6(to_global(0) - e);
        const std::size_t start = k0 == 0 ? 0 : static_cast<std::size_t>(k0 - 1);
        for (std::size_t i = 0; i < 10; ++i) slots_[i] = tmp[(start + i) % 10];
        n_ = 10;
    }
    nn_ = 0;
    for (std::size_t i = 0; i < n_; ++i) {
        const int q = slots_[i].pid;
        if (q < 0 || q == p.id) continue;
        if (std::find(nbrs_.begin(), nbrs_.begin() + static_cast<std::ptrdiff_t>(nn_), q) ==
            nbrs_.begin() + static_cast<std::ptrdiff_t>(nn_))
            nbrs_[nn_++] = q;
    }
}

View::Slot View::head_dir(int ldir) const {
    const int g = to_global(ldir);
    return make_slot(neighbor(self_->head, g), true, g);
}

View::Slot View::tail_dir(int ldir) const {
    const int g = to_global(ldir);
    return make_slot(neighbor(self_->tail, g), !expanded(), g);
}

int View::tail_ldir() const {
    if (!expanded()) return -1;
    return to_local(direction_to(self_->head, self_->tail));
}

const Particle& View::peek(int pid) const {
    for (std::size_t i = 0; i < nn_; ++i)
        if (nbrs_[i] == pid) return world_->particle(pid);
    if (pid == self_->id) return *self_;
    throw SimulationError("particle " + std::to_string(self_->id) + " read non-neighbour " + std::to_string(pid));
}

void View::journal(int pid) {
    if (std::find(journal_ids_.begin(), journal_ids_.end(), pid) != journal_ids_.end()) return;
    journal_ids_.push_back(pid);
    journal_.push_back(world_->particle(pid));
}

Particle& View::write(int pid) {
    if (pid == self_->id) return *self_;
    peek(pid);
    if (std::find(journal_ids_.begin(), journal_ids_.end(), pid) == journal_ids_.end()) ++writes_;
    journal(pid);
    return world_->particle_mut(pid);
}

bool View::is_parent(int pid) const {
    return self_->parent && peek(pid).occupies(*self_->parent);
}

bool View::is_child(int pid) const {
    const Particle& q = peek(pid);
    return q.parent && self_->occupies(*q.parent);
}

bool View::has_children() const {
    for (int q : neighbors())
        if (is_child(q)) return true;
    return false;
}

bool View::has_idle_neighbor() const {
    for (int q : neighbors())
        if (peek(q).role == Role::Idle) return true;
    return false;
}

int View::parent_id() const {
    if (!self_->parent) return -1;
    const int q = world_->occupant(*self_->parent);
    if (q < 0 || q == self_->id) return -1;
    for (int r : neighbors())
        if (r == q) return q;
    return -1;
}

int View::parent_ldir() const {
    if (!self_->parent) return -1;
    const Node v = *self_->parent;
    if (adjacent(self_->head, v)) return to_local(direction_to(self_->head, v));
    if (adjacent(self_->tail, v)) return to_local(direction_to(self_->tail, v));
    return -1;
}

bool View::child_on_boundary(int pid) const {
    const Particle& q = peek(pid);
    const ObjectShape& O = world_->object();
    return O.on_boundary(q.head) || O.on_boundary(q.tail);
}

bool View::peer_adjacent_to_tail(int pid) const {
    const Particle& q = peek(pid);
    return adjacent(q.head, self_->tail) || adjacent(q.tail, self_->tail);
}

bool View::peer_tail_is(int pid, Node v) const {
    const Particle& q = peek(pid);
    return q.expanded() && q.tail == v;
}

int View::port_of(int pid) const {
    for (std::size_t i = 0; i < n_; ++i)
        if (slots_[i].pid == pid) return static_cast<int>(i);
    return -1;
}

int View::port_of_node(Node v) const {
    for (std::size_t i = 0; i < n_; ++i)
        if (slots_[i].node == v) return static_cast<int>(i);
    return -1;
}

namespace {

// Node of q adjacent to `to`, tail preferred, adjacency to the head of `to` first.
Node nearest_node(const Particle& q, const Particle& to) {
    for (Node own : {to.head, to.tail})
        for (Node u : {q.tail, q.head})
            if (adjacent(u, own)) return u;
    return q.head;
}

}  // namespace

void View::set_parent(int pid) { self_->parent = nearest_node(peek(pid), *self_); }

void View::set_parent_of(int child, int pid) {
    Particle& c = write(child);
    const Particle& q = pid == self_->id ? *self_ : world_->particle(pid);
    if (!(adjacent(c.head, q.head) || adjacent(c.head, q.tail) || adjacent(c.tail, q.head) || adjacent(c.tail, q.tail)))
        throw SimulationError("parent assignment to a non-adjacent particle");
    c.parent = nearest_node(q, c);
}

void View::moved() { refresh(); }

void View::expand(int ldir) {
    Particle& p = *self_;
    if (movement_) throw SimulationError("second movement in one activation");
    if (p.expanded()) throw SimulationError("expand while expanded");
    const Node u = neighbor(p.head, to_global(ldir));
    if (!world_->in_grid(u)) throw SimulationError("expansion leaves the simulation area");
    const int c = world_->grid_[world_->index(u)];
    if (c == -2) throw SimulationError("expansion into an object node " + where(u));
    if (c >= 0) throw SimulationError("expansion into an occupied node " + where(u));
    p.tail = p.head;
    p.head = u;
    world_->set_cell(u, p.id);
    ++world_->occupied_nodes_;
    movement_ = 1;
    moved();
}

void View::contract_tail() {
    Particle& p = *self_;
    if (movement_) throw SimulationError("second movement in one activation");
    if (!p.expanded()) throw SimulationError("contract while contracted");
    const Node t = p.tail;
    for (int q : neighbors()) {
        const Particle& r = world_->particle(q);
        if (r.parent && *r.parent == t) throw SimulationError("contraction orphans child " + std::to_string(q));
    }
    if (!world_->connected_without(t)) throw SimulationError("contraction disconnects the system at " + where(t));
    world_->set_cell(t, -1);
    --world_->occupied_nodes_;
    p.tail = p.head;
    movement_ = 2;
    moved();
}

void View::pull(int child) {
    Particle& p = *self_;
    if (movement_) throw SimulationError("second movement in one activation");
    if (!p.expanded()) throw SimulationError("pull while contracted");
    peek(child);
    journal(child);
    Particle& q = world_->particle_mut(child);
    if (q.expanded()) throw SimulationError("pull of an expanded particle");
    if (!adjacent(q.head, p.tail)) throw SimulationError("pulled particle not adjacent to the tail");
    const Node t = p.tail;
    p.tail = p.head;
    q.tail = q.head;
    q.head = t;
    if (q.parent && *q.parent == t) q.parent = p.head;
    world_->set_cell(t, q.id);
    movement_ = 3;
    moved();
}

void View::push(int pid, Node into) {
    Particle& p = *self_;
    if (movement_) throw SimulationError("second movement in one activation");
    if (p.expanded()) throw SimulationError("push while expanded");
    peek(pid);
    journal(pid);
    Particle& q = world_->particle_mut(pid);
    if (!q.expanded()) throw SimulationError("push of a contracted particle");
    if (!q.occupies(into) || !adjacent(p.head, into)) throw SimulationError("push target not adjacent");
    const Node other = into == q.head ? q.tail : q.head;
    q.head = q.tail = other;
    p.tail = p.head;
    p.head = into;
    if (p.parent && *p.parent == into) p.parent = other;
    world_->set_cell(into, p.id);
    movement_ = 4;
    moved();
}

void View::push_parent() {
    const int q = parent_id();
    if (q < 0) throw SimulationError("push without a parent");
    push(q, *self_->parent);
}

void View::note_phase(Phase p) { world_->on_phase(p, *self_); }

// ---------------------------------------------------------------- World

World::World(const ObjectShape& O, std::uint64_t seed) : object_(&O), rng_(seed) {}

std::size_t World::index(Node v) const {
    return static_cast<std::size_t>(v.y - gy0_) * static_cast<std::size_t>(gw_) + static_cast<std::size_t>(v.x - gx0_);
}

bool World::in_grid(Node v) const {
    return v.x >= gx0_ && v.x < gx0_ + gw_ && v.y >= gy0_ && v.y < gy0_ + gh_;
}

void World::set_cell(Node v, int value) { grid_[index(v)] = value; }

void World::init_grid(int n) {
    const Bounds& b = object_->bounds();
    const int pad = 2 * n + 6;
    gx0_ = b.min_x - pad;
    gy0_ = b.min_y - pad;
    gw_ = b.max_x - b.min_x + 1 + 2 * pad;
    gh_ = b.max_y - b.min_y + 1 + 2 * pad;
    grid_.assign(static_cast<std::size_t>(gw_) * static_cast<std::size_t>(gh_), -1);
    for (const Node& v : object_->nodes()) set_cell(v, -2);
}

Occ World::occ(Node v) const {
    if (!in_grid(v)) return Occ::Empty;
    const int c = grid_[index(v)];
    return c == -2 ? Occ::Object : c >= 0 ? Occ::Particle : Occ::Empty;
}

int World::occupant(Node v) const {
    if (!in_grid(v)) return -1;
    const int c = grid_[index(v)];
    return c >= 0 ? c : -1;
}

void World::place_blob(Node leader, int n) {
    if (n < 1) throw std::invalid_argument("need at least one particle");
    if (!object_->on_boundary(leader)) throw std::invalid_argument("leader must start on the object boundary");
    init_grid(n);
    std::vector<Node> chosen{leader};
    NodeSet seen{leader};
    std::vector<Node> frontier;
    auto grow = [&](Node v) {
        for (int g = 0; g < 6; ++g) {
            Node u = neighbor(v, g);
            if (object_->contains(u) || !seen.insert(u).second) continue;
            frontier.push_back(u);
        }
    };
    grow(leader);
    while (static_cast<int>(chosen.size()) < n) {
        std::uniform_int_distribution<std::size_t> pick(0, frontier.size() - 1);
        const std::size_t k = pick(rng_);
        const Node v = frontier[k];
        frontier[k] = frontier.back();
        frontier.pop_back();
        chosen.push_back(v);
        grow(v);
    }
    ps_.clear();
    for (const Node& v : chosen) {
        Particle p;
        p.id = static_cast<int>(ps_.size());
        p.head = p.tail = v;
        ps_.push_back(p);
    }
    finish_placement();
}

void World::place_nodes(const std::vector<Node>& nodes) {
    if (nodes.empty()) throw std::invalid_argument("placement is empty");
    NodeSet s;
    for (const Node& v : nodes) {
        if (object_->contains(v)) throw std::invalid_argument("placement overlaps the object at " + where(v));
        if (!s.insert(v).second) throw std::invalid_argument("duplicate placement node " + where(v));
    }
    if (!is_connected(nodes)) throw std::invalid_argument("placement is not connected");
    if (!object_->on_boundary(nodes.front())) throw std::invalid_argument("leader must start on the object boundary");
    init_grid(static_cast<int>(nodes.size()));
    ps_.clear();
    for (const Node& v : nodes) {
        if (!in_grid(v)) throw std::invalid_argument("placement node too far from the object " + where(v));
        Particle p;
        p.id = static_cast<int>(ps_.size());
        p.head = p.tail = v;
        ps_.push_back(p);
    }
    finish_placement();
}

void World::finish_placement() {
    std::uniform_int_distribution<int> off(0, 5);
    for (Particle& p : ps_) {
        p.offset = off(rng_);
        set_cell(p.head, p.id);
    }
    Particle& l = ps_.front();
    l.role = Role::Leader;
    for (auto& s : l.slots) s = fresh_leader_slot();
    occupied_nodes_ = static_cast<long long>(ps_.size());
    leader_id_ = 0;
    role_count_.fill(0);
    participants_.fill(0);
    terminated_count_ = 0;
    for (const Particle& p : ps_) {
        ++role_count_[static_cast<std::size_t>(p.role)];
        for (std::size_t h = 0; h < 6; ++h) participants_[h] += p.slots[h].participates();
    }
    seen_round_.assign(ps_.size(), -1);
    seen_count_ = 0;
}

void World::set_debug(bool on, InvariantContext ctx) {
    debug_ = on;
    ctx_ = ctx;
}

bool World::counters_live() const {
    return leader_id_ >= 0 && particle(leader_id_).role == Role::Leader;
}

bool World::connected_without(Node t) const {
    std::array<bool, 6> occ{};
    int first = -1;
    for (int g = 0; g < 6; ++g) {
        occ[static_cast<std::size_t>(g)] = occupant(neighbor(t, g)) >= 0;
        if (occ[static_cast<std::size_t>(g)] && first < 0) first = g;
    }
    if (first < 0) return occupied_nodes_ <= 1;
    int runs = 0;
    for (int g = 0; g < 6; ++g)
        if (occ[static_cast<std::size_t>(g)] && !occ[static_cast<std::size_t>(mod6(g - 1))]) ++runs;
    if (runs <= 1) return true;
    NodeSet seen{t, neighbor(t, first)};
    std::deque<Node> q{neighbor(t, first)};
    long long count = 1;
    while (!q.empty()) {
        Node v = q.front();
        q.pop_front();
        for (int g = 0; g < 6; ++g) {
            Node u = neighbor(v, g);
            if (occupant(u) < 0 || !seen.insert(u).second) continue;
            ++count;
            q.push_back(u);
        }
    }
    return count == occupied_nodes_ - 1;
}

void World::on_phase(Phase p, const Particle& who) {
    if (p == Phase::Closing && !closing_ && !start_node_) {
        closing_ = true;
        start_node_ = who.head;
        metrics_.learning_rounds = metrics_.rounds;
    } else if (p == Phase::Filling && closing_) {
        closing_ = false;
        metrics_.closing_rounds = metrics_.rounds;
    } else if (p == Phase::Weak && metrics_.filling_rounds < 0) {
        metrics_.filling_rounds = metrics_.rounds;
    }
}

void World::restore(View& v) {
    for (int id : v.journal_ids_) {
        const Particle& cur = ps_[static_cast<std::size_t>(id)];
        for (Node u : {cur.head, cur.tail})
            if (grid_[index(u)] == id) set_cell(u, -1);
    }
    long long delta = 0;
    for (std::size_t k = 0; k < v.journal_ids_.size(); ++k) {
        const Particle& old = v.journal_[k];
        Particle& cur = ps_[static_cast<std::size_t>(old.id)];
        delta += static_cast<long long>(old.expanded()) - static_cast<long long>(cur.expanded());
        cur = old;
        set_cell(old.head, old.id);
        set_cell(old.tail, old.id);
    }
    occupied_nodes_ += delta;
}

void World::account(const View& v) {
    ++metrics_.activations;
    switch (v.movement_) {
        case 1: ++metrics_.expansions; break;
        case 2: ++metrics_.contractions; break;
        case 3: ++metrics_.pulls; break;
        case 4: ++metrics_.pushes; break;
        default: break;
    }
    if (v.role_swap_) ++metrics_.role_swaps;
    if (v.leader_move_) ++leader_moves_;
    metrics_.max_neighbor_writes = std::max<long long>(metrics_.max_neighbor_writes, v.writes_);
    if (v.writes_ > 1) ++metrics_.multi_write_activations;
    int new_leader = -1;
    bool lost_leader = false;
    for (std::size_t k = 0; k < v.journal_ids_.size(); ++k) {
        const Particle& a = v.journal_[k];
        const Particle& b = ps_[static_cast<std::size_t>(a.id)];
        if (a.role != b.role) {
            --role_count_[static_cast<std::size_t>(a.role)];
            ++role_count_[static_cast<std::size_t>(b.role)];
            if (a.role == Role::Leader && a.id == leader_id_) lost_leader = true;
            if (a.role == Role::Leader && b.role == Role::Finished && closing_) {
                closing_ = false;
                metrics_.closing_rounds = metrics_.rounds;
            }
        }
        if (b.role == Role::Leader) new_leader = b.id;
        terminated_count_ += static_cast<int>(b.terminated) - static_cast<int>(a.terminated);
        for (std::size_t h = 0; h < 6; ++h)
            participants_[h] += static_cast<int>(b.slots[h].participates()) - static_cast<int>(a.slots[h].participates());
    }
    if (new_leader >= 0) leader_id_ = new_leader;
    else if (lost_leader) leader_id_ = -1;
}

void World::trace_event(const View& v) {
    const Particle& before = v.journal_.front();
    const Particle& after = *v.self_;
    bool roles = false;
    for (std::size_t k = 0; k < v.journal_ids_.size(); ++k)
        roles = roles || v.journal_[k].role != ps_[static_cast<std::size_t>(v.journal_ids_[k])].role;
    if (!v.movement_ && !v.role_swap_ && !roles && v.tokens_.empty()) return;
    static constexpr const char* kMove[] = {"none", "expand", "contract", "pull", "push"};
    nlohmann::json e;
    e["step"] = metrics_.activations;
    e["round"] = metrics_.rounds;
    e["pid"] = after.id;
    e["action"] = v.role_swap_ ? "role-swap" : kMove[v.movement_];
    e["roles"] = {role_name(before.role), role_name(after.role)};
    auto nodes = [](const Particle& p) {
        nlohmann::json a = nlohmann::json::array();
        a.push_back({p.head.x, p.head.y});
        if (p.expanded()) a.push_back({p.tail.x, p.tail.y});
        return a;
    };
    e["from"] = nodes(before);
    e["to"] = nodes(after);
    nlohmann::json others = nlohmann::json::array();
    for (std::size_t k = 1; k < v.journal_ids_.size(); ++k) {
        const Particle& a = v.journal_[k];
        const Particle& b = ps_[static_cast<std::size_t>(a.id)];
        if (a.role != b.role || a.head != b.head || a.tail != b.tail)
            others.push_back({{"pid", b.id}, {"role", role_name(b.role)}, {"to", nodes(b)}});
    }
    if (!others.empty()) e["others"] = others;
    e["tokens"] = v.tokens_;
    *trace_ << e.dump() << '\n';
}

void World::activate(int pid) {
    if (pid < 0 || pid >= size()) throw std::out_of_range("no such particle");
    if (!dispatcher_) throw std::logic_error("no dispatcher installed");
    Particle& p = ps_[static_cast<std::size_t>(pid)];
    View v(*this, p);
    try {
        dispatcher_(v);
    } catch (const std::exception& e) {
        restore(v);
        throw SimulationError("step " + std::to_string(metrics_.activations) + " round " +
                              std::to_string(metrics_.rounds) + " particle " + std::to_string(pid) + " (" +
                              role_name(p.role) + " at " + where(p.head) + "): " + e.what());
    }
    account(v);
    if (trace_) trace_event(v);
    if (debug_) incremental_check(v);
}

void World::step() {
    std::uniform_int_distribution<int> pick(0, size() - 1);
    const int pid = pick(rng_);
    activate(pid);
    auto& seen = seen_round_[static_cast<std::size_t>(pid)];
    if (seen != metrics_.rounds) {
        seen = metrics_.rounds;
        if (++seen_count_ == size()) {
            ++metrics_.rounds;
            seen_count_ = 0;
            if (debug_) {
                auto v = check_invariants(*this, ctx_);
                for (auto& s : v) violations_.push_back("round " + std::to_string(metrics_.rounds) + ": " + s);
            }
        }
    }
}

bool World::run(const std::function<bool(const World&)>& pred, long long max_rounds) {
    while (!pred(*this)) {
        if (metrics_.rounds >= max_rounds) return false;
        step();
        if (debug_ && !violations_.empty()) return false;
    }
    return true;
}

// ---------------------------------------------------------------- invariants

namespace {

bool bit_value(Bit b) { return b == Bit::Zero || b == Bit::One; }

int floor_log2(long long v) {
    int r = -1;
    while (v > 0) {
        v >>= 1;
        ++r;
    }
    return r;
}

}  // namespace

std::vector<int> counter_chain(const World& w, int h, std::string* problem) {
    std::vector<int> chain;
    const int lid = w.leader_id();
    if (lid < 0) return chain;
    auto fail = [&](const std::string& s) {
        if (problem && problem->empty()) *problem = "counter " + std::string(kHalfPlaneNames[static_cast<std::size_t>(h)]) + ": " + s;
    };
    const auto hh = static_cast<std::size_t>(h);
    int cur = lid;
    NodeSet visited;
    bool done = false;
    while (!done) {
        const Particle& p = w.particle(cur);
        chain.push_back(cur);
        const CounterSlot& s = p.slots[hh];
        std::vector<std::pair<Bit, const TokenQueue*>> cells{{s.bit_l, &s.tok_l}};
        if (s.bit_m != Bit::Blank) cells.push_back({s.bit_m, &s.tok_m});
        else if (!s.tok_m.empty()) fail("blank bit with tokens at particle " + std::to_string(cur));
        for (std::size_t c = 0; c < cells.size(); ++c) {
            const auto [bit, q] = cells[c];
            if (q->contains(Tok::Final)) {
                if (bit != Bit::Empty) fail("final token on a valued bit at particle " + std::to_string(cur));
                if (c == 0 && cells.size() == 2 && (cells[1].first != Bit::Empty || !cells[1].second->empty()))
                    fail("bits beyond the final token at particle " + std::to_string(cur));
                done = true;
                break;
            }
            if (!bit_value(bit)) fail("gap in the counter at particle " + std::to_string(cur));
        }
        if (done) break;
        int next = -1;
        for (Node own : {p.head, p.tail}) {
            for (int g = 0; g < 6; ++g) {
                const int q = w.occupant(neighbor(own, g));
                if (q < 0 || q == cur || q == next) continue;
                const Particle& r = w.particle(q);
                if (!r.parent || !p.occupies(*r.parent)) continue;
                const CounterSlot& rs = r.slots[hh];
                if (!(bit_value(rs.bit_l) || !rs.tok_l.empty())) continue;
                if (next >= 0) fail("ambiguous successor of particle " + std::to_string(cur));
                next = q;
            }
        }
        if (next < 0) {
            fail("chain breaks after particle " + std::to_string(cur));
            break;
        }
        if (chain.size() > static_cast<std::size_t>(w.size())) {
            fail("cyclic chain");
            break;
        }
        cur = next;
    }
    return chain;
}

std::vector<std::string> check_invariants(const World& w, const InvariantContext& ctx) {
    std::vector<std::string> out;
    long long cells = 0;
    for (const Particle& p : w.particles()) {
        if (p.expanded() && !adjacent(p.head, p.tail)) out.push_back("particle " + std::to_string(p.id) + " head and tail apart");
        for (Node v : {p.head, p.tail})
            if (w.occupant(v) != p.id) out.push_back("occupancy mismatch at " + where(v));
        if (w.object().contains(p.head) || w.object().contains(p.tail)) out.push_back("particle on the object");
        cells += p.expanded() ? 2 : 1;
    }
    if (cells != w.occupied_nodes_) out.push_back("node count mismatch");
    std::vector<Node> nodes;
    nodes.reserve(static_cast<std::size_t>(cells));
    for (const Particle& p : w.particles()) {
        nodes.push_back(p.head);
        if (p.expanded()) nodes.push_back(p.tail);
    }
    if (!is_connected(nodes)) out.push_back("particle system disconnected");
    if (w.counters_live()) {
        const long long cap = std::min<long long>(w.leader_path_length(), std::max(ctx.hull_size, 1));
        const int bound = floor_log2(cap) + 1;
        for (int h = 0; h < 6; ++h) {
            std::string problem;
            auto chain = counter_chain(w, h, &problem);
            if (!problem.empty()) out.push_back(problem);
            int participants = 0, holders = 0;
            for (const Particle& p : w.particles()) {
                participants += p.slots[static_cast<std::size_t>(h)].participates();
                holders += p.slots[static_cast<std::size_t>(h)].holds_bits();
            }
            if (participants != static_cast<int>(chain.size()))
                out.push_back("counter " + std::string(kHalfPlaneNames[static_cast<std::size_t>(h)]) + " disconnected: " +
                              std::to_string(participants) + " participants, chain " + std::to_string(chain.size()));
            if (ctx.hull_size > 0 && holders > bound)
                out.push_back("counter " + std::string(kHalfPlaneNames[static_cast<std::size_t>(h)]) + " spans " +
                              std::to_string(holders) + " particles, bound " + std::to_string(bound));
        }
    }
    if (w.closing_ && w.start_node_) {
        const int q = w.occupant(*w.start_node_);
        const Role r = q >= 0 ? w.particle(q).role : Role::Idle;
        if (q < 0 || !(r == Role::Leader || r == Role::PreMarker || r == Role::Marker))
            out.push_back("start node not held by the leader or marker");
    }
    return out;
}

void World::incremental_check(const View& v) {
    auto report = [&](const std::string& s) {
        violations_.push_back("step " + std::to_string(metrics_.activations) + ": " + s);
    };
    if (closing_ && start_node_) {
        const int q = occupant(*start_node_);
        const Role r = q >= 0 ? particle(q).role : Role::Idle;
        if (q < 0 || !(r == Role::Leader || r == Role::PreMarker || r == Role::Marker))
            report("start node not held by the leader or marker");
    }
    if (!counters_live()) return;
    bool touched = false;
    for (std::size_t k = 0; k < v.journal_ids_.size() && !touched; ++k)
        touched = v.journal_[k].slots != ps_[static_cast<std::size_t>(v.journal_ids_[k])].slots || v.movement_ || v.role_swap_;
    if (!touched && v.movement_ == 0) return;
    const long long cap = std::min<long long>(leader_path_length(), std::max(ctx_.hull_size, 1));
    const int bound = floor_log2(cap) + 1;
    for (int h = 0; h < 6; ++h) {
        std::string problem;
        auto chain = counter_chain(*this, h, &problem);
        if (!problem.empty()) report(problem);
        if (participants_[static_cast<std::size_t>(h)] != static_cast<int>(chain.size()))
            report("counter " + std::string(kHalfPlaneNames[static_cast<std::size_t>(h)]) + " disconnected: " +
                   std::to_string(participants_[static_cast<std::size_t>(h)]) + " participants, chain " +
                   std::to_string(chain.size()));
        if (ctx_.hull_size > 0) {
            int holders = 0;
            for (int id : chain) holders += particle(id).slots[static_cast<std::size_t>(h)].holds_bits();
            if (holders > bound)
                report("counter " + std::string(kHalfPlaneNames[static_cast<std::size_t>(h)]) + " spans " +
                       std::to_string(holders) + " particles, bound " + std::to_string(bound));
        }
    }
}

}  // namespace amoebot
