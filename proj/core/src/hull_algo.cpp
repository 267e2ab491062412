#include "amoebot/hull_algo.hpp"

#include "amoebot/solo.hpp"

#include <algorithm>
#include <optional>

namespace amoebot {

namespace {

bool all_slots(const Particle& p, bool (*pred)(const CounterSlot&)) {
    return std::all_of(p.slots.begin(), p.slots.end(), pred);
}

bool participates_any(const Particle& p) {
    return std::any_of(p.slots.begin(), p.slots.end(), [](const CounterSlot& s) { return s.participates(); });
}

bool points_at_tail(const View& v, int q) {
    const Particle& c = v.peek(q);
    return v.expanded() && c.parent && *c.parent == v.me().tail;
}

bool pullable(const View& v, int q) {
    const Particle& c = v.peek(q);
    return v.expanded() && !c.expanded() && v.is_child(q) && adjacent(c.head, v.me().tail);
}

// Counters (h, holder) whose tail segment moves into a pull candidate first.
using PullPlan = std::vector<std::pair<int, int>>;

// A pull puts the candidate between this particle and its other tail children.
// Where that would cut a counter whose remaining segment is held whole by one
// such child, the segment is moved into the candidate instead.
std::optional<PullPlan> pull_plan(const View& v, int q) {
    const Particle& c = v.peek(q);
    const Particle& me = v.me();
    PullPlan plan;
    for (int h = 0; h < 6; ++h) {
        const auto hh = static_cast<std::size_t>(h);
        const CounterSlot& cs = c.slots[hh];
        const CounterSlot& ms = me.slots[hh];
        if (cs.participates() ? ms.participates() : (!ms.participates() || ms.holds_final())) continue;
        if (cs.participates()) return std::nullopt;
        const int d = next_counter_particle(v, h);
        if (d < 0 || d == q || !points_at_tail(v, d)) return std::nullopt;
        if (!v.peek(d).slots[hh].holds_final()) return std::nullopt;
        plan.emplace_back(h, d);
    }
    return plan;
}

void apply_plan(View& v, int q, const PullPlan& plan) {
    for (const auto& [h, d] : plan) {
        const auto hh = static_cast<std::size_t>(h);
        CounterSlot& from = v.write(d).slots[hh];
        v.write(q).slots[hh] = from;
        from = CounterSlot{};
    }
}

bool has_tail_children(const View& v) {
    for (int q : v.neighbors())
        if (points_at_tail(v, q)) return true;
    return false;
}

bool may_contract(const View& v) { return v.expanded() && !has_tail_children(v) && !v.has_idle_neighbor(); }

// Children in port order, those attached at the tail first.
std::vector<int> children(const View& v) {
    std::vector<int> out;
    for (int q : v.neighbors())
        if (v.is_child(q) && points_at_tail(v, q)) out.push_back(q);
    for (int q : v.neighbors())
        if (v.is_child(q) && !points_at_tail(v, q)) out.push_back(q);
    return out;
}

// Parent is expanded and the parent pointer names its tail.
bool parent_tail_pushable(const View& v) {
    const int q = v.parent_id();
    if (q < 0) return false;
    const Particle& p = v.peek(q);
    return p.expanded() && *v.me().parent == p.tail;
}

void adopt_phase(View& v) {
    Particle& me = v.mine();
    for (int q : v.neighbors()) {
        const Phase p = v.peek(q).phase;
        if (p > me.phase && p != Phase::Weak) me.phase = p;
    }
}

// Contracted particle the leader may role-swap with: in every counter it is
// either absent or holds nothing but the final token.
bool swappable(const Particle& p) {
    if (p.expanded()) return false;
    for (const CounterSlot& s : p.slots) {
        if (!s.participates()) continue;
        const bool final_only = s.bit_l == Bit::Empty && s.tok_l.only(Tok::Final) && s.bit_m == Bit::Empty && s.tok_m.empty();
        if (!final_only) return false;
    }
    return true;
}

bool valued(Bit b) { return b == Bit::Zero || b == Bit::One; }

// Particle that takes over a blocker's final token on a role-swap, per counter:
// -2 the blocker holds none, -1 no place keeps the counter connected.
std::array<int, 6> final_homes(const View& v, int qid) {
    const Particle& Q = v.peek(qid);
    std::array<int, 6> out;
    out.fill(-2);
    for (int h = 0; h < 6; ++h) {
        const auto hh = static_cast<std::size_t>(h);
        if (!Q.slots[hh].participates()) continue;
        const int next = next_counter_particle(v, h);
        if (next == qid) {
            out[hh] = v.me().id;
            continue;
        }
        // The blocker ends a chain that loops back past the leader; its
        // predecessor must be in reach.
        out[hh] = -1;
        if (!Q.parent) continue;
        for (int x : v.neighbors()) {
            const Particle& X = v.peek(x);
            if (x == qid || !X.occupies(*Q.parent)) continue;
            const CounterSlot& xs = X.slots[hh];
            if (valued(xs.bit_l) && (xs.bit_m == Bit::Blank || (valued(xs.bit_m) && next == x))) out[hh] = x;
            break;
        }
    }
    return out;
}

bool can_swap(const View& v, int qid) {
    if (!swappable(v.peek(qid))) return false;
    const auto homes = final_homes(v, qid);
    return std::none_of(homes.begin(), homes.end(), [](int x) { return x == -1; });
}

int pull_candidate(const View& v, Role role) {
    for (int q : v.neighbors())
        if (pullable(v, q) && v.peek(q).role == role) return q;
    return -1;
}

void follow(View& v, bool counters) {
    const Particle& me = v.me();
    if (v.expanded()) {
        if (may_contract(v)) {
            v.contract_tail();
            return;
        }
        for (int q : v.neighbors()) {
            if (!pullable(v, q)) continue;
            const Particle& c = v.peek(q);
            if (c.role != Role::Follower && c.role != Role::Idle) continue;
            std::optional<PullPlan> plan = PullPlan{};
            if (counters && !(plan = pull_plan(v, q))) continue;
            apply_plan(v, q, *plan);
            v.pull(q);
            return;
        }
    }
}

// --------------------------------------------------------------- learning

void leader_learning(View& v) {
    process_hull_counters(v);
    Particle& me = v.mine();
    if (v.expanded()) {
        int pick = -1;
        std::optional<PullPlan> plan;
        for (int pass = 0; pass < 2 && pick < 0; ++pass)
            for (int q : children(v)) {
                const Particle& c = v.peek(q);
                if (!pullable(v, q) || c.role != Role::Follower) continue;
                if (pass == 0 ? !participates_any(c) : !v.child_on_boundary(q)) continue;
                if (!(plan = pull_plan(v, q))) continue;
                pick = q;
                break;
            }
        if (pick >= 0) {
            apply_plan(v, pick, *plan);
            v.pull(pick);
        }
        return;
    }
    for (const auto& s : me.slots)
        if (!s.tok_l.empty()) return;
    std::array<ZeroResult, 6> z;
    for (int h = 0; h < 6; ++h) {
        z[static_cast<std::size_t>(h)] = leader_zero_test(v, h);
        if (z[static_cast<std::size_t>(h)] == ZeroResult::Unavailable) return;
    }
    if (!me.skip_mark)
        for (std::size_t h = 0; h < 6; ++h)
            if (z[h] == ZeroResult::True) me.b[h] = 1;
    if (std::all_of(me.b.begin(), me.b.end(), [](std::uint8_t x) { return x == 1; })) {
        int plane = -1;
        for (int h = 0; h < 6 && plane < 0; ++h)
            if (z[static_cast<std::size_t>(h)] == ZeroResult::True &&
                z[static_cast<std::size_t>(next_plane(h))] != ZeroResult::True)
                plane = h;
        for (int h = 0; h < 6 && plane < 0; ++h)
            if (z[static_cast<std::size_t>(h)] == ZeroResult::True) plane = h;
        me.plane = plane < 0 ? 0 : plane;
        me.phase = Phase::Closing;
        v.note_phase(Phase::Closing);
        return;
    }
    std::array<bool, 6> object_at{};
    for (int l = 0; l < 6; ++l) object_at[static_cast<std::size_t>(l)] = v.head_dir(l).occ == Occ::Object;
    const int l = get_rhr(object_at);
    if (l < 0) throw SimulationError("leader left the object boundary");
    const View::Slot s = v.head_dir(l);
    int blocker = -1;
    if (s.occ == Occ::Particle) {
        if (!can_swap(v, s.pid)) return;
        if (!all_slots(me, [](const CounterSlot& c) { return c.bit_m != Bit::Blank; })) return;
        blocker = s.pid;
    }
    const int i = mod6(l + me.compass);
    std::array<bool, 6> pushed{};
    bool any = false;
    for (std::size_t h = 0; h < 6; ++h) {
        pushed[h] = delta(i)[h] == -1 && z[h] == ZeroResult::True;
        any = any || pushed[h];
    }
    hull_generate(me.slots, i, pushed);
    if (any) me.b.fill(0);
    me.skip_mark = any;
    if (blocker < 0) {
        v.expand(l);
        v.note_leader_move();
    } else {
        role_swap(v, blocker, false);
    }
}

void follower_learning(View& v) {
    process_hull_counters(v);
    if (v.expanded()) {
        follow(v, true);
        return;
    }
    if (parent_tail_pushable(v) && handover_is_safe(v.me(), v.peek(v.parent_id()))) v.push_parent();
}

void idle(View& v) {
    Particle& me = v.mine();
    for (int q : v.neighbors()) {
        const Particle& p = v.peek(q);
        if (p.role == Role::Idle) continue;
        me.role = Role::Follower;
        me.phase = std::max(me.phase, p.phase == Phase::Weak ? Phase::Filling : p.phase);
        v.set_parent(q);
        return;
    }
}

// ---------------------------------------------------------------- closing

bool holds_termination_child(View& v) {
    for (int q : children(v)) {
        const Role r = v.peek(q).role;
        if (r == Role::Hull || r == Role::Marker) {
            v.write(q).termination = true;
            v.note_token("termination");
            return true;
        }
    }
    return false;
}

void finish_leader(View& v, int marker) {
    Particle& me = v.mine();
    Particle& m = v.write(marker);
    m.role = Role::Finished;
    m.phase = Phase::Filling;
    v.set_parent(marker);
    me.role = Role::Finished;
    me.phase = Phase::Filling;
    me.all_con = 0;
    v.note_token("all_con");
    v.note_phase(Phase::Filling);
}

void leader_closing(View& v) {
    process_hull_counters(v);
    Particle& me = v.mine();
    int marker = -1;
    for (int q : v.neighbors())
        if (v.peek(q).role == Role::Marker) marker = q;
    if (me.all_exp && !(marker >= 0 && !v.is_child(marker))) {
        holds_termination_child(v);
        me.all_exp = false;
        me.role = Role::Finished;
        me.terminated = true;
        return;
    }
    bool moved = false;
    if (v.expanded()) {
        const int hull = pull_candidate(v, Role::Hull);
        if (hull >= 0) {
            v.pull(hull);
            moved = true;
        } else if (!me.marked) {
            bool hull_child = false;
            for (int q : children(v)) hull_child = hull_child || v.peek(q).role == Role::Hull;
            if (!hull_child)
                for (int q : children(v)) {
                    const Particle& c = v.peek(q);
                    if (!pullable(v, q) || c.role != Role::Follower || !participates_any(c)) continue;
                    Particle& w = v.write(q);
                    w.role = Role::PreMarker;
                    w.phase = Phase::Closing;
                    me.marked = true;
                    v.pull(q);
                    moved = true;
                    break;
                }
        }
    }
    const int np = next_plane(me.plane);
    const ZeroResult z = leader_zero_test(v, np);
    if (z == ZeroResult::Unavailable) return;
    if (z == ZeroResult::True) me.plane = np;
    const int i = plane_to_dir(me.plane);
    const int l = mod6(i - me.compass);
    const View::Slot s = v.head_dir(l);
    if (s.occ == Occ::Particle && v.peek(s.pid).role == Role::Marker) {
        finish_leader(v, s.pid);
        return;
    }
    if (v.expanded() || moved) return;
    for (const auto& c : me.slots)
        if (!c.tok_l.empty()) return;
    int blocker = -1;
    if (s.occ == Occ::Object) return;
    if (s.occ == Occ::Particle) {
        const Particle& p = v.peek(s.pid);
        if (p.role != Role::Follower || !can_swap(v, s.pid)) return;
        if (!all_slots(me, [](const CounterSlot& c) { return c.bit_m != Bit::Blank; })) return;
        blocker = s.pid;
    }
    hull_generate(me.slots, i);
    if (blocker < 0) {
        v.expand(l);
        v.note_leader_move();
    } else {
        role_swap(v, blocker, true);
    }
}

void hull(View& v) {
    Particle& me = v.mine();
    if (me.termination) {
        me.termination = false;
        holds_termination_child(v);
        me.role = Role::Finished;
        me.terminated = true;
        return;
    }
    const int par = v.parent_id();
    if (par >= 0 && v.peek(par).role == Role::Finished) {
        me.role = Role::Finished;
        me.phase = Phase::Filling;
        return;
    }
    if (me.phase != Phase::Filling) process_hull_counters(v);
    if (v.expanded()) {
        const int q = pull_candidate(v, Role::Hull);
        if (q >= 0) {
            v.pull(q);
        } else if (me.all_exp && par >= 0 && v.peek(par).expanded()) {
            v.write(par).all_exp = true;
            me.all_exp = false;
            v.note_token("all_exp");
        }
    } else if (parent_tail_pushable(v)) {
        const Role r = v.peek(par).role;
        if (r == Role::Hull || r == Role::Leader) v.push_parent();
    }
}

void pre_marker(View& v) {
    process_hull_counters(v);
    Particle& me = v.mine();
    if (!v.expanded()) {
        me.role = Role::Marker;
        return;
    }
    if (may_contract(v)) {
        me.role = Role::Marker;
        v.contract_tail();
        return;
    }
    for (int q : v.neighbors()) {
        if (!pullable(v, q)) continue;
        const auto plan = pull_plan(v, q);
        if (!plan) continue;
        apply_plan(v, q, *plan);
        me.role = Role::Marker;
        v.pull(q);
        return;
    }
}

void marker(View& v) {
    process_hull_counters(v);
    Particle& me = v.mine();
    if (me.termination) {
        me.termination = false;
        me.role = Role::Finished;
        me.terminated = true;
        return;
    }
    const int par = v.parent_id();
    if (v.expanded()) {
        if (me.all_exp && par >= 0 && v.peek(par).expanded()) {
            v.write(par).all_exp = true;
            me.all_exp = false;
            v.note_token("all_exp");
        }
        if (!v.has_children() && !v.has_idle_neighbor()) {
            if (!me.sent_all_exp) {
                me.all_exp = true;
                me.sent_all_exp = true;
                v.note_token("all_exp");
            }
            return;
        }
        for (int q : v.neighbors()) {
            if (!pullable(v, q)) continue;
            const auto plan = pull_plan(v, q);
            if (!plan) continue;
            apply_plan(v, q, *plan);
            Particle& w = v.write(q);
            w.role = Role::PreMarker;
            w.phase = Phase::Closing;
            me.role = Role::Hull;
            v.pull(q);
            return;
        }
    } else if (parent_tail_pushable(v)) {
        v.push_parent();
    }
}

void follower_closing(View& v) {
    process_hull_counters(v);
    Particle& me = v.mine();
    if (v.expanded()) {
        follow(v, true);
        return;
    }
    if (!parent_tail_pushable(v)) return;
    const int q = v.parent_id();
    const Particle& p = v.peek(q);
    if (p.role == Role::Hull || !handover_is_safe(me, p)) return;
    switch (p.role) {
        case Role::Leader:
            if (p.marked) return;
            me.role = Role::PreMarker;
            v.write(q).marked = true;
            break;
        case Role::PreMarker: v.write(q).role = Role::Marker; break;
        case Role::Marker:
            me.role = Role::PreMarker;
            v.write(q).role = Role::Hull;
            break;
        default: break;
    }
    v.push_parent();
}

// ---------------------------------------------------------------- filling

bool finished_neighbor(const View& v) {
    for (int q : v.neighbors())
        if (v.peek(q).role == Role::Finished) return true;
    return false;
}

// Only through the head while expanded, so the pointer survives a contraction.
void reparent_to_finished(View& v) {
    const Node head = v.me().head;
    for (int q : v.neighbors()) {
        const Particle& f = v.peek(q);
        if (f.role != Role::Finished) continue;
        if (v.expanded() && !adjacent(f.head, head) && !adjacent(f.tail, head)) continue;
        if (v.expanded()) {
            v.set_parent_to_node(adjacent(f.tail, head) ? f.tail : f.head);
            return;
        }
        v.set_parent(q);
        return;
    }
}

void follower_filling(View& v) {
    Particle& me = v.mine();
    if (v.expanded()) {
        follow(v, false);
        if (finished_neighbor(v)) reparent_to_finished(v);
        return;
    }
    if (finished_neighbor(v)) {
        reparent_to_finished(v);
        return;
    }
    if (!parent_tail_pushable(v)) return;
    const int q = v.parent_id();
    const Role r = v.peek(q).role;
    if (r == Role::PreFinished) {
        v.write(q).role = Role::Finished;
        v.push_parent();
    } else if (r == Role::Follower) {
        v.push_parent();
    }
    (void)me;
}

// Turns along the path child -> own nodes -> parent.
int turns(const View& v, int child) {
    const Particle& me = v.me();
    const Particle& c = v.peek(child);
    const Node a = *c.parent;
    const Node b = a == me.head ? me.tail : me.head;
    const Node par = *me.parent;
    std::vector<Node> path{adjacent(c.head, a) ? c.head : c.tail, a};
    if (!adjacent(a, par) && me.expanded()) path.push_back(b);
    path.push_back(par);
    int t = 0;
    for (std::size_t k = 2; k < path.size(); ++k)
        if (direction_to(path[k - 2], path[k - 1]) != direction_to(path[k - 1], path[k])) ++t;
    return t;
}

void finished(View& v, const StrongOptions& opt) {
    Particle& me = v.mine();
    if (me.all_con >= 0) {
        if (me.all_con >= 7) {
            me.all_con = -1;
            if (opt.weak) {
                me.role = Role::Tightening;
                me.is_first = true;
                me.succ = v.parent_id();
                me.parent.reset();
                me.phase = Phase::Weak;
                v.note_phase(Phase::Weak);
                v.note_token("tightening");
            } else {
                me.halt = true;
                v.note_token("halt");
            }
            return;
        }
        for (int q : v.neighbors()) {
            const Particle& c = v.peek(q);
            if (c.role != Role::Finished || c.expanded() || !v.is_child(q) || !c.parent || !me.parent) continue;
            const int t = me.all_con + turns(v, q);
            v.write(q).all_con = t;
            me.all_con = -1;
            v.note_token("all_con");
            return;
        }
    }
    const int par = v.parent_id();
    if (par < 0 || v.peek(par).role != Role::Finished) return;
    int child = -1;
    for (int q : v.neighbors())
        if ((v.peek(q).role == Role::Finished || v.peek(q).role == Role::PreFiller) && v.is_child(q)) {
            child = q;
            break;
        }
    if (child < 0) return;
    const int d = v.port_count();
    int i = -1;
    int j = -1;
    const Node cp = *v.peek(child).parent;
    for (int k = 0; k < d; ++k) {
        const View::Slot& s = v.ports()[static_cast<std::size_t>(k)];
        const Node own = s.at_head ? me.head : me.tail;
        if (i < 0 && s.pid == child && own == cp) i = k;
        if (j < 0 && s.node == *me.parent) j = k;
    }
    if (i < 0 || j < 0) return;
    for (int k = 0; k < d; ++k) {
        const View::Slot& s = v.ports()[static_cast<std::size_t>(k)];
        if (s.occ != Occ::Particle) continue;
        const Particle& r = v.peek(s.pid);
        if (r.role != Role::Follower || r.expanded()) continue;
        const int from_i = ((k - i) % d + d) % d;
        const int to_j = ((j - i) % d + d) % d;
        const bool outside = from_i >= 1 && from_i < to_j;
        Particle& w = v.write(s.pid);
        w.role = outside ? Role::Filler : Role::Trapped;
        w.phase = Phase::Filling;
        w.parent = s.at_head ? me.head : me.tail;
        return;
    }
}

void filler(View& v) {
    Particle& me = v.mine();
    if (v.expanded()) {
        if (may_contract(v)) {
            v.contract_tail();
            return;
        }
        const int q = pull_candidate(v, Role::Follower);
        if (q >= 0) v.pull(q);
        return;
    }
    int i = -1;
    for (int l = 0; l < 6 && i < 0; ++l) {
        const View::Slot s = v.head_dir(l);
        if (s.occ == Occ::Particle && v.peek(s.pid).role == Role::Finished) i = l;
    }
    if (i < 0) return;
    auto fin = [&](int l) {
        const View::Slot s = v.head_dir(l);
        return s.occ == Occ::Particle && v.peek(s.pid).role == Role::Finished;
    };
    for (int k = 0; k < 6 && fin(i); ++k) i = mod6(i + 5);
    if (fin(i)) return;
    const View::Slot ahead = v.head_dir(mod6(i + 1));
    if (ahead.occ == Occ::Particle) {
        const Particle& q = v.peek(ahead.pid);
        if (q.role == Role::Finished && q.expanded() && q.tail == ahead.node) {
            me.role = Role::PreFinished;
            const int qid = ahead.pid;
            v.push(qid, ahead.node);
            v.set_parent(qid);
            return;
        }
    }
    const View::Slot s = v.head_dir(i);
    if (s.occ == Occ::Empty) {
        me.parent.reset();
        v.expand(i);
    }
}

void trapped(View& v) {
    Particle& me = v.mine();
    const int par = v.parent_id();
    if (par < 0 || v.expanded()) return;
    const Particle& q = v.peek(par);
    if (q.expanded() && (q.role == Role::Finished || q.role == Role::PreFiller)) {
        const Node into = *me.parent;
        const bool was_prefiller = q.role == Role::PreFiller;
        const bool head = into == q.head;
        const std::optional<Node> ring = q.parent;
        v.push(par, into);
        me.role = Role::PreFinished;
        if (was_prefiller || head) {
            if (ring && adjacent(me.head, *ring)) me.parent = *ring;
            if (head && !was_prefiller) v.write(par).parent = into;
        } else {
            me.parent = v.peek(par).head;
        }
        if (was_prefiller) {
            Particle& w = v.write(par);
            w.role = Role::Filler;
            if (w.all_con >= 0) {
                me.all_con = w.all_con;
                w.all_con = -1;
            }
        }
    } else if (!q.expanded() && q.role == Role::Finished) {
        v.write(par).role = Role::PreFiller;
    }
}

void pre_filler(View& v) {
    Particle& me = v.mine();
    if (!v.expanded()) {
        const int pl = v.parent_ldir();
        if (pl < 0) return;
        const int l = mod6(pl + 5);
        if (v.head_dir(l).occ == Occ::Empty) v.expand(l);
        return;
    }
    for (int q : v.neighbors()) {
        if (!pullable(v, q) || v.peek(q).role != Role::Trapped) continue;
        const Node ring = *me.parent;
        me.role = Role::Filler;
        Particle& w = v.write(q);
        w.role = Role::PreFinished;
        if (me.all_con >= 0) {
            w.all_con = me.all_con;
            me.all_con = -1;
        }
        v.pull(q);
        if (adjacent(w.head, ring)) w.parent = ring;
        return;
    }
}

void pre_finished(View& v) {
    Particle& me = v.mine();
    if (!v.expanded()) {
        me.role = Role::Finished;
        return;
    }
    if (may_contract(v)) {
        me.role = Role::Finished;
        v.contract_tail();
        return;
    }
    const int q = pull_candidate(v, Role::Follower);
    if (q >= 0) {
        me.role = Role::Finished;
        v.pull(q);
    }
}

void halt(View& v) {
    Particle& me = v.mine();
    me.halt = false;
    if (me.role != Role::Finished) me.role = Role::Finished;
    me.terminated = true;
    for (int q : v.neighbors()) {
        const Particle& p = v.peek(q);
        if (!p.terminated && !p.halt) v.write(q).halt = true;
    }
}

}  // namespace

bool handover_is_safe(const Particle& P, const Particle& Q) {
    for (std::size_t h = 0; h < 6; ++h) {
        const CounterSlot& p = P.slots[h];
        const CounterSlot& q = Q.slots[h];
        const bool ok = p.participates() ? q.participates() : (!q.participates() || q.holds_final());
        if (!ok) return false;
    }
    return true;
}

int next_counter_particle(const View& v, int h) {
    const auto hh = static_cast<std::size_t>(h);
    const auto kids = children(v);
    for (int q : kids) {
        const CounterSlot& s = v.peek(q).slots[hh];
        if (s.bit_l == Bit::Zero || s.bit_l == Bit::One || !s.tok_l.empty()) return q;
    }
    for (int q : kids) {
        const Role r = v.peek(q).role;
        if (r == Role::Hull || r == Role::Marker || r == Role::PreMarker) return q;
    }
    for (int q : kids)
        if (v.child_on_boundary(q)) return q;
    return -1;
}

void process_hull_counters(View& v) {
    Particle& me = v.mine();
    const bool leader = me.role == Role::Leader;
    for (int h = 0; h < 6; ++h) {
        const auto hh = static_cast<std::size_t>(h);
        CounterSlot& mine = me.slots[hh];
        if (!mine.participates()) continue;
        const int q = next_counter_particle(v, h);
        if (q < 0) {
            const CounterSlot before = mine;
            CounterSlot scratch;
            process_slot(mine, &scratch, leader);
            if (!(scratch == CounterSlot{})) mine = before;
            continue;
        }
        CounterSlot qs = v.peek(q).slots[hh];
        const CounterSlot orig = qs;
        forward_bits(mine, qs);
        process_slot(mine, &qs, leader);
        if (!(qs == orig)) v.write(q).slots[hh] = qs;
    }
}

ZeroResult leader_zero_test(const View& v, int h) {
    const auto hh = static_cast<std::size_t>(h);
    CounterSlot mine = v.me().slots[hh];
    if (mine.bit_m != Bit::Blank) return hull_zero_test(mine, nullptr);
    const int q = next_counter_particle(v, h);
    if (q < 0) return ZeroResult::Unavailable;
    CounterSlot next = v.peek(q).slots[hh];
    return hull_zero_test(mine, &next);
}

void role_swap(View& v, int qid, bool closing) {
    const auto homes = final_homes(v, qid);
    Particle& P = v.mine();
    Particle& Q = v.write(qid);
    for (std::size_t h = 0; h < 6; ++h) {
        const bool q_final = homes[h] == P.id;
        Q.slots[h].bit_m = Bit::Blank;
        Q.slots[h].tok_m.clear();
        Q.slots[h].bit_l = P.slots[h].bit_l;
        Q.slots[h].tok_l = P.slots[h].tok_l;
        P.slots[h].bit_l = P.slots[h].bit_m;
        P.slots[h].tok_l = P.slots[h].tok_m;
        P.slots[h].bit_m = Bit::Blank;
        P.slots[h].tok_m.clear();
        if (q_final) {
            P.slots[h].bit_m = Bit::Empty;
            P.slots[h].tok_m.push(Tok::Final);
        } else if (P.slots[h].bit_l == Bit::Empty) {
            P.slots[h].bit_m = Bit::Empty;
        }
        if (homes[h] >= 0 && homes[h] != P.id) {
            CounterSlot& x = v.write(homes[h]).slots[h];
            if (x.bit_m != Bit::Blank) forward_bits(P.slots[h], x);
            x.bit_m = Bit::Empty;
            x.tok_m.clear();
            x.tok_m.push(Tok::Final);
        }
    }
    if (!closing) {
        Q.b = P.b;
        P.b.fill(0);
    }
    Q.skip_mark = P.skip_mark;
    Q.role = Role::Leader;
    Q.phase = P.phase;
    Q.compass = mod6(P.compass + v.rel_offset(qid));
    Q.plane = P.plane;
    Q.marked = P.marked;
    Q.parent.reset();
    if (closing) {
        P.role = P.marked ? Role::Hull : Role::Marker;
        Q.marked = true;
    } else {
        P.role = Role::Follower;
    }
    P.plane = -1;
    P.parent = Q.head;
    v.note_role_swap();
    v.note_leader_move();
}

void activate_strong(View& v, const StrongOptions& opt) {
    Particle& me = v.mine();
    if (me.terminated) return;
    bool halted_neighbor = false;
    if (!opt.weak)
        for (int q : v.neighbors()) {
            const Particle& p = v.peek(q);
            halted_neighbor = halted_neighbor || (p.terminated && p.phase == Phase::Filling);
        }
    if (me.halt || halted_neighbor) {
        halt(v);
        return;
    }
    switch (me.role) {
        case Role::Idle: idle(v); break;
        case Role::Follower:
            adopt_phase(v);
            if (me.phase == Phase::Filling) follower_filling(v);
            else if (me.phase == Phase::Closing) follower_closing(v);
            else follower_learning(v);
            break;
        case Role::Leader:
            if (me.phase == Phase::Learning) leader_learning(v);
            else leader_closing(v);
            break;
        case Role::Hull: hull(v); break;
        case Role::PreMarker: pre_marker(v); break;
        case Role::Marker: marker(v); break;
        case Role::Finished: finished(v, opt); break;
        case Role::PreFiller: pre_filler(v); break;
        case Role::Filler: filler(v); break;
        case Role::Trapped: trapped(v); break;
        case Role::PreFinished: pre_finished(v); break;
        default: break;
    }
}

Dispatcher strong_dispatcher(StrongOptions opt) {
    return [opt](View& v) { activate_strong(v, opt); };
}

}  // namespace amoebot
