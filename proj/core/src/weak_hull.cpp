#include "amoebot/weak_hull.hpp"

#include "amoebot/hull_algo.hpp"

namespace amoebot {

namespace {

bool is_neighbor(const View& v, int pid) {
    for (int q : v.neighbors())
        if (q == pid) return true;
    return false;
}

bool cycle_member(const View& v, int pid) {
    if (pid < 0 || !is_neighbor(v, pid)) return false;
    const Particle& p = v.peek(pid);
    return p.role == Role::Tightening && !p.expanded();
}

bool tight_finished_neighbor(const View& v) {
    for (int q : v.neighbors())
        if (v.peek(q).role == Role::TightFinished) return true;
    return false;
}

bool adjacent_to_object(const View& v) {
    for (const auto& s : v.ports())
        if (s.occ == Occ::Object) return true;
    return false;
}

void finish(View& v) {
    Particle& me = v.mine();
    me.role = Role::TightFinished;
    me.terminated = true;
    me.tight_token = -1;
}

int tail_child(const View& v, Role role) {
    for (int q : v.neighbors()) {
        const Particle& c = v.peek(q);
        if (c.role == role && !c.expanded() && c.parent && *c.parent == v.me().tail && adjacent(c.head, v.me().tail))
            return q;
    }
    return -1;
}

bool tail_children(const View& v) {
    for (int q : v.neighbors()) {
        const Particle& c = v.peek(q);
        if (c.parent && *c.parent == v.me().tail) return true;
    }
    return false;
}

// Node the convex particle would move into, and whether it can.
bool movable(const View& v, View::Slot* target) {
    if (classify(v) != Corner::Convex) return false;
    const Particle& me = v.me();
    const int g = mod6(direction_to(me.head, v.peek(me.succ).head) + 1);
    const View::Slot s = v.head_dir(v.to_local(g));
    if (target) *target = s;
    if (s.occ == Occ::Object) return false;
    if (s.occ == Occ::Particle && v.peek(s.pid).role != Role::NonTightening) return false;
    return true;
}

void expanded_step(View& v, Role follower) {
    const int q = tail_child(v, follower);
    if (q >= 0) v.pull(q);
    else if (!tail_children(v) && !v.has_idle_neighbor()) v.contract_tail();
}

// Previous particle on the cycle: in direction d+2 or d+3 from the successor direction d.
int ring_pred(const View& v) {
    const Particle& me = v.me();
    const int d = direction_to(me.head, v.peek(me.succ).head);
    for (int k : {2, 3}) {
        const View::Slot s = v.head_dir(v.to_local(mod6(d + k)));
        if (s.occ != Occ::Particle) continue;
        const Particle& c = v.peek(s.pid);
        if (c.role == Role::Finished && !c.expanded() && c.parent && *c.parent == me.head) return s.pid;
        if (c.role == Role::Tightening && c.succ == me.id) return s.pid;
    }
    return -1;
}

void tightening(View& v) {
    Particle& me = v.mine();
    if (!v.expanded() && tight_finished_neighbor(v)) {
        finish(v);
        return;
    }
    if (me.pred < 0 && !v.expanded() && is_neighbor(v, me.succ)) me.pred = ring_pred(v);
    if (v.expanded()) {
        expanded_step(v, Role::NonTightening);
        return;
    }
    if (me.is_first && !me.tight_started && adjacent_to_object(v) && is_neighbor(v, me.succ)) {
        me.tight_started = true;
        me.tight_moved = false;
        v.write(me.succ).tight_token = 1;
        v.note_token("tight-termination 1");
        return;
    }
    if (me.is_first && !me.tight_started && !adjacent_to_object(v) && cycle_member(v, me.succ)) {
        me.is_first = false;
        v.write(me.succ).is_first = true;
        v.note_token("first");
        return;
    }
    View::Slot target;
    const bool can_move = movable(v, &target);
    if (me.tight_token >= 0 && is_neighbor(v, me.succ)) {
        int value = me.tight_token;
        if (can_move || me.tight_moved) value = 0;
        me.tight_moved = false;
        me.tight_token = -1;
        if (me.is_first) {
            if (value == 1) {
                finish(v);
                v.note_token("tight-finished");
                return;
            }
            value = 1;
        }
        v.write(me.succ).tight_token = value;
        v.note_token("tight-termination " + std::to_string(value));
    }
    if (!can_move) return;
    if (target.occ == Occ::Empty) {
        v.expand(v.to_local(target.gdir));
        me.tight_moved = true;
        return;
    }
    const Particle& q = v.peek(target.pid);
    if (q.expanded()) {
        v.push(target.pid, target.node);
        me.tight_moved = true;
        return;
    }
    Particle& w = v.write(target.pid);
    w.role = Role::Tightening;
    w.phase = Phase::Weak;
    w.succ = me.succ;
    w.pred = me.pred;
    w.is_first = me.is_first;
    w.tight_started = me.tight_started;
    w.tight_token = me.tight_token;
    w.tight_moved = true;
    w.parent.reset();
    v.write(me.succ).pred = w.id;
    v.write(me.pred).succ = w.id;
    me.role = Role::NonTightening;
    me.succ = me.pred = -1;
    me.is_first = false;
    me.tight_token = -1;
    me.parent = w.head;
    v.note_role_swap();
}

void non_tightening(View& v) {
    Particle& me = v.mine();
    if (!v.expanded()) {
        if (tight_finished_neighbor(v)) {
            finish(v);
            return;
        }
        const int q = v.parent_id();
        if (q < 0) return;
        const Particle& p = v.peek(q);
        if (p.expanded() && *me.parent == p.tail && (p.role == Role::NonTightening || p.role == Role::Tightening))
            v.push_parent();
        return;
    }
    expanded_step(v, Role::NonTightening);
}

}  // namespace

Corner classify(const View& v) {
    const Particle& me = v.me();
    if (me.role != Role::Tightening || me.expanded()) return Corner::Neither;
    if (!cycle_member(v, me.succ) || !cycle_member(v, me.pred)) return Corner::Neither;
    const int d = direction_to(me.head, v.peek(me.succ).head);
    const int p = direction_to(me.head, v.peek(me.pred).head);
    if (p == mod6(d + 2)) return Corner::Convex;
    if (p == mod6(d + 4)) return Corner::Reflex;
    return Corner::Neither;
}

// Non-ring particles join the forest rooted at the tightening cycle.
bool join_forest(View& v) {
    Particle& me = v.mine();
    for (int q : v.neighbors()) {
        const Role r = v.peek(q).role;
        if (r != Role::Tightening && r != Role::NonTightening && r != Role::TightFinished) continue;
        me.role = Role::NonTightening;
        me.phase = Phase::Weak;
        me.terminated = false;
        v.set_parent(q);
        return true;
    }
    return false;
}

void activate_weak(View& v) {
    Particle& me = v.mine();
    if (me.terminated && me.role != Role::Finished) return;
    switch (me.role) {
        case Role::TightFinished: return;
        case Role::Tightening: tightening(v); return;
        case Role::NonTightening: non_tightening(v); return;
        case Role::Finished: {
            const int q = v.parent_id();
            if (v.expanded() || q < 0) break;
            const Particle& p = v.peek(q);
            if (p.role == Role::Tightening && p.pred == me.id) {
                me.role = Role::Tightening;
                me.phase = Phase::Weak;
                me.succ = q;
                me.pred = -1;
                me.parent.reset();
                return;
            }
            const bool passed_over = p.role == Role::Tightening && p.pred >= 0;
            if ((passed_over || p.role == Role::NonTightening || p.role == Role::TightFinished) && join_forest(v)) return;
            break;
        }
        default:
            if (join_forest(v)) return;
            break;
    }
    StrongOptions opt;
    opt.weak = true;
    activate_strong(v, opt);
}

Dispatcher weak_dispatcher() {
    return [](View& v) { activate_weak(v); };
}

}  // namespace amoebot
