#include "amoebot/solo.hpp"

#include <algorithm>
#include <stdexcept>

namespace amoebot {

int get_rhr(const std::array<bool, 6>& object_at) {
    int i = -1;
    for (int l = 0; l < 6 && i < 0; ++l)
        if (object_at[static_cast<std::size_t>(l)]) i = l;
    if (i < 0) return -1;
    for (int k = 0; k < 6; ++k) {
        if (!object_at[static_cast<std::size_t>(i)]) return i;
        i = mod6(i + 5);
    }
    return -1;
}

SoloState solo_step(const SoloState& s, const ObjectShape& O) {
    if (s.terminated) throw std::logic_error("solo particle already terminated");
    std::array<bool, 6> obj{};
    for (int g = 0; g < 6; ++g) obj[static_cast<std::size_t>(g)] = O.contains(neighbor(s.pos, g));
    const int i = get_rhr(obj);
    if (i < 0) throw std::logic_error("solo particle is not on the object boundary");
    const Delta& dl = delta(i);
    SoloState t = s;
    bool pushed = false;
    for (std::size_t h = 0; h < 6; ++h) {
        if (dl[h] == -1 && s.d[h] == 0) pushed = true;
        t.d[h] = std::max(0LL, s.d[h] + dl[h]);
    }
    if (pushed) {
        t.b.fill(0);
    } else {
        for (std::size_t h = 0; h < 6; ++h)
            if (t.d[h] == 0) t.b[h] = 1;
    }
    t.pos = neighbor(s.pos, i);
    t.terminated = std::all_of(t.b.begin(), t.b.end(), [](std::uint8_t x) { return x == 1; });
    return t;
}

SoloResult run_solo(const ObjectShape& O, Node start, long long max_steps) {
    if (!O.on_boundary(start)) throw std::invalid_argument("solo start is not on the object boundary");
    if (max_steps < 0) max_steps = 10 * static_cast<long long>(O.boundary().size());
    SoloResult r;
    r.state.pos = start;
    r.path.push_back(start);
    while (!r.state.terminated && r.steps < max_steps) {
        r.state = solo_step(r.state, O);
        ++r.steps;
        r.path.push_back(r.state.pos);
    }
    r.terminated = r.state.terminated;
    r.rounds = r.steps;
    return r;
}

}  // namespace amoebot
