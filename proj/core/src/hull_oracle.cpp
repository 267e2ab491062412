#include "amoebot/hull_oracle.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <stdexcept>

namespace amoebot {

std::array<int, 6> half_plane_minima(const ObjectShape& O) {
    std::array<int, 6> m;
    m.fill(INT_MAX);
    for (const Node& v : O.nodes())
        for (int h = 0; h < 6; ++h) m[static_cast<std::size_t>(h)] = std::min(m[static_cast<std::size_t>(h)], functional(h, v));
    return m;
}

std::vector<Node> ring_around(const NodeSet& region) {
    NodeSet ring;
    for (const Node& v : region)
        for (int g = 0; g < 6; ++g) {
            Node u = neighbor(v, g);
            if (!region.count(u)) ring.insert(u);
        }
    if (ring.empty()) return {};
    Node start = *std::min_element(ring.begin(), ring.end());
    return clockwise_ring_walk(region, start);
}

namespace {

// Axis parameterisation: line key and position along the line.
struct Axis {
    int (*key)(Node);
    int (*pos)(Node);
    Node (*make)(int key, int pos);
};

constexpr std::array<Axis, 3> kAxes{{
    {[](Node v) { return v.y; }, [](Node v) { return v.x; }, [](int k, int p) { return Node{p, k}; }},
    {[](Node v) { return v.x; }, [](Node v) { return v.y; }, [](int k, int p) { return Node{k, p}; }},
    {[](Node v) { return v.x + v.y; }, [](Node v) { return v.x; }, [](int k, int p) { return Node{p, k - p}; }},
}};

}  // namespace

NodeSet line_fill_fixpoint(const std::vector<Node>& seed) {
    NodeSet s(seed.begin(), seed.end());
    bool changed = true;
    while (changed) {
        changed = false;
        for (const Axis& a : kAxes) {
            std::map<int, std::pair<int, int>> span;
            for (const Node& v : s) {
                auto [it, fresh] = span.try_emplace(a.key(v), a.pos(v), a.pos(v));
                if (!fresh) {
                    it->second.first = std::min(it->second.first, a.pos(v));
                    it->second.second = std::max(it->second.second, a.pos(v));
                }
            }
            for (const auto& [k, lohi] : span)
                for (int p = lohi.first; p <= lohi.second; ++p)
                    if (s.insert(a.make(k, p)).second) changed = true;
        }
    }
    return s;
}

bool is_axis_convex(const NodeSet& s) {
    for (const Axis& a : kAxes) {
        std::map<int, std::vector<int>> lines;
        for (const Node& v : s) lines[a.key(v)].push_back(a.pos(v));
        for (auto& [k, ps] : lines) {
            std::sort(ps.begin(), ps.end());
            if (ps.back() - ps.front() + 1 != static_cast<int>(ps.size())) return false;
        }
    }
    return true;
}

HullSets strong_hull(const ObjectShape& O) {
    HullSets out;
    out.minima = half_plane_minima(O);
    const Bounds& b = O.bounds();
    for (int y = b.min_y; y <= b.max_y; ++y)
        for (int x = b.min_x; x <= b.max_x; ++x) {
            Node v{x, y};
            bool in = true;
            for (int h = 0; h < 6 && in; ++h) in = functional(h, v) >= out.minima[static_cast<std::size_t>(h)];
            if (in) out.strong_region.insert(v);
        }
    out.strong_cycle = ring_around(out.strong_region);
    return out;
}

HullSets weak_hull(const ObjectShape& O) {
    HullSets out;
    out.minima = half_plane_minima(O);
    out.weak_region = line_fill_fixpoint(O.nodes());
    out.weak_cycle = ring_around(out.weak_region);
    return out;
}

HullSets hulls(const ObjectShape& O) {
    HullSets s = strong_hull(O);
    HullSets w = weak_hull(O);
    s.weak_region = std::move(w.weak_region);
    s.weak_cycle = std::move(w.weak_cycle);
    return s;
}

Distances distances_to_strong_hull(Node v, const ObjectShape& O) {
    const auto m = half_plane_minima(O);
    Distances d{};
    for (int h = 0; h < 6; ++h) {
        const long long r = static_cast<long long>(functional(h, v)) - (m[static_cast<std::size_t>(h)] - 1);
        if (r < 0) throw std::invalid_argument("node lies outside the strong hull ring");
        d[static_cast<std::size_t>(h)] = r;
    }
    return d;
}

}  // namespace amoebot
