#pragma once

// Grid-scan reference hulls, written independently of the library oracle.

#include <algorithm>
#include <array>
#include <climits>
#include <set>
#include <vector>

#include "amoebot/lattice.hpp"

namespace brute {

using amoebot::Node;

inline int f(int h, Node v) {
    static constexpr int cx[6] = {1, 1, 0, -1, -1, 0};
    static constexpr int cy[6] = {1, 0, -1, -1, 0, 1};
    return cx[h] * v.x + cy[h] * v.y;
}

inline std::array<int, 6> minima(const std::vector<Node>& O) {
    std::array<int, 6> m;
    m.fill(INT_MAX);
    for (const Node& v : O)
        for (int h = 0; h < 6; ++h) m[h] = std::min(m[h], f(h, v));
    return m;
}

struct Box {
    int x0, x1, y0, y1;
    bool in(Node v) const { return v.x >= x0 && v.x <= x1 && v.y >= y0 && v.y <= y1; }
};

inline Box box_of(const std::vector<Node>& O, int pad) {
    Box b{INT_MAX, INT_MIN, INT_MAX, INT_MIN};
    for (const Node& v : O) {
        b.x0 = std::min(b.x0, v.x);
        b.x1 = std::max(b.x1, v.x);
        b.y0 = std::min(b.y0, v.y);
        b.y1 = std::max(b.y1, v.y);
    }
    b.x0 -= pad, b.x1 += pad, b.y0 -= pad, b.y1 += pad;
    return b;
}

inline std::set<Node> ring_of(const std::set<Node>& region, const Box& b) {
    static constexpr Node dirs[6] = {{1, 0}, {1, -1}, {0, -1}, {-1, 0}, {-1, 1}, {0, 1}};
    std::set<Node> ring;
    for (int x = b.x0; x <= b.x1; ++x)
        for (int y = b.y0; y <= b.y1; ++y) {
            const Node v{x, y};
            if (region.count(v)) continue;
            for (const Node& d : dirs)
                if (region.count(v + d)) {
                    ring.insert(v);
                    break;
                }
        }
    return ring;
}

// Intersection of the six half-planes f_h >= m_h.
inline std::set<Node> strong_region(const std::vector<Node>& O) {
    const auto m = minima(O);
    const Box b = box_of(O, 2);
    std::set<Node> r;
    for (int x = b.x0; x <= b.x1; ++x)
        for (int y = b.y0; y <= b.y1; ++y) {
            bool inside = true;
            for (int h = 0; h < 6 && inside; ++h) inside = f(h, {x, y}) >= m[h];
            if (inside) r.insert({x, y});
        }
    return r;
}

// Repeatedly fills the gap between the extreme members on every axis line.
inline std::set<Node> weak_region(const std::vector<Node>& O) {
    std::set<Node> r(O.begin(), O.end());
    const Box b = box_of(O, 2);
    static constexpr Node axes[3] = {{1, 0}, {0, 1}, {1, -1}};
    bool changed = true;
    while (changed) {
        changed = false;
        for (const Node& a : axes)
            for (const Node& start : std::set<Node>(r)) {
                Node lo = start, hi = start;
                for (Node v = start; b.in(v); v = v - a)
                    if (r.count(v)) lo = v;
                for (Node v = start; b.in(v); v = v + a)
                    if (r.count(v)) hi = v;
                for (Node v = lo; v != hi; v = v + a)
                    if (r.insert(v).second) changed = true;
            }
    }
    return r;
}

inline std::set<Node> strong_ring(const std::vector<Node>& O) { return ring_of(strong_region(O), box_of(O, 3)); }
inline std::set<Node> weak_ring(const std::vector<Node>& O) { return ring_of(weak_region(O), box_of(O, 3)); }

// Distance of v to the supporting line of H(O) for each half-plane.
inline std::array<long long, 6> distances(Node v, const std::vector<Node>& O) {
    const auto m = minima(O);
    std::array<long long, 6> d;
    for (int h = 0; h < 6; ++h) d[h] = f(h, v) - (m[h] - 1);
    return d;
}

}  // namespace brute
