#include "amoebot/shapes.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace amoebot {

ObjectShape hexagon(int r) {
    if (r < 0) throw std::invalid_argument("hexagon radius must be non-negative");
    std::vector<Node> nodes;
    for (int y = -r; y <= r; ++y)
        for (int x = -r; x <= r; ++x)
            if (hex_distance({x, y}, {0, 0}) <= r) nodes.push_back({x, y});
    return ObjectShape(std::move(nodes));
}

ObjectShape triangle(int k) {
    if (k < 1) throw std::invalid_argument("triangle side must be positive");
    std::vector<Node> nodes;
    for (int y = 0; y < k; ++y)
        for (int x = 0; x + y < k; ++x) nodes.push_back({x, y});
    return ObjectShape(std::move(nodes));
}

ObjectShape random_blob(int size, std::uint64_t seed) {
    if (size < 1) throw std::invalid_argument("blob size must be positive");
    std::mt19937_64 rng(seed);
    std::vector<Node> nodes{{0, 0}};
    NodeSet in{{0, 0}};
    std::vector<Node> frontier;
    NodeSet queued;
    auto grow = [&](Node v) {
        for (int g = 0; g < 6; ++g) {
            Node u = neighbor(v, g);
            if (!in.count(u) && queued.insert(u).second) frontier.push_back(u);
        }
    };
    grow({0, 0});
    int stalls = 0;
    while (static_cast<int>(nodes.size()) < size && !frontier.empty()) {
        std::uniform_int_distribution<std::size_t> pick(0, frontier.size() - 1);
        const std::size_t k = pick(rng);
        const Node v = frontier[k];
        nodes.push_back(v);
        if (!is_simply_connected(nodes) || has_width1_tunnel(nodes)) {
            nodes.pop_back();
            if (++stalls > 50 * size) break;
            continue;
        }
        frontier[k] = frontier.back();
        frontier.pop_back();
        queued.erase(v);
        in.insert(v);
        grow(v);
    }
    return ObjectShape(std::move(nodes));
}

ObjectShape family_member(const std::string& family, int boundary_target, std::uint64_t seed) {
    if (family == "hexagon") {
        const int r = std::max(0, (boundary_target + 5) / 6 - 1);
        return hexagon(r);
    }
    if (family == "triangle") {
        for (int k = 1;; ++k) {
            ObjectShape t = triangle(k);
            if (static_cast<int>(t.boundary().size()) >= boundary_target) return t;
        }
    }
    if (family == "blob") {
        int lo = 1, hi = 1;
        while (static_cast<int>(random_blob(hi, seed).boundary().size()) < boundary_target) {
            lo = hi;
            hi *= 2;
        }
        while (lo < hi) {
            const int mid = (lo + hi) / 2;
            if (static_cast<int>(random_blob(mid, seed).boundary().size()) >= boundary_target) hi = mid;
            else lo = mid + 1;
        }
        return random_blob(hi, seed);
    }
    throw std::invalid_argument("unknown object family: " + family);
}

std::vector<ObjectShape> object_sample(int count, int min_b, int max_b, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<ObjectShape> out;
    static constexpr const char* kFamilies[] = {"blob", "hexagon", "triangle", "blob"};
    for (int i = 0; i < count; ++i) {
        const double t = count > 1 ? static_cast<double>(i) / (count - 1) : 0.0;
        const int target = min_b + static_cast<int>(t * t * (max_b - min_b));
        const char* fam = kFamilies[i % 4];
        ObjectShape o = family_member(fam, target, rng());
        if (static_cast<int>(o.boundary().size()) > max_b) o = family_member("blob", target, rng());
        out.push_back(std::move(o));
    }
    return out;
}

}  // namespace amoebot
