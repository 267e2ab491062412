#include "amoebot/lattice.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <queue>
#include <sstream>

namespace amoebot {

int direction_to(Node u, Node v) {
    const Node d = v - u;
    for (int g = 0; g < 6; ++g)
        if (kDirVec[static_cast<std::size_t>(g)] == d) return g;
    return -1;
}

bool adjacent(Node u, Node v) { return direction_to(u, v) >= 0; }

int hex_distance(Node u, Node v) {
    const int dx = v.x - u.x, dy = v.y - u.y;
    return (std::abs(dx) + std::abs(dy) + std::abs(dx + dy)) / 2;
}

Node rotate(Node v, int k) {
    k = mod6(k);
    for (int i = 0; i < k; ++i) v = Node{v.x + v.y, -v.x};
    return v;
}

Bounds bounds_of(const std::vector<Node>& nodes) {
    Bounds b;
    if (nodes.empty()) return b;
    b.min_x = b.max_x = nodes.front().x;
    b.min_y = b.max_y = nodes.front().y;
    for (const Node& v : nodes) {
        b.min_x = std::min(b.min_x, v.x);
        b.max_x = std::max(b.max_x, v.x);
        b.min_y = std::min(b.min_y, v.y);
        b.max_y = std::max(b.max_y, v.y);
    }
    return b;
}

namespace {

// Dense grid over a padded bounding box.
struct Box {
    int x0, y0, w, h;
    Box(const Bounds& b, int pad)
        : x0(b.min_x - pad), y0(b.min_y - pad), w(b.max_x - b.min_x + 1 + 2 * pad),
          h(b.max_y - b.min_y + 1 + 2 * pad) {}
    bool inside(Node v) const { return v.x >= x0 && v.y >= y0 && v.x < x0 + w && v.y < y0 + h; }
    int index(Node v) const { return (v.y - y0) * w + (v.x - x0); }
    Node node(int i) const { return {x0 + i % w, y0 + i / w}; }
    int size() const { return w * h; }
    bool border(Node v) const {
        return v.x == x0 || v.y == y0 || v.x == x0 + w - 1 || v.y == y0 + h - 1;
    }
};

std::vector<char> occupancy(const Box& box, const std::vector<Node>& nodes) {
    std::vector<char> occ(static_cast<std::size_t>(box.size()), 0);
    for (const Node& v : nodes) occ[static_cast<std::size_t>(box.index(v))] = 1;
    return occ;
}

}  // namespace

bool is_connected(const std::vector<Node>& nodes) {
    if (nodes.empty()) return false;
    NodeSet set(nodes.begin(), nodes.end());
    NodeSet seen{nodes.front()};
    std::vector<Node> stack{nodes.front()};
    while (!stack.empty()) {
        Node v = stack.back();
        stack.pop_back();
        for (int g = 0; g < 6; ++g) {
            Node u = neighbor(v, g);
            if (set.count(u) && seen.insert(u).second) stack.push_back(u);
        }
    }
    return seen.size() == set.size();
}

bool is_simply_connected(const std::vector<Node>& nodes) {
    if (!is_connected(nodes)) return false;
    Box box(bounds_of(nodes), 1);
    auto occ = occupancy(box, nodes);
    std::vector<char> seen(occ.size(), 0);
    int free_total = 0;
    for (char c : occ) free_total += c == 0;
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        Node v = box.node(stack.back());
        stack.pop_back();
        for (int g = 0; g < 6; ++g) {
            Node u = neighbor(v, g);
            if (!box.inside(u)) continue;
            const auto i = static_cast<std::size_t>(box.index(u));
            if (occ[i] || seen[i]) continue;
            seen[i] = 1;
            ++reached;
            stack.push_back(static_cast<int>(i));
        }
    }
    return reached == free_total;
}

bool has_width1_tunnel(const std::vector<Node>& nodes) {
    if (nodes.empty()) return false;
    Box box(bounds_of(nodes), 2);
    auto occ = occupancy(box, nodes);
    // Vertex ids: each free non-border cell keeps its index; all border cells map to `super`.
    const int super = box.size();
    auto vid = [&](Node v) { return box.border(v) ? super : box.index(v); };
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(super) + 1);
    for (int i = 0; i < box.size(); ++i) {
        if (occ[static_cast<std::size_t>(i)]) continue;
        Node v = box.node(i);
        const int a = vid(v);
        for (int g = 0; g < 6; ++g) {
            Node u = neighbor(v, g);
            if (!box.inside(u) || occ[static_cast<std::size_t>(box.index(u))]) continue;
            const int b = vid(u);
            if (a == b || a > b) continue;
            adj[static_cast<std::size_t>(a)].push_back(b);
            adj[static_cast<std::size_t>(b)].push_back(a);
        }
    }
    for (auto& l : adj) {
        std::sort(l.begin(), l.end());
        l.erase(std::unique(l.begin(), l.end()), l.end());
    }
    // Iterative articulation-point search rooted at the super-node.
    const std::size_t n = adj.size();
    std::vector<int> disc(n, -1), low(n, 0), parent(n, -1);
    std::vector<std::size_t> it(n, 0);
    int timer = 0, root_children = 0;
    std::vector<int> stack{super};
    disc[static_cast<std::size_t>(super)] = low[static_cast<std::size_t>(super)] = timer++;
    while (!stack.empty()) {
        const int v = stack.back();
        const auto vs = static_cast<std::size_t>(v);
        if (it[vs] < adj[vs].size()) {
            const int u = adj[vs][it[vs]++];
            const auto us = static_cast<std::size_t>(u);
            if (disc[us] < 0) {
                parent[us] = v;
                disc[us] = low[us] = timer++;
                if (v == super) ++root_children;
                stack.push_back(u);
            } else if (u != parent[vs]) {
                low[vs] = std::min(low[vs], disc[us]);
            }
        } else {
            stack.pop_back();
            const int p = parent[vs];
            if (p >= 0) {
                const auto ps = static_cast<std::size_t>(p);
                low[ps] = std::min(low[ps], low[vs]);
                if (p != super && low[vs] >= disc[ps]) return true;
            }
        }
    }
    return root_children > 1;
}

std::vector<Node> boundary(const std::vector<Node>& nodes) {
    NodeSet set(nodes.begin(), nodes.end());
    NodeSet seen;
    std::vector<Node> out;
    for (const Node& v : nodes)
        for (int g = 0; g < 6; ++g) {
            Node u = neighbor(v, g);
            if (!set.count(u) && seen.insert(u).second) out.push_back(u);
        }
    std::sort(out.begin(), out.end());
    return out;
}

ObjectShape::ObjectShape(std::vector<Node> nodes) : nodes_(std::move(nodes)) {
    std::sort(nodes_.begin(), nodes_.end());
    if (nodes_.empty()) throw ObjectError("object is empty");
    if (std::adjacent_find(nodes_.begin(), nodes_.end()) != nodes_.end())
        throw ObjectError("object contains duplicate nodes");
    if (!is_connected(nodes_)) throw ObjectError("object is not connected");
    if (!is_simply_connected(nodes_)) throw ObjectError("object has a hole (not simply connected)");
    if (has_width1_tunnel(nodes_)) throw ObjectError("object has a width-1 tunnel");
    set_ = NodeSet(nodes_.begin(), nodes_.end());
    boundary_ = amoebot::boundary(nodes_);
    boundary_set_ = NodeSet(boundary_.begin(), boundary_.end());
    bounds_ = bounds_of(nodes_);
}

int rhr_direction(const std::function<bool(Node)>& blocked, Node v) {
    int i = -1;
    for (int g = 0; g < 6; ++g)
        if (blocked(neighbor(v, g))) {
            i = g;
            break;
        }
    if (i < 0) return -1;
    for (int k = 0; k < 6; ++k) {
        if (!blocked(neighbor(v, i))) return i;
        i = mod6(i + 5);
    }
    return -1;
}

namespace {

std::vector<Node> walk(const std::function<bool(Node)>& blocked, Node start, std::size_t limit) {
    std::vector<Node> out{start};
    Node v = start;
    while (true) {
        const int i = rhr_direction(blocked, v);
        if (i < 0) throw std::logic_error("walk: node has no free or no blocked neighbor");
        v = neighbor(v, i);
        if (v == start) break;
        out.push_back(v);
        if (out.size() > limit) throw std::logic_error("walk: did not close");
    }
    return out;
}

}  // namespace

std::vector<Node> clockwise_boundary_walk(const ObjectShape& O, Node start) {
    if (!O.on_boundary(start)) throw std::invalid_argument("walk start is not on the object boundary");
    return walk([&](Node u) { return O.contains(u); }, start, 6 * O.boundary().size() + 6);
}

std::vector<Node> clockwise_ring_walk(const NodeSet& region, Node start) {
    return walk([&](Node u) { return region.count(u) != 0; }, start, 12 * region.size() + 12);
}

ObjectShape parse_object(std::istream& in) {
    std::vector<Node> nodes;
    NodeSet seen;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        Node v;
        std::string rest;
        if (!(ls >> v.x >> v.y) || (ls >> rest))
            throw ObjectError("line " + std::to_string(lineno) + ": expected two integers");
        if (!seen.insert(v).second)
            throw ObjectError("line " + std::to_string(lineno) + ": duplicate node");
        nodes.push_back(v);
    }
    return ObjectShape(std::move(nodes));
}

ObjectShape load_object(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ObjectError("cannot open object file: " + path);
    return parse_object(in);
}

std::string format_object(const ObjectShape& O) {
    std::ostringstream out;
    for (const Node& v : O.nodes()) out << v.x << ' ' << v.y << '\n';
    return out.str();
}

}  // namespace amoebot
