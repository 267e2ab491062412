#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

namespace amoebot {

// Axial coordinate on the triangular lattice.
struct Node {
    int x = 0;
    int y = 0;

    constexpr bool operator==(const Node&) const = default;
    constexpr auto operator<=>(const Node&) const = default;
    constexpr Node operator+(const Node& o) const { return {x + o.x, y + o.y}; }
    constexpr Node operator-(const Node& o) const { return {x - o.x, y - o.y}; }
};

struct NodeHash {
    std::size_t operator()(const Node& v) const noexcept {
        std::uint64_t k = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(v.x)) << 32) |
                          static_cast<std::uint32_t>(v.y);
        k ^= k >> 33;
        k *= 0xff51afd7ed558ccdULL;
        k ^= k >> 33;
        return static_cast<std::size_t>(k);
    }
};

using NodeSet = std::unordered_set<Node, NodeHash>;

// Directions 0..5 increase clockwise.
inline constexpr std::array<Node, 6> kDirVec{{{1, 0}, {1, -1}, {0, -1}, {-1, 0}, {-1, 1}, {0, 1}}};

constexpr int mod6(int i) { return ((i % 6) + 6) % 6; }
constexpr int opposite(int g) { return mod6(g + 3); }
constexpr Node neighbor(Node v, int g) { return v + kDirVec[static_cast<std::size_t>(mod6(g))]; }

// Direction from u to an adjacent node v, or -1 if not adjacent.
int direction_to(Node u, Node v);
bool adjacent(Node u, Node v);
int hex_distance(Node u, Node v);

enum class HalfPlane : int { N = 0, NE = 1, SE = 2, S = 3, SW = 4, NW = 5 };
inline constexpr std::array<const char*, 6> kHalfPlaneNames{"N", "NE", "SE", "S", "SW", "NW"};

using Delta = std::array<int, 6>;
inline constexpr std::array<Delta, 6> kDelta{{
    {1, 1, 0, -1, -1, 0},
    {0, 1, 1, 0, -1, -1},
    {-1, 0, 1, 1, 0, -1},
    {-1, -1, 0, 1, 1, 0},
    {0, -1, -1, 0, 1, 1},
    {1, 0, -1, -1, 0, 1},
}};

constexpr const Delta& delta(int i) { return kDelta[static_cast<std::size_t>(mod6(i))]; }

// Linear functional whose increment along direction i is delta(i)[h].
constexpr int functional(int h, Node v) {
    return kDelta[0][static_cast<std::size_t>(h)] * v.x + kDelta[5][static_cast<std::size_t>(h)] * v.y;
}

// Rotate v by k * 60 degrees clockwise about the origin.
Node rotate(Node v, int k);

struct ObjectError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Bounds {
    int min_x = 0, max_x = -1, min_y = 0, max_y = -1;
};

Bounds bounds_of(const std::vector<Node>& nodes);

bool is_connected(const std::vector<Node>& nodes);
bool is_simply_connected(const std::vector<Node>& nodes);
bool has_width1_tunnel(const std::vector<Node>& nodes);
std::vector<Node> boundary(const std::vector<Node>& nodes);

// Static object O with derived boundary. Construction validates.
class ObjectShape {
public:
    ObjectShape() = default;
    explicit ObjectShape(std::vector<Node> nodes);

    const std::vector<Node>& nodes() const { return nodes_; }
    const std::vector<Node>& boundary() const { return boundary_; }
    bool contains(Node v) const { return set_.count(v) != 0; }
    bool on_boundary(Node v) const { return boundary_set_.count(v) != 0; }
    std::size_t size() const { return nodes_.size(); }
    const Bounds& bounds() const { return bounds_; }

private:
    std::vector<Node> nodes_;
    NodeSet set_;
    std::vector<Node> boundary_;
    NodeSet boundary_set_;
    Bounds bounds_;
};

// Right-hand-rule exit direction at v: start at an object direction and
// rotate counterclockwise until a free direction. -1 if v has no object
// neighbor or is surrounded.
int rhr_direction(const std::function<bool(Node)>& blocked, Node v);

std::vector<Node> clockwise_boundary_walk(const ObjectShape& O, Node start);
// Same walk around an arbitrary finite region (used for hull rings).
std::vector<Node> clockwise_ring_walk(const NodeSet& region, Node start);

ObjectShape parse_object(std::istream& in);
ObjectShape load_object(const std::string& path);
std::string format_object(const ObjectShape& O);

}  // namespace amoebot
