#include "amoebot/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace amoebot {

namespace {

struct Frame {
    int min_col = 0, max_col = 0, min_y = 0, max_y = 0;
};

int column(Node v) { return 2 * v.x + v.y; }

Frame frame_of(const ObjectShape& O, const std::vector<Particle>& ps, const std::vector<Node>& ring) {
    std::vector<Node> all = O.nodes();
    for (const Particle& p : ps) {
        all.push_back(p.head);
        all.push_back(p.tail);
    }
    all.insert(all.end(), ring.begin(), ring.end());
    Frame f;
    if (all.empty()) return f;
    f.min_col = f.max_col = column(all[0]);
    f.min_y = f.max_y = all[0].y;
    for (const Node& v : all) {
        f.min_col = std::min(f.min_col, column(v));
        f.max_col = std::max(f.max_col, column(v));
        f.min_y = std::min(f.min_y, v.y);
        f.max_y = std::max(f.max_y, v.y);
    }
    return f;
}

const char* role_color(Role r) {
    switch (r) {
        case Role::Idle: return "#bbbbbb";
        case Role::Follower: return "#6699cc";
        case Role::Leader: return "#d62728";
        case Role::Hull: return "#ff9f1c";
        case Role::PreMarker:
        case Role::Marker: return "#9467bd";
        case Role::Finished: return "#2ca02c";
        case Role::PreFiller:
        case Role::Filler: return "#17becf";
        case Role::Trapped: return "#8c564b";
        case Role::PreFinished: return "#98df8a";
        case Role::Tightening: return "#e377c2";
        case Role::NonTightening: return "#c7c7c7";
        case Role::TightFinished: return "#1f77b4";
    }
    return "#000000";
}

}  // namespace

char role_glyph(Role r) {
    switch (r) {
        case Role::Idle: return 'I';
        case Role::Follower: return 'F';
        case Role::Leader: return 'L';
        case Role::Hull: return 'H';
        case Role::PreMarker: return 'Q';
        case Role::Marker: return 'M';
        case Role::Finished: return 'D';
        case Role::PreFiller: return 'P';
        case Role::Filler: return 'R';
        case Role::Trapped: return 'T';
        case Role::PreFinished: return 'E';
        case Role::Tightening: return 'G';
        case Role::NonTightening: return 'N';
        case Role::TightFinished: return 'W';
    }
    return '?';
}

std::string render_ascii(const ObjectShape& O, const std::vector<Particle>& ps, const std::vector<Node>& ring) {
    const Frame f = frame_of(O, ps, ring);
    const int w = f.max_col - f.min_col + 1;
    std::vector<std::string> rows(static_cast<std::size_t>(f.max_y - f.min_y + 1), std::string(static_cast<std::size_t>(w), ' '));
    auto put = [&](Node v, char c) {
        rows[static_cast<std::size_t>(f.max_y - v.y)][static_cast<std::size_t>(column(v) - f.min_col)] = c;
    };
    for (const Node& v : ring) put(v, '.');
    for (const Node& v : O.nodes()) put(v, '#');
    for (const Particle& p : ps) {
        const char g = role_glyph(p.role);
        if (p.expanded()) put(p.tail, static_cast<char>(g - 'A' + 'a'));
        put(p.head, g);
    }
    std::string out;
    for (auto& r : rows) {
        while (!r.empty() && r.back() == ' ') r.pop_back();
        out += r;
        out += '\n';
    }
    return out;
}

std::string render_svg(const ObjectShape& O, const std::vector<Particle>& ps, const std::vector<Node>& ring,
                       const std::vector<Node>& ring2) {
    constexpr double kScale = 20.0;
    constexpr double kR = 7.0;
    const double s3 = std::sqrt(3.0) / 2.0;
    std::vector<Node> extra = ring;
    extra.insert(extra.end(), ring2.begin(), ring2.end());
    const Frame f = frame_of(O, ps, extra);
    const double x0 = f.min_col / 2.0 - 1.0;
    const double y0 = -s3 * f.max_y - 1.0;
    const double width = (f.max_col - f.min_col) / 2.0 + 2.0;
    const double height = s3 * (f.max_y - f.min_y) + 2.0;
    auto px = [&](Node v) { return (v.x + v.y / 2.0 - x0) * kScale; };
    auto py = [&](Node v) { return (-s3 * v.y - y0) * kScale; };
    std::ostringstream o;
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" viewBox=\"0 0 %.0f %.0f\">\n",
                  width * kScale, height * kScale, width * kScale, height * kScale);
    o << buf << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    auto circle = [&](Node v, double r, const char* fill, const char* stroke, const char* cls) {
        std::snprintf(buf, sizeof buf,
                      "<circle class=\"%s\" data-x=\"%d\" data-y=\"%d\" cx=\"%.2f\" cy=\"%.2f\" r=\"%.1f\" fill=\"%s\" stroke=\"%s\"/>\n",
                      cls, v.x, v.y, px(v), py(v), r, fill, stroke);
        o << buf;
    };
    for (const Node& v : ring) circle(v, 3.0, "none", "#999999", "strong");
    for (const Node& v : ring2) circle(v, 2.0, "#999999", "none", "weak");
    for (const Node& v : O.nodes()) circle(v, kR, "black", "black", "object");
    for (const Particle& p : ps) {
        if (p.expanded()) {
            std::snprintf(buf, sizeof buf,
                          "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"%s\" stroke-width=\"4\"/>\n",
                          px(p.head), py(p.head), px(p.tail), py(p.tail), role_color(p.role));
            o << buf;
            circle(p.tail, kR, "white", role_color(p.role), "particle");
        }
        circle(p.head, kR, role_color(p.role), "black", "particle");
    }
    o << "</svg>\n";
    return o.str();
}

NodeSet ascii_particle_nodes(const std::string& ascii, const ObjectShape& O, const std::vector<Particle>& ps,
                             const std::vector<Node>& ring) {
    const Frame f = frame_of(O, ps, ring);
    NodeSet out;
    std::istringstream in(ascii);
    std::string line;
    int row = 0;
    while (std::getline(in, line)) {
        const int y = f.max_y - row++;
        for (std::size_t c = 0; c < line.size(); ++c) {
            const char ch = line[c];
            if (ch == ' ' || ch == '#' || ch == '.') continue;
            const int col = static_cast<int>(c) + f.min_col;
            out.insert({(col - y) / 2, y});
        }
    }
    return out;
}

NodeSet svg_particle_nodes(const std::string& svg) {
    NodeSet out;
    const std::string key = "class=\"particle\" data-x=\"";
    for (std::size_t at = svg.find(key); at != std::string::npos; at = svg.find(key, at + 1)) {
        int x = 0, y = 0;
        if (std::sscanf(svg.c_str() + at + key.size(), "%d\" data-y=\"%d", &x, &y) == 2) out.insert({x, y});
    }
    return out;
}

}  // namespace amoebot
