#include "aog/poset.hpp"

#include <charconv>
#include <sstream>

#include "aog/error.hpp"

namespace aog {

Poset Poset::from_arcs(int n, std::span<const Direction> arcs) {
    Poset p(n);
    for (const Direction& d : arcs) {
        if (d.from < 0 || d.to < 0 || d.from >= n || d.to >= n) throw InvalidInput("poset arc out of range");
        p.add(d.from, d.to);
    }
    return p;
}

void Poset::add(int a, int b) {
    if (a == b) throw InvalidInput("poset arc is a loop");
    if (less(b, a)) throw InvalidInput("poset arcs contain a directed cycle");
    if (less(a, b)) return;
    BitRow up = lt_.row(b);
    up.set(b);
    const int n = size();
    for (int u = 0; u < n; ++u)
        if (u == a || less(u, a)) lt_.row(u) |= up;
}

bool Poset::covers(int a, int b) const {
    if (!less(a, b)) return false;
    for (int c = 0; c < size(); ++c)
        if (less(a, c) && less(c, b)) return false;
    return true;
}

bool Poset::valid() const {
    const int n = size();
    for (int a = 0; a < n; ++a) {
        if (less(a, a)) return false;
        for (int b = 0; b < n; ++b) {
            if (less(a, b) && less(b, a)) return false;
            if (!less(a, b)) continue;
            for (int c = 0; c < n; ++c)
                if (less(b, c) && !less(a, c)) return false;
        }
    }
    return true;
}

std::vector<Direction> Poset::hasse_arcs() const {
    std::vector<Direction> out;
    for (int a = 0; a < size(); ++a)
        for (int b = 0; b < size(); ++b)
            if (covers(a, b)) out.push_back({a, b});
    return out;
}

std::vector<int> linear_extension(const Poset& p) {
    const int n = p.size();
    std::vector<int> order;
    std::vector<bool> placed(n, false);
    order.reserve(n);
    while (static_cast<int>(order.size()) < n) {
        for (int v = 0; v < n; ++v) {
            if (placed[v]) continue;
            bool minimal = true;
            for (int u = 0; u < n && minimal; ++u)
                if (!placed[u] && p.less(u, v)) minimal = false;
            if (minimal) {
                placed[v] = true;
                order.push_back(v);
                break;
            }
        }
    }
    return order;
}

Poset parse_poset(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty()) return true;
        }
        return false;
    };
    if (!next_line()) throw ParseError(1, "missing poset size");
    int n = -1;
    auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), n);
    if (ec != std::errc{} || ptr != line.data() + line.size() || n < 0)
        throw ParseError(line_no, "malformed poset size");
    std::vector<std::pair<Direction, int>> arcs;
    while (next_line()) {
        std::istringstream ls(line);
        int a = -1, b = -1;
        std::string rest;
        if (!(ls >> a >> b) || (ls >> rest)) throw ParseError(line_no, "malformed poset arc");
        if (a < 0 || b < 0 || a >= n || b >= n) throw ParseError(line_no, "poset arc out of range");
        if (a == b) throw ParseError(line_no, "poset arc is a loop");
        arcs.push_back({{a, b}, line_no});
    }
    Poset p(n);
    for (const auto& [d, at] : arcs) {
        try {
            p.add(d.from, d.to);
        } catch (const InvalidInput&) {
            throw ParseError(at, "poset arcs contain a directed cycle");
        }
    }
    return p;
}

std::string serialize_poset(const Poset& p) {
    std::string out = std::to_string(p.size()) + "\n";
    for (const Direction& d : p.hasse_arcs()) out += std::to_string(d.from) + " " + std::to_string(d.to) + "\n";
    return out;
}

}  // namespace aog
