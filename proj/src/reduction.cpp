#include "aog/reduction.hpp"

#include <algorithm>
#include <string>

#include "aog/error.hpp"

namespace aog {

ReducedGraph build_reduction(const Graph& g, int l) {
    if (l < 1) throw InvalidInput("reduction needs l >= 1");
    ReducedGraph r;
    r.source = g;
    r.l = l;
    const int n = g.n(), m = g.m();
    const int total = 2 * n + l * m;
    r.roles.resize(total);
    std::vector<Edge> edges;
    for (int v = 0; v < n; ++v) {
        r.roles[r.original(v)] = {RoleKind::original, v, -1, -1};
        r.roles[r.prime(v)] = {RoleKind::prime, v, -1, -1};
        for (int w = v + 1; w < n; ++w) edges.emplace_back(v, w);
        edges.emplace_back(r.original(v), r.prime(v));
    }
    for (int id = 0; id < m; ++id) {
        const Edge& e = g.edge(id);
        for (int i = 0; i < l; ++i) {
            int u = r.gadget(id, i);
            r.roles[u] = {RoleKind::gadget, -1, id, i};
            for (int a : {r.original(e.u), r.original(e.v), r.prime(e.u), r.prime(e.v)}) edges.emplace_back(a, u);
        }
    }
    r.h = std::make_shared<const Graph>(total, std::move(edges));
    return r;
}

nlohmann::ordered_json role_map_json(const ReducedGraph& r) {
    nlohmann::ordered_json j;
    auto orig = nlohmann::ordered_json::array(), prime = nlohmann::ordered_json::array();
    for (int v = 0; v < r.n(); ++v) {
        orig.push_back(r.original(v));
        prime.push_back(r.prime(v));
    }
    j["orig"] = std::move(orig);
    j["prime"] = std::move(prime);
    nlohmann::ordered_json gadget = nlohmann::ordered_json::object();
    for (int id = 0; id < r.m(); ++id) {
        const Edge& e = r.source.edge(id);
        auto ids = nlohmann::ordered_json::array();
        for (int i = 0; i < r.l; ++i) ids.push_back(r.gadget(id, i));
        gadget[std::to_string(e.u) + "-" + std::to_string(e.v)] = std::move(ids);
    }
    j["gadget"] = std::move(gadget);
    return j;
}

ReducedGraph reduced_graph_from_roles(const Graph& h, const nlohmann::json& roles) {
    int n = 0, l = 0;
    std::vector<Edge> source_edges;
    try {
        const auto& orig = roles.at("orig");
        const auto& prime = roles.at("prime");
        n = static_cast<int>(orig.size());
        if (static_cast<int>(prime.size()) != n) throw InvalidInput("role map: orig/prime size mismatch");
        for (int v = 0; v < n; ++v)
            if (orig[v].get<int>() != v || prime[v].get<int>() != n + v)
                throw InvalidInput("role map: unexpected vertex numbering");
        for (const auto& [key, ids] : roles.at("gadget").items()) {
            auto dash = key.find('-');
            if (dash == std::string::npos) throw InvalidInput("role map: bad gadget key " + key);
            source_edges.emplace_back(std::stoi(key.substr(0, dash)), std::stoi(key.substr(dash + 1)));
            int size = static_cast<int>(ids.size());
            if (l == 0) l = size;
            if (size != l || size == 0) throw InvalidInput("role map: gadget blocks must share one size");
        }
    } catch (const nlohmann::json::exception& ex) {
        throw InvalidInput(std::string("role map: ") + ex.what());
    } catch (const std::logic_error&) {
        throw InvalidInput("role map: bad gadget key");
    }
    if (l == 0) l = 1;
    ReducedGraph r = build_reduction(Graph(n, source_edges), l);
    if (!(*r.h == h)) throw InvalidInput("graph does not match the reduction described by the role map");
    for (int id = 0; id < r.m(); ++id) {
        const Edge& e = r.source.edge(id);
        const auto& ids = roles["gadget"][std::to_string(e.u) + "-" + std::to_string(e.v)];
        for (int i = 0; i < l; ++i)
            if (ids[i].get<int>() != r.gadget(id, i)) throw InvalidInput("role map: unexpected gadget numbering");
    }
    return r;
}

Claim1Poset build_claim1_poset(const Graph& g, const Cut& cut, int l) {
    const int n = g.n();
    if (static_cast<int>(cut.side.size()) != n) throw InvalidInput("cut does not cover V(G)");
    for (int s : cut.side)
        if (s != 0 && s != 1) throw InvalidInput("cut sides must be 0 or 1");
    ReducedGraph r = build_reduction(g, l);

    std::vector<int> xs, ys, pos(n);
    for (int v = 0; v < n; ++v) {
        auto& chain = cut.side[v] == 0 ? xs : ys;
        pos[v] = static_cast<int>(chain.size());
        chain.push_back(v);
    }
    auto x = [&](int v) { return r.original(v); };
    auto xp = [&](int v) { return r.prime(v); };

    std::vector<Direction> arcs;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        arcs.push_back({x(xs[i]), x(xs[i + 1])});
        arcs.push_back({xp(xs[i]), xp(xs[i + 1])});
    }
    for (std::size_t i = 0; i + 1 < ys.size(); ++i) {
        arcs.push_back({x(ys[i]), x(ys[i + 1])});
        arcs.push_back({xp(ys[i]), xp(ys[i + 1])});
    }
    for (int v : xs) arcs.push_back({x(v), xp(v)});
    for (int v : ys) arcs.push_back({xp(v), x(v)});
    if (!xs.empty() && !ys.empty()) {
        arcs.push_back({x(xs.back()), x(ys.front())});
        arcs.push_back({xp(ys.back()), xp(xs.front())});
    }
    for (int id = 0; id < g.m(); ++id) {
        const Edge& e = g.edge(id);
        for (int i = 0; i < l; ++i) {
            const int u = r.gadget(id, i);
            if (cut.side[e.u] == cut.side[e.v]) {
                // Lower and higher end along the chain (ascending vertex order).
                int lo = pos[e.u] < pos[e.v] ? e.u : e.v;
                int hi = lo == e.u ? e.v : e.u;
                if (cut.side[e.u] == 0) {
                    arcs.push_back({x(lo), u});
                    arcs.push_back({u, x(hi)});
                    arcs.push_back({u, xp(lo)});
                } else {
                    arcs.push_back({x(lo), u});
                    arcs.push_back({xp(hi), u});
                    arcs.push_back({u, x(hi)});
                }
            } else {
                int a = cut.side[e.u] == 0 ? e.u : e.v;  // in X
                int b = a == e.u ? e.v : e.u;             // in Y
                arcs.push_back({x(a), u});
                arcs.push_back({xp(b), u});
                arcs.push_back({u, xp(a)});
                arcs.push_back({u, x(b)});
            }
        }
    }
    Claim1Poset out;
    out.poset = Poset::from_arcs(r.h->n(), arcs);
    out.arcs = std::move(arcs);
    return out;
}

HasseReport hasse_cross_check(const Poset& p, std::span<const Direction> arcs, const BitRow& gadget_vertices) {
    HasseReport report;
    for (const Direction& d : arcs) {
        if (gadget_vertices.test(d.from) == gadget_vertices.test(d.to)) continue;
        ++report.checked;
        if (!p.covers(d.from, d.to)) report.violations.push_back(d);
    }
    return report;
}

HasseReport hasse_cross_check(const Poset& p, std::span<const Direction> arcs, const ReducedGraph& r) {
    BitRow gadgets(static_cast<int>(r.roles.size()));
    for (std::size_t v = 0; v < r.roles.size(); ++v)
        if (r.roles[v].kind == RoleKind::gadget) gadgets.set(static_cast<int>(v));
    return hasse_cross_check(p, arcs, gadgets);
}

HasseReport hasse_check_all(const Poset& p, std::span<const Direction> arcs) {
    HasseReport report;
    for (const Direction& d : arcs) {
        ++report.checked;
        if (!p.covers(d.from, d.to)) report.violations.push_back(d);
    }
    return report;
}

}  // namespace aog
