#pragma once

#include <memory>
#include <span>
#include <vector>

#include "json.hpp"

#include "aog/bits.hpp"
#include "aog/graph.hpp"
#include "aog/poset.hpp"

namespace aog {

enum class RoleKind { original, prime, gadget };

struct VertexRole {
    RoleKind kind = RoleKind::original;
    int vertex = -1;  ///< original / prime: the vertex of G
    int edge = -1;    ///< gadget: edge id in G
    int index = -1;   ///< gadget: position inside U_xy
};

/// H(G,l): a clique on V, a pendant x' for every x, and for every edge xy
/// of G an independent block U_xy of l vertices joined to {x, y, x', y'}.
///
/// Numbering: originals 0..n-1, primes n..2n-1, then the gadget blocks in
/// the edge order of G.
struct ReducedGraph {
    std::shared_ptr<const Graph> h;
    Graph source;
    int l = 0;
    std::vector<VertexRole> roles;

    int n() const { return source.n(); }
    int m() const { return source.m(); }
    int original(int v) const { return v; }
    int prime(int v) const { return n() + v; }
    int gadget(int edge, int i) const { return 2 * n() + edge * l + i; }
    bool is_gadget(int v) const { return roles[v].kind == RoleKind::gadget; }
};

/// Throws InvalidInput for l < 1.
ReducedGraph build_reduction(const Graph& g, int l);

/// {"orig":[...],"prime":[...],"gadget":{"u-v":[ids...]}}
nlohmann::ordered_json role_map_json(const ReducedGraph& r);

/// Rebuilds the labelling from H and its role map, checking that H really
/// is H(G,l) for the encoded G and l.
ReducedGraph reduced_graph_from_roles(const Graph& h, const nlohmann::json& roles);

/// The order used to certify c(H) >= 3lm + l*cut.value: the closure of the
/// generating arcs, together with those arcs.
struct Claim1Poset {
    Poset poset;
    std::vector<Direction> arcs;
};

/// Side 0 of the cut plays X, side 1 plays Y; each chain is taken in
/// ascending vertex order. When one side is empty the two arcs linking the
/// chains are omitted.
Claim1Poset build_claim1_poset(const Graph& g, const Cut& cut, int l);

struct HasseReport {
    int checked = 0;
    std::vector<Direction> violations;
    bool ok() const { return violations.empty(); }
};

/// Checks that every arc with exactly one endpoint in `gadget_vertices` is a
/// cover relation of p.
HasseReport hasse_cross_check(const Poset& p, std::span<const Direction> arcs, const BitRow& gadget_vertices);
HasseReport hasse_cross_check(const Poset& p, std::span<const Direction> arcs, const ReducedGraph& r);

/// Checks every listed arc, regardless of endpoints.
HasseReport hasse_check_all(const Poset& p, std::span<const Direction> arcs);

}  // namespace aog
