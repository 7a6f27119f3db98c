#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aog/game.hpp"
#include "aog/poset.hpp"
#include "aog/solver.hpp"

namespace aog {

enum class StrategistKind {
    linear_order,  ///< answers along a fixed vertex permutation
    random_order,  ///< linear order drawn from a seed
    greedy,        ///< minimize newly forced edges (heuristic)
    turan_h,       ///< U1 -> rest, V2 -> V1 \ U1
    tripartite,    ///< X -> Y; per-z commitment on first z-query
    cut_poset,     ///< answers by a fixed poset covering every edge
    optimal,       ///< solver-backed
};

struct StrategistDescriptor {
    StrategistKind kind = StrategistKind::greedy;
    std::vector<int> order;           ///< linear_order: vertices from lowest to highest
    std::vector<int> u1;              ///< turan_h
    std::vector<int> parts;           ///< tripartite part sizes (X, Y, Z)
    std::optional<Poset> poset;       ///< cut_poset
    std::string poset_file;           ///< cut_poset, loaded when poset is empty
    std::uint64_t seed = 0;           ///< random_order
};

/// Parses "order:2,0,1", "order:random[:seed=S]", "greedy",
/// "turanh:u1=0,1", "tripartite:2,2,1", "cutposet:<file>", "optimal".
StrategistDescriptor parse_strategist_descriptor(std::string_view text);
std::string describe(const StrategistDescriptor& d);

/// Throws InvalidInput when the descriptor does not fit the graph, and
/// GuardExceeded for an optimal strategist on a graph beyond the solver.
std::unique_ptr<StrategistStrategy> make_strategist(const StrategistDescriptor& d,
                                                    std::shared_ptr<const Graph> g);

/// One reply of `strategy` to the query e in state s.
inline Direction adversary_answer(StrategistStrategy& strategy, const GameState& s, Edge e) {
    return strategy.answer(s, e);
}

/// Rank per vertex for the Turan+H construction: U1 lowest, then V2, then
/// V1 \ U1. Throws InvalidInput if g is not T2(n) plus a bipartite graph
/// inside one part with U1 as one of its sides.
std::vector<int> turan_h_ranks(const Graph& g, const std::vector<int>& u1);

}  // namespace aog
