#pragma once

#include <cstdint>
#include <memory>
#include <optional>

#include "json.hpp"

#include "aog/game.hpp"
#include "aog/graph.hpp"

namespace aog {

struct SolverOptions {
    /// Search guard: a graph is accepted if e(G) <= max_edges or
    /// n <= max_vertices. Graphs above 16 vertices are always refused.
    int max_edges = 16;
    int max_vertices = 7;
    /// Key the memo on a canonical relabeling of the closure. Only valid
    /// when every vertex permutation is an automorphism (complete graphs).
    bool canonicalize = false;
    /// Root-move parallelism over a shared, locked memo table.
    int threads = 1;
};

inline constexpr int kSolverHardVertexLimit = 16;

bool within_solver_guard(const Graph& g, const SolverOptions& options = {});

struct SolveResult {
    int value = 0;
    std::optional<Edge> best_first_query;  ///< empty for edgeless graphs
    std::uint64_t nodes = 0;
    std::uint64_t memo_hits = 0;
};

nlohmann::ordered_json to_json(const SolveResult& r);

/// Exact minimax search for the acyclic orientation game.
///
/// The remaining value of a position depends only on its reachability
/// closure, so the memo is keyed on the packed closure matrix. Algy's move
/// list is restricted to open edges; querying a determined edge costs one
/// and reveals nothing. Ties go to the lexicographically smallest edge, and
/// for answers to the direction whose source has the lower index.
///
/// A Solver keeps its memo between calls, so policy queries on positions of
/// one game are cheap after the first.
class Solver {
public:
    /// Throws GuardExceeded if g is outside the guard, InvalidInput if
    /// canonicalize is requested for a non-complete graph.
    explicit Solver(std::shared_ptr<const Graph> g, SolverOptions options = {});
    ~Solver();
    Solver(Solver&&) noexcept;
    Solver& operator=(Solver&&) noexcept;

    const Graph& graph() const;

    /// c(G) and the search statistics of this call.
    SolveResult solve();

    /// Optimal remaining number of queries from s.
    int value(const GameState& s);

    /// Lexicographically smallest open edge achieving the minimax value.
    /// Throws InvalidInput on a terminal state.
    Edge optimal_move(const GameState& s);

    /// Direction maximizing the remaining value; forced edges get their only
    /// legal direction. Throws IllegalMove on queried edges.
    Direction optimal_answer(const GameState& s, Edge e);

    std::uint64_t nodes() const;
    std::uint64_t memo_hits() const;
    std::size_t memo_size() const;

    struct Impl;  // search backend, keyed by memo width

private:
    std::unique_ptr<Impl> impl_;
};

/// Convenience wrapper: builds a Solver and solves from the empty state.
SolveResult game_value(const Graph& g, SolverOptions options = {});

}  // namespace aog
