#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aog/game.hpp"
#include "aog/reduction.hpp"

namespace aog {

enum class SortMethod { binary_insertion, merge_insertion };

/// Worst-case comparisons: binary insertion sum_{i=2..n} ceil(log2 i);
/// merge insertion (Ford-Johnson) sum_{k=1..n} ceil(log2(3k/4)).
long sorting_comparison_count(int n, SortMethod method);

enum class AlgyKind { exhaustive, greedy, sorting, two_round, claim2, optimal };

// Analysis constants of the two-round upper bound. The guarantee needs
// C^2 > 2(1+delta)/delta^2 with delta from the triangle removal lemma and
// w = floor(delta n / 2) witness pairs x_i < y_i, each with a set Z_i of
// at least delta n common middle vertices. Those constants are
// non-constructive, so only p (or C) is a runtime input.
inline constexpr double kDefaultTwoRoundC = 2.0;

struct AlgyDescriptor {
    AlgyKind kind = AlgyKind::exhaustive;
    SortMethod method = SortMethod::binary_insertion;  ///< sorting, claim2
    std::optional<double> p;                           ///< two_round; derived from C when empty
    double C = kDefaultTwoRoundC;                      ///< two_round
    std::uint64_t seed = 0;                            ///< two_round
};

/// Parses "exhaustive", "greedy", "sort:binary", "sort:fj",
/// "tworound[:p=P|:C=C][:seed=S]", "claim2:binary", "claim2:fj", "optimal".
AlgyDescriptor parse_algy_descriptor(std::string_view text);
std::string describe(const AlgyDescriptor& d);

/// p = min(1, C sqrt(ln n / n)).
double two_round_probability(int n, double C);

/// claim2 needs the reduction labelling; sorting needs a complete graph;
/// optimal needs a graph inside the solver guard.
std::unique_ptr<AlgyStrategy> make_algy(const AlgyDescriptor& d, std::shared_ptr<const Graph> g,
                                        const ReducedGraph* labels = nullptr);

/// Round-one sample D: every edge independently with probability p.
/// Returned as sorted edge ids.
std::vector<int> sample_first_round(const Graph& g, double p, std::uint64_t seed);

struct TwoRoundResult {
    Transcript transcript;
    int round1 = 0;        ///< |D|
    int round2 = 0;        ///< e(H), edges still open after round one
    std::vector<int> h;    ///< ids of H's edges
};

/// Queries all of D (edges forced mid-round are still asked), then all of
/// the edges left open after round one. total = |D| + e(H).
TwoRoundResult run_two_round(std::shared_ptr<const Graph> g, StrategistStrategy& strategist, double p,
                             std::uint64_t seed);

/// Sorts `vertices` against the closure of s. Returns the next pair that
/// has to be asked, or nullopt once the order is known. `vertices` must be
/// pairwise adjacent.
std::optional<Edge> next_sorting_query(const GameState& s, const std::vector<int>& vertices, SortMethod method);

/// Queries issued by a claim2 match in phase one (sorting the clique on V).
struct Claim2Accounting {
    int sort_queries = 0;
    int cut_value = 0;  ///< e(G[X,Y]) for X = {x : (x, x')}
};

/// Splits a finished claim2 transcript into the terms of its upper bound.
Claim2Accounting claim2_accounting(const Transcript& t, const ReducedGraph& r);

/// sort_queries + n + 3l e(G) + l e(G[X,Y]).
long claim2_bound(const Claim2Accounting& a, const ReducedGraph& r);

}  // namespace aog
