#pragma once

#include <optional>

#include "json.hpp"

#include "aog/graph.hpp"

namespace aog {

inline constexpr double kDefaultBoundC = 8.0;

/// Closed-form bounds on c(G). Computed on G with isolated vertices removed,
/// which leaves c(G) unchanged.
struct BoundReport {
    int n = 0;                       ///< vertices after stripping
    int m = 0;
    double C = kDefaultBoundC;
    int n_half = 0;                  ///< ceil(n/2)
    std::optional<int> info;         ///< ceil(log2 a(G)), when a(G) is within its guard
    int degeneracy = 0;              ///< max(0, ceil(log2((d+1)! / 2^n)))
    double thm51 = 0;                ///< e log2(n) / (C n)
    int edge_upper = 0;              ///< e(G)
    double jiang_upper = 0;          ///< n^2/4 + 2 n^(7/4) (ln n)^(1/4)
    double moon_moser_triangles = 0; ///< max(0, (m / 3n)(4m - n^2))
    int best_lower = 0;              ///< max of n_half, info, degeneracy
    int best_upper = 0;              ///< min of edge_upper, floor(jiang_upper)
    /// thm51 exceeds best_upper: C is certainly too small for this graph.
    bool thm51_exceeds_upper = false;
    /// best_lower exceeds thm51.
    bool thm51_below_other_lower = false;
};

/// Throws InvalidInput for C <= 0.
BoundReport bound_report(const Graph& g, double C = kDefaultBoundC);

nlohmann::ordered_json to_json(const BoundReport& r);

/// The O(n / log n) approximation: e log2(n) / (C n) <= c(G) <= e.
struct ApproxEstimate {
    double lower = 0;
    double upper = 0;
    double ratio = 0;  ///< C n / log2 n
};

/// Throws InvalidInput for C <= 0 or n < 2.
ApproxEstimate approx_estimate(const Graph& g, double C);

}  // namespace aog
