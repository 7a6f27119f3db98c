#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "aog/graph.hpp"
#include "aog/reduction.hpp"
#include "aog/solver.hpp"

namespace aog {

struct SandwichMatch {
    std::string algy;
    std::string strategist;
    int total = 0;
};

/// Lower and upper bounds on c(H(G,l)) with the matches that probe them.
struct SandwichReport {
    int n = 0, m = 0, l = 0;
    int t = 0;                 ///< max cut of G
    long lower = 0;            ///< 3lm + lt
    long sort_n = 0;           ///< Ford-Johnson count for n, an upper bound on c(K_n)
    long upper = 0;            ///< lower + sort_n + n
    std::optional<int> exact;  ///< c(H) when solved
    /// Least total the cut-poset adversary allowed over all Algys.
    int adversary_min = 0;
    /// Largest claim2:fj total over all Strategists.
    int claim2_max = 0;
    std::vector<SandwichMatch> matches;
    bool ok = false;
};

/// Builds H(G,l) with a maximum cut, plays the cut-poset adversary against
/// every Algy and claim2 against every Strategist. With solve = true, also
/// computes c(H) exactly (throws GuardExceeded if H is beyond the guard).
SandwichReport sandwich_check(const Graph& g, int l, bool solve, const SolverOptions& options = {});

nlohmann::ordered_json to_json(const SandwichReport& r);

}  // namespace aog
