#include "aog/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "aog/error.hpp"

namespace aog {

namespace {

double thm51_value(int n, int m, double C) {
    if (n < 2) return 0.0;
    return m * std::log2(static_cast<double>(n)) / (C * n);
}

}  // namespace

BoundReport bound_report(const Graph& graph, double C) {
    if (!(C > 0)) throw InvalidInput("C must be positive");
    const Graph g = strip_isolated(graph);
    BoundReport r;
    r.n = g.n();
    r.m = g.m();
    r.C = C;
    r.n_half = (r.n + 1) / 2;
    if (r.m <= kAcyclicCountGuard) {
        try {
            r.info = ceil_log2(count_acyclic_orientations(g));
        } catch (const GuardExceeded&) {
        }
    }
    if (r.n > 0) {
        // a(G) >= (d+1)!/2^n with d the minimum degree of the peeled core.
        const int d = min_degree_core(g).min_degree;
        BigInt f = 1;
        for (int i = 2; i <= d + 1; ++i) f *= i;
        r.degeneracy = std::max(0, ceil_log2(f) - r.n);
    }
    r.thm51 = thm51_value(r.n, r.m, C);
    r.edge_upper = r.m;
    const double n = r.n;
    r.jiang_upper = r.n < 2 ? n * n / 4 : n * n / 4 + 2 * std::pow(n, 1.75) * std::pow(std::log(n), 0.25);
    if (r.n > 0) r.moon_moser_triangles = std::max(0.0, r.m / (3.0 * n) * (4.0 * r.m - n * n));
    r.best_lower = std::max({r.n_half, r.info.value_or(0), r.degeneracy});
    r.best_upper = std::min(r.edge_upper, static_cast<int>(std::floor(r.jiang_upper)));
    r.thm51_exceeds_upper = r.thm51 > r.best_upper;
    r.thm51_below_other_lower = r.best_lower > r.thm51;
    return r;
}

nlohmann::ordered_json to_json(const BoundReport& r) {
    nlohmann::ordered_json j;
    j["n"] = r.n;
    j["m"] = r.m;
    j["C"] = r.C;
    j["n_half"] = r.n_half;
    if (r.info)
        j["info"] = *r.info;
    else
        j["info"] = nullptr;
    j["degeneracy"] = r.degeneracy;
    j["thm51"] = r.thm51;
    j["edge_upper"] = r.edge_upper;
    j["jiang_upper"] = r.jiang_upper;
    j["moon_moser_triangles"] = r.moon_moser_triangles;
    j["best_lower"] = r.best_lower;
    j["best_upper"] = r.best_upper;
    j["thm51_exceeds_upper"] = r.thm51_exceeds_upper;
    j["thm51_below_other_lower"] = r.thm51_below_other_lower;
    return j;
}

ApproxEstimate approx_estimate(const Graph& g, double C) {
    if (!(C > 0)) throw InvalidInput("C must be positive");
    if (g.n() < 2) throw InvalidInput("approximation needs n >= 2");
    ApproxEstimate a;
    a.lower = thm51_value(g.n(), g.m(), C);
    a.upper = g.m();
    a.ratio = C * g.n() / std::log2(static_cast<double>(g.n()));
    return a;
}

}  // namespace aog
