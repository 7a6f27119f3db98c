#include "aog/sandwich.hpp"

#include <algorithm>

#include "aog/algy.hpp"
#include "aog/error.hpp"
#include "aog/strategist.hpp"

namespace aog {

SandwichReport sandwich_check(const Graph& g, int l, bool solve, const SolverOptions& options) {
    ReducedGraph r = build_reduction(g, l);
    if (solve && !within_solver_guard(*r.h, options))
        throw GuardExceeded("H(G,l) with n=" + std::to_string(r.h->n()) + ", m=" + std::to_string(r.h->m()) +
                            " is outside the solver guard");
    const Cut cut = max_cut(g);
    SandwichReport rep;
    rep.n = g.n();
    rep.m = g.m();
    rep.l = l;
    rep.t = cut.value;
    rep.lower = 3L * l * g.m() + static_cast<long>(l) * cut.value;
    rep.sort_n = g.n() == 0 ? 0 : sorting_comparison_count(g.n(), SortMethod::merge_insertion);
    rep.upper = rep.lower + rep.sort_n + g.n();

    StrategistDescriptor poset;
    poset.kind = StrategistKind::cut_poset;
    poset.poset = build_claim1_poset(g, cut, l).poset;
    const bool optimal = within_solver_guard(*r.h, options);

    std::vector<std::string> algys{"exhaustive", "greedy", "tworound:seed=1", "claim2:binary", "claim2:fj"};
    if (optimal) algys.push_back("optimal");
    rep.adversary_min = r.h->m();
    for (const auto& name : algys) {
        auto a = make_algy(parse_algy_descriptor(name), r.h, &r);
        auto s = make_strategist(poset, r.h);
        Transcript t = play_match(r.h, *a, *s);
        if (!t.ok()) throw IllegalMove(*t.abort_reason);
        rep.matches.push_back({name, "cutposet", t.total});
        rep.adversary_min = std::min(rep.adversary_min, t.total);
    }

    std::vector<StrategistDescriptor> strategists{parse_strategist_descriptor("greedy"),
                                                  parse_strategist_descriptor("order:random:seed=1"),
                                                  parse_strategist_descriptor("order:random:seed=2")};
    if (optimal) strategists.push_back(parse_strategist_descriptor("optimal"));
    for (const auto& d : strategists) {
        auto a = make_algy(parse_algy_descriptor("claim2:fj"), r.h, &r);
        auto s = make_strategist(d, r.h);
        Transcript t = play_match(r.h, *a, *s);
        if (!t.ok()) throw IllegalMove(*t.abort_reason);
        rep.matches.push_back({"claim2:fj", describe(d), t.total});
        rep.claim2_max = std::max(rep.claim2_max, t.total);
    }

    if (solve) rep.exact = Solver(r.h, options).solve().value;

    rep.ok = rep.adversary_min >= rep.lower && rep.claim2_max <= rep.upper;
    if (rep.exact) rep.ok = rep.ok && rep.lower <= *rep.exact && *rep.exact <= rep.upper;
    return rep;
}

nlohmann::ordered_json to_json(const SandwichReport& r) {
    nlohmann::ordered_json j;
    j["n"] = r.n;
    j["m"] = r.m;
    j["l"] = r.l;
    j["t"] = r.t;
    j["lower"] = r.lower;
    j["upper"] = r.upper;
    if (r.exact)
        j["exact"] = *r.exact;
    else
        j["exact"] = nullptr;
    j["adversary_min"] = r.adversary_min;
    j["claim2_max"] = r.claim2_max;
    auto matches = nlohmann::ordered_json::array();
    for (const auto& mt : r.matches) matches.push_back({{"algy", mt.algy}, {"strategist", mt.strategist}, {"total", mt.total}});
    j["matches"] = std::move(matches);
    j["ok"] = r.ok;
    return j;
}

}  // namespace aog
