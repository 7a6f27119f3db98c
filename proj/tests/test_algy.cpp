#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"

#include "aog/algy.hpp"
#include "aog/error.hpp"
#include "aog/random.hpp"
#include "aog/reduction.hpp"
#include "aog/solver.hpp"
#include "aog/strategist.hpp"

using namespace aog;

namespace {

std::shared_ptr<const Graph> share(Graph g) { return std::make_shared<const Graph>(std::move(g)); }

std::unique_ptr<StrategistStrategy> strategist(const std::string& text, const std::shared_ptr<const Graph>& g) {
    return make_strategist(parse_strategist_descriptor(text), g);
}

std::string order_descriptor(const std::vector<int>& perm) {
    std::string s = "order:";
    for (std::size_t i = 0; i < perm.size(); ++i) s += (i ? "," : "") + std::to_string(perm[i]);
    return s;
}

StrategistDescriptor cut_poset_descriptor(const ReducedGraph& r) {
    StrategistDescriptor d;
    d.kind = StrategistKind::cut_poset;
    d.poset = build_claim1_poset(r.source, max_cut(r.source), r.l).poset;
    return d;
}

}  // namespace

TEST_SUITE("algy-strategies") {

TEST_CASE("descriptors") {
    CHECK(parse_algy_descriptor("exhaustive").kind == AlgyKind::exhaustive);
    CHECK(parse_algy_descriptor("sort:fj").method == SortMethod::merge_insertion);
    AlgyDescriptor t = parse_algy_descriptor("tworound:p=0.3:seed=7");
    CHECK(t.kind == AlgyKind::two_round);
    CHECK(*t.p == doctest::Approx(0.3));
    CHECK(t.seed == 7);
    CHECK(describe(t) == "tworound:p=0.3:seed=7");
    CHECK(parse_algy_descriptor("tworound:C=3").C == doctest::Approx(3.0));
    CHECK_FALSE(parse_algy_descriptor("tworound").p);
    CHECK(describe(parse_algy_descriptor("claim2:binary")) == "claim2:binary");
    for (const char* bad : {"", "sort", "sort:quick", "tworound:p=0", "tworound:p=1.5", "tworound:C=-1",
                            "tworound:q=1", "tworound:seed=x", "greedy:1", "claim2"})
        CHECK_THROWS_AS(parse_algy_descriptor(bad), InvalidInput);

    auto c4 = share(cycle_graph(4));
    CHECK_THROWS_AS(make_algy(parse_algy_descriptor("sort:binary"), c4), InvalidInput);
    CHECK_THROWS_AS(make_algy(parse_algy_descriptor("claim2:binary"), c4), InvalidInput);
    CHECK_THROWS_AS(make_algy(parse_algy_descriptor("optimal"), share(complete_graph(9))), GuardExceeded);
}

TEST_CASE("exhaustive on K3") {
    auto k3 = share(complete_graph(3));
    auto a = make_algy(parse_algy_descriptor("exhaustive"), k3);
    GameState s(k3);
    CHECK(*a->next_query(s) == Edge(0, 1));
    s = s.apply_answer({0, 1}, {0, 1});
    CHECK(*a->next_query(s) == Edge(0, 2));
    s = s.apply_answer({0, 2}, {2, 0});
    CHECK_FALSE(a->next_query(s));
}

TEST_CASE("greedy Algy prefers the edge with the most comparable endpoints") {
    auto g = share(path_graph(4));
    auto a = make_algy(parse_algy_descriptor("greedy"), g);
    GameState s(g);
    CHECK(*a->next_query(s) == Edge(0, 1));
    s = s.apply_answer({1, 2}, {1, 2});
    // {0,1}: 0 + 1, {2,3}: 1 + 0; tie goes lexicographic.
    CHECK(*a->next_query(s) == Edge(0, 1));
}

TEST_CASE("sorting comparison counts") {
    const long fj[] = {0, 1, 3, 5, 7};
    for (int n = 1; n <= 5; ++n) CHECK(sorting_comparison_count(n, SortMethod::merge_insertion) == fj[n - 1]);
    CHECK(sorting_comparison_count(4, SortMethod::binary_insertion) == 5);
    CHECK(sorting_comparison_count(12, SortMethod::merge_insertion) == 30);
    CHECK_THROWS_AS(sorting_comparison_count(0, SortMethod::binary_insertion), InvalidInput);
    // Clique values from the solver.
    for (int n = 1; n <= 5; ++n)
        CHECK(sorting_comparison_count(n, SortMethod::merge_insertion) == game_value(complete_graph(n)).value);
}

TEST_CASE("sorting strategies realize their worst case over all input orders") {
    for (int n = 1; n <= 7; ++n) {
        auto g = share(complete_graph(n));
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        long worst_binary = 0, worst_fj = 0;
        do {
            for (SortMethod m : {SortMethod::binary_insertion, SortMethod::merge_insertion}) {
                AlgyDescriptor d;
                d.kind = AlgyKind::sorting;
                d.method = m;
                auto a = make_algy(d, g);
                auto s = strategist(order_descriptor(perm), g);
                Transcript t = play_match(g, *a, *s);
                REQUIRE(t.ok());
                CHECK(replay(t).is_terminal());
                for (const Move& mv : t.moves) CHECK_FALSE(mv.forced);
                long& worst = m == SortMethod::binary_insertion ? worst_binary : worst_fj;
                worst = std::max<long>(worst, t.total);
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        CHECK(worst_binary == sorting_comparison_count(n, SortMethod::binary_insertion));
        CHECK(worst_fj == sorting_comparison_count(n, SortMethod::merge_insertion));
    }
}

TEST_CASE("sorting strategies against the optimal Strategist") {
    // Clique positions are symmetric, so a canonical-key solver can answer for K7.
    struct CanonicalOptimal : StrategistStrategy {
        explicit CanonicalOptimal(std::shared_ptr<const Graph> g) : solver(std::move(g), options()) {}
        static SolverOptions options() {
            SolverOptions o;
            o.canonicalize = true;
            return o;
        }
        std::string name() const override { return "optimal"; }
        Direction answer(const GameState& s, Edge e) override { return solver.optimal_answer(s, e); }
        Solver solver;
    };
    for (int n = 1; n <= 7; ++n) {
        auto g = share(complete_graph(n));
        for (SortMethod m : {SortMethod::binary_insertion, SortMethod::merge_insertion}) {
            AlgyDescriptor d;
            d.kind = AlgyKind::sorting;
            d.method = m;
            auto a = make_algy(d, g);
            CanonicalOptimal s(g);
            Transcript t = play_match(g, *a, s);
            REQUIRE(t.ok());
            CHECK(t.total == sorting_comparison_count(n, m));
        }
    }
}

TEST_CASE("sample_first_round") {
    Graph g = gnp_graph(30, 0.5, 1);
    CHECK(sample_first_round(g, 0.0, 3).empty());
    std::vector<int> all(g.m());
    std::iota(all.begin(), all.end(), 0);
    CHECK(sample_first_round(g, 1.0, 3) == all);
    CHECK(sample_first_round(g, 0.4, 3) == sample_first_round(g, 0.4, 3));
    CHECK_THROWS_AS(sample_first_round(g, 1.2, 3), InvalidInput);

    Graph big = gnp_graph(100, 0.5, 17);
    const double p = two_round_probability(100, 2.0);
    CHECK(p == doctest::Approx(2 * std::sqrt(std::log(100.0) / 100)));
    const double mean = p * big.m(), sigma = std::sqrt(big.m() * p * (1 - p));
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        auto d = sample_first_round(big, p, seed);
        CHECK(std::abs(static_cast<double>(d.size()) - mean) <= 4 * sigma);
    }
    CHECK(two_round_probability(4, 100.0) == 1.0);
}

TEST_CASE("two rounds with p = 1 query everything in round one") {
    SplitMix64 rng(6);
    for (int trial = 0; trial < 30; ++trial) {
        auto g = share(gnp_graph(9, 0.5, rng()));
        auto s = strategist("greedy", g);
        TwoRoundResult r = run_two_round(g, *s, 1.0, trial);
        CHECK(r.round1 == g->m());
        CHECK(r.round2 == 0);
        CHECK(r.transcript.total == g->m());
    }
}

TEST_CASE("two rounds on K3 with D = {01, 12}") {
    auto k3 = share(complete_graph(3));
    const std::vector<int> wanted{0, 2};  // ids of {0,1} and {1,2}
    std::uint64_t seed = 0;
    while (sample_first_round(*k3, 0.5, seed) != wanted) ++seed;
    auto s = strategist("order:0,1,2", k3);
    TwoRoundResult r = run_two_round(k3, *s, 0.5, seed);
    CHECK(r.round1 == 2);
    CHECK(r.round2 == 0);
    CHECK(r.transcript.total == 2);
}

TEST_CASE("after round one, H is exactly the open edges") {
    SplitMix64 rng(10);
    for (int trial = 0; trial < 100; ++trial) {
        auto g = share(gnp_graph(12, 0.5, rng()));
        auto s = strategist(trial % 2 ? "greedy" : "order:random:seed=" + std::to_string(trial), g);
        const double p = 0.1 + 0.8 * rng.uniform();
        TwoRoundResult r = run_two_round(g, *s, p, trial);
        GameState after_one(g);
        for (int i = 0; i < r.round1; ++i) after_one = after_one.apply_answer(r.transcript.moves[i].edge,
                                                                               r.transcript.moves[i].dir);
        std::vector<bool> in_h(g->m(), false);
        for (int id : r.h) in_h[id] = true;
        for (int id = 0; id < g->m(); ++id) CHECK(after_one.status(id).determined() == !in_h[id]);
        CHECK(r.transcript.total == r.round1 + r.round2);
        CHECK(r.transcript.total <= g->m());
        CHECK(replay(r.transcript).is_terminal());
    }
}

TEST_CASE("two rounds on T2(20) against the greedy adversary") {
    auto g = share(turan_graph(20));
    double sum = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto s = strategist("greedy", g);
        TwoRoundResult r = run_two_round(g, *s, 0.3, seed);
        CHECK(r.transcript.total <= 100);
        sum += r.transcript.total;
    }
    MESSAGE("T2(20), p=0.3, greedy adversary: mean total " << sum / 50);
}

TEST_CASE("every Algy finishes within e(G) against every Strategist") {
    SplitMix64 rng(12);
    for (int trial = 0; trial < 30; ++trial) {
        auto g = share(gnp_graph(6, 0.5, rng()));
        for (const char* a : {"exhaustive", "greedy", "tworound:seed=3", "tworound:p=0.2:seed=1", "optimal"})
            for (const char* s : {"greedy", "order:random:seed=8", "optimal"}) {
                auto algy = make_algy(parse_algy_descriptor(a), g);
                auto strat = strategist(s, g);
                Transcript t = play_match(g, *algy, *strat);
                REQUIRE(t.ok());
                CHECK(t.total <= g->m());
                CHECK(replay(t).is_terminal());
            }
    }
}

TEST_CASE("claim2 examples") {
    ReducedGraph k2 = build_reduction(complete_graph(2), 1);
    REQUIRE(k2.h->m() == 7);
    for (const char* s : {"greedy", "order:random:seed=1", "order:random:seed=2", "optimal"}) {
        auto a = make_algy(parse_algy_descriptor("claim2:binary"), k2.h, &k2);
        auto strat = strategist(s, k2.h);
        Transcript t = play_match(k2.h, *a, *strat);
        REQUIRE(t.ok());
        CHECK(t.total <= 7);
    }
    auto a = make_algy(parse_algy_descriptor("claim2:binary"), k2.h, &k2);
    auto poset = make_strategist(cut_poset_descriptor(k2), k2.h);
    CHECK(play_match(k2.h, *a, *poset).total >= 4);

    ReducedGraph p3 = build_reduction(path_graph(3), 1);
    auto b = make_algy(parse_algy_descriptor("claim2:binary"), p3.h, &p3);
    auto greedy = strategist("greedy", p3.h);
    Transcript t = play_match(p3.h, *b, *greedy);
    REQUIRE(t.ok());
    CHECK(t.total >= 8);
    CHECK(t.total <= 13);
}

TEST_CASE("claim2 obeys its accounting bound") {
    SplitMix64 rng(15);
    for (int trial = 0; trial < 60; ++trial) {
        Graph g = gnp_graph(2 + static_cast<int>(rng.below(4)), 0.6, rng());
        const int l = 1 + static_cast<int>(rng.below(3));
        ReducedGraph r = build_reduction(g, l);
        for (const char* method : {"claim2:binary", "claim2:fj"}) {
            std::vector<std::unique_ptr<StrategistStrategy>> strats;
            strats.push_back(strategist("greedy", r.h));
            strats.push_back(strategist("order:random:seed=" + std::to_string(trial), r.h));
            strats.push_back(make_strategist(cut_poset_descriptor(r), r.h));
            for (auto& s : strats) {
                auto a = make_algy(parse_algy_descriptor(method), r.h, &r);
                Transcript t = play_match(r.h, *a, *s);
                REQUIRE(t.ok());
                CHECK(replay(t).is_terminal());
                Claim2Accounting acc = claim2_accounting(t, r);
                CHECK(t.total <= claim2_bound(acc, r));
                CHECK(acc.sort_queries <= sorting_comparison_count(std::max(1, g.n()), parse_algy_descriptor(method).method));
            }
        }
    }
}

}  // TEST_SUITE
