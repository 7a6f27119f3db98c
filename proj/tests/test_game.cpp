#include <functional>

#include "doctest.h"

#include "aog/algy.hpp"
#include "aog/error.hpp"
#include "aog/game.hpp"
#include "aog/random.hpp"
#include "aog/strategist.hpp"
#include "oracles.hpp"

using namespace aog;

namespace {

std::shared_ptr<const Graph> share(Graph g) { return std::make_shared<const Graph>(std::move(g)); }

GameState play(const std::shared_ptr<const Graph>& g, std::initializer_list<Direction> answers) {
    GameState s(g);
    for (const Direction& d : answers) s = s.apply_answer(Edge(d.from, d.to), d);
    return s;
}

// Checks every edge of s against the orientations in `all` that agree with
// the queried arcs. Returns the number of compatible orientations.
std::size_t check_against_oracle(const GameState& s, const std::vector<std::uint32_t>& all) {
    const Graph& g = s.graph();
    std::uint32_t qmask = 0, dirs = 0;
    for (int id = 0; id < g.m(); ++id) {
        if (auto d = s.oriented(id)) {
            qmask |= 1U << id;
            if (d->from == g.edge(id).u) dirs |= 1U << id;
        }
    }
    std::vector<std::uint32_t> compatible;
    for (auto o : all)
        if (((o ^ dirs) & qmask) == 0) compatible.push_back(o);
    for (int id = 0; id < g.m(); ++id) {
        if (qmask >> id & 1U) continue;
        bool up = false, down = false;
        for (auto o : compatible) (o >> id & 1U ? up : down) = true;
        EdgeStatus st = s.status(id);
        const Edge& e = g.edge(id);
        if (up && down) {
            CHECK(st.state == EdgeState::open);
        } else {
            REQUIRE(st.state == EdgeState::forced);
            CHECK(*st.dir == (up ? Direction{e.u, e.v} : Direction{e.v, e.u}));
        }
    }
    CHECK(s.is_terminal() == (compatible.size() == 1));
    return compatible.size();
}

}  // namespace

TEST_SUITE("game-engine") {

TEST_CASE("apply_answer and edge_status examples") {
    auto k3 = share(complete_graph(3));
    GameState s = play(k3, {{0, 1}});
    CHECK(s.reaches(0, 1));
    CHECK(s.open_edges().size() == 2);
    CHECK(s.queries() == 1);

    GameState path = play(k3, {{0, 1}, {1, 2}});
    EdgeStatus st = path.edge_status({0, 2});
    CHECK(st.state == EdgeState::forced);
    CHECK(*st.dir == Direction{0, 2});
    CHECK(path.is_terminal());

    auto c4 = share(cycle_graph(4));
    GameState c = play(c4, {{0, 1}, {1, 2}, {2, 3}});
    CHECK(c.edge_status({0, 3}).state == EdgeState::forced);
    CHECK(*c.edge_status({0, 3}).dir == Direction{0, 3});
    CHECK(check_against_oracle(c, oracle::acyclic_orientations(*c4)) == 1);

    auto star = share(star_graph(3));
    GameState st3 = play(star, {{0, 1}, {0, 2}});
    CHECK(st3.edge_status({0, 3}).state == EdgeState::open);
    CHECK(check_against_oracle(st3, oracle::acyclic_orientations(*star)) == 2);

    CHECK(GameState(k3).edge_status({1, 2}).state == EdgeState::open);
    CHECK_THROWS_AS(GameState(star).edge_status({1, 2}), IllegalMove);
}

TEST_CASE("apply_answer rejects illegal moves and keeps the input") {
    auto k3 = share(complete_graph(3));
    GameState s = play(k3, {{0, 1}, {1, 2}});
    CHECK_THROWS_AS(s.apply_answer({0, 2}, {2, 0}), IllegalMove);
    CHECK_THROWS_AS(s.apply_answer({0, 1}, {0, 1}), IllegalMove);
    CHECK(s.is_legal({0, 2}, {0, 2}));
    CHECK_FALSE(s.is_legal({0, 2}, {2, 0}));

    GameState before(k3);
    GameState after = before.apply_answer({0, 1}, {1, 0});
    CHECK_FALSE(before.reaches(1, 0));
    CHECK(after.reaches(1, 0));
    CHECK(before.queries() == 0);
}

TEST_CASE("is_terminal examples") {
    CHECK(GameState(share(Graph(4))).is_terminal());
    auto k3 = share(complete_graph(3));
    CHECK(play(k3, {{0, 1}, {1, 2}}).is_terminal());
    GameState v = play(k3, {{0, 1}, {2, 1}});
    CHECK_FALSE(v.is_terminal());
    CHECK(extension_count(v) == 2);
}

TEST_CASE("extension_count examples") {
    auto k3 = share(complete_graph(3));
    CHECK(extension_count(GameState(k3)) == 6);
    CHECK(extension_count(play(k3, {{0, 1}})) == 3);
    CHECK(extension_count(play(k3, {{0, 1}, {1, 2}})) == 1);
    CHECK_THROWS_AS(extension_count(GameState(share(complete_graph(7)))), GuardExceeded);
}

TEST_CASE("closure agrees with enumeration on every state of every graph with n <= 5") {
    long states = 0;
    for (int n = 1; n <= 5; ++n) {
        for (const Graph& graph : oracle::all_graphs(n)) {
            auto g = share(graph);
            const auto all = oracle::acyclic_orientations(*g);
            // Every acyclic partial orientation, built edge by edge.
            std::function<void(const GameState&, int)> walk = [&](const GameState& s, int i) {
                if (i == g->m()) {
                    std::size_t count = check_against_oracle(s, all);
                    if (g->m() - s.queries() <= 8) CHECK(extension_count(s) == count);
                    ++states;
                    return;
                }
                walk(s, i + 1);
                const Edge& e = g->edge(i);
                for (Direction d : {Direction{e.u, e.v}, Direction{e.v, e.u}})
                    if (s.is_legal(e, d)) walk(s.apply_answer(e, d), i + 1);
            };
            walk(GameState(g), 0);
        }
    }
    MESSAGE("states checked: " << states);
}

TEST_CASE("closure agrees with enumeration on 1000 random states with n <= 7") {
    SplitMix64 rng(2024);
    int checked = 0;
    while (checked < 1000) {
        auto g = share(gnp_graph(5 + static_cast<int>(rng.below(3)), 0.5, rng()));
        if (g->m() > 16 || g->m() == 0) continue;
        const auto all = oracle::acyclic_orientations(*g);
        for (int rep = 0; rep < 25 && checked < 1000; ++rep, ++checked) {
            GameState s(g);
            int steps = static_cast<int>(rng.below(g->m() + 1));
            for (int k = 0; k < steps; ++k) {
                int id = static_cast<int>(rng.below(g->m()));
                if (s.oriented(id)) continue;
                const Edge& e = g->edge(id);
                Direction d = rng.below(2) ? Direction{e.u, e.v} : Direction{e.v, e.u};
                if (!s.is_legal(e, d)) d = {d.to, d.from};
                s = s.apply_answer(e, d);
            }
            check_against_oracle(s, all);
            for (int a = 0; a < g->n(); ++a)
                for (int b = 0; b < g->n(); ++b)
                    if (a != b) CHECK_FALSE((s.reaches(a, b) && s.reaches(b, a)));
        }
    }
}

TEST_CASE("materializing forced edges changes nothing") {
    SplitMix64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        auto g = share(gnp_graph(7, 0.6, rng()));
        GameState s(g);
        for (int k = 0; k < 4 && !s.is_terminal(); ++k) {
            auto open = s.open_edges();
            const Edge& e = g->edge(open[rng.below(open.size())]);
            s = s.apply_answer(e, rng.below(2) ? Direction{e.u, e.v} : Direction{e.v, e.u});
        }
        GameState full = s;
        for (int id = 0; id < g->m(); ++id) {
            EdgeStatus st = s.status(id);
            if (st.state == EdgeState::forced) full = full.apply_answer(g->edge(id), *st.dir);
        }
        CHECK(full.reach() == s.reach());
        for (int id = 0; id < g->m(); ++id) {
            CHECK(full.status(id).dir == s.status(id).dir);
            CHECK(full.status(id).determined() == s.status(id).determined());
        }
    }
}

namespace {

struct FixedAlgy : AlgyStrategy {
    std::vector<Edge> script;
    std::size_t next = 0;
    std::string name() const override { return "fixed"; }
    std::optional<Edge> next_query(const GameState&) override {
        if (next == script.size()) return std::nullopt;
        return script[next++];
    }
};

struct Contrarian : StrategistStrategy {
    std::string name() const override { return "contrarian"; }
    Direction answer(const GameState&, Edge e) override { return {e.v, e.u}; }
};

}  // namespace

TEST_CASE("play_match examples") {
    auto k2 = share(complete_graph(2));
    auto exhaustive = make_algy(parse_algy_descriptor("exhaustive"), k2);
    auto linear = make_strategist(parse_strategist_descriptor("order:1,0"), k2);
    Transcript t = play_match(k2, *exhaustive, *linear);
    CHECK(t.ok());
    CHECK(t.total == 1);
    CHECK(t.moves[0].dir == Direction{1, 0});

    auto k3 = share(complete_graph(3));
    auto a = make_algy(parse_algy_descriptor("exhaustive"), k3);
    auto lin = make_strategist(parse_strategist_descriptor("order:0,1,2"), k3);
    // Lexicographic order asks {0,1},{0,2} first, leaving 1 and 2 incomparable.
    CHECK(play_match(k3, *a, *lin).total == 3);
    // Asking along the path instead forces {0,2}.
    FixedAlgy path;
    path.script = {{0, 1}, {1, 2}, {0, 2}};
    Transcript pt = play_match(k3, path, *lin);
    CHECK(pt.total == 2);

    auto b = make_algy(parse_algy_descriptor("exhaustive"), k3);
    auto greedy = make_strategist(parse_strategist_descriptor("greedy"), k3);
    Transcript g3 = play_match(k3, *b, *greedy);
    CHECK(g3.total == 3);
    CHECK(g3.moves[1].dir == Direction{0, 2});
}


TEST_CASE("play_match records forced queries and aborts on rule violations") {
    auto k3 = share(complete_graph(3));
    auto linear = make_strategist(parse_strategist_descriptor("order:0,1,2"), k3);

    FixedAlgy wasteful;
    wasteful.script = {{0, 1}, {1, 2}, {0, 2}};
    Transcript t = play_match(k3, wasteful, *linear, {.stop_at_terminal = false});
    CHECK(t.ok());
    CHECK(t.total == 3);
    CHECK(t.moves[2].forced);
    CHECK(t.moves[2].dir == Direction{0, 2});

    FixedAlgy repeat;
    repeat.script = {{0, 1}, {0, 1}};
    Transcript r = play_match(k3, repeat, *linear);
    CHECK_FALSE(r.ok());
    CHECK(r.total == 1);

    auto p3 = share(path_graph(3));
    FixedAlgy nonedge;
    nonedge.script = {{0, 2}};
    auto lp = make_strategist(parse_strategist_descriptor("order:0,1,2"), p3);
    CHECK_FALSE(play_match(p3, nonedge, *lp).ok());

    // Contrarian answers (1,0), (2,1), (2,0): the last one is forced and legal.
    FixedAlgy order;
    order.script = {{0, 1}, {1, 2}, {0, 2}};
    Contrarian c;
    Transcript x = play_match(k3, order, c, {.stop_at_terminal = false});
    CHECK(x.ok());
    CHECK(x.total == 3);

    FixedAlgy order3;
    order3.script = {{0, 1}, {1, 2}, {0, 2}};
    struct Loop : StrategistStrategy {
        std::string name() const override { return "loop"; }
        Direction answer(const GameState&, Edge e) override {
            if (e == Edge(0, 2)) return {2, 0};
            return {e.u, e.v};
        }
    } loop;
    Transcript bad = play_match(k3, order3, loop, {.stop_at_terminal = false});
    CHECK_FALSE(bad.ok());
    CHECK(bad.total == 2);
}

TEST_CASE("transcripts replay and round-trip through JSON") {
    SplitMix64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        auto g = share(gnp_graph(8, 0.5, rng()));
        auto algy = make_algy(parse_algy_descriptor(trial % 2 ? "greedy" : "exhaustive"), g);
        auto strat = make_strategist(parse_strategist_descriptor("order:random:seed=" + std::to_string(trial)), g);
        Transcript t = play_match(g, *algy, *strat);
        REQUIRE(t.ok());
        CHECK(t.total <= g->m());
        GameState end = replay(t);
        CHECK(end.is_terminal());
        Transcript back = transcript_from_json(to_json(t));
        CHECK(back.total == t.total);
        CHECK(*back.graph == *g);
        CHECK(to_json(back).dump() == to_json(t).dump());
        CHECK(replay(back).reach() == end.reach());
    }
    auto k2 = share(complete_graph(2));
    auto a = make_algy(parse_algy_descriptor("exhaustive"), k2);
    auto s = make_strategist(parse_strategist_descriptor("greedy"), k2);
    auto j = to_json(play_match(k2, *a, *s));
    CHECK(j.dump().rfind(R"({"graph":"2 1\n0 1","moves":[{"edge":[0,1],"dir":[0,1],"forced":false}],"total":1,)", 0) == 0);
}

}  // TEST_SUITE
