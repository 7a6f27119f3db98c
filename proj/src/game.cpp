#include "aog/game.hpp"

#include <cstdio>
#include <functional>

#include "aog/error.hpp"

namespace aog {

const char* to_string(EdgeState s) {
    switch (s) {
        case EdgeState::open: return "open";
        case EdgeState::queried: return "queried";
        case EdgeState::forced: return "forced";
    }
    return "?";
}

GameState::GameState(std::shared_ptr<const Graph> graph)
    : graph_(std::move(graph)), oriented_(graph_->m(), 0), reach_(graph_->n()) {
    for (int v = 0; v < graph_->n(); ++v) reach_.set(v, v);
}

std::optional<Direction> GameState::oriented(int edge_id) const {
    const Edge& e = graph_->edge(edge_id);
    switch (oriented_[edge_id]) {
        case 1: return Direction{e.u, e.v};
        case -1: return Direction{e.v, e.u};
        default: return std::nullopt;
    }
}

int GameState::oriented_count() const {
    int c = 0;
    for (auto o : oriented_) c += o != 0;
    return c;
}

void GameState::add_arc(int from, int to) {
    if (reach_.test(from, to)) return;
    const BitRow succ = reach_.row(to);
    for (int u = 0; u < graph_->n(); ++u)
        if (reach_.test(u, from)) reach_.row(u) |= succ;
}

bool GameState::is_legal(Edge e, Direction d) const {
    auto id = graph_->edge_id(e.u, e.v);
    if (!id || oriented_[*id] != 0) return false;
    if (Edge(d.from, d.to) != e) return false;
    return !reach_.test(d.to, d.from);
}

GameState GameState::apply_answer(Edge e, Direction d) const {
    auto id = graph_->edge_id(e.u, e.v);
    if (!id) throw IllegalMove("{" + std::to_string(e.u) + "," + std::to_string(e.v) + "} is not an edge");
    if (oriented_[*id] != 0)
        throw IllegalMove("edge {" + std::to_string(e.u) + "," + std::to_string(e.v) + "} already queried");
    if (Edge(d.from, d.to) != e) throw IllegalMove("direction does not match the queried edge");
    if (reach_.test(d.to, d.from))
        throw IllegalMove("orienting (" + std::to_string(d.from) + "," + std::to_string(d.to) +
                          ") closes a directed cycle");
    GameState next = *this;
    next.oriented_[*id] = d.from == e.u ? 1 : -1;
    next.add_arc(d.from, d.to);
    ++next.queries_;
    return next;
}

EdgeStatus GameState::status(int edge_id) const {
    if (auto d = oriented(edge_id)) return {EdgeState::queried, d};
    const Edge& e = graph_->edge(edge_id);
    if (reach_.test(e.u, e.v)) return {EdgeState::forced, Direction{e.u, e.v}};
    if (reach_.test(e.v, e.u)) return {EdgeState::forced, Direction{e.v, e.u}};
    return {EdgeState::open, std::nullopt};
}

EdgeStatus GameState::edge_status(Edge e) const {
    auto id = graph_->edge_id(e.u, e.v);
    if (!id) throw IllegalMove("{" + std::to_string(e.u) + "," + std::to_string(e.v) + "} is not an edge");
    return status(*id);
}

bool GameState::is_terminal() const {
    for (const Edge& e : graph_->edges())
        if (!comparable(e.u, e.v)) return false;
    return true;
}

std::vector<int> GameState::open_edges() const {
    std::vector<int> out;
    for (int id = 0; id < graph_->m(); ++id) {
        const Edge& e = graph_->edge(id);
        if (!comparable(e.u, e.v)) out.push_back(id);
    }
    return out;
}

int GameState::newly_forced(Edge e, Direction d) const {
    if (reach_.test(d.from, d.to)) return 0;
    const BitRow& succ = reach_.row(d.to);
    int count = 0;
    for (int x = 0; x < graph_->n(); ++x) {
        if (!reach_.test(x, d.from)) continue;
        BitRow fresh = graph_->neighbors(x) & succ;
        fresh.for_each([&](int y) {
            if (!reach_.test(x, y)) ++count;
        });
    }
    // The queried edge itself is answered, not forced.
    return count - (graph_->adjacent(e.u, e.v) ? 1 : 0);
}

std::uint64_t extension_count(const GameState& s) {
    std::vector<int> free_edges;
    for (int id = 0; id < s.graph().m(); ++id)
        if (!s.oriented(id)) free_edges.push_back(id);
    if (static_cast<int>(free_edges.size()) > kExtensionGuard)
        throw GuardExceeded("extension_count limited to 20 unqueried edges");

    // Forced edges have a single legal direction, open edges branch.
    std::function<std::uint64_t(const GameState&, std::size_t)> walk = [&](const GameState& st,
                                                                          std::size_t i) -> std::uint64_t {
        while (i < free_edges.size() && st.status(free_edges[i]).state == EdgeState::forced) ++i;
        if (i == free_edges.size()) return 1;
        const Edge& e = st.graph().edge(free_edges[i]);
        return walk(st.apply_answer(e, {e.u, e.v}), i + 1) + walk(st.apply_answer(e, {e.v, e.u}), i + 1);
    };
    return walk(s, 0);
}

// ------------------------------------------------------------------- matches

Transcript play_match(std::shared_ptr<const Graph> g, AlgyStrategy& algy, StrategistStrategy& strategist,
                      MatchOptions options) {
    Transcript t;
    t.graph = g;
    t.algy = algy.name();
    t.strategist = strategist.name();
    GameState s(g);
    while (!(options.stop_at_terminal && s.is_terminal())) {
        std::optional<Edge> q;
        try {
            q = algy.next_query(s);
        } catch (const IllegalMove& ex) {
            t.abort_reason = std::string("algy: ") + ex.what();
            break;
        }
        if (!q) break;
        auto id = g->edge_id(q->u, q->v);
        if (!id) {
            t.abort_reason = "algy queried non-edge {" + std::to_string(q->u) + "," + std::to_string(q->v) + "}";
            break;
        }
        EdgeStatus st = s.status(*id);
        if (st.state == EdgeState::queried) {
            t.abort_reason = "algy repeated query {" + std::to_string(q->u) + "," + std::to_string(q->v) + "}";
            break;
        }
        Direction d;
        try {
            d = strategist.answer(s, *q);
        } catch (const IllegalMove& ex) {
            t.abort_reason = std::string("strategist: ") + ex.what();
            break;
        }
        if (!s.is_legal(*q, d)) {
            t.abort_reason = "strategist answered (" + std::to_string(d.from) + "," + std::to_string(d.to) +
                             ") illegally for {" + std::to_string(q->u) + "," + std::to_string(q->v) + "}";
            break;
        }
        s = s.apply_answer(*q, d);
        t.moves.push_back({*q, d, st.state == EdgeState::forced});
    }
    t.total = static_cast<int>(t.moves.size());
    return t;
}

GameState replay(const Transcript& t) {
    GameState s(t.graph);
    for (const Move& mv : t.moves) {
        EdgeStatus st = s.edge_status(mv.edge);
        if ((st.state == EdgeState::forced) != mv.forced)
            throw IllegalMove("was-forced flag disagrees with the replayed state");
        s = s.apply_answer(mv.edge, mv.dir);
    }
    if (t.total != static_cast<int>(t.moves.size())) throw IllegalMove("transcript total disagrees with its moves");
    return s;
}

std::string hex64(std::uint64_t v) {
    char buf[19];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

nlohmann::ordered_json to_json(const Transcript& t) {
    nlohmann::ordered_json j;
    j["graph"] = serialize_graph(*t.graph);
    auto moves = nlohmann::ordered_json::array();
    for (const Move& mv : t.moves) {
        nlohmann::ordered_json m;
        m["edge"] = {mv.edge.u, mv.edge.v};
        m["dir"] = {mv.dir.from, mv.dir.to};
        m["forced"] = mv.forced;
        moves.push_back(std::move(m));
    }
    j["moves"] = std::move(moves);
    j["total"] = t.total;
    nlohmann::ordered_json meta;
    meta["algy"] = t.algy;
    meta["strategist"] = t.strategist;
    if (t.seed) meta["seed"] = *t.seed;
    meta["graph_hash"] = hex64(graph_hash(*t.graph));
    if (t.abort_reason) meta["abort"] = *t.abort_reason;
    j["meta"] = std::move(meta);
    return j;
}

Transcript transcript_from_json(const nlohmann::json& j) {
    Transcript t;
    try {
        t.graph = std::make_shared<const Graph>(parse_graph(j.at("graph").get<std::string>()));
        for (const auto& m : j.at("moves")) {
            Move mv;
            mv.edge = Edge(m.at("edge").at(0).get<int>(), m.at("edge").at(1).get<int>());
            mv.dir = {m.at("dir").at(0).get<int>(), m.at("dir").at(1).get<int>()};
            mv.forced = m.at("forced").get<bool>();
            t.moves.push_back(mv);
        }
        t.total = j.at("total").get<int>();
        if (j.contains("meta")) {
            const auto& meta = j["meta"];
            t.algy = meta.value("algy", "");
            t.strategist = meta.value("strategist", "");
            if (meta.contains("seed")) t.seed = meta["seed"].get<std::uint64_t>();
            if (meta.contains("abort")) t.abort_reason = meta["abort"].get<std::string>();
        }
    } catch (const nlohmann::json::exception& ex) {
        throw InvalidInput(std::string("malformed transcript: ") + ex.what());
    }
    return t;
}

}  // namespace aog
