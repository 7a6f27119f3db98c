#include "aog/service.hpp"

#include <fstream>
#include <sstream>

#include "aog/algy.hpp"
#include "aog/bounds.hpp"
#include "aog/game.hpp"
#include "aog/random.hpp"
#include "aog/solver.hpp"
#include "aog/strategist.hpp"

namespace aog {

using nlohmann::json;
using nlohmann::ordered_json;

struct GameService::Session {
    std::string id;
    std::mutex mu;
    std::string graph_text;
    std::shared_ptr<const Graph> graph;
    bool human_algy = true;
    std::string opponent;
    std::unique_ptr<AlgyStrategy> algy;              // human is Strategist
    std::unique_ptr<StrategistStrategy> strategist;  // human is Algy
    GameState state;
    Transcript transcript;
    std::optional<Edge> pending;  // engine query awaiting the human's answer
    ordered_json bounds;
    std::unique_ptr<Solver> solver;  // hints, built on first use

    Session(std::shared_ptr<const Graph> g) : graph(g), state(g) {}
};

namespace {

Graph graph_from_json(const json& spec) {
    if (spec.is_string()) return parse_graph(spec.get<std::string>());
    if (!spec.is_object()) throw InvalidInput("graph must be an edge-list string or a generator object");
    static const std::unordered_map<std::string, GeneratorKind> kinds{
        {"complete", GeneratorKind::complete}, {"multipartite", GeneratorKind::complete_multipartite},
        {"turan", GeneratorKind::turan},       {"path", GeneratorKind::path},
        {"cycle", GeneratorKind::cycle},       {"star", GeneratorKind::star},
        {"gnp", GeneratorKind::gnp},           {"empty", GeneratorKind::empty}};
    GeneratorSpec g;
    auto it = kinds.find(spec.value("kind", ""));
    if (it == kinds.end()) throw InvalidInput("unknown graph kind");
    g.kind = it->second;
    g.n = spec.value("n", 0);
    g.parts = spec.value("parts", std::vector<int>{});
    g.p = spec.value("p", 0.5);
    g.seed = spec.value("seed", std::uint64_t{0});
    return generate(g);
}

Edge edge_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
        throw ApiError(400, "expected a vertex pair [u, v]");
    int a = j[0].get<int>(), b = j[1].get<int>();
    if (a == b) throw ApiError(400, "a loop is not an edge");
    return Edge(a, b);
}

ordered_json pair_json(int a, int b) { return ordered_json::array({a, b}); }

ordered_json view_of(const GameService::Session& s) {
    ordered_json v;
    auto edges = ordered_json::array();
    for (int id = 0; id < s.graph->m(); ++id) {
        const Edge& e = s.graph->edge(id);
        EdgeStatus st = s.state.status(id);
        ordered_json item;
        item["e"] = pair_json(e.u, e.v);
        item["status"] = to_string(st.state);
        if (st.dir) item["dir"] = pair_json(st.dir->from, st.dir->to);
        edges.push_back(std::move(item));
    }
    v["edges"] = std::move(edges);
    v["total"] = s.transcript.total;
    v["terminal"] = s.state.is_terminal();
    v["bounds"] = s.bounds;
    v["role"] = s.human_algy ? "algy" : "strategist";
    v["opponent"] = s.opponent;
    if (s.pending)
        v["pending"] = pair_json(s.pending->u, s.pending->v);
    else
        v["pending"] = nullptr;
    return v;
}

void record(GameService::Session& s, Edge e, Direction d) {
    const bool forced = s.state.edge_status(e).state == EdgeState::forced;
    s.state = s.state.apply_answer(e, d);
    s.transcript.moves.push_back({e, d, forced});
    s.transcript.total = static_cast<int>(s.transcript.moves.size());
}

// Engine Algy asks its next question, if the game is still on.
void advance_engine_algy(GameService::Session& s) {
    s.pending.reset();
    if (s.state.is_terminal()) return;
    std::optional<Edge> q = s.algy->next_query(s.state);
    if (!q) return;
    EdgeStatus st = s.state.edge_status(*q);
    if (st.state == EdgeState::queried) throw ApiError(500, "engine Algy repeated a query");
    s.pending = q;
}

template <class F>
auto translate(F&& f) {
    try {
        return f();
    } catch (const ApiError&) {
        throw;
    } catch (const GuardExceeded& e) {
        throw ApiError(400, e.what());
    } catch (const IllegalMove& e) {
        throw ApiError(409, e.what());
    } catch (const InvalidInput& e) {
        throw ApiError(400, e.what());
    } catch (const json::exception& e) {
        throw ApiError(400, std::string("malformed request: ") + e.what());
    }
}

std::shared_ptr<GameService::Session> build_session(const std::string& id, const std::string& graph_text,
                                                    const std::string& role, const std::string& opponent) {
    auto g = std::make_shared<const Graph>(parse_graph(graph_text));
    auto s = std::make_shared<GameService::Session>(g);
    s->id = id;
    s->graph_text = graph_text;
    s->opponent = opponent;
    if (role == "algy") {
        s->human_algy = true;
        s->strategist = make_strategist(parse_strategist_descriptor(opponent), g);
    } else if (role == "strategist") {
        s->human_algy = false;
        AlgyDescriptor d = parse_algy_descriptor(opponent);
        if (d.kind == AlgyKind::claim2) throw InvalidInput("claim2 needs a reduction labelling; not offered here");
        s->algy = make_algy(d, g);
    } else {
        throw InvalidInput("role must be \"algy\" or \"strategist\"");
    }
    s->transcript.graph = g;
    s->transcript.algy = s->human_algy ? "human" : s->algy->name();
    s->transcript.strategist = s->human_algy ? s->strategist->name() : "human";
    s->bounds = to_json(bound_report(*g));
    return s;
}

}  // namespace

GameService::GameService(ServiceOptions options) : options_(std::move(options)) {
    if (options_.persist_dir) {
        std::filesystem::create_directories(*options_.persist_dir);
        load_persisted();
    }
}

GameService::~GameService() = default;

std::size_t GameService::session_count() const {
    std::shared_lock lock(mu_);
    return sessions_.size();
}

std::shared_ptr<GameService::Session> GameService::find(const std::string& id) const {
    std::shared_lock lock(mu_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) throw ApiError(404, "unknown session " + id);
    return it->second;
}

namespace {

std::unique_lock<std::mutex> lock_session(GameService::Session& s, bool reject_when_busy) {
    if (!reject_when_busy) return std::unique_lock(s.mu);
    std::unique_lock lock(s.mu, std::try_to_lock);
    if (!lock.owns_lock()) throw ApiError(429, "session busy");
    return lock;
}

}  // namespace

ordered_json GameService::create_session(const json& body) {
    return translate([&] {
        std::string graph_text = serialize_graph(graph_from_json(body.at("graph")));
        std::string role = body.value("role", "algy");
        std::string opponent = body.value("opponent", role == "algy" ? "greedy" : "exhaustive");
        std::string id;
        {
            std::unique_lock lock(mu_);
            do id = hex64(derive_seed(options_.seed, counter_++));
            while (sessions_.count(id));
        }
        auto s = build_session(id, graph_text, role, opponent);
        if (!s->human_algy) advance_engine_algy(*s);
        {
            std::unique_lock lock(mu_);
            sessions_.emplace(id, s);
        }
        persist(*s);
        ordered_json out;
        out["id"] = id;
        out["view"] = view_of(*s);
        return out;
    });
}

ordered_json GameService::view(const std::string& id) {
    auto s = find(id);
    auto lock = lock_session(*s, options_.reject_when_busy);
    return view_of(*s);
}

ordered_json GameService::query(const std::string& id, const json& body) {
    auto s = find(id);
    auto lock = lock_session(*s, options_.reject_when_busy);
    return translate([&] {
        if (!s->human_algy) throw ApiError(409, "this session's human plays Strategist; use answer");
        if (s->state.is_terminal()) throw ApiError(409, "game over");
        Edge e = edge_from_json(body.at("edge"));
        if (!s->graph->edge_id(e.u, e.v)) throw ApiError(400, "not an edge of the graph");
        if (s->state.edge_status(e).state == EdgeState::queried) throw ApiError(409, "already queried");
        Direction d = s->strategist->answer(s->state, e);
        const GameState before = s->state;
        if (!before.is_legal(e, d)) throw ApiError(500, "engine Strategist answered illegally");
        record(*s, e, d);
        auto newly = ordered_json::array();
        for (int id2 = 0; id2 < s->graph->m(); ++id2) {
            if (before.status(id2).state == EdgeState::open && s->state.status(id2).state == EdgeState::forced) {
                const Edge& f = s->graph->edge(id2);
                newly.push_back(pair_json(f.u, f.v));
            }
        }
        persist(*s);
        ordered_json out;
        out["dir"] = pair_json(d.from, d.to);
        out["newly_forced"] = std::move(newly);
        out["view"] = view_of(*s);
        return out;
    });
}

ordered_json GameService::answer(const std::string& id, const json& body) {
    auto s = find(id);
    auto lock = lock_session(*s, options_.reject_when_busy);
    return translate([&] {
        if (s->human_algy) throw ApiError(409, "this session's human plays Algy; use query");
        if (!s->pending) throw ApiError(409, "no pending query");
        const json& dj = body.at("dir");
        Edge as_edge = edge_from_json(dj);
        Direction d{dj[0].get<int>(), dj[1].get<int>()};
        const Edge e = *s->pending;
        if (as_edge != e) throw ApiError(400, "direction does not match the pending query");
        if (!s->state.is_legal(e, d)) {
            ordered_json extra;
            extra["forced"] = pair_json(d.to, d.from);
            throw ApiError(409, "orienting (" + std::to_string(d.from) + "," + std::to_string(d.to) +
                                    ") closes a directed cycle",
                           extra);
        }
        record(*s, e, d);
        advance_engine_algy(*s);
        persist(*s);
        ordered_json out;
        if (s->pending)
            out["next_query"] = pair_json(s->pending->u, s->pending->v);
        else
            out["next_query"] = nullptr;
        out["view"] = view_of(*s);
        return out;
    });
}

ordered_json GameService::hint(const std::string& id) {
    auto s = find(id);
    auto lock = lock_session(*s, options_.reject_when_busy);
    return translate([&] {
        ordered_json out;
        out["bounds"] = s->bounds;
        if (s->state.is_terminal()) {
            out["game_over"] = true;
            out["total"] = s->transcript.total;
            return out;
        }
        out["game_over"] = false;
        const bool exact = within_solver_guard(*s->graph);
        if (exact && !s->solver) s->solver = std::make_unique<Solver>(s->graph);
        out["source"] = exact ? "optimal" : "heuristic";
        if (s->human_algy) {
            Edge e;
            if (exact) {
                e = s->solver->optimal_move(s->state);
            } else {
                auto greedy = make_algy(parse_algy_descriptor("greedy"), s->graph);
                e = *greedy->next_query(s->state);
            }
            out["edge"] = pair_json(e.u, e.v);
        } else if (s->pending) {
            Direction d;
            if (exact) {
                d = s->solver->optimal_answer(s->state, *s->pending);
            } else {
                auto greedy = make_strategist(parse_strategist_descriptor("greedy"), s->graph);
                d = greedy->answer(s->state, *s->pending);
            }
            out["dir"] = pair_json(d.from, d.to);
        }
        if (exact) out["remaining"] = s->solver->value(s->state);
        int unqueried = s->graph->m() - s->state.oriented_count();
        if (unqueried <= kExtensionGuard)
            out["extensions"] = extension_count(s->state);
        else
            out["extensions"] = nullptr;
        return out;
    });
}

ordered_json GameService::transcript(const std::string& id) {
    auto s = find(id);
    auto lock = lock_session(*s, options_.reject_when_busy);
    return to_json(s->transcript);
}

void GameService::persist(const Session& s) const {
    if (!options_.persist_dir) return;
    ordered_json j;
    j["id"] = s.id;
    j["graph"] = s.graph_text;
    j["role"] = s.human_algy ? "algy" : "strategist";
    j["opponent"] = s.opponent;
    j["transcript"] = to_json(s.transcript);
    const auto path = *options_.persist_dir / (s.id + ".json");
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp);
        out << j.dump();
    }
    std::filesystem::rename(tmp, path);
}

void GameService::load_persisted() {
    for (const auto& entry : std::filesystem::directory_iterator(*options_.persist_dir)) {
        if (entry.path().extension() != ".json") continue;
        std::ifstream in(entry.path());
        std::stringstream buf;
        buf << in.rdbuf();
        json j = json::parse(buf.str());
        auto s = build_session(j.at("id").get<std::string>(), j.at("graph").get<std::string>(),
                               j.at("role").get<std::string>(), j.at("opponent").get<std::string>());
        // Replay through the engine side so adaptive opponents rebuild their state.
        Transcript t = transcript_from_json(j.at("transcript"));
        for (const Move& mv : t.moves) {
            if (s->human_algy) {
                Direction d = s->strategist->answer(s->state, mv.edge);
                if (d != mv.dir) throw InvalidInput("persisted session " + s->id + " disagrees with its opponent");
            } else {
                advance_engine_algy(*s);
                if (!s->pending || *s->pending != mv.edge)
                    throw InvalidInput("persisted session " + s->id + " disagrees with its opponent");
            }
            record(*s, mv.edge, mv.dir);
        }
        if (!s->human_algy) advance_engine_algy(*s);
        sessions_.emplace(s->id, s);
        ++counter_;
    }
}

}  // namespace aog
