// Command-line front end: gen, solve, play, simulate, bounds, reduce, serve.

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "aog/algy.hpp"
#include "aog/bounds.hpp"
#include "aog/error.hpp"
#include "aog/http_api.hpp"
#include "aog/random.hpp"
#include "aog/reduction.hpp"
#include "aog/sandwich.hpp"
#include "aog/solver.hpp"
#include "aog/strategist.hpp"

using namespace aog;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitGuard = 3;
constexpr int kExitIllegal = 4;

std::string read_text(const std::string& path) {
    std::stringstream buf;
    if (path == "-") {
        buf << std::cin.rdbuf();
    } else {
        std::ifstream in(path);
        if (!in) throw InvalidInput("cannot read " + path);
        buf << in.rdbuf();
    }
    return buf.str();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot write " + path);
    out << text;
}

std::shared_ptr<const Graph> load_graph(const std::string& path) {
    return std::make_shared<const Graph>(parse_graph(read_text(path)));
}

std::vector<int> parse_parts(const std::string& text) {
    std::vector<int> out;
    std::stringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        try {
            out.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            throw InvalidInput("bad part list: " + text);
        }
    }
    return out;
}

GeneratorKind parse_kind(const std::string& s) {
    static const std::map<std::string, GeneratorKind> kinds{
        {"complete", GeneratorKind::complete}, {"multipartite", GeneratorKind::complete_multipartite},
        {"turan", GeneratorKind::turan},       {"path", GeneratorKind::path},
        {"cycle", GeneratorKind::cycle},       {"star", GeneratorKind::star},
        {"gnp", GeneratorKind::gnp},           {"empty", GeneratorKind::empty}};
    auto it = kinds.find(s);
    if (it == kinds.end()) throw InvalidInput("unknown graph kind " + s);
    return it->second;
}

bool has_seed(const std::string& desc) { return desc.find("seed=") != std::string::npos; }

// Descriptors without an explicit seed draw one from the master seed, on
// separate streams for Algy and Strategist.
AlgyDescriptor seeded_algy(const std::string& text, std::optional<std::uint64_t> master) {
    AlgyDescriptor d = parse_algy_descriptor(text);
    if (master && !has_seed(text)) d.seed = derive_seed(*master, stream_id("algy"));
    return d;
}

StrategistDescriptor seeded_strategist(const std::string& text, std::optional<std::uint64_t> master) {
    StrategistDescriptor d = parse_strategist_descriptor(text);
    if (master && !has_seed(text)) d.seed = derive_seed(*master, stream_id("strategist"));
    return d;
}

struct MatchOutcome {
    Transcript transcript;
    std::optional<int> round1, round2;
};

MatchOutcome run_match(const std::shared_ptr<const Graph>& g, const AlgyDescriptor& a, const StrategistDescriptor& s,
                       const ReducedGraph* labels, std::optional<std::uint64_t> seed) {
    MatchOutcome out;
    auto strategist = make_strategist(s, g);
    if (a.kind == AlgyKind::two_round) {
        const double p = a.p ? *a.p : two_round_probability(g->n(), a.C);
        TwoRoundResult r = run_two_round(g, *strategist, p, a.seed);
        out.transcript = std::move(r.transcript);
        out.transcript.algy = describe(a);
        out.round1 = r.round1;
        out.round2 = r.round2;
    } else {
        auto algy = make_algy(a, g, labels);
        out.transcript = play_match(g, *algy, *strategist);
    }
    out.transcript.seed = seed;
    return out;
}

ordered_json outcome_json(const MatchOutcome& m) {
    ordered_json j = to_json(m.transcript);
    if (m.round1) {
        j["round1"] = *m.round1;
        j["round2"] = *m.round2;
    }
    return j;
}

struct Options {
    std::string graph = "-";
    std::string algy = "exhaustive";
    std::string strategist = "greedy";
    std::optional<std::uint64_t> seed;
    int repeat = 0;
    int threads = 0;
    int l = 1;
    std::string cut = "auto";
    double C = kDefaultBoundC;
    bool json = false;
    int port = 8080;
    std::string roles;
    // gen
    std::string kind = "complete";
    int n = 0;
    std::string parts;
    double p = 0.5;
    // solve
    bool canonical = false;
    int max_edges = 16;
    int max_vertices = 7;
    // play
    std::string role = "algy";
    // reduce
    std::string out;
    bool check = false;
    // serve
    std::string persist;
    bool reject_busy = false;
};

int cmd_gen(const Options& o) {
    GeneratorSpec spec;
    spec.kind = parse_kind(o.kind);
    spec.n = o.n;
    if (!o.parts.empty()) spec.parts = parse_parts(o.parts);
    spec.p = o.p;
    spec.seed = o.seed.value_or(0);
    std::string text = serialize_graph(generate(spec));
    if (o.json)
        std::cout << ordered_json{{"graph", text}}.dump() << "\n";
    else
        std::cout << text << "\n";
    return 0;
}

int cmd_solve(const Options& o) {
    SolverOptions so;
    so.canonicalize = o.canonical;
    so.max_edges = o.max_edges;
    so.max_vertices = o.max_vertices;
    so.threads = std::max(1, o.threads);
    auto g = load_graph(o.graph);
    Solver solver(g, so);
    std::cout << to_json(solver.solve()).dump() << "\n";
    return 0;
}

int cmd_bounds(const Options& o) {
    auto g = load_graph(o.graph);
    ordered_json j = to_json(bound_report(*g, o.C));
    if (g->n() >= 2) {
        ApproxEstimate a = approx_estimate(*g, o.C);
        j["approx"] = {{"lower", a.lower}, {"upper", a.upper}, {"ratio", a.ratio}};
    }
    std::cout << j.dump() << "\n";
    return 0;
}

std::optional<ReducedGraph> load_labels(const Options& o, const Graph& g) {
    if (o.roles.empty()) return std::nullopt;
    return reduced_graph_from_roles(g, json::parse(read_text(o.roles)));
}

int cmd_simulate(const Options& o) {
    auto g = load_graph(o.graph);
    auto labels = load_labels(o, *g);
    const ReducedGraph* lp = labels ? &*labels : nullptr;

    if (o.repeat <= 0) {
        MatchOutcome m = run_match(g, seeded_algy(o.algy, o.seed), seeded_strategist(o.strategist, o.seed), lp, o.seed);
        std::cout << outcome_json(m).dump() << "\n";
        return m.transcript.ok() ? 0 : kExitIllegal;
    }

    // Repetition i uses master seed derive_seed(seed, i); outputs keep index order.
    const std::uint64_t master = o.seed.value_or(0);
    std::vector<MatchOutcome> results(o.repeat);
    std::vector<std::string> errors(o.repeat);
    std::atomic<int> next{0};
    auto worker = [&]() {
        for (int i = next++; i < o.repeat; i = next++) {
            const std::uint64_t s = derive_seed(master, static_cast<std::uint64_t>(i));
            try {
                results[i] = run_match(g, seeded_algy(o.algy, s), seeded_strategist(o.strategist, s), lp, s);
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    const int threads = std::clamp(o.threads > 0 ? o.threads : static_cast<int>(std::thread::hardware_concurrency()),
                                   1, o.repeat);
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
        if (!e.empty()) throw IllegalMove(e);

    bool all_ok = true;
    for (const auto& r : results) all_ok = all_ok && r.transcript.ok();
    if (o.json) {
        auto arr = ordered_json::array();
        for (const auto& r : results) arr.push_back(outcome_json(r));
        std::cout << arr.dump() << "\n";
    } else {
        auto totals = ordered_json::array();
        long sum = 0;
        int lo = results[0].transcript.total, hi = lo;
        for (const auto& r : results) {
            totals.push_back(r.transcript.total);
            sum += r.transcript.total;
            lo = std::min(lo, r.transcript.total);
            hi = std::max(hi, r.transcript.total);
        }
        ordered_json j;
        j["graph_hash"] = hex64(graph_hash(*g));
        j["algy"] = o.algy;
        j["strategist"] = o.strategist;
        j["seed"] = master;
        j["repeat"] = o.repeat;
        j["edges"] = g->m();
        j["min"] = lo;
        j["max"] = hi;
        j["mean"] = static_cast<double>(sum) / o.repeat;
        j["totals"] = std::move(totals);
        j["all_ok"] = all_ok;
        std::cout << j.dump() << "\n";
    }
    return all_ok ? 0 : kExitIllegal;
}

void print_board(const GameState& s) {
    const Graph& g = s.graph();
    for (int id = 0; id < g.m(); ++id) {
        const Edge& e = g.edge(id);
        EdgeStatus st = s.status(id);
        std::cout << "  " << e.u << "-" << e.v << " " << to_string(st.state);
        if (st.dir) std::cout << " " << st.dir->from << "->" << st.dir->to;
        std::cout << "\n";
    }
    std::cout << "queries: " << s.queries() << (s.is_terminal() ? " (game over)" : "") << "\n";
}

// Human against an engine on stdin/stdout. As Algy type "u v" to query
// {u,v}; as Strategist type "x y" to answer with x -> y.
int cmd_play(const Options& o, std::istream& in) {
    auto g = load_graph(o.graph);
    const bool human_algy = o.role == "algy";
    if (!human_algy && o.role != "strategist") throw InvalidInput("--role must be algy or strategist");
    std::unique_ptr<AlgyStrategy> algy;
    std::unique_ptr<StrategistStrategy> strategist;
    if (human_algy)
        strategist = make_strategist(seeded_strategist(o.strategist, o.seed), g);
    else
        algy = make_algy(seeded_algy(o.algy, o.seed), g);

    Transcript t;
    t.graph = g;
    t.algy = human_algy ? "human" : algy->name();
    t.strategist = human_algy ? strategist->name() : "human";
    t.seed = o.seed;
    GameState s(g);
    if (!o.json) print_board(s);
    std::string line;
    while (!s.is_terminal()) {
        Edge e;
        if (human_algy) {
            if (!o.json) std::cout << "query> " << std::flush;
            if (!std::getline(in, line)) break;
            std::istringstream ls(line);
            int a, b;
            if (!(ls >> a >> b) || a == b || !g->edge_id(a, b)) {
                std::cout << "not an edge: " << line << "\n";
                continue;
            }
            e = Edge(a, b);
            if (s.edge_status(e).state == EdgeState::queried) {
                std::cout << "already queried\n";
                continue;
            }
        } else {
            auto q = algy->next_query(s);
            if (!q) break;
            e = *q;
            if (!o.json) std::cout << "Algy asks " << e.u << "-" << e.v << "\n";
        }
        Direction d;
        if (human_algy) {
            d = strategist->answer(s, e);
            if (!s.is_legal(e, d)) throw IllegalMove("engine Strategist answered illegally");
        } else {
            for (;;) {
                if (!o.json) std::cout << "answer> " << std::flush;
                if (!std::getline(in, line)) return kExitUsage;
                std::istringstream ls(line);
                if ((ls >> d.from >> d.to) && Edge(d.from, d.to) == e && s.is_legal(e, d)) break;
                std::cout << "illegal answer: " << line << "\n";
            }
        }
        const bool forced = s.edge_status(e).state == EdgeState::forced;
        s = s.apply_answer(e, d);
        t.moves.push_back({e, d, forced});
        if (!o.json) {
            std::cout << e.u << "-" << e.v << " oriented " << d.from << "->" << d.to << "\n";
            print_board(s);
        }
    }
    t.total = static_cast<int>(t.moves.size());
    if (o.json) std::cout << to_json(t).dump() << "\n";
    return 0;
}

Cut load_cut(const Options& o, const Graph& g) {
    if (o.cut == "auto") return max_cut(g);
    std::istringstream in(read_text(o.cut));
    Cut c;
    int side;
    while (in >> side) c.side.push_back(side);
    if (static_cast<int>(c.side.size()) != g.n()) throw InvalidInput("cut file must list one side per vertex");
    for (int v : c.side)
        if (v != 0 && v != 1) throw InvalidInput("cut sides must be 0 or 1");
    c.value = cut_value(g, c.side);
    return c;
}

int cmd_reduce(const Options& o) {
    auto g = load_graph(o.graph);
    ReducedGraph r = build_reduction(*g, o.l);
    Cut cut = load_cut(o, *g);
    Claim1Poset c = build_claim1_poset(*g, cut, o.l);
    HasseReport hasse = hasse_cross_check(c.poset, c.arcs, r);
    if (!o.out.empty()) {
        write_text(o.out + ".el", serialize_graph(*r.h) + "\n");
        write_text(o.out + ".roles.json", role_map_json(r).dump() + "\n");
        write_text(o.out + ".poset", serialize_poset(c.poset) + "\n");
    }
    ordered_json j;
    j["n"] = g->n();
    j["m"] = g->m();
    j["l"] = o.l;
    j["v_h"] = r.h->n();
    j["e_h"] = r.h->m();
    j["cut"] = cut.value;
    j["lower"] = 3L * o.l * g->m() + static_cast<long>(o.l) * cut.value;
    j["hasse_checked"] = hasse.checked;
    j["hasse_violations"] = hasse.violations.size();
    if (o.check) {
        SolverOptions so;
        so.threads = std::max(1, o.threads);
        j["sandwich"] = to_json(sandwich_check(*g, o.l, within_solver_guard(*r.h, so), so));
    }
    if (!o.out.empty()) j["files"] = {o.out + ".el", o.out + ".roles.json", o.out + ".poset"};
    std::cout << j.dump() << "\n";
    return hasse.ok() ? 0 : 1;
}

int cmd_serve(const Options& o) {
    ServiceOptions so;
    if (!o.persist.empty()) so.persist_dir = o.persist;
    so.reject_when_busy = o.reject_busy;
    so.seed = o.seed.value_or(std::random_device{}());
    GameService service(so);
    HttpApi api(service);
    if (!api.bind("0.0.0.0", o.port)) throw InvalidInput("cannot bind port " + std::to_string(o.port));
    std::cerr << "listening on port " << o.port << "\n";
    api.listen();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acyclic orientation game workbench"};
    app.require_subcommand(1);
    Options o;

    auto graph_opt = [&](CLI::App* c) { c->add_option("--graph", o.graph, "edge-list file, - for stdin"); };
    auto seed_opt = [&](CLI::App* c) { c->add_option("--seed", o.seed, "master seed"); };
    auto json_opt = [&](CLI::App* c) { c->add_flag("--json", o.json, "machine-readable output"); };

    auto* gen = app.add_subcommand("gen", "write a generated graph as an edge list");
    gen->add_option("--kind", o.kind, "complete|multipartite|turan|path|cycle|star|gnp|empty");
    gen->add_option("--n", o.n, "vertices (star: leaves)");
    gen->add_option("--parts", o.parts, "part sizes, e.g. 2,2,1");
    gen->add_option("--p", o.p, "edge probability for gnp");
    seed_opt(gen);
    json_opt(gen);

    auto* solve = app.add_subcommand("solve", "exact game value c(G)");
    graph_opt(solve);
    solve->add_flag("--canonical", o.canonical, "canonical memo keys (complete graphs)");
    solve->add_option("--threads", o.threads, "root-move worker threads");
    solve->add_option("--max-edges", o.max_edges, "search guard on e(G)");
    solve->add_option("--max-vertices", o.max_vertices, "search guard on n");
    json_opt(solve);

    auto* play = app.add_subcommand("play", "play one side against an engine on stdin");
    graph_opt(play);
    play->add_option("--role", o.role, "algy|strategist");
    play->add_option("--algy", o.algy, "engine Algy when you play Strategist");
    play->add_option("--strategist", o.strategist, "engine Strategist when you play Algy");
    seed_opt(play);
    json_opt(play);

    auto* sim = app.add_subcommand("simulate", "engine against engine");
    graph_opt(sim);
    sim->add_option("--algy", o.algy, "Algy descriptor");
    sim->add_option("--strategist", o.strategist, "Strategist descriptor");
    sim->add_option("--repeat", o.repeat, "number of seeded repetitions");
    sim->add_option("--threads", o.threads, "worker threads for --repeat");
    sim->add_option("--roles", o.roles, "role map JSON, needed by claim2");
    seed_opt(sim);
    json_opt(sim);

    auto* bounds = app.add_subcommand("bounds", "closed-form bounds on c(G)");
    graph_opt(bounds);
    bounds->add_option("--C", o.C, "constant of the e log n / (C n) bound");
    json_opt(bounds);

    auto* reduce = app.add_subcommand("reduce", "build H(G,l) with its Claim-1 poset");
    graph_opt(reduce);
    reduce->add_option("--l", o.l, "gadget size")->check(CLI::PositiveNumber);
    reduce->add_option("--cut", o.cut, "auto (maximum cut) or a file of 0/1 sides");
    reduce->add_option("--out", o.out, "prefix for PREFIX.el, PREFIX.roles.json, PREFIX.poset");
    reduce->add_flag("--check", o.check, "play the sandwich matches (exact value when feasible)");
    reduce->add_option("--threads", o.threads, "solver threads for --check");
    json_opt(reduce);

    auto* serve = app.add_subcommand("serve", "HTTP game API");
    serve->add_option("--port", o.port, "TCP port");
    serve->add_option("--persist", o.persist, "directory for session files");
    serve->add_flag("--reject-busy", o.reject_busy, "answer 429 instead of waiting on a busy session");
    seed_opt(serve);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (*gen) return cmd_gen(o);
        if (*solve) return cmd_solve(o);
        if (*play) return cmd_play(o, std::cin);
        if (*sim) return cmd_simulate(o);
        if (*bounds) return cmd_bounds(o);
        if (*reduce) return cmd_reduce(o);
        if (*serve) return cmd_serve(o);
    } catch (const GuardExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitGuard;
    } catch (const IllegalMove& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIllegal;
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
