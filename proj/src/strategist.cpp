#include "aog/strategist.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "aog/error.hpp"
#include "aog/random.hpp"

namespace aog {

namespace {

std::vector<int> parse_int_list(std::string_view s) {
    std::vector<int> out;
    if (s.empty()) return out;
    std::string text(s);
    std::istringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        try {
            std::size_t used = 0;
            int v = std::stoi(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            out.push_back(v);
        } catch (const std::exception&) {
            throw InvalidInput("bad integer list: " + text);
        }
    }
    return out;
}

std::string join(const std::vector<int>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
    return out;
}

void require_unqueried(const GameState& s, Edge e) {
    if (s.edge_status(e).state == EdgeState::queried) throw IllegalMove("edge already queried");
}

/// Answers every edge from lower to higher rank. Ranks must differ on
/// every edge, which makes all answers consistent with one linear order.
class RankStrategist final : public StrategistStrategy {
public:
    RankStrategist(std::string name, std::vector<int> rank) : name_(std::move(name)), rank_(std::move(rank)) {}
    std::string name() const override { return name_; }
    Direction answer(const GameState& s, Edge e) override {
        require_unqueried(s, e);
        return rank_[e.u] < rank_[e.v] ? Direction{e.u, e.v} : Direction{e.v, e.u};
    }

private:
    std::string name_;
    std::vector<int> rank_;
};

class PosetStrategist final : public StrategistStrategy {
public:
    PosetStrategist(std::string name, Poset p) : name_(std::move(name)), poset_(std::move(p)) {}
    std::string name() const override { return name_; }
    Direction answer(const GameState& s, Edge e) override {
        require_unqueried(s, e);
        return poset_.less(e.u, e.v) ? Direction{e.u, e.v} : Direction{e.v, e.u};
    }

private:
    std::string name_;
    Poset poset_;
};

class GreedyStrategist final : public StrategistStrategy {
public:
    std::string name() const override { return "greedy"; }
    Direction answer(const GameState& s, Edge e) override {
        EdgeStatus st = s.edge_status(e);
        if (st.state == EdgeState::queried) throw IllegalMove("edge already queried");
        if (st.state == EdgeState::forced) return *st.dir;
        Direction forward{e.u, e.v}, backward{e.v, e.u};
        return s.newly_forced(e, backward) < s.newly_forced(e, forward) ? backward : forward;
    }
};

class TripartiteStrategist final : public StrategistStrategy {
public:
    TripartiteStrategist(std::vector<int> part, std::string name)
        : part_(std::move(part)), commitment_(part_.size(), 0), name_(std::move(name)) {}
    std::string name() const override { return name_; }

    Direction answer(const GameState& s, Edge e) override {
        EdgeStatus st = s.edge_status(e);
        if (st.state == EdgeState::queried) throw IllegalMove("edge already queried");
        int a = e.u, b = e.v;
        if (part_[a] == 2) std::swap(a, b);
        if (part_[b] != 2) {
            // X-Y edge: always x -> y.
            return part_[a] == 0 ? Direction{a, b} : Direction{b, a};
        }
        // b is in Z. The first query at b fixes whether b sits above or below X u Y.
        int z = b, other = a;
        if (commitment_[z] == 0) commitment_[z] = part_[other] == 0 ? +1 : -1;
        Direction d = commitment_[z] > 0 ? Direction{other, z} : Direction{z, other};
        if (st.state == EdgeState::forced) return *st.dir;
        return d;
    }

private:
    std::vector<int> part_;        // 0 = X, 1 = Y, 2 = Z
    std::vector<int> commitment_;  // per z: +1 above X u Y, -1 below, 0 undecided
    std::string name_;
};

class OptimalStrategist final : public StrategistStrategy {
public:
    explicit OptimalStrategist(std::shared_ptr<const Graph> g) : solver_(std::move(g)) {}
    std::string name() const override { return "optimal"; }
    Direction answer(const GameState& s, Edge e) override { return solver_.optimal_answer(s, e); }

private:
    Solver solver_;
};

std::vector<std::vector<int>> complement_components(const Graph& g) {
    const int n = g.n();
    std::vector<int> comp(n, -1);
    std::vector<std::vector<int>> out;
    for (int s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<int> stack{s}, members;
        comp[s] = static_cast<int>(out.size());
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            members.push_back(v);
            for (int w = 0; w < n; ++w)
                if (w != v && comp[w] < 0 && !g.adjacent(v, w)) {
                    comp[w] = comp[s];
                    stack.push_back(w);
                }
        }
        std::sort(members.begin(), members.end());
        out.push_back(std::move(members));
    }
    return out;
}

}  // namespace

std::vector<int> turan_h_ranks(const Graph& g, const std::vector<int>& u1) {
    const int n = g.n();
    std::vector<bool> in_u1(n, false);
    for (int v : u1) {
        if (v < 0 || v >= n) throw InvalidInput("turanh: U1 vertex out of range");
        in_u1[v] = true;
    }
    auto fits = [&](const std::vector<bool>& in_v2) {
        int size2 = static_cast<int>(std::count(in_v2.begin(), in_v2.end(), true));
        if (size2 != n / 2 && size2 != n - n / 2) return false;
        for (int v = 0; v < n; ++v)
            if (in_v2[v] && in_u1[v]) return false;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) {
                bool adj = g.adjacent(a, b);
                if (in_v2[a] != in_v2[b]) {
                    if (!adj) return false;
                } else if (in_v2[a]) {
                    if (adj) return false;
                } else if (adj && in_u1[a] == in_u1[b]) {
                    return false;
                }
            }
        return true;
    };
    auto comps = complement_components(g);
    // Prefer the side without vertex 0 as V2, so T2(n) gets V1 = {0..n/2-1}.
    std::stable_sort(comps.begin(), comps.end(),
                     [](const auto& a, const auto& b) { return a.front() != 0 && b.front() == 0; });
    for (const auto& comp : comps) {
        std::vector<bool> in_v2(n, false);
        for (int v : comp) in_v2[v] = true;
        if (!fits(in_v2)) continue;
        std::vector<int> rank(n);
        for (int v = 0; v < n; ++v) rank[v] = in_u1[v] ? 0 : (in_v2[v] ? 1 : 2);
        return rank;
    }
    if (g.m() == 0) return std::vector<int>(n, 0);
    throw InvalidInput("turanh: graph is not T2(n) plus a bipartite graph with side U1 inside one part");
}

StrategistDescriptor parse_strategist_descriptor(std::string_view text) {
    StrategistDescriptor d;
    auto colon = text.find(':');
    std::string_view head = text.substr(0, colon);
    std::string_view rest = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
    if (head == "greedy" && rest.empty()) {
        d.kind = StrategistKind::greedy;
    } else if (head == "optimal" && rest.empty()) {
        d.kind = StrategistKind::optimal;
    } else if (head == "order") {
        if (rest.substr(0, 6) == "random") {
            d.kind = StrategistKind::random_order;
            std::string_view opt = rest.substr(6);
            if (!opt.empty()) {
                if (opt.substr(0, 6) != ":seed=") throw InvalidInput("bad strategist descriptor: " + std::string(text));
                try {
                    d.seed = std::stoull(std::string(opt.substr(6)));
                } catch (const std::exception&) {
                    throw InvalidInput("bad seed in " + std::string(text));
                }
            }
        } else {
            d.kind = StrategistKind::linear_order;
            d.order = parse_int_list(rest);
        }
    } else if (head == "turanh") {
        if (rest.substr(0, 3) != "u1=") throw InvalidInput("turanh descriptor needs u1=...");
        d.kind = StrategistKind::turan_h;
        d.u1 = parse_int_list(rest.substr(3));
    } else if (head == "tripartite") {
        d.kind = StrategistKind::tripartite;
        d.parts = parse_int_list(rest);
    } else if (head == "cutposet" && !rest.empty()) {
        d.kind = StrategistKind::cut_poset;
        d.poset_file = std::string(rest);
    } else {
        throw InvalidInput("unknown strategist descriptor: " + std::string(text));
    }
    return d;
}

std::string describe(const StrategistDescriptor& d) {
    switch (d.kind) {
        case StrategistKind::linear_order: return "order:" + join(d.order);
        case StrategistKind::random_order: return "order:random:seed=" + std::to_string(d.seed);
        case StrategistKind::greedy: return "greedy";
        case StrategistKind::turan_h: return "turanh:u1=" + join(d.u1);
        case StrategistKind::tripartite: return "tripartite:" + join(d.parts);
        case StrategistKind::cut_poset: return "cutposet:" + (d.poset_file.empty() ? "<inline>" : d.poset_file);
        case StrategistKind::optimal: return "optimal";
    }
    return "?";
}

std::unique_ptr<StrategistStrategy> make_strategist(const StrategistDescriptor& d, std::shared_ptr<const Graph> g) {
    const int n = g->n();
    switch (d.kind) {
        case StrategistKind::linear_order: {
            std::vector<int> rank(n, -1);
            if (static_cast<int>(d.order.size()) != n) throw InvalidInput("order must list every vertex once");
            for (int i = 0; i < n; ++i) {
                int v = d.order[i];
                if (v < 0 || v >= n || rank[v] >= 0) throw InvalidInput("order must list every vertex once");
                rank[v] = i;
            }
            return std::make_unique<RankStrategist>(describe(d), std::move(rank));
        }
        case StrategistKind::random_order: {
            std::vector<int> perm(n);
            std::iota(perm.begin(), perm.end(), 0);
            SplitMix64 rng(d.seed);
            for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(static_cast<std::uint64_t>(i) + 1)]);
            std::vector<int> rank(n);
            for (int i = 0; i < n; ++i) rank[perm[i]] = i;
            return std::make_unique<RankStrategist>(describe(d), std::move(rank));
        }
        case StrategistKind::greedy: return std::make_unique<GreedyStrategist>();
        case StrategistKind::turan_h:
            return std::make_unique<RankStrategist>(describe(d), turan_h_ranks(*g, d.u1));
        case StrategistKind::tripartite: {
            if (d.parts.size() != 3) throw InvalidInput("tripartite needs three part sizes");
            if (!(*g == complete_multipartite(d.parts)))
                throw InvalidInput("tripartite strategist requires the complete 3-partite graph " + describe(d));
            std::vector<int> part;
            for (int p = 0; p < 3; ++p) part.insert(part.end(), d.parts[p], p);
            return std::make_unique<TripartiteStrategist>(std::move(part), describe(d));
        }
        case StrategistKind::cut_poset: {
            Poset p;
            if (d.poset) {
                p = *d.poset;
            } else {
                std::ifstream in(d.poset_file);
                if (!in) throw InvalidInput("cannot read poset file " + d.poset_file);
                std::stringstream buf;
                buf << in.rdbuf();
                p = parse_poset(buf.str());
            }
            if (p.size() != n) throw InvalidInput("poset size does not match the graph");
            for (const Edge& e : g->edges())
                if (!p.comparable(e.u, e.v))
                    throw InvalidInput("poset leaves edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                       "} unordered");
            return std::make_unique<PosetStrategist>(describe(d), std::move(p));
        }
        case StrategistKind::optimal: return std::make_unique<OptimalStrategist>(std::move(g));
    }
    throw InvalidInput("unknown strategist kind");
}

}  // namespace aog
