#include "aog/graph.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <map>
#include <numeric>
#include <sstream>

#include "aog/error.hpp"
#include "aog/random.hpp"

namespace aog {

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)), adj_(n) {
    if (n < 0) throw InvalidInput("negative vertex count");
    std::sort(edges_.begin(), edges_.end());
    ids_.assign(static_cast<std::size_t>(n) * n, -1);
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const Edge& e = edges_[i];
        if (e.u < 0 || e.v >= n) throw InvalidInput("edge endpoint out of range");
        if (e.u == e.v) throw InvalidInput("loop at vertex " + std::to_string(e.u));
        if (adj_.test(e.u, e.v))
            throw InvalidInput("duplicate edge " + std::to_string(e.u) + " " + std::to_string(e.v));
        adj_.set(e.u, e.v);
        adj_.set(e.v, e.u);
        ids_[static_cast<std::size_t>(e.u) * n + e.v] = static_cast<int>(i);
        ids_[static_cast<std::size_t>(e.v) * n + e.u] = static_cast<int>(i);
    }
}

int cut_value(const Graph& g, std::span<const int> side) {
    int value = 0;
    for (const Edge& e : g.edges())
        if (side[e.u] != side[e.v]) ++value;
    return value;
}

// ---------------------------------------------------------------- generators

Graph complete_multipartite(std::span<const int> parts) {
    std::vector<int> part_of;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i] <= 0) throw InvalidInput("part sizes must be positive");
        part_of.insert(part_of.end(), parts[i], static_cast<int>(i));
    }
    int n = static_cast<int>(part_of.size());
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (part_of[u] != part_of[v]) edges.emplace_back(u, v);
    return Graph(n, std::move(edges));
}

Graph complete_graph(int n) {
    if (n < 0) throw InvalidInput("negative vertex count");
    std::vector<int> ones(n, 1);
    return complete_multipartite(ones);
}

Graph turan_graph(int n) {
    if (n < 0) throw InvalidInput("negative vertex count");
    std::vector<int> parts;
    if (n / 2 > 0) parts.push_back(n / 2);
    if (n - n / 2 > 0) parts.push_back(n - n / 2);
    return complete_multipartite(parts);
}

Graph path_graph(int n) {
    if (n < 0) throw InvalidInput("negative vertex count");
    std::vector<Edge> edges;
    for (int v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
    return Graph(n, std::move(edges));
}

Graph cycle_graph(int n) {
    if (n < 3) throw InvalidInput("a cycle needs at least 3 vertices");
    std::vector<Edge> edges;
    for (int v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
    return Graph(n, std::move(edges));
}

Graph star_graph(int leaves) {
    if (leaves < 0) throw InvalidInput("negative leaf count");
    std::vector<Edge> edges;
    for (int v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
    return Graph(leaves + 1, std::move(edges));
}

Graph gnp_graph(int n, double p, std::uint64_t seed) {
    if (n < 0) throw InvalidInput("negative vertex count");
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("edge probability must lie in [0,1]");
    SplitMix64 rng(seed);
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.uniform() < p) edges.emplace_back(u, v);
    return Graph(n, std::move(edges));
}

Graph generate(const GeneratorSpec& spec) {
    switch (spec.kind) {
        case GeneratorKind::complete: return complete_graph(spec.n);
        case GeneratorKind::complete_multipartite:
            if (spec.parts.empty()) throw InvalidInput("complete-multipartite needs part sizes");
            return complete_multipartite(spec.parts);
        case GeneratorKind::turan: return turan_graph(spec.n);
        case GeneratorKind::path: return path_graph(spec.n);
        case GeneratorKind::cycle: return cycle_graph(spec.n);
        case GeneratorKind::star: return star_graph(spec.n);
        case GeneratorKind::gnp: return gnp_graph(spec.n, spec.p, spec.seed);
        case GeneratorKind::empty: return Graph(spec.n);
    }
    throw InvalidInput("unknown generator kind");
}

// ------------------------------------------------------------- serialization

namespace {

bool parse_int(std::string_view tok, long& out) {
    if (tok.empty()) return false;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return ec == std::errc{} && ptr == tok.data() + tok.size();
}

/// Splits "a b" into exactly two tokens separated by one space.
bool split_pair(std::string_view line, long& a, long& b) {
    auto sp = line.find(' ');
    if (sp == std::string_view::npos) return false;
    return parse_int(line.substr(0, sp), a) && parse_int(line.substr(sp + 1), b);
}

}  // namespace

Graph parse_graph(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        lines.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    // A single trailing LF is allowed.
    if (lines.size() > 1 && lines.back().empty()) lines.pop_back();

    long n = 0, m = 0;
    if (lines.empty() || !split_pair(lines[0], n, m) || n < 0 || m < 0)
        throw ParseError(1, "malformed header, expected \"n m\"");
    if (static_cast<long>(lines.size()) - 1 != m)
        throw ParseError(static_cast<int>(std::min<long>(lines.size(), m + 1) + 1),
                         "expected " + std::to_string(m) + " edge lines, found " +
                             std::to_string(lines.size() - 1));
    BitMatrix seen(static_cast<int>(n));
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (long i = 1; i <= m; ++i) {
        int line_no = static_cast<int>(i + 1);
        long u = 0, v = 0;
        if (!split_pair(lines[i], u, v)) throw ParseError(line_no, "malformed edge line");
        if (u < 0 || v < 0 || u >= n || v >= n) throw ParseError(line_no, "vertex index out of range");
        if (u == v) throw ParseError(line_no, "loop at vertex " + std::to_string(u));
        if (u > v) throw ParseError(line_no, "edge must be written as \"u v\" with u < v");
        if (seen.test(static_cast<int>(u), static_cast<int>(v)))
            throw ParseError(line_no, "duplicate edge");
        seen.set(static_cast<int>(u), static_cast<int>(v));
        edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    }
    return Graph(static_cast<int>(n), std::move(edges));
}

std::string serialize_graph(const Graph& g) {
    std::string out = std::to_string(g.n()) + " " + std::to_string(g.m());
    for (const Edge& e : g.edges()) {
        out += '\n';
        out += std::to_string(e.u);
        out += ' ';
        out += std::to_string(e.v);
    }
    return out;
}

// -------------------------------------------------------------------- max cut

Cut max_cut(const Graph& g) {
    const int n = g.n();
    if (n > kMaxCutGuard) throw GuardExceeded("max_cut enumeration limited to n <= 30");
    Cut best;
    best.side.assign(n, 0);
    if (n <= 1) return best;

    std::vector<std::uint32_t> adj(n, 0);
    for (const Edge& e : g.edges()) {
        adj[e.u] |= 1U << e.v;
        adj[e.v] |= 1U << e.u;
    }
    // Lex key: side[1] is the most significant bit, so numeric order on the
    // key equals lexicographic order on the side vector.
    auto lex_key = [n](std::uint32_t set) {
        std::uint32_t key = 0;
        for (int v = 1; v < n; ++v) key = (key << 1) | ((set >> v) & 1U);
        return key;
    };
    // Gray-code walk over assignments of vertices 1..n-1; vertex 0 fixed.
    std::uint32_t set = 0;  // vertices on side 1
    int value = 0;
    int best_value = 0;
    std::uint32_t best_key = 0;
    const std::uint32_t total = 1U << (n - 1);
    for (std::uint32_t i = 1; i < total; ++i) {
        int v = std::countr_zero(i) + 1;
        std::uint32_t same = (set >> v & 1U) ? set : ~set;
        int same_side = std::popcount(adj[v] & same);
        int other_side = std::popcount(adj[v]) - same_side;
        value += same_side - other_side;
        set ^= 1U << v;
        if (value > best_value) {
            best_value = value;
            best_key = lex_key(set);
        } else if (value == best_value) {
            best_key = std::min(best_key, lex_key(set));
        }
    }
    for (int v = 1; v < n; ++v) best.side[v] = static_cast<int>((best_key >> (n - 1 - v)) & 1U);
    best.value = cut_value(g, best.side);
    return best;
}

// ------------------------------------------------------- acyclic orientations

namespace {

using Rows = std::vector<std::uint64_t>;

Rows drop_vertex(const Rows& rows, int v) {
    Rows out;
    out.reserve(rows.size() - 1);
    const std::uint64_t low = (std::uint64_t{1} << v) - 1;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (static_cast<int>(i) == v) continue;
        std::uint64_t r = rows[i];
        out.push_back((r & low) | ((r >> (v + 1)) << v));
    }
    return out;
}

class AcyclicCounter {
public:
    BigInt count(Rows rows) {
        // Leaves contribute a factor of 2, isolated vertices a factor of 1.
        BigInt factor = 1;
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t v = 0; v < rows.size(); ++v) {
                int deg = std::popcount(rows[v]);
                if (deg <= 1) {
                    if (deg == 1) factor *= 2;
                    rows = drop_vertex(rows, static_cast<int>(v));
                    changed = true;
                    break;
                }
            }
        }
        if (rows.empty()) return factor;

        auto comps = components(rows);
        if (comps.size() > 1) {
            for (const auto& comp : comps) factor *= count(restrict(rows, comp));
            return factor;
        }

        const std::size_t k = rows.size();
        std::size_t degree_sum = 0;
        for (auto r : rows) degree_sum += std::popcount(r);
        if (degree_sum == k * (k - 1)) {
            BigInt f = 1;
            for (std::size_t i = 2; i <= k; ++i) f *= i;
            return factor * f;
        }

        auto it = memo_.find(rows);
        if (it != memo_.end()) return factor * it->second;

        // Branch on an edge at a maximum-degree vertex.
        int u = 0;
        for (std::size_t v = 1; v < k; ++v)
            if (std::popcount(rows[v]) > std::popcount(rows[u])) u = static_cast<int>(v);
        int w = std::countr_zero(rows[u]);

        Rows deleted = rows;
        deleted[u] &= ~(std::uint64_t{1} << w);
        deleted[w] &= ~(std::uint64_t{1} << u);

        Rows contracted = rows;
        contracted[u] |= contracted[w];
        contracted[u] &= ~((std::uint64_t{1} << u) | (std::uint64_t{1} << w));
        for (std::size_t v = 0; v < k; ++v)
            if ((contracted[v] >> w) & 1U) contracted[v] |= std::uint64_t{1} << u;
        contracted = drop_vertex(contracted, w);

        BigInt result = count(std::move(deleted)) + count(std::move(contracted));
        memo_.emplace(rows, result);
        return factor * result;
    }

private:
    static std::vector<std::vector<int>> components(const Rows& rows) {
        std::vector<std::vector<int>> comps;
        std::uint64_t unseen = rows.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << rows.size()) - 1;
        while (unseen) {
            std::uint64_t frontier = unseen & -unseen, comp = 0;
            while (frontier) {
                comp |= frontier;
                std::uint64_t next = 0;
                for (std::uint64_t f = frontier; f; f &= f - 1) next |= rows[std::countr_zero(f)];
                frontier = next & ~comp;
            }
            unseen &= ~comp;
            std::vector<int> vs;
            for (std::uint64_t c = comp; c; c &= c - 1) vs.push_back(std::countr_zero(c));
            comps.push_back(std::move(vs));
        }
        return comps;
    }

    static Rows restrict(const Rows& rows, const std::vector<int>& keep) {
        Rows out(keep.size(), 0);
        for (std::size_t i = 0; i < keep.size(); ++i)
            for (std::size_t j = 0; j < keep.size(); ++j)
                if ((rows[keep[i]] >> keep[j]) & 1U) out[i] |= std::uint64_t{1} << j;
        return out;
    }

    std::map<Rows, BigInt> memo_;
};

}  // namespace

BigInt count_acyclic_orientations(const Graph& g) {
    if (g.m() > kAcyclicCountGuard) throw GuardExceeded("acyclic orientation count limited to m <= 40");
    Graph h = strip_isolated(g);
    if (h.n() > 64) throw GuardExceeded("acyclic orientation count limited to 64 non-isolated vertices");
    Rows rows(h.n(), 0);
    for (const Edge& e : h.edges()) {
        rows[e.u] |= std::uint64_t{1} << e.v;
        rows[e.v] |= std::uint64_t{1} << e.u;
    }
    AcyclicCounter counter;
    return counter.count(std::move(rows));
}

// ------------------------------------------------------------------ utilities

Core min_degree_core(const Graph& g) {
    const int n = g.n();
    Core core;
    if (n == 0) return core;
    const int threshold = (g.m() + n - 1) / n;
    std::vector<int> deg(n);
    std::vector<bool> alive(n, true);
    for (int v = 0; v < n; ++v) deg[v] = g.degree(v);
    bool removed = true;
    while (removed) {
        removed = false;
        for (int v = 0; v < n; ++v) {
            if (alive[v] && deg[v] < threshold) {
                alive[v] = false;
                g.neighbors(v).for_each([&](int w) {
                    if (alive[w]) --deg[w];
                });
                removed = true;
                break;
            }
        }
    }
    for (int v = 0; v < n; ++v)
        if (alive[v]) core.vertices.push_back(v);
    if (!core.vertices.empty()) {
        core.min_degree = deg[core.vertices.front()];
        for (int v : core.vertices) core.min_degree = std::min(core.min_degree, deg[v]);
    }
    return core;
}

Graph relabel(const Graph& g, std::span<const int> perm) {
    if (static_cast<int>(perm.size()) != g.n()) throw InvalidInput("permutation size mismatch");
    std::vector<Edge> edges;
    edges.reserve(g.m());
    for (const Edge& e : g.edges()) edges.emplace_back(perm[e.u], perm[e.v]);
    return Graph(g.n(), std::move(edges));
}

Graph induced_subgraph(const Graph& g, std::span<const int> keep) {
    std::vector<int> index(g.n(), -1);
    for (std::size_t i = 0; i < keep.size(); ++i) index[keep[i]] = static_cast<int>(i);
    std::vector<Edge> edges;
    for (const Edge& e : g.edges())
        if (index[e.u] >= 0 && index[e.v] >= 0) edges.emplace_back(index[e.u], index[e.v]);
    return Graph(static_cast<int>(keep.size()), std::move(edges));
}

Graph strip_isolated(const Graph& g) {
    std::vector<int> keep;
    for (int v = 0; v < g.n(); ++v)
        if (g.degree(v) > 0) keep.push_back(v);
    return induced_subgraph(g, keep);
}

long triangle_count(const Graph& g) {
    long count = 0;
    for (const Edge& e : g.edges()) {
        BitRow common = g.neighbors(e.u) & g.neighbors(e.v);
        common.for_each([&](int w) {
            if (w > e.v) ++count;
        });
    }
    return count;
}

int ceil_log2(const BigInt& x) {
    if (x <= 1) return 0;
    BigInt y = x - 1;
    return static_cast<int>(boost::multiprecision::msb(y)) + 1;
}

std::uint64_t graph_hash(const Graph& g) {
    std::uint64_t h = derive_seed(static_cast<std::uint64_t>(g.n()), 0);
    for (const Edge& e : g.edges())
        h = derive_seed(h, (static_cast<std::uint64_t>(e.u) << 32) | static_cast<std::uint32_t>(e.v));
    return h;
}

}  // namespace aog
