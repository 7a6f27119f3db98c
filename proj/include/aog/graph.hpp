#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "aog/bits.hpp"

namespace aog {

using BigInt = boost::multiprecision::cpp_int;

/// Unordered vertex pair, stored with u < v.
struct Edge {
    int u = 0;
    int v = 0;

    Edge() = default;
    Edge(int a, int b) : u(a < b ? a : b), v(a < b ? b : a) {}

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Undirected simple graph on vertices 0..n-1. Immutable once built.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : Graph(n, {}) {}

    /// Throws InvalidInput on loops, duplicates, or out-of-range endpoints.
    Graph(int n, std::vector<Edge> edges);

    int n() const { return n_; }
    int m() const { return static_cast<int>(edges_.size()); }

    /// Edges in lexicographic order; an edge's position is its edge id.
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(int id) const { return edges_[id]; }

    bool adjacent(int u, int v) const { return u != v && adj_.test(u, v); }
    const BitRow& neighbors(int v) const { return adj_.row(v); }
    int degree(int v) const { return adj_.row(v).count(); }

    /// Edge id of {u,v}, or nullopt for non-adjacent pairs.
    std::optional<int> edge_id(int u, int v) const {
        if (u < 0 || v < 0 || u >= n_ || v >= n_ || !adjacent(u, v)) return std::nullopt;
        return ids_[static_cast<std::size_t>(u) * n_ + v];
    }

    bool is_complete() const { return 2 * static_cast<long>(m()) == static_cast<long>(n_) * (n_ - 1); }

    friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    BitMatrix adj_;
    std::vector<int> ids_;
};

/// A bipartition of the vertex set; side[v] is 0 or 1.
struct Cut {
    std::vector<int> side;
    int value = 0;
};

/// Number of edges of g crossing the given side assignment.
int cut_value(const Graph& g, std::span<const int> side);

enum class GeneratorKind { complete, complete_multipartite, turan, path, cycle, star, gnp, empty };

struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::complete;
    int n = 0;                ///< vertex count (star: number of leaves)
    std::vector<int> parts;   ///< complete_multipartite only
    double p = 0.5;           ///< gnp only
    std::uint64_t seed = 0;   ///< gnp only
};

Graph generate(const GeneratorSpec& spec);

// Shorthands for the families used throughout.
Graph complete_graph(int n);
Graph complete_multipartite(std::span<const int> parts);
Graph turan_graph(int n);
Graph path_graph(int n);
Graph cycle_graph(int n);
Graph star_graph(int leaves);
Graph gnp_graph(int n, double p, std::uint64_t seed);

/// Parses the edge-list format ("n m" header, then m lines "u v", u < v).
Graph parse_graph(std::string_view text);

/// Inverse of parse_graph. Edges sorted, LF separated, no trailing newline.
std::string serialize_graph(const Graph& g);

/// Exact maximum cut by enumeration (n <= 30). Ties resolved to the
/// lexicographically smallest side vector with vertex 0 on side 0.
Cut max_cut(const Graph& g);

inline constexpr int kMaxCutGuard = 30;
inline constexpr int kAcyclicCountGuard = 40;

/// a(G) by deletion-contraction on simple graphs (m <= 40).
BigInt count_acyclic_orientations(const Graph& g);

/// Vertex set left after peeling vertices of degree < ceil(m/n), lowest
/// index first, together with the minimum degree of the induced subgraph.
struct Core {
    std::vector<int> vertices;
    int min_degree = 0;
};
Core min_degree_core(const Graph& g);

/// Relabels vertex v as perm[v].
Graph relabel(const Graph& g, std::span<const int> perm);

/// Subgraph induced on `keep`, vertices renumbered in the given order.
Graph induced_subgraph(const Graph& g, std::span<const int> keep);

/// g with isolated vertices removed (remaining vertices keep their order).
Graph strip_isolated(const Graph& g);

long triangle_count(const Graph& g);

/// ceil(log2(x)) for x >= 1.
int ceil_log2(const BigInt& x);

/// Order-independent 64-bit fingerprint of the edge list.
std::uint64_t graph_hash(const Graph& g);

}  // namespace aog
