#include "aog/solver.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <mutex>
#include <numeric>
#include <thread>

#include <absl/container/flat_hash_map.h>

#include "aog/error.hpp"
#include "aog/random.hpp"

namespace aog {

bool within_solver_guard(const Graph& g, const SolverOptions& options) {
    if (g.n() > kSolverHardVertexLimit) return false;
    return g.m() <= options.max_edges || g.n() <= options.max_vertices;
}

nlohmann::ordered_json to_json(const SolveResult& r) {
    nlohmann::ordered_json j;
    j["value"] = r.value;
    if (r.best_first_query)
        j["best"] = {r.best_first_query->u, r.best_first_query->v};
    else
        j["best"] = nullptr;
    j["nodes"] = r.nodes;
    j["memo_hits"] = r.memo_hits;
    return j;
}

namespace {

using Rows = std::array<std::uint16_t, kSolverHardVertexLimit>;
constexpr int kInfinity = 1 << 20;

struct Key256 {
    std::array<std::uint64_t, 4> w{};
    friend bool operator==(const Key256&, const Key256&) = default;
};

struct KeyHash {
    std::size_t operator()(std::uint64_t k) const { return derive_seed(k, 0x5eed); }
    std::size_t operator()(const Key256& k) const {
        std::uint64_t h = 0;
        for (auto w : k.w) h = derive_seed(h ^ w, 0x5eed);
        return h;
    }
};

/// Packs the closure rows; 8 bits per row up to n = 8, else 16.
template <class Key>
Key pack(const Rows& r, int n) {
    if constexpr (std::is_same_v<Key, std::uint64_t>) {
        std::uint64_t k = 0;
        for (int i = 0; i < n; ++i) k |= static_cast<std::uint64_t>(r[i]) << (8 * i);
        return k;
    } else {
        Key256 k;
        for (int i = 0; i < n; ++i) k.w[i / 4] |= static_cast<std::uint64_t>(r[i]) << (16 * (i % 4));
        return k;
    }
}

template <class Key>
class MemoTable {
public:
    explicit MemoTable(bool locking) : locking_(locking), shards_(locking ? 64 : 1) {}

    void set_locking(bool locking) { locking_ = locking; }

    std::optional<int> find(const Key& k) {
        Shard& s = shard(k);
        std::unique_lock lock(s.mu, std::defer_lock);
        if (locking_) lock.lock();
        auto it = s.map.find(k);
        if (it == s.map.end()) return std::nullopt;
        return it->second;
    }

    void insert(const Key& k, int value) {
        Shard& s = shard(k);
        std::unique_lock lock(s.mu, std::defer_lock);
        if (locking_) lock.lock();
        s.map.emplace(k, static_cast<std::uint8_t>(value));
    }

    std::size_t size() const {
        std::size_t total = 0;
        for (const auto& s : shards_) total += s.map.size();
        return total;
    }

private:
    struct Shard {
        std::mutex mu;
        absl::flat_hash_map<Key, std::uint8_t, KeyHash> map;
    };

    Shard& shard(const Key& k) { return shards_[KeyHash{}(k) % shards_.size()]; }

    bool locking_;
    std::vector<Shard> shards_;
};

}  // namespace

struct Solver::Impl {
    virtual ~Impl() = default;
    virtual int value(const Rows& r) = 0;
    virtual std::size_t memo_size() const = 0;
    virtual void set_locking(bool locking) = 0;

    std::shared_ptr<const Graph> graph;
    SolverOptions options;
    std::vector<std::pair<int, int>> edges;
    std::atomic<std::uint64_t> nodes{0};
    std::atomic<std::uint64_t> hits{0};

    int n() const { return graph->n(); }

    static bool comparable(const Rows& r, int a, int b) { return ((r[a] >> b) & 1U) || ((r[b] >> a) & 1U); }

    Rows add_arc(const Rows& r, int from, int to) const {
        Rows out = r;
        const std::uint16_t succ = r[to];
        for (int u = 0; u < n(); ++u)
            if ((r[u] >> from) & 1U) out[u] |= succ;
        return out;
    }

    Rows rows_of(const GameState& s) const {
        Rows r{};
        for (int i = 0; i < n(); ++i)
            for (int j = 0; j < n(); ++j)
                if (s.reaches(i, j)) r[i] |= static_cast<std::uint16_t>(1U << j);
        return r;
    }

    Rows empty_rows() const {
        Rows r{};
        for (int i = 0; i < n(); ++i) r[i] = static_cast<std::uint16_t>(1U << i);
        return r;
    }

    /// Minimax over open edges; returns (value, best edge index or -1).
    std::pair<int, int> best_move(const Rows& r) {
        int best = kInfinity, best_edge = -1;
        for (std::size_t i = 0; i < edges.size(); ++i) {
            auto [u, v] = edges[i];
            if (comparable(r, u, v)) continue;
            int a = value(add_arc(r, u, v));
            if (1 + a >= best) continue;
            int b = value(add_arc(r, v, u));
            if (1 + std::max(a, b) < best) {
                best = 1 + std::max(a, b);
                best_edge = static_cast<int>(i);
            }
            if (best == 1) break;
        }
        if (best_edge < 0) return {0, -1};
        return {best, best_edge};
    }
};

namespace {

template <class Key>
class SearchImpl final : public Solver::Impl {
public:
    explicit SearchImpl(bool locking) : table_(locking) {}

    int value(const Rows& r) override {
        nodes.fetch_add(1, std::memory_order_relaxed);
        const Key key = options.canonicalize ? canonical(r) : pack<Key>(r, n());
        if (auto v = table_.find(key)) {
            hits.fetch_add(1, std::memory_order_relaxed);
            return *v;
        }
        int result = best_move(r).first;
        table_.insert(key, result);
        return result;
    }

    std::size_t memo_size() const override { return table_.size(); }
    void set_locking(bool locking) override { table_.set_locking(locking); }

private:
    /// Minimum packed key over relabelings that respect an isomorphism-
    /// invariant vertex ranking (down-set size, up-set size, then one round
    /// of neighbourhood refinement). Equal ranks are permuted exhaustively.
    Key canonical(const Rows& r) const {
        const int k = n();
        std::array<std::uint64_t, kSolverHardVertexLimit> sig{};
        std::array<int, kSolverHardVertexLimit> up{}, down{};
        for (int i = 0; i < k; ++i) up[i] = std::popcount(static_cast<unsigned>(r[i])) - 1;
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                if (i != j && ((r[j] >> i) & 1U)) ++down[i];
        std::array<std::uint64_t, kSolverHardVertexLimit> base{};
        for (int i = 0; i < k; ++i) base[i] = static_cast<std::uint64_t>(down[i]) * 64 + up[i];
        for (int i = 0; i < k; ++i) {
            std::uint64_t above = 0, below = 0;
            for (int j = 0; j < k; ++j) {
                if (i == j) continue;
                if ((r[i] >> j) & 1U) above += derive_seed(base[j], 1);
                if ((r[j] >> i) & 1U) below += derive_seed(base[j], 2);
            }
            sig[i] = derive_seed(base[i] ^ derive_seed(above, 3), below);
        }
        std::array<int, kSolverHardVertexLimit> order{};
        std::iota(order.begin(), order.begin() + k, 0);
        std::sort(order.begin(), order.begin() + k, [&](int a, int b) {
            return base[a] != base[b] ? base[a] < base[b] : (sig[a] != sig[b] ? sig[a] < sig[b] : a < b);
        });
        // Class boundaries.
        std::vector<std::pair<int, int>> classes;
        for (int i = 0; i < k;) {
            int j = i;
            while (j < k && base[order[j]] == base[order[i]] && sig[order[j]] == sig[order[i]]) ++j;
            classes.emplace_back(i, j);
            i = j;
        }
        for (auto [lo, hi] : classes) std::sort(order.begin() + lo, order.begin() + hi);

        std::optional<Key> best;
        auto emit = [&]() {
            std::array<int, kSolverHardVertexLimit> pos{};
            for (int i = 0; i < k; ++i) pos[order[i]] = i;
            Rows out{};
            for (int i = 0; i < k; ++i) {
                std::uint16_t row = 0;
                for (int j = 0; j < k; ++j)
                    if ((r[i] >> j) & 1U) row |= static_cast<std::uint16_t>(1U << pos[j]);
                out[pos[i]] = row;
            }
            Key key = pack<Key>(out, k);
            if (!best || less(key, *best)) best = key;
        };
        permute(classes, 0, order, emit);
        return *best;
    }

    template <class F>
    static void permute(const std::vector<std::pair<int, int>>& classes, std::size_t c,
                        std::array<int, kSolverHardVertexLimit>& order, F& emit) {
        if (c == classes.size()) {
            emit();
            return;
        }
        auto [lo, hi] = classes[c];
        do {
            permute(classes, c + 1, order, emit);
        } while (std::next_permutation(order.begin() + lo, order.begin() + hi));
    }

    static bool less(const Key& a, const Key& b) {
        if constexpr (std::is_same_v<Key, std::uint64_t>)
            return a < b;
        else
            return a.w < b.w;
    }

    MemoTable<Key> table_;
};

}  // namespace

Solver::Solver(std::shared_ptr<const Graph> g, SolverOptions options) {
    if (!within_solver_guard(*g, options))
        throw GuardExceeded("graph with n=" + std::to_string(g->n()) + ", m=" + std::to_string(g->m()) +
                            " is outside the solver guard");
    if (options.canonicalize && !g->is_complete())
        throw InvalidInput("canonical memo keys are only valid for complete graphs");
    const bool locking = options.threads > 1;
    if (g->n() <= 8)
        impl_ = std::make_unique<SearchImpl<std::uint64_t>>(locking);
    else
        impl_ = std::make_unique<SearchImpl<Key256>>(locking);
    impl_->graph = std::move(g);
    impl_->options = options;
    for (const Edge& e : impl_->graph->edges()) impl_->edges.emplace_back(e.u, e.v);
}

Solver::~Solver() = default;
Solver::Solver(Solver&&) noexcept = default;
Solver& Solver::operator=(Solver&&) noexcept = default;

const Graph& Solver::graph() const { return *impl_->graph; }

SolveResult Solver::solve() {
    const std::uint64_t nodes0 = impl_->nodes, hits0 = impl_->hits;
    const Rows root = impl_->empty_rows();
    SolveResult result;
    if (impl_->options.threads <= 1) {
        result.value = impl_->value(root);
        if (result.value > 0) result.best_first_query = impl_->graph->edge(impl_->best_move(root).second);
    } else {
        // Root-move parallelism: every root edge is evaluated exactly, then
        // the lexicographically smallest optimum is taken as in serial mode.
        const auto& edges = impl_->edges;
        std::vector<int> scores(edges.size(), kInfinity);
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            for (std::size_t i = next++; i < edges.size(); i = next++) {
                auto [u, v] = edges[i];
                int a = impl_->value(impl_->add_arc(root, u, v));
                int b = impl_->value(impl_->add_arc(root, v, u));
                scores[i] = 1 + std::max(a, b);
            }
        };
        std::vector<std::thread> pool;
        for (int t = 0; t < impl_->options.threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
        if (!edges.empty()) {
            auto it = std::min_element(scores.begin(), scores.end());
            result.value = *it;
            result.best_first_query = impl_->graph->edge(static_cast<int>(it - scores.begin()));
        }
    }
    result.nodes = impl_->nodes - nodes0;
    result.memo_hits = impl_->hits - hits0;
    return result;
}

int Solver::value(const GameState& s) { return impl_->value(impl_->rows_of(s)); }

Edge Solver::optimal_move(const GameState& s) {
    auto [v, idx] = impl_->best_move(impl_->rows_of(s));
    if (idx < 0) throw InvalidInput("no move in a terminal state");
    return impl_->graph->edge(idx);
}

Direction Solver::optimal_answer(const GameState& s, Edge e) {
    EdgeStatus st = s.edge_status(e);
    if (st.state == EdgeState::queried) throw IllegalMove("edge already queried");
    if (st.state == EdgeState::forced) return *st.dir;
    const Rows r = impl_->rows_of(s);
    int forward = impl_->value(impl_->add_arc(r, e.u, e.v));
    int backward = impl_->value(impl_->add_arc(r, e.v, e.u));
    return backward > forward ? Direction{e.v, e.u} : Direction{e.u, e.v};
}

std::uint64_t Solver::nodes() const { return impl_->nodes; }
std::uint64_t Solver::memo_hits() const { return impl_->hits; }
std::size_t Solver::memo_size() const { return impl_->memo_size(); }

SolveResult game_value(const Graph& g, SolverOptions options) {
    Solver solver(std::make_shared<const Graph>(g), options);
    return solver.solve();
}

}  // namespace aog
