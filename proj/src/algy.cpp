#include "aog/algy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "aog/error.hpp"
#include "aog/random.hpp"
#include "aog/solver.hpp"

namespace aog {

long sorting_comparison_count(int n, SortMethod method) {
    if (n < 1) throw InvalidInput("sorting needs n >= 1");
    long total = 0;
    if (method == SortMethod::binary_insertion) {
        for (int i = 2; i <= n; ++i) total += ceil_log2(BigInt(i));
    } else {
        // ceil(log2(3k/4)) is the least j >= 0 with 4 * 2^j >= 3k.
        for (long k = 1; k <= n; ++k) {
            long j = 0;
            while ((4L << j) < 3 * k) ++j;
            total += j;
        }
    }
    return total;
}

double two_round_probability(int n, double C) {
    if (n < 2) return 0.0;
    const double ln = std::log(static_cast<double>(n));
    return std::min(1.0, C * std::sqrt(ln / n));
}

// ------------------------------------------------------------------- sorting

namespace {

struct NeedQuery {
    int a, b;
};

/// Comparator over the closure; unknown pairs abort the sort with the pair.
struct ClosureLess {
    const GameState& s;
    bool operator()(int a, int b) const {
        if (s.reaches(a, b)) return true;
        if (s.reaches(b, a)) return false;
        throw NeedQuery{a, b};
    }
};

template <class Less>
void binary_insert(std::vector<int>& chain, int x, std::size_t bound, Less& less) {
    std::size_t lo = 0, hi = bound;
    while (lo < hi) {
        std::size_t mid = lo + (hi - lo) / 2;
        if (less(x, chain[mid]))
            hi = mid;
        else
            lo = mid + 1;
    }
    chain.insert(chain.begin() + static_cast<std::ptrdiff_t>(lo), x);
}

template <class Less>
std::vector<int> binary_insertion_sort(const std::vector<int>& elems, Less& less) {
    std::vector<int> chain;
    for (int x : elems) binary_insert(chain, x, chain.size(), less);
    return chain;
}

/// Ford-Johnson merge insertion.
template <class Less>
std::vector<int> merge_insertion_sort(const std::vector<int>& elems, Less& less) {
    const std::size_t k = elems.size();
    if (k <= 1) return elems;
    std::vector<std::pair<int, int>> pairs;  // (large, small)
    std::vector<int> larges;
    for (std::size_t i = 0; i + 1 < k; i += 2) {
        int a = elems[i], b = elems[i + 1];
        if (less(a, b))
            pairs.emplace_back(b, a);
        else
            pairs.emplace_back(a, b);
        larges.push_back(pairs.back().first);
    }
    std::optional<int> leftover;
    if (k % 2 == 1) leftover = elems.back();

    std::vector<int> sorted = merge_insertion_sort(larges, less);
    auto partner = [&](int large) {
        for (auto [lg, sm] : pairs)
            if (lg == large) return sm;
        return -1;
    };
    std::vector<int> chain;
    chain.push_back(partner(sorted[0]));
    chain.insert(chain.end(), sorted.begin(), sorted.end());

    // b_j for j = 1..count; b_1 is already in place. b_j is known to lie
    // below a_j = sorted[j-1]; the leftover has no upper bound.
    const std::size_t count = sorted.size() + (leftover ? 1 : 0);
    auto pend = [&](std::size_t j) { return j <= sorted.size() ? partner(sorted[j - 1]) : *leftover; };
    std::size_t prev = 1, t = 1;
    for (int power = 4; prev < count; power *= 2) {
        t = static_cast<std::size_t>(power) - t;  // Jacobsthal: 3, 5, 11, 21, ...
        std::size_t hi = std::min(t, count);
        for (std::size_t j = hi; j > prev; --j) {
            std::size_t bound = chain.size();
            if (j <= sorted.size())
                bound = static_cast<std::size_t>(std::find(chain.begin(), chain.end(), sorted[j - 1]) - chain.begin());
            binary_insert(chain, pend(j), bound, less);
        }
        prev = hi;
    }
    return chain;
}

}  // namespace

std::optional<Edge> next_sorting_query(const GameState& s, const std::vector<int>& vertices, SortMethod method) {
    ClosureLess less{s};
    try {
        if (method == SortMethod::binary_insertion)
            binary_insertion_sort(vertices, less);
        else
            merge_insertion_sort(vertices, less);
    } catch (const NeedQuery& q) {
        return Edge(q.a, q.b);
    }
    return std::nullopt;
}

// ---------------------------------------------------------------- strategies

namespace {

const char* method_name(SortMethod m) { return m == SortMethod::binary_insertion ? "binary" : "fj"; }

class ExhaustiveAlgy final : public AlgyStrategy {
public:
    std::string name() const override { return "exhaustive"; }
    std::optional<Edge> next_query(const GameState& s) override {
        for (const Edge& e : s.graph().edges())
            if (!s.comparable(e.u, e.v)) return e;
        return std::nullopt;
    }
};

/// Open edge whose endpoints are comparable to the most vertices in total.
class GreedyAlgy final : public AlgyStrategy {
public:
    std::string name() const override { return "greedy"; }
    std::optional<Edge> next_query(const GameState& s) override {
        const int n = s.graph().n();
        std::vector<int> degree(n, -2);
        for (int x = 0; x < n; ++x) {
            degree[x] += s.reach().row(x).count();
            for (int y = 0; y < n; ++y)
                if (s.reaches(y, x)) ++degree[x];
        }
        std::optional<Edge> best;
        int best_score = -1;
        for (const Edge& e : s.graph().edges()) {
            if (s.comparable(e.u, e.v)) continue;
            int score = degree[e.u] + degree[e.v];
            if (score > best_score) {
                best_score = score;
                best = e;
            }
        }
        return best;
    }
};

class SortingAlgy final : public AlgyStrategy {
public:
    SortingAlgy(int n, SortMethod method) : method_(method), vertices_(n) {
        for (int v = 0; v < n; ++v) vertices_[v] = v;
    }
    std::string name() const override { return std::string("sort:") + method_name(method_); }
    std::optional<Edge> next_query(const GameState& s) override { return next_sorting_query(s, vertices_, method_); }

private:
    SortMethod method_;
    std::vector<int> vertices_;
};

class TwoRoundAlgy final : public AlgyStrategy {
public:
    TwoRoundAlgy(std::vector<int> d, std::string name) : d_(std::move(d)), name_(std::move(name)) {}
    std::string name() const override { return name_; }

    std::optional<Edge> next_query(const GameState& s) override {
        if (d_pos_ < d_.size()) return s.graph().edge(d_[d_pos_++]);
        if (!h_) h_ = s.open_edges();
        if (h_pos_ < h_->size()) return s.graph().edge((*h_)[h_pos_++]);
        return std::nullopt;
    }

    const std::vector<int>& d() const { return d_; }
    const std::vector<int>& h() const { return *h_; }

private:
    std::vector<int> d_;
    std::size_t d_pos_ = 0;
    std::optional<std::vector<int>> h_;
    std::size_t h_pos_ = 0;
    std::string name_;
};

class Claim2Algy final : public AlgyStrategy {
public:
    Claim2Algy(ReducedGraph r, SortMethod method) : r_(std::move(r)), method_(method) {
        for (int v = 0; v < r_.n(); ++v) originals_.push_back(r_.original(v));
    }
    std::string name() const override { return std::string("claim2:") + method_name(method_); }

    std::optional<Edge> next_query(const GameState& s) override {
        // Phase 1: the clique on V.
        if (auto q = next_sorting_query(s, originals_, method_)) return q;
        // Phase 2: every xx'.
        for (int v = 0; v < r_.n(); ++v)
            if (!s.comparable(r_.original(v), r_.prime(v))) return Edge(r_.original(v), r_.prime(v));
        // Phase 3: the gadget blocks.
        for (int id = 0; id < r_.m(); ++id) {
            const Edge& e = r_.source.edge(id);
            const int x = r_.original(e.u), y = r_.original(e.v);
            const bool x_in_X = s.reaches(x, r_.prime(e.u));
            const bool y_in_X = s.reaches(y, r_.prime(e.v));
            const int lo = s.reaches(x, y) ? x : y;
            const int hi = lo == x ? y : x;
            for (int i = 0; i < r_.l; ++i) {
                const int u = r_.gadget(id, i);
                if (x_in_X == y_in_X) {
                    // Inside X ask u-hi first; inside Y ask u-lo first. Either
                    // answer settles one further edge of u.
                    const int first = x_in_X ? hi : lo;
                    if (s.edge_status(Edge(first, u)).state == EdgeState::open) return Edge(first, u);
                }
                for (int a : {x, y, r_.prime(e.u), r_.prime(e.v)})
                    if (!s.comparable(a, u)) return Edge(a, u);
            }
        }
        return std::nullopt;
    }

private:
    ReducedGraph r_;
    SortMethod method_;
    std::vector<int> originals_;
};

class OptimalAlgy final : public AlgyStrategy {
public:
    explicit OptimalAlgy(std::shared_ptr<const Graph> g) : solver_(std::move(g)) {}
    std::string name() const override { return "optimal"; }
    std::optional<Edge> next_query(const GameState& s) override {
        if (s.is_terminal()) return std::nullopt;
        return solver_.optimal_move(s);
    }

private:
    Solver solver_;
};

std::optional<SortMethod> parse_method(std::string_view s) {
    if (s == "binary") return SortMethod::binary_insertion;
    if (s == "fj") return SortMethod::merge_insertion;
    return std::nullopt;
}

std::string format_double(double v) {
    std::ostringstream out;
    out << v;
    return out.str();
}

}  // namespace

AlgyDescriptor parse_algy_descriptor(std::string_view text) {
    AlgyDescriptor d;
    std::vector<std::string> parts;
    {
        std::string s(text);
        std::istringstream in(s);
        std::string tok;
        while (std::getline(in, tok, ':')) parts.push_back(tok);
    }
    auto bad = [&]() { return InvalidInput("bad algy descriptor: " + std::string(text)); };
    if (parts.empty()) throw bad();
    const std::string& head = parts[0];
    if (head == "exhaustive" && parts.size() == 1) {
        d.kind = AlgyKind::exhaustive;
    } else if (head == "greedy" && parts.size() == 1) {
        d.kind = AlgyKind::greedy;
    } else if (head == "optimal" && parts.size() == 1) {
        d.kind = AlgyKind::optimal;
    } else if ((head == "sort" || head == "claim2") && parts.size() == 2) {
        d.kind = head == "sort" ? AlgyKind::sorting : AlgyKind::claim2;
        auto m = parse_method(parts[1]);
        if (!m) throw bad();
        d.method = *m;
    } else if (head == "tworound") {
        d.kind = AlgyKind::two_round;
        for (std::size_t i = 1; i < parts.size(); ++i) {
            const std::string& opt = parts[i];
            auto eq = opt.find('=');
            if (eq == std::string::npos) throw bad();
            std::string key = opt.substr(0, eq), value = opt.substr(eq + 1);
            try {
                std::size_t used = 0;
                if (key == "p") {
                    d.p = std::stod(value, &used);
                    if (!(*d.p > 0.0 && *d.p <= 1.0)) throw InvalidInput("tworound p must lie in (0,1]");
                } else if (key == "C") {
                    d.C = std::stod(value, &used);
                    if (!(d.C > 0.0)) throw InvalidInput("tworound C must be positive");
                } else if (key == "seed") {
                    d.seed = std::stoull(value, &used);
                } else {
                    throw bad();
                }
                if (used != value.size()) throw bad();
            } catch (const std::logic_error&) {
                throw bad();
            }
        }
    } else {
        throw bad();
    }
    return d;
}

std::string describe(const AlgyDescriptor& d) {
    switch (d.kind) {
        case AlgyKind::exhaustive: return "exhaustive";
        case AlgyKind::greedy: return "greedy";
        case AlgyKind::optimal: return "optimal";
        case AlgyKind::sorting: return std::string("sort:") + method_name(d.method);
        case AlgyKind::claim2: return std::string("claim2:") + method_name(d.method);
        case AlgyKind::two_round:
            return "tworound:" + (d.p ? "p=" + format_double(*d.p) : "C=" + format_double(d.C)) +
                   ":seed=" + std::to_string(d.seed);
    }
    return "?";
}

std::unique_ptr<AlgyStrategy> make_algy(const AlgyDescriptor& d, std::shared_ptr<const Graph> g,
                                        const ReducedGraph* labels) {
    switch (d.kind) {
        case AlgyKind::exhaustive: return std::make_unique<ExhaustiveAlgy>();
        case AlgyKind::greedy: return std::make_unique<GreedyAlgy>();
        case AlgyKind::sorting:
            if (!g->is_complete()) throw InvalidInput("sorting strategies need a complete graph");
            return std::make_unique<SortingAlgy>(g->n(), d.method);
        case AlgyKind::two_round: {
            double p = d.p ? *d.p : two_round_probability(g->n(), d.C);
            return std::make_unique<TwoRoundAlgy>(sample_first_round(*g, p, d.seed), describe(d));
        }
        case AlgyKind::claim2:
            if (!labels) throw InvalidInput("claim2 needs the reduction labelling of the graph");
            if (!(*labels->h == *g)) throw InvalidInput("claim2 labelling does not describe this graph");
            return std::make_unique<Claim2Algy>(*labels, d.method);
        case AlgyKind::optimal: return std::make_unique<OptimalAlgy>(std::move(g));
    }
    throw InvalidInput("unknown algy kind");
}

std::vector<int> sample_first_round(const Graph& g, double p, std::uint64_t seed) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("probability must lie in [0,1]");
    SplitMix64 rng(seed);
    std::vector<int> d;
    for (int id = 0; id < g.m(); ++id)
        if (rng.uniform() < p) d.push_back(id);
    return d;
}

TwoRoundResult run_two_round(std::shared_ptr<const Graph> g, StrategistStrategy& strategist, double p,
                             std::uint64_t seed) {
    AlgyDescriptor desc;
    desc.kind = AlgyKind::two_round;
    desc.p = p;
    desc.seed = seed;
    TwoRoundAlgy algy(sample_first_round(*g, p, seed), describe(desc));
    TwoRoundResult result;
    result.transcript = play_match(g, algy, strategist, MatchOptions{.stop_at_terminal = false});
    result.transcript.seed = seed;
    if (!result.transcript.ok()) throw IllegalMove(*result.transcript.abort_reason);
    result.round1 = static_cast<int>(algy.d().size());
    result.h = algy.h();
    result.round2 = static_cast<int>(result.h.size());
    return result;
}

Claim2Accounting claim2_accounting(const Transcript& t, const ReducedGraph& r) {
    Claim2Accounting a;
    for (const Move& mv : t.moves)
        if (mv.edge.u < r.n() && mv.edge.v < r.n()) ++a.sort_queries;
    GameState s = replay(t);
    std::vector<int> side(r.n());
    for (int v = 0; v < r.n(); ++v) side[v] = s.reaches(r.original(v), r.prime(v)) ? 0 : 1;
    a.cut_value = cut_value(r.source, side);
    return a;
}

long claim2_bound(const Claim2Accounting& a, const ReducedGraph& r) {
    return a.sort_queries + r.n() + 3L * r.l * r.m() + static_cast<long>(r.l) * a.cut_value;
}

}  // namespace aog
