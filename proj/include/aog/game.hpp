#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "aog/bits.hpp"
#include "aog/graph.hpp"

namespace aog {

/// Orientation of an edge: from -> to.
struct Direction {
    int from = 0;
    int to = 0;
    friend bool operator==(const Direction&, const Direction&) = default;
};

enum class EdgeState { open, queried, forced };

struct EdgeStatus {
    EdgeState state = EdgeState::open;
    std::optional<Direction> dir;  ///< set for queried and forced edges

    bool determined() const { return state != EdgeState::open; }
};

const char* to_string(EdgeState s);

/// A partial acyclic orientation together with its reflexive-transitive
/// closure. States are values: apply_answer returns a new state.
///
/// An unqueried edge xy is forced exactly when x and y are comparable in the
/// closure. Forced edges stay implicit in the closure, so queries() counts
/// only questions actually asked.
class GameState {
public:
    explicit GameState(std::shared_ptr<const Graph> graph);

    const Graph& graph() const { return *graph_; }
    const std::shared_ptr<const Graph>& graph_ptr() const { return graph_; }

    /// True iff a directed path from -> ... -> to exists (reflexive).
    bool reaches(int from, int to) const { return reach_.test(from, to); }
    bool comparable(int a, int b) const { return reach_.test(a, b) || reach_.test(b, a); }
    const BitMatrix& reach() const { return reach_; }

    int queries() const { return queries_; }
    std::optional<Direction> oriented(int edge_id) const;
    int oriented_count() const;

    /// Throws IllegalMove for non-edges, repeated queries and cycle-creating
    /// directions.
    GameState apply_answer(Edge e, Direction d) const;

    /// Throws IllegalMove for non-edges.
    EdgeStatus edge_status(Edge e) const;
    EdgeStatus status(int edge_id) const;

    /// Whether answering d is allowed (no directed cycle, edge not yet queried).
    bool is_legal(Edge e, Direction d) const;

    bool is_terminal() const;
    std::vector<int> open_edges() const;

    /// Number of open edges that `d` would newly determine if answered.
    int newly_forced(Edge e, Direction d) const;

private:
    void add_arc(int from, int to);

    std::shared_ptr<const Graph> graph_;
    std::vector<std::int8_t> oriented_;  // 0 none, +1 low->high, -1 high->low
    BitMatrix reach_;
    int queries_ = 0;
};

/// Number of acyclic orientations of the whole graph compatible with s.
/// Limited to 20 unqueried edges.
std::uint64_t extension_count(const GameState& s);
inline constexpr int kExtensionGuard = 20;

/// The questioner. Returns nullopt when it has nothing left to ask.
class AlgyStrategy {
public:
    virtual ~AlgyStrategy() = default;
    virtual std::string name() const = 0;
    virtual std::optional<Edge> next_query(const GameState& s) = 0;
};

/// The answerer. Must return a direction that keeps the orientation acyclic.
class StrategistStrategy {
public:
    virtual ~StrategistStrategy() = default;
    virtual std::string name() const = 0;
    virtual Direction answer(const GameState& s, Edge e) = 0;
};

struct Move {
    Edge edge;
    Direction dir;
    bool forced = false;
};

struct Transcript {
    std::shared_ptr<const Graph> graph;
    std::vector<Move> moves;
    int total = 0;
    std::string algy;
    std::string strategist;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> abort_reason;  ///< set when a player broke the rules

    bool ok() const { return !abort_reason; }
};

struct MatchOptions {
    /// Stop as soon as the state is terminal (the game's ending rule).
    bool stop_at_terminal = true;
};

/// Runs algy against strategist until the game ends. Rule violations stop
/// the match and are recorded in Transcript::abort_reason.
Transcript play_match(std::shared_ptr<const Graph> g, AlgyStrategy& algy, StrategistStrategy& strategist,
                      MatchOptions options = {});

/// Replays a transcript from the empty state. Throws IllegalMove if any move
/// is illegal or a was-forced flag disagrees with the state.
GameState replay(const Transcript& t);

nlohmann::ordered_json to_json(const Transcript& t);
Transcript transcript_from_json(const nlohmann::json& j);

std::string hex64(std::uint64_t v);

}  // namespace aog
