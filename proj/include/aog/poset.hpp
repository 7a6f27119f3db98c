#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aog/bits.hpp"
#include "aog/game.hpp"

namespace aog {

/// Strict partial order on 0..n-1, kept transitively closed.
class Poset {
public:
    Poset() = default;
    explicit Poset(int n) : lt_(n) {}

    /// Transitive closure of the given arcs. Throws InvalidInput if they
    /// contain a directed cycle or a loop.
    static Poset from_arcs(int n, std::span<const Direction> arcs);

    int size() const { return lt_.size(); }
    bool less(int a, int b) const { return lt_.test(a, b); }
    bool comparable(int a, int b) const { return less(a, b) || less(b, a); }
    const BitMatrix& relation() const { return lt_; }

    /// Adds a < b and everything it implies. Throws InvalidInput if b < a.
    void add(int a, int b);

    /// a < b with no c strictly between them.
    bool covers(int a, int b) const;

    /// Irreflexive, antisymmetric and transitive.
    bool valid() const;

    /// Cover relation, sorted.
    std::vector<Direction> hasse_arcs() const;

private:
    BitMatrix lt_;
};

/// Deterministic linear extension: repeatedly take the lowest-index minimal
/// element.
std::vector<int> linear_extension(const Poset& p);

/// Poset file: first line "N", then one "u v" line per generator (u < v in
/// the order). The closure is taken on load.
Poset parse_poset(std::string_view text);
std::string serialize_poset(const Poset& p);

}  // namespace aog
