#pragma once

// Pure Nash equilibria of 1-COF games through the segment DAG: every
// equilibrium decomposes into consecutive blocks C(a,b,c) in which players
// a..b follow their right neighbour and b+1..c their left one. Each block
// fixes its opinions uniquely; legit blocks become DAG nodes, compatible
// neighbouring blocks are joined by edges, and source-sink paths are the
// equilibria. Path weight equals the social cost of the equilibrium.

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "kcof/game.hpp"

namespace kcof {

struct SegmentKey {
    PlayerIndex a = 0;
    PlayerIndex b = 0;
    PlayerIndex c = 0;

    friend auto operator<=>(const SegmentKey&, const SegmentKey&) = default;
};

/// "C(a,b,c)" with 1-based indices.
std::string to_string(const SegmentKey& key);

struct Segment {
    SegmentKey key;
    std::vector<Rational> opinions; // players a..c
    Rational weight;                // sum of |z_p - s_p| over the block
    bool boundary_ok = false;       // a != 2 and c != n-1 (1-based)
    bool adjacent_consistent = false; // adjacent-only consistency test
    bool pairwise_consistent = false; // every designated neighbour is a nearest one
    bool legit = false;             // boundary_ok && pairwise_consistent
    bool discrepancy = false;       // the two consistency tests disagree

    const Rational& opinion(PlayerIndex p) const { return opinions[p - key.a]; }
};

/// Builds block C(a,b,c) (0-based, a <= b < c < n) of a 1-COF game.
Segment build_segment(const GameInstance& inst, PlayerIndex a, PlayerIndex b, PlayerIndex c);

class SegmentGraph {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    /// Legit segments ordered by (a,b,c); edge lists hold node indices.
    const std::vector<Segment>& nodes() const { return nodes_; }
    const std::vector<std::size_t>& source_edges() const { return source_; }
    const std::vector<std::size_t>& successors(std::size_t node) const { return succ_[node]; }
    bool to_sink(std::size_t node) const { return sink_[node]; }
    std::size_t edge_count() const;
    std::size_t discrepancies() const { return discrepancies_; }
    std::size_t num_players() const { return n_; }

    /// Node indices in a topological order (source and sink excluded).
    std::vector<std::size_t> topological_order() const;

    std::size_t find(const SegmentKey& key) const;

    /// Graphviz rendering; node labels are "C(a,b,c) w=weight".
    std::string to_dot() const;

private:
    friend SegmentGraph build_segment_graph(const GameInstance& inst);

    std::size_t n_ = 0;
    std::vector<Segment> nodes_;
    std::vector<std::size_t> source_;
    std::vector<std::vector<std::size_t>> succ_;
    std::vector<bool> sink_;
    std::size_t discrepancies_ = 0;
};

SegmentGraph build_segment_graph(const GameInstance& inst);

bool exists_pne(const GameInstance& inst);

struct PneSolution {
    OpinionVector opinions;
    Rational social_cost;
    std::vector<SegmentKey> path;
};

/// Minimum- resp. maximum-cost equilibrium, ties broken towards the
/// lexicographically smallest segment sequence. Empty when none exists.
std::optional<PneSolution> best_pne(const GameInstance& inst);
std::optional<PneSolution> worst_pne(const GameInstance& inst);

struct Enumeration {
    std::vector<PneSolution> equilibria; // in lexicographic path order
    // Paths whose assembled vector failed the full equilibrium check (for
    // instance a non-adjacent player closer than a designated neighbour).
    std::size_t rejected_paths = 0;
    // Paths repeating an earlier vector; equal beliefs let several
    // decompositions describe the same equilibrium.
    std::size_t duplicate_paths = 0;
    bool truncated = false;
};

/// Depth-first source-sink path enumeration, stopping after `limit`
/// distinct verified equilibria.
Enumeration enumerate_pne(const GameInstance& inst, std::size_t limit);

/// Independent check of the DAG algorithm for n <= 16: tries every
/// left/right neighbour string and keeps the vectors that are equilibria.
std::vector<OpinionVector> brute_force_pne_oracle(const GameInstance& inst);

OpinionVector assemble(const SegmentGraph& graph, const std::vector<std::size_t>& path);

} // namespace kcof
