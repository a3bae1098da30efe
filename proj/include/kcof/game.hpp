#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "kcof/rational.hpp"

namespace kcof {

// Players are indexed from 0 throughout the C++ API; reports and files
// number them from 1.
using PlayerIndex = std::size_t;
using OpinionVector = std::vector<Rational>;

/// A k-COF game: neighborhood size k and a belief vector sorted ascending.
class GameInstance {
public:
    /// Throws Error(InvalidArgument) if k < 1, if there are fewer than k+1
    /// players, or if the beliefs are not sorted (the message names the
    /// first offending index, 1-based).
    GameInstance(int k, std::vector<Rational> beliefs, std::vector<std::string> labels = {});

    int k() const { return k_; }
    std::size_t size() const { return beliefs_.size(); }
    const std::vector<Rational>& beliefs() const { return beliefs_; }
    const Rational& belief(PlayerIndex i) const { return beliefs_[i]; }
    const std::vector<std::string>& labels() const { return labels_; }

    friend bool operator==(const GameInstance&, const GameInstance&) = default;

private:
    int k_;
    std::vector<Rational> beliefs_;
    std::vector<std::string> labels_;
};

struct Neighborhood {
    PlayerIndex owner = 0;
    std::vector<PlayerIndex> members; // ascending, exactly k entries, never contains owner
    // More than one interval-distinct selection of the k nearest opinions
    // exists because of an exact distance tie at the k-th position.
    bool ambiguous = false;
    // The tie was resolved away from the lowest-index selection so that the
    // owner's current opinion sits at the midpoint of its interval.
    bool resolved_by_opinion = false;
};

struct Interval {
    Rational lo;
    Rational hi;
};

struct IntervalInfo {
    Interval interval;
    PlayerIndex leftmost_owner = 0;
    PlayerIndex rightmost_owner = 0;
};

/// Every interval-distinct way of choosing the k opinions closest to s_i
/// (at most three when a tie straddles the k-th position). The
/// lowest-index selection comes first.
std::vector<Neighborhood> admissible_neighborhoods(const GameInstance& inst, const OpinionVector& z, PlayerIndex i);

/// The k players closest to s_i. Ties are broken by lower index, except
/// that an admissible selection placing z_i at the midpoint of
/// {s_i} ∪ {z_j : j in N_i} is preferred when one exists.
Neighborhood neighborhood(const GameInstance& inst, const OpinionVector& z, PlayerIndex i);

IntervalInfo interval(const GameInstance& inst, const OpinionVector& z, PlayerIndex i);

Rational player_cost(const GameInstance& inst, const OpinionVector& z, PlayerIndex i);
std::vector<Rational> player_costs(const GameInstance& inst, const OpinionVector& z);
Rational social_cost(const GameInstance& inst, const OpinionVector& z);

/// Midpoint of {s_i} ∪ {z_j : j in N_i}; the unique minimiser of i's cost
/// for the neighborhood induced by the current state.
Rational best_response(const GameInstance& inst, const OpinionVector& z, PlayerIndex i);

/// Cost of player i if she expresses y while everybody else keeps z and
/// her neighborhood stays the one induced by z.
Rational deviation_cost(const GameInstance& inst, const OpinionVector& z, PlayerIndex i, const Rational& y);

struct Violation {
    PlayerIndex player = 0;
    Rational best_response;
    Rational cost_delta; // strictly positive improvement
};

struct PureNashVerdict {
    bool is_pne = false;
    std::vector<Violation> violations;
    bool distance_tie = false;   // some neighborhood had an ambiguous boundary tie
    bool tie_dependent = false;  // the verdict used a non-lowest-index tie resolution
};

PureNashVerdict is_pure_nash(const GameInstance& inst, const OpinionVector& z);

enum class DynamicsOutcome { Converged, CycleDetected, Exhausted };

const char* to_string(DynamicsOutcome outcome);

struct DynamicsOptions {
    std::vector<PlayerIndex> schedule; // empty means round-robin 0..n-1
    std::size_t max_rounds = 1000;
    bool record_trajectory = false;
    std::size_t state_window = 10000;
};

struct DynamicsResult {
    DynamicsOutcome outcome = DynamicsOutcome::Exhausted;
    OpinionVector final_state;
    std::size_t rounds = 0;
    std::size_t period = 0; // set for CycleDetected
    std::vector<OpinionVector> trajectory; // states after each round, z0 first
};

DynamicsResult best_response_dynamics(const GameInstance& inst, OpinionVector z0, const DynamicsOptions& options = {});

struct StructuralReport {
    bool monotone = false;
    bool in_belief_range = false;
    bool consecutive_neighborhoods = false;
};

StructuralReport check_structural_lemmas(const GameInstance& inst, const OpinionVector& z);

void validate_opinions(const GameInstance& inst, const OpinionVector& z);

} // namespace kcof
