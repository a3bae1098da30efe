#pragma once

// Finite-support mixed strategies: exact expected costs by enumerating the
// product distribution, and verification of mixed Nash equilibria.

#include <cstddef>
#include <vector>

#include "kcof/game.hpp"

namespace kcof {

struct WeightedOpinion {
    Rational opinion;
    Rational probability;
};

using MixedStrategy = std::vector<WeightedOpinion>;
using RandomizedOpinionVector = std::vector<MixedStrategy>;

inline constexpr std::size_t max_realizations = 1'000'000;

/// Throws unless every player has a non-empty support with positive
/// probabilities summing to exactly 1 and the product support is at most
/// max_realizations.
void validate_randomized(const GameInstance& inst, const RandomizedOpinionVector& rz);

/// Point-mass strategies.
RandomizedOpinionVector as_randomized(const OpinionVector& z);

// In every realization of z_{-i} the neighborhood of i is fixed before i's
// own draw. When i plays a point mass, distance ties are resolved exactly as
// in the deterministic game (so point masses reproduce it verbatim);
// otherwise the lowest-index selection is used.

Rational expected_player_cost(const GameInstance& inst, const RandomizedOpinionVector& rz, PlayerIndex i);
std::vector<Rational> expected_player_costs(const GameInstance& inst, const RandomizedOpinionVector& rz);
Rational expected_social_cost(const GameInstance& inst, const RandomizedOpinionVector& rz);

struct Deviation {
    Rational y_star;
    Rational expected_cost;
};

/// Expected cost of i when she plays the deterministic opinion y.
Rational expected_deviation_cost(const GameInstance& inst, const RandomizedOpinionVector& rz, PlayerIndex i,
                                 const Rational& y);

/// Global minimiser of the expected deviation cost (ties to the smallest y).
Deviation best_deterministic_deviation(const GameInstance& inst, const RandomizedOpinionVector& rz, PlayerIndex i);

struct MixedViolation {
    PlayerIndex player = 0;
    Rational y_star;
    Rational improvement;
};

struct MixedNashVerdict {
    bool is_mne = false;
    std::vector<MixedViolation> violations;
    std::vector<Rational> expected_costs;
    std::vector<Deviation> best_deviations;
};

MixedNashVerdict is_mixed_nash(const GameInstance& inst, const RandomizedOpinionVector& rz);

} // namespace kcof
