#pragma once

// Closed-form lower bounds on the optimal social cost, per-player cost caps
// that hold at every pure equilibrium, and certified PoA brackets.

#include <optional>
#include <vector>

#include "kcof/game.hpp"
#include "kcof/optimizer.hpp"

namespace kcof {

struct StarWindow {
    PlayerIndex l_star = 0;
    PlayerIndex r_star = 0; // r_star - l_star == k
};

/// Narrowest window of k+1 consecutive beliefs containing each player;
/// ties go to the smallest l_star.
std::vector<StarWindow> star_windows(const GameInstance& inst);

/// The adjacent player with the closer belief (endpoints forced, ties to i-1).
std::vector<PlayerIndex> eta_map(const GameInstance& inst);

/// sum_i (s_{r*(i)} - s_{l*(i)}) / (2(k+1)); below SC(z) for every z.
Rational opt_lower_bound_k(const GameInstance& inst);

/// (1/3) sum_i |s_i - s_eta(i)|, k = 1 only.
Rational opt_lower_bound_1(const GameInstance& inst);

/// 2 (s_{r*(i)} - s_{l*(i)}).
Rational pne_player_cost_cap(const GameInstance& inst, PlayerIndex i);

/// |s_i - s_eta(i)|, k = 1 only.
Rational pne_player_cost_cap_1(const GameInstance& inst, PlayerIndex i);

struct SmallChainVerdict {
    bool case1_ok = false; // s_b >= (3 s_a + 5 s_c) / 8
    bool case2_ok = false; // s_b <= (5 s_a + 3 s_c) / 8
};

SmallChainVerdict small_chain_conditions(const Rational& s_a, const Rational& s_b, const Rational& s_c);

struct BracketOptions {
    std::optional<Rational> opt_upper_hint;
    // Needed for k >= 2, where no exact solver exists; must be a verified PNE.
    std::optional<OpinionVector> known_pne;
    bool run_optimizer = true;
    OptimizerConfig optimizer;
    std::vector<OpinionVector> optimizer_starts;
};

struct PoABracket {
    std::optional<Rational> worst_pne_cost;
    std::optional<OpinionVector> worst_pne;
    Rational opt_lower;
    Rational opt_upper;
    OpinionVector opt_upper_vector; // empty when the hint was the tightest upper bound
    std::optional<Rational> ratio_lower; // worst / opt_upper
    std::optional<Rational> ratio_upper; // worst / opt_lower
    bool ratio_lower_unbounded = false;
    bool ratio_upper_unbounded = false;
};

PoABracket poa_bracket(const GameInstance& inst, const BracketOptions& options = {});

} // namespace kcof
