#pragma once

// Upper bound on the optimal social cost: coordinate descent over a finite
// grid of candidate opinions, restarted from several initial vectors.

#include <cstdint>
#include <vector>

#include "kcof/game.hpp"

namespace kcof {

struct OptimizerConfig {
    int candidate_grid_extra = 2; // refinement levels after the first descent
    int max_sweeps = 200;
    int restarts = 8;             // random candidate assignments
    std::uint64_t seed = 0;
};

void validate_config(const OptimizerConfig& cfg);

struct OptimizerResult {
    OpinionVector opinions;
    Rational social_cost;
    std::size_t starts = 0; // descents run; deterministic starts count twice
    std::size_t sweeps = 0;
};

/// Beliefs, pairwise midpoints and third-points, sorted and deduplicated.
std::vector<Rational> candidate_opinions(const GameInstance& inst);

/// Best vector found from z = s, every vector in `starts`, and cfg.restarts
/// random grid assignments. z = s and `starts` are descended twice, once
/// sweeping players in order and once taking the steepest single move. Deterministic for a fixed seed. Equal costs are
/// resolved towards the lexicographically smallest vector.
OptimizerResult optimize_social_cost(const GameInstance& inst, const OptimizerConfig& cfg = {},
                                     const std::vector<OpinionVector>& starts = {});

} // namespace kcof
