#include "kcof/optimizer.hpp"

#include <algorithm>
#include <random>

#include "kcof/error.hpp"

namespace kcof {

void validate_config(const OptimizerConfig& cfg)
{
    if (cfg.candidate_grid_extra < 1 || cfg.max_sweeps < 1 || cfg.restarts < 1) {
        fail(ErrorCode::InvalidArgument, "optimizer refinement levels, sweeps and restarts must be positive");
    }
}

std::vector<Rational> candidate_opinions(const GameInstance& inst)
{
    std::vector<Rational> distinct = inst.beliefs();
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

    std::vector<Rational> out = distinct;
    for (std::size_t i = 0; i < distinct.size(); ++i) {
        for (std::size_t j = i + 1; j < distinct.size(); ++j) {
            const Rational& a = distinct[i];
            const Rational& b = distinct[j];
            out.push_back(midpoint(a, b));
            out.push_back((Rational(2) * a + b) / Rational(3));
            out.push_back((a + Rational(2) * b) / Rational(3));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

struct Descent {
    OpinionVector z;
    Rational cost;
    std::size_t sweeps = 0;
};

// Strictly improving single-player moves; ascending scan makes the smallest
// minimising candidate win ties.
void descend(const GameInstance& inst, const std::vector<Rational>& grid, int max_sweeps, Descent& d)
{
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        ++d.sweeps;
        const Rational before = d.cost;
        bool moved = false;
        for (PlayerIndex i = 0; i < inst.size(); ++i) {
            const Rational keep = d.z[i];
            Rational best_cost = d.cost;
            const Rational* best = nullptr;
            for (const Rational& y : grid) {
                if (y == keep) {
                    continue;
                }
                d.z[i] = y;
                Rational c = social_cost(inst, d.z);
                if (c < best_cost) {
                    best_cost = std::move(c);
                    best = &y;
                }
            }
            d.z[i] = best ? *best : keep;
            if (best) {
                d.cost = best_cost;
                moved = true;
            }
        }
        if (before < d.cost) {
            fail(ErrorCode::Internal, "coordinate descent increased the social cost");
        }
        if (!moved) {
            return;
        }
    }
}

// One move per step: the single-player change with the largest decrease,
// smallest player and then smallest candidate on ties. Slower than sweeping
// but does not let the first players lock the others out.
void descend_steepest(const GameInstance& inst, const std::vector<Rational>& grid, int max_steps, Descent& d)
{
    for (int step = 0; step < max_steps; ++step) {
        ++d.sweeps;
        Rational best_cost = d.cost;
        PlayerIndex best_i = 0;
        const Rational* best = nullptr;
        for (PlayerIndex i = 0; i < inst.size(); ++i) {
            const Rational keep = d.z[i];
            for (const Rational& y : grid) {
                if (y == keep) {
                    continue;
                }
                d.z[i] = y;
                Rational c = social_cost(inst, d.z);
                if (c < best_cost) {
                    best_cost = std::move(c);
                    best_i = i;
                    best = &y;
                }
            }
            d.z[i] = keep;
        }
        if (!best) {
            return;
        }
        d.z[best_i] = *best;
        d.cost = std::move(best_cost);
    }
}

// Adds the midpoints between every current opinion and its neighbours in the grid.
std::vector<Rational> refine(const std::vector<Rational>& grid, const OpinionVector& z)
{
    std::vector<Rational> out = grid;
    for (const Rational& x : z) {
        auto hi = std::upper_bound(grid.begin(), grid.end(), x);
        if (hi != grid.end()) {
            out.push_back(midpoint(x, *hi));
        }
        auto lo = std::lower_bound(grid.begin(), grid.end(), x);
        if (lo != grid.begin()) {
            out.push_back(midpoint(x, *std::prev(lo)));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace

OptimizerResult optimize_social_cost(const GameInstance& inst, const OptimizerConfig& cfg,
                                     const std::vector<OpinionVector>& starts)
{
    validate_config(cfg);
    const std::vector<Rational> grid = candidate_opinions(inst);

    std::vector<OpinionVector> initial;
    initial.push_back(inst.beliefs());
    for (const auto& z : starts) {
        validate_opinions(inst, z);
        initial.push_back(z);
    }
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<std::size_t> pick(0, grid.size() - 1);
    for (int r = 0; r < cfg.restarts; ++r) {
        OpinionVector z(inst.size());
        for (auto& x : z) {
            x = grid[pick(rng)];
        }
        initial.push_back(std::move(z));
    }

    // The deterministic starts are descended both ways.
    const std::size_t steepest_starts = 1 + starts.size();
    for (std::size_t i = 0; i < steepest_starts; ++i) {
        initial.push_back(initial[i]);
    }

    OptimizerResult best;
    bool have = false;
    for (std::size_t idx = 0; idx < initial.size(); ++idx) {
        Descent d{std::move(initial[idx]), Rational(), 0};
        d.cost = social_cost(inst, d.z);
        if (idx + steepest_starts >= initial.size()) {
            descend_steepest(inst, grid, cfg.max_sweeps, d);
        }
        descend(inst, grid, cfg.max_sweeps, d);
        std::vector<Rational> level_grid = grid;
        for (int level = 0; level < cfg.candidate_grid_extra; ++level) {
            level_grid = refine(level_grid, d.z);
            descend(inst, level_grid, cfg.max_sweeps, d);
        }
        best.sweeps += d.sweeps;
        ++best.starts;
        if (!have || d.cost < best.social_cost || (d.cost == best.social_cost && d.z < best.opinions)) {
            best.opinions = std::move(d.z);
            best.social_cost = std::move(d.cost);
            have = true;
        }
    }
    return best;
}

} // namespace kcof
