#include "kcof/mixed.hpp"

#include <algorithm>

#include "kcof/error.hpp"

namespace kcof {

namespace {

void check_index(const GameInstance& inst, PlayerIndex i)
{
    if (i >= inst.size()) {
        fail(ErrorCode::InvalidArgument, "player index " + std::to_string(i + 1) + " out of range");
    }
}

// One realization of z_{-i}: its probability and the span [lo, hi] of s_i
// and the neighbour opinions.
struct Span {
    Rational probability;
    Rational lo;
    Rational hi;
};

std::vector<Span> spans_for(const GameInstance& inst, const RandomizedOpinionVector& rz, PlayerIndex i)
{
    validate_randomized(inst, rz);
    check_index(inst, i);
    const std::size_t n = inst.size();
    const bool point_mass = rz[i].size() == 1;

    OpinionVector z(n);
    z[i] = point_mass ? rz[i][0].opinion : inst.belief(i);
    std::vector<std::size_t> pos(n, 0);

    std::vector<Span> out;
    while (true) {
        Rational p(1);
        for (PlayerIndex j = 0; j < n; ++j) {
            if (j != i) {
                z[j] = rz[j][pos[j]].opinion;
                p *= rz[j][pos[j]].probability;
            }
        }
        const Neighborhood nb = point_mass ? neighborhood(inst, z, i) : admissible_neighborhoods(inst, z, i).front();
        Rational lo = inst.belief(i);
        Rational hi = lo;
        for (PlayerIndex j : nb.members) {
            lo = min(lo, z[j]);
            hi = max(hi, z[j]);
        }
        out.push_back({std::move(p), std::move(lo), std::move(hi)});

        // Odometer over the other players' supports.
        PlayerIndex j = 0;
        for (; j < n; ++j) {
            if (j == i) {
                continue;
            }
            if (++pos[j] < rz[j].size()) {
                break;
            }
            pos[j] = 0;
        }
        if (j == n) {
            return out;
        }
    }
}

Rational g(const std::vector<Span>& spans, const Rational& y)
{
    Rational total;
    for (const auto& sp : spans) {
        total += sp.probability * max(y - sp.lo, sp.hi - y);
    }
    return total;
}

} // namespace

void validate_randomized(const GameInstance& inst, const RandomizedOpinionVector& rz)
{
    if (rz.size() != inst.size()) {
        fail(ErrorCode::InvalidArgument, "randomized opinion vector has " + std::to_string(rz.size())
                                             + " players, expected " + std::to_string(inst.size()));
    }
    std::size_t realizations = 1;
    for (std::size_t i = 0; i < rz.size(); ++i) {
        const std::string who = "player " + std::to_string(i + 1);
        if (rz[i].empty()) {
            fail(ErrorCode::InvalidArgument, who + " has an empty support");
        }
        Rational total;
        for (const auto& w : rz[i]) {
            if (w.probability.sign() <= 0) {
                fail(ErrorCode::InvalidArgument, who + " has a non-positive probability");
            }
            total += w.probability;
        }
        if (total != Rational(1)) {
            fail(ErrorCode::InvalidArgument, who + "'s probabilities sum to " + total.str() + ", not 1");
        }
        if (realizations > max_realizations / rz[i].size()) {
            fail(ErrorCode::LimitExceeded, "more than " + std::to_string(max_realizations) + " realizations");
        }
        realizations *= rz[i].size();
    }
}

RandomizedOpinionVector as_randomized(const OpinionVector& z)
{
    RandomizedOpinionVector rz;
    rz.reserve(z.size());
    for (const auto& x : z) {
        rz.push_back({{x, Rational(1)}});
    }
    return rz;
}

Rational expected_player_cost(const GameInstance& inst, const RandomizedOpinionVector& rz, PlayerIndex i)
{
    const auto spans = spans_for(inst, rz, i);
    Rational total;
    for (const auto& w : rz[i]) {
        total += w.probability * g(spans, w.opinion);
    }
    return total;
}

std::vector<Rational> expected_player_costs(const GameInstance& inst, const RandomizedOpinionVector& rz)
{
    std::vector<Rational> out;
    out.reserve(inst.size());
    for (PlayerIndex i = 0; i < inst.size(); ++i) {
        out.push_back(expected_player_cost(inst, rz, i));
    }
    return out;
}

Rational expected_social_cost(const GameInstance& inst, const RandomizedOpinionVector& rz)
{
    Rational total;
    for (const auto& c : expected_player_costs(inst, rz)) {
        total += c;
    }
    return total;
}

Rational expected_deviation_cost(const GameInstance& inst, const RandomizedOpinionVector& rz, PlayerIndex i,
                                 const Rational& y)
{
    return g(spans_for(inst, rz, i), y);
}

Deviation best_deterministic_deviation(const GameInstance& inst, const RandomizedOpinionVector& rz, PlayerIndex i)
{
    const auto spans = spans_for(inst, rz, i);

    // g is convex piecewise linear with kinks only at the span midpoints.
    std::vector<Rational> kinks;
    kinks.reserve(spans.size());
    for (const auto& sp : spans) {
        kinks.push_back(midpoint(sp.lo, sp.hi));
    }
    std::sort(kinks.begin(), kinks.end());
    kinks.erase(std::unique(kinks.begin(), kinks.end()), kinks.end());

    Deviation best{kinks.front(), g(spans, kinks.front())};
    for (std::size_t t = 1; t < kinks.size(); ++t) {
        Rational v = g(spans, kinks[t]);
        if (v < best.expected_cost) {
            best = {kinks[t], std::move(v)};
        }
    }

    std::vector<Rational> probes = inst.beliefs();
    for (const auto& strategy : rz) {
        for (const auto& w : strategy) {
            probes.push_back(w.opinion);
        }
    }
    for (const auto& y : probes) {
        if (g(spans, y) < best.expected_cost) {
            fail(ErrorCode::Internal, "deviation probe beat every kink of a convex function");
        }
    }
    return best;
}

MixedNashVerdict is_mixed_nash(const GameInstance& inst, const RandomizedOpinionVector& rz)
{
    validate_randomized(inst, rz);
    MixedNashVerdict v;
    v.is_mne = true;
    for (PlayerIndex i = 0; i < inst.size(); ++i) {
        Rational cost = expected_player_cost(inst, rz, i);
        Deviation dev = best_deterministic_deviation(inst, rz, i);
        if (dev.expected_cost < cost) {
            v.is_mne = false;
            v.violations.push_back({i, dev.y_star, cost - dev.expected_cost});
        }
        v.expected_costs.push_back(std::move(cost));
        v.best_deviations.push_back(std::move(dev));
    }
    return v;
}

} // namespace kcof
