#include "kcof/game.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <unordered_map>

#include "kcof/error.hpp"

namespace kcof {

GameInstance::GameInstance(int k, std::vector<Rational> beliefs, std::vector<std::string> labels)
    : k_(k), beliefs_(std::move(beliefs)), labels_(std::move(labels))
{
    if (k_ < 1) {
        fail(ErrorCode::InvalidArgument, "k must be at least 1");
    }
    if (beliefs_.size() < static_cast<std::size_t>(k_) + 1) {
        fail(ErrorCode::InvalidArgument, "a " + std::to_string(k_) + "-COF game needs at least "
                                             + std::to_string(k_ + 1) + " players, got "
                                             + std::to_string(beliefs_.size()));
    }
    for (std::size_t i = 1; i < beliefs_.size(); ++i) {
        if (beliefs_[i] < beliefs_[i - 1]) {
            fail(ErrorCode::InvalidArgument, "beliefs must be sorted ascending: belief " + std::to_string(i + 1)
                                                 + " (" + beliefs_[i].str() + ") is smaller than belief "
                                                 + std::to_string(i) + " (" + beliefs_[i - 1].str() + ")");
        }
    }
    if (!labels_.empty() && labels_.size() != beliefs_.size()) {
        fail(ErrorCode::InvalidArgument, "labels must name every player");
    }
}

void validate_opinions(const GameInstance& inst, const OpinionVector& z)
{
    if (z.size() != inst.size()) {
        fail(ErrorCode::InvalidArgument, "opinion vector has " + std::to_string(z.size()) + " entries, game has "
                                             + std::to_string(inst.size()) + " players");
    }
}

namespace {

void check_player(const GameInstance& inst, const OpinionVector& z, PlayerIndex i)
{
    validate_opinions(inst, z);
    if (i >= inst.size()) {
        fail(ErrorCode::InvalidArgument, "player index " + std::to_string(i + 1) + " out of range");
    }
}

struct Candidate {
    Rational dist;
    PlayerIndex j;
};

struct Option {
    std::vector<PlayerIndex> members;
    Rational lo;
    Rational hi;
};

Option make_option(const GameInstance& inst, const OpinionVector& z, PlayerIndex i, std::vector<PlayerIndex> members)
{
    std::sort(members.begin(), members.end());
    Option o{std::move(members), inst.belief(i), inst.belief(i)};
    for (PlayerIndex j : o.members) {
        if (z[j] < o.lo) {
            o.lo = z[j];
        }
        if (o.hi < z[j]) {
            o.hi = z[j];
        }
    }
    return o;
}

// Interval-distinct selections of the k nearest opinions; lowest-index one first.
std::vector<Option> options_for(const GameInstance& inst, const OpinionVector& z, PlayerIndex i)
{
    const std::size_t n = inst.size();
    const std::size_t k = static_cast<std::size_t>(inst.k());
    const Rational& s = inst.belief(i);

    std::vector<Candidate> cands;
    cands.reserve(n - 1);
    for (PlayerIndex j = 0; j < n; ++j) {
        if (j != i) {
            cands.push_back({abs(z[j] - s), j});
        }
    }
    auto by_dist_then_index = [](const Candidate& a, const Candidate& b) {
        const auto c = a.dist <=> b.dist;
        return c != 0 ? c < 0 : a.j < b.j;
    };
    std::sort(cands.begin(), cands.end(), by_dist_then_index);

    const Rational& boundary = cands[k - 1].dist;
    std::vector<PlayerIndex> forced;
    std::vector<PlayerIndex> tied; // ascending index
    for (const auto& c : cands) {
        if (c.dist < boundary) {
            forced.push_back(c.j);
        } else if (c.dist == boundary) {
            tied.push_back(c.j);
        }
    }
    std::sort(tied.begin(), tied.end());
    const std::size_t take = k - forced.size();

    std::vector<PlayerIndex> left;
    std::vector<PlayerIndex> right;
    for (PlayerIndex j : tied) {
        (z[j] < s ? left : right).push_back(j);
    }

    auto with = [&](std::vector<PlayerIndex> extra) {
        std::vector<PlayerIndex> m = forced;
        m.insert(m.end(), extra.begin(), extra.end());
        return make_option(inst, z, i, std::move(m));
    };

    std::vector<Option> out;
    out.push_back(with(std::vector<PlayerIndex>(tied.begin(), tied.begin() + static_cast<std::ptrdiff_t>(take))));
    if (boundary.sign() == 0 || left.empty() || right.empty()) {
        return out;
    }

    auto push_unique = [&out](Option o) {
        for (const auto& e : out) {
            if (e.lo == o.lo && e.hi == o.hi) {
                return;
            }
        }
        out.push_back(std::move(o));
    };
    if (left.size() >= take) {
        push_unique(with(std::vector<PlayerIndex>(left.begin(), left.begin() + static_cast<std::ptrdiff_t>(take))));
    }
    if (right.size() >= take) {
        push_unique(with(std::vector<PlayerIndex>(right.begin(), right.begin() + static_cast<std::ptrdiff_t>(take))));
    }
    if (take >= 2) {
        std::vector<PlayerIndex> both{left.front(), right.front()};
        for (PlayerIndex j : tied) {
            if (both.size() == take) {
                break;
            }
            if (j != left.front() && j != right.front()) {
                both.push_back(j);
            }
        }
        push_unique(with(std::move(both)));
    }
    return out;
}

struct Resolved {
    Option option;
    bool ambiguous;
    bool resolved_by_opinion;
};

Resolved resolve(const GameInstance& inst, const OpinionVector& z, PlayerIndex i)
{
    auto opts = options_for(inst, z, i);
    const bool ambiguous = opts.size() > 1;
    for (std::size_t o = 0; o < opts.size(); ++o) {
        if (midpoint(opts[o].lo, opts[o].hi) == z[i]) {
            return {std::move(opts[o]), ambiguous, o != 0};
        }
    }
    return {std::move(opts.front()), ambiguous, false};
}

Rational cost_at(const Rational& y, const Rational& lo, const Rational& hi) { return max(y - lo, hi - y); }

} // namespace

std::vector<Neighborhood> admissible_neighborhoods(const GameInstance& inst, const OpinionVector& z, PlayerIndex i)
{
    check_player(inst, z, i);
    auto opts = options_for(inst, z, i);
    std::vector<Neighborhood> out;
    for (std::size_t o = 0; o < opts.size(); ++o) {
        out.push_back({i, std::move(opts[o].members), opts.size() > 1, o != 0});
    }
    return out;
}

Neighborhood neighborhood(const GameInstance& inst, const OpinionVector& z, PlayerIndex i)
{
    check_player(inst, z, i);
    auto r = resolve(inst, z, i);
    return {i, std::move(r.option.members), r.ambiguous, r.resolved_by_opinion};
}

IntervalInfo interval(const GameInstance& inst, const OpinionVector& z, PlayerIndex i)
{
    check_player(inst, z, i);
    const auto r = resolve(inst, z, i);
    IntervalInfo info{{min(inst.belief(i), z[i]), max(inst.belief(i), z[i])}, i, i};
    for (PlayerIndex j : r.option.members) { // ascending, so the first attaining index wins
        if (z[j] < info.interval.lo) {
            info.interval.lo = z[j];
            info.leftmost_owner = j;
        }
        if (info.interval.hi < z[j]) {
            info.interval.hi = z[j];
            info.rightmost_owner = j;
        }
    }
    return info;
}

Rational player_cost(const GameInstance& inst, const OpinionVector& z, PlayerIndex i)
{
    check_player(inst, z, i);
    const auto r = resolve(inst, z, i);
    return cost_at(z[i], r.option.lo, r.option.hi);
}

std::vector<Rational> player_costs(const GameInstance& inst, const OpinionVector& z)
{
    validate_opinions(inst, z);
    std::vector<Rational> out;
    out.reserve(inst.size());
    for (PlayerIndex i = 0; i < inst.size(); ++i) {
        const auto r = resolve(inst, z, i);
        out.push_back(cost_at(z[i], r.option.lo, r.option.hi));
    }
    return out;
}

Rational social_cost(const GameInstance& inst, const OpinionVector& z)
{
    Rational total;
    for (const auto& c : player_costs(inst, z)) {
        total += c;
    }
    return total;
}

Rational best_response(const GameInstance& inst, const OpinionVector& z, PlayerIndex i)
{
    check_player(inst, z, i);
    const auto r = resolve(inst, z, i);
    return midpoint(r.option.lo, r.option.hi);
}

Rational deviation_cost(const GameInstance& inst, const OpinionVector& z, PlayerIndex i, const Rational& y)
{
    check_player(inst, z, i);
    const auto r = resolve(inst, z, i);
    return cost_at(y, r.option.lo, r.option.hi);
}

PureNashVerdict is_pure_nash(const GameInstance& inst, const OpinionVector& z)
{
    validate_opinions(inst, z);
    PureNashVerdict v;
    for (PlayerIndex i = 0; i < inst.size(); ++i) {
        const auto r = resolve(inst, z, i);
        v.distance_tie = v.distance_tie || r.ambiguous;
        v.tie_dependent = v.tie_dependent || r.resolved_by_opinion;
        const Rational br = midpoint(r.option.lo, r.option.hi);
        if (br != z[i]) {
            const Rational now = cost_at(z[i], r.option.lo, r.option.hi);
            const Rational best = cost_at(br, r.option.lo, r.option.hi);
            v.violations.push_back({i, br, now - best});
        }
    }
    v.is_pne = v.violations.empty();
    return v;
}

const char* to_string(DynamicsOutcome outcome)
{
    switch (outcome) {
    case DynamicsOutcome::Converged:
        return "converged";
    case DynamicsOutcome::CycleDetected:
        return "cycle";
    case DynamicsOutcome::Exhausted:
        return "exhausted";
    }
    return "?";
}

namespace {

std::size_t hash_state(const OpinionVector& z)
{
    std::size_t h = z.size();
    for (const auto& x : z) {
        h ^= x.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

} // namespace

DynamicsResult best_response_dynamics(const GameInstance& inst, OpinionVector z0, const DynamicsOptions& options)
{
    validate_opinions(inst, z0);
    if (options.max_rounds < 1) {
        fail(ErrorCode::InvalidArgument, "max_rounds must be at least 1");
    }
    std::vector<PlayerIndex> schedule = options.schedule;
    if (schedule.empty()) {
        schedule.resize(inst.size());
        std::iota(schedule.begin(), schedule.end(), PlayerIndex{0});
    } else {
        auto sorted = schedule;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t p = 0; p < sorted.size(); ++p) {
            if (sorted.size() != inst.size() || sorted[p] != p) {
                fail(ErrorCode::InvalidArgument, "schedule must be a permutation of the players");
            }
        }
    }

    auto run_round = [&](OpinionVector& z) {
        bool changed = false;
        for (PlayerIndex p : schedule) {
            Rational br = best_response(inst, z, p);
            if (br != z[p]) {
                z[p] = std::move(br);
                changed = true;
            }
        }
        return changed;
    };

    DynamicsResult result;
    const OpinionVector start = z0;
    OpinionVector z = std::move(z0);
    if (options.record_trajectory) {
        result.trajectory.push_back(z);
    }

    // Only hashes of recent states are kept (exact states can grow to
    // thousands of bits each); a hash hit is confirmed by replaying the
    // deterministic dynamics up to the earlier round.
    std::deque<std::pair<std::size_t, std::size_t>> window; // (round, hash)
    std::unordered_multimap<std::size_t, std::size_t> by_hash; // hash -> round
    auto remember = [&](std::size_t round, std::size_t h) {
        if (options.state_window == 0) {
            return;
        }
        if (window.size() == options.state_window) {
            const auto [old_round, old_hash] = window.front();
            auto range = by_hash.equal_range(old_hash);
            for (auto it = range.first; it != range.second; ++it) {
                if (it->second == old_round) {
                    by_hash.erase(it);
                    break;
                }
            }
            window.pop_front();
        }
        by_hash.emplace(h, round);
        window.emplace_back(round, h);
    };
    auto state_at = [&](std::size_t round) {
        if (options.record_trajectory) {
            return result.trajectory[round];
        }
        OpinionVector past = start;
        for (std::size_t r = 0; r < round; ++r) {
            run_round(past);
        }
        return past;
    };
    remember(0, hash_state(z));

    for (std::size_t round = 1; round <= options.max_rounds; ++round) {
        const bool changed = run_round(z);
        result.rounds = round;
        if (options.record_trajectory) {
            result.trajectory.push_back(z);
        }
        if (!changed) {
            result.outcome = DynamicsOutcome::Converged;
            result.final_state = std::move(z);
            return result;
        }
        const std::size_t h = hash_state(z);
        auto range = by_hash.equal_range(h);
        for (auto it = range.first; it != range.second; ++it) {
            if (state_at(it->second) == z) {
                result.outcome = DynamicsOutcome::CycleDetected;
                result.period = round - it->second;
                result.final_state = std::move(z);
                return result;
            }
        }
        remember(round, h);
    }
    result.outcome = DynamicsOutcome::Exhausted;
    result.final_state = std::move(z);
    return result;
}

StructuralReport check_structural_lemmas(const GameInstance& inst, const OpinionVector& z)
{
    validate_opinions(inst, z);
    const std::size_t n = inst.size();
    const std::size_t k = static_cast<std::size_t>(inst.k());
    StructuralReport rep{true, true, true};

    for (PlayerIndex i = 0; i + 1 < n; ++i) {
        if (inst.belief(i) < inst.belief(i + 1) && z[i + 1] < z[i]) {
            rep.monotone = false;
        }
    }

    for (PlayerIndex i = 0; i < n; ++i) {
        const auto info = interval(inst, z, i);
        if (z[i] < inst.belief(info.leftmost_owner) || inst.belief(info.rightmost_owner) < z[i]) {
            rep.in_belief_range = false;
        }

        bool found = false;
        const std::size_t first = i >= k ? i - k : 0;
        for (std::size_t j = first; j <= i && j + k < n && !found; ++j) {
            Rational lo = inst.belief(i);
            Rational hi = inst.belief(i);
            for (std::size_t p = j; p <= j + k; ++p) {
                lo = min(lo, z[p]);
                hi = max(hi, z[p]);
            }
            found = lo == info.interval.lo && hi == info.interval.hi;
        }
        if (!found) {
            rep.consecutive_neighborhoods = false;
        }
    }
    return rep;
}

} // namespace kcof
