#include "kcof/bounds.hpp"

#include "kcof/error.hpp"
#include "kcof/segment_solver.hpp"

namespace kcof {

namespace {

void require_k1(const GameInstance& inst, const char* what)
{
    if (inst.k() != 1) {
        fail(ErrorCode::Domain, std::string(what) + " is defined for k = 1 only");
    }
}

void check_index(const GameInstance& inst, PlayerIndex i)
{
    if (i >= inst.size()) {
        fail(ErrorCode::InvalidArgument, "player index " + std::to_string(i + 1) + " out of range");
    }
}

} // namespace

std::vector<StarWindow> star_windows(const GameInstance& inst)
{
    const std::size_t n = inst.size();
    const auto k = static_cast<std::size_t>(inst.k());
    const auto& s = inst.beliefs();
    std::vector<StarWindow> out(n);
    for (PlayerIndex i = 0; i < n; ++i) {
        const std::size_t first = i >= k ? i - k : 0;
        const std::size_t last = std::min(i, n - 1 - k);
        std::size_t best = first;
        for (std::size_t l = first + 1; l <= last; ++l) {
            if (s[l + k] - s[l] < s[best + k] - s[best]) {
                best = l;
            }
        }
        out[i] = {best, best + k};
    }
    return out;
}

std::vector<PlayerIndex> eta_map(const GameInstance& inst)
{
    const std::size_t n = inst.size();
    const auto& s = inst.beliefs();
    std::vector<PlayerIndex> out(n);
    for (PlayerIndex i = 0; i < n; ++i) {
        if (i == 0) {
            out[i] = 1;
        } else if (i + 1 == n) {
            out[i] = i - 1;
        } else {
            out[i] = s[i + 1] - s[i] < s[i] - s[i - 1] ? i + 1 : i - 1;
        }
    }
    return out;
}

Rational opt_lower_bound_k(const GameInstance& inst)
{
    Rational sum;
    for (const auto& w : star_windows(inst)) {
        sum += inst.belief(w.r_star) - inst.belief(w.l_star);
    }
    return sum / Rational(2 * (inst.k() + 1));
}

Rational opt_lower_bound_1(const GameInstance& inst)
{
    require_k1(inst, "the nearest-belief lower bound");
    const auto eta = eta_map(inst);
    Rational sum;
    for (PlayerIndex i = 0; i < inst.size(); ++i) {
        sum += abs(inst.belief(i) - inst.belief(eta[i]));
    }
    return sum / Rational(3);
}

Rational pne_player_cost_cap(const GameInstance& inst, PlayerIndex i)
{
    check_index(inst, i);
    const auto w = star_windows(inst)[i];
    return Rational(2) * (inst.belief(w.r_star) - inst.belief(w.l_star));
}

Rational pne_player_cost_cap_1(const GameInstance& inst, PlayerIndex i)
{
    require_k1(inst, "the nearest-belief cost cap");
    check_index(inst, i);
    return abs(inst.belief(i) - inst.belief(eta_map(inst)[i]));
}

SmallChainVerdict small_chain_conditions(const Rational& s_a, const Rational& s_b, const Rational& s_c)
{
    if (s_b < s_a || s_c < s_b) {
        fail(ErrorCode::InvalidArgument, "small-chain beliefs must satisfy s_a <= s_b <= s_c");
    }
    return {
        s_b >= (Rational(3) * s_a + Rational(5) * s_c) / Rational(8),
        s_b <= (Rational(5) * s_a + Rational(3) * s_c) / Rational(8),
    };
}

PoABracket poa_bracket(const GameInstance& inst, const BracketOptions& options)
{
    PoABracket br;

    if (inst.k() == 1) {
        if (auto w = worst_pne(inst)) {
            br.worst_pne_cost = w->social_cost;
            br.worst_pne = std::move(w->opinions);
        }
    } else if (options.known_pne) {
        if (!is_pure_nash(inst, *options.known_pne).is_pne) {
            fail(ErrorCode::InvalidArgument, "the supplied opinion vector is not a pure Nash equilibrium");
        }
        br.worst_pne_cost = social_cost(inst, *options.known_pne);
        br.worst_pne = options.known_pne;
    }

    br.opt_lower = opt_lower_bound_k(inst);
    if (inst.k() == 1) {
        br.opt_lower = max(br.opt_lower, opt_lower_bound_1(inst));
    }

    if (options.run_optimizer) {
        auto opt = optimize_social_cost(inst, options.optimizer, options.optimizer_starts);
        br.opt_upper = std::move(opt.social_cost);
        br.opt_upper_vector = std::move(opt.opinions);
    } else {
        br.opt_upper_vector = inst.beliefs();
        br.opt_upper = social_cost(inst, br.opt_upper_vector);
        for (const auto& z : options.optimizer_starts) {
            validate_opinions(inst, z);
            Rational c = social_cost(inst, z);
            if (c < br.opt_upper) {
                br.opt_upper = std::move(c);
                br.opt_upper_vector = z;
            }
        }
    }
    if (options.opt_upper_hint && *options.opt_upper_hint < br.opt_lower) {
        fail(ErrorCode::InvalidArgument, "upper-bound hint " + options.opt_upper_hint->str()
                                             + " is below the certified lower bound " + br.opt_lower.str());
    }
    if (options.opt_upper_hint && *options.opt_upper_hint < br.opt_upper) {
        br.opt_upper = *options.opt_upper_hint;
        br.opt_upper_vector.clear();
    }
    if (br.opt_upper < br.opt_lower) {
        fail(ErrorCode::Internal, "upper bound on the optimum fell below the certified lower bound");
    }

    if (br.worst_pne_cost) {
        const Rational& w = *br.worst_pne_cost;
        auto ratio = [&w](const Rational& denom, std::optional<Rational>& out, bool& unbounded) {
            if (denom.sign() > 0) {
                out = w / denom;
            } else if (w.sign() == 0) {
                out = Rational(1); // 0/0 by convention
            } else {
                unbounded = true;
            }
        };
        ratio(br.opt_upper, br.ratio_lower, br.ratio_lower_unbounded);
        ratio(br.opt_lower, br.ratio_upper, br.ratio_upper_unbounded);
    }
    return br;
}

} // namespace kcof
