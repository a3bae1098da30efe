#include "kcof/instances.hpp"

#include "kcof/bounds.hpp"
#include "kcof/error.hpp"
#include "kcof/segment_solver.hpp"

namespace kcof {

namespace {

using R = Rational;

std::vector<R> repeat(const R& x, int count)
{
    return std::vector<R>(static_cast<std::size_t>(count), x);
}

std::vector<R> concat(std::initializer_list<std::vector<R>> parts)
{
    std::vector<R> out;
    for (const auto& p : parts) {
        out.insert(out.end(), p.begin(), p.end());
    }
    return out;
}

ReferenceVector pure(std::string tag, OpinionVector z, R cost, ExpectedVerdict v)
{
    ReferenceVector r;
    r.tag = std::move(tag);
    r.opinions = std::move(z);
    r.expected_cost = std::move(cost);
    r.verdict = v;
    return r;
}

ReferenceVector randomized(std::string tag, RandomizedOpinionVector rz, R cost)
{
    ReferenceVector r;
    r.tag = std::move(tag);
    r.randomized = true;
    r.mixed = std::move(rz);
    r.expected_cost = std::move(cost);
    r.verdict = ExpectedVerdict::MNE;
    return r;
}

MixedStrategy coin(const R& x, const R& y)
{
    return {{x, R(1, 2)}, {y, R(1, 2)}};
}

CatalogEntry entry(std::string name, int k, std::vector<R> beliefs, const R& lambda, std::string notes)
{
    return CatalogEntry{std::move(name), GameInstance(k, std::move(beliefs)), {}, std::move(notes), lambda, {}, false, {}};
}

// Players of the four-group constructions: k+1 far left, a left swing
// player, k-1 central, a right swing player, k+1 far right.
std::vector<R> four_group_beliefs(int k, const R& l)
{
    return concat({repeat(R(-16) - R(2) * l, k + 1), {R(-4) - l}, repeat(R(0), k - 1), {R(4) + l},
                   repeat(R(16) + R(2) * l, k + 1)});
}

std::string check(bool ok) { return ok ? "yes" : "no"; }

} // namespace

void validate_params(const CatalogParams& p)
{
    if (p.k < 1) {
        fail(ErrorCode::Domain, "k must be at least 1");
    }
    if (p.lambda.sign() <= 0 || p.lambda >= R(1)) {
        fail(ErrorCode::Domain, "lambda must lie in (0, 1), got " + p.lambda.str());
    }
    if (p.epsilon.sign() <= 0 || p.epsilon >= R(1, 4)) {
        fail(ErrorCode::Domain, "epsilon must lie in (0, 1/4), got " + p.epsilon.str());
    }
}

const char* to_string(ExpectedVerdict v)
{
    switch (v) {
    case ExpectedVerdict::PNE: return "PNE";
    case ExpectedVerdict::MNE: return "MNE";
    case ExpectedVerdict::NotEquilibrium: return "NOT_EQUILIBRIUM";
    case ExpectedVerdict::NearOpt: return "NEAR_OPT";
    }
    return "?";
}

std::vector<CatalogEntry> build_catalog(const CatalogParams& params)
{
    validate_params(params);
    const int k = params.k;
    const R& l = params.lambda;
    const R& eps = params.epsilon;
    std::vector<CatalogEntry> out;

    if (k == 1) {
        auto e = entry("three_players", 1, {R(-10), R(2), R(5)}, l,
                       "three players; one vector is not an equilibrium, the other is");
        e.references.push_back(pure("z", {R(-10), R(-5), R(4)}, R(23), ExpectedVerdict::NotEquilibrium));
        e.references.push_back(pure("z_prime", {R(-7, 2), R(3), R(4)}, R(17, 2), ExpectedVerdict::PNE));
        out.push_back(std::move(e));

        e = entry("two_equilibria", 1, {R(0), R(9), R(12), R(21)}, l,
                  "four players with exactly two pure equilibria of equal cost");
        e.references.push_back(pure("pne_a", {R(3), R(6), R(15), R(18)}, R(12), ExpectedVerdict::PNE));
        e.references.push_back(pure("pne_b", {R(5), R(10), R(11), R(16)}, R(12), ExpectedVerdict::PNE));
        e.expected_pne_count = 2;
        out.push_back(std::move(e));
    }

    {
        auto e = entry("no_equilibrium", k, concat({repeat(R(0), k), {R(1) - eps}, repeat(R(2), k)}), l,
                       "2k+1 players, no pure equilibrium for any k");
        if (k == 1) {
            e.expected_pne_count = 0;
        }
        e.expect_no_convergence = true;
        e.small_chain_start = static_cast<PlayerIndex>(k - 1);
        out.push_back(std::move(e));
    }

    if (k >= 3) {
        auto e = entry("stability_gap_k", k, concat({repeat(R(0), k), {R(1)}}), l,
                       "k players at 0 and one at 1; the equilibrium costs (k+1)/3, the optimum at most 1");
        e.references.push_back(
            pure("pne", concat({repeat(R(1, 3), k), {R(2, 3)}}), R(k + 1, 3), ExpectedVerdict::PNE));
        e.references.push_back(pure("near_opt", repeat(R(0), k + 1), R(1), ExpectedVerdict::NearOpt));
        out.push_back(std::move(e));
    }

    if (k == 1) {
        // The construction needs lambda < 1/4; fall back to 1/10 otherwise.
        const R l8 = l < R(1, 4) ? l : R(1, 10);
        auto e = entry("stability_gap_1", 1,
                       {R(0), R(5) - R(3) * l8, R(8), R(15), R(18) + R(3) * l8, R(23)}, l8,
                       "six players with a unique pure equilibrium; lambda below 1/4 (1/10 used when the requested one is larger)");
        e.references.push_back(pure("pne",
                                    {(R(5) - R(3) * l8) / R(3), (R(10) - R(6) * l8) / R(3), R(31, 3), R(38, 3),
                                     (R(59) + R(6) * l8) / R(3), (R(64) + R(3) * l8) / R(3)},
                                    R(34, 3) - R(4) * l8, ExpectedVerdict::PNE));
        e.references.push_back(pure("near_opt",
                                    {R(3) - l8, R(6) - R(2) * l8, R(7) - R(6) * l8, R(16) + R(6) * l8,
                                     R(17) + R(2) * l8, R(20) + l8},
                                    R(10) + R(12) * l8, ExpectedVerdict::NearOpt));
        e.expected_pne_count = 1;
        e.small_chain_start = 0;
        out.push_back(std::move(e));
    }

    if (k == 2) {
        auto e = entry("stability_gap_2", 2, {R(0), R(1), R(1), R(2)}, l,
                       "four players, k = 2; equilibrium cost 12/7 against 3/2");
        e.references.push_back(pure("pne", {R(4, 7), R(6, 7), R(8, 7), R(10, 7)}, R(12, 7), ExpectedVerdict::PNE));
        e.references.push_back(pure("near_opt", {R(1), R(1), R(1), R(3, 2)}, R(3, 2), ExpectedVerdict::NearOpt));
        out.push_back(std::move(e));
    }

    if (k == 1) {
        const std::vector<R> s{R(-10) - l, R(-10) - l, R(-2) - l, R(2) + l, R(10) + l, R(10) + l};
        auto e = entry("anarchy_1", 1, s, l, "six players; equilibrium cost 8 against (8+4 lambda)/3");
        e.references.push_back(pure("pne", {R(-10) - l, R(-10) - l, R(-6) - l, R(6) + l, R(10) + l, R(10) + l}, R(8),
                                    ExpectedVerdict::PNE));
        e.references.push_back(pure("near_opt",
                                    {R(-10) - l, R(-10) - l, (R(-2) - l) / R(3), (R(2) + l) / R(3), R(10) + l, R(10) + l},
                                    (R(8) + R(4) * l) / R(3), ExpectedVerdict::NearOpt));
        out.push_back(std::move(e));

        e = entry("mixed_anarchy_1", 1, s, l, "same beliefs; the two middle players randomize over two opinions each");
        RandomizedOpinionVector rz = as_randomized(s);
        rz[2] = coin(R(-6) - l, R(-6) + R(3) * l);
        rz[3] = coin(R(6) + l, R(6) - R(3) * l);
        e.references.push_back(randomized("mne", std::move(rz), R(16) - R(2) * l));
        e.references.push_back(out.back().references.back());
        out.push_back(std::move(e));
    }

    if (k >= 2) {
        const std::vector<R> s = four_group_beliefs(k, l);
        const auto left = static_cast<std::size_t>(k + 1);
        const std::size_t right = left + static_cast<std::size_t>(k);

        auto e = entry("anarchy_k", k, s, l, "3k+3 players in five groups; equilibrium cost (8+lambda)(k+1)");
        OpinionVector z = s;
        z[left] = R(-8) - l;
        z[right] = R(8) + l;
        e.references.push_back(pure("pne", z, (R(8) + l) * R(k + 1), ExpectedVerdict::PNE));
        OpinionVector near = s;
        if (k >= 3) {
            near[left] = R(0);
            near[right] = R(0);
            e.references.push_back(pure("near_opt", near, R(8) + R(2) * l, ExpectedVerdict::NearOpt));
        } else {
            near[left] = -(R(4) + l) / R(3);
            near[right] = (R(4) + l) / R(3);
            e.references.push_back(pure("near_opt", near, R(5, 3) * (R(4) + l), ExpectedVerdict::NearOpt));
        }
        out.push_back(std::move(e));

        e = entry("mixed_anarchy_k", k, s, l, "same beliefs; the two swing players randomize over two opinions each");
        RandomizedOpinionVector rz = as_randomized(s);
        rz[left] = coin(R(-8) - l, R(-8) + R(3) * l);
        rz[right] = coin(R(8) - R(3) * l, R(8) + l);
        e.references.push_back(randomized("mne", std::move(rz), R(8 * k + 16) - l));
        e.references.push_back(out.back().references.back());
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<CheckRow> verify_entry(const CatalogEntry& e, const VerifyOptions& options)
{
    std::vector<CheckRow> rows;
    auto row = [&](std::string quantity, std::string expected, std::string got) {
        const bool match = expected == got;
        rows.push_back({e.name, std::move(quantity), std::move(expected), std::move(got), match});
    };
    const GameInstance& inst = e.instance;

    for (const auto& ref : e.references) {
        if (ref.randomized) {
            const auto verdict = is_mixed_nash(inst, ref.mixed);
            row(ref.tag + ": mixed equilibrium", "yes", check(verdict.is_mne));
            row(ref.tag + ": expected social cost", ref.expected_cost.str(), expected_social_cost(inst, ref.mixed).str());
            continue;
        }
        const auto cost = social_cost(inst, ref.opinions);
        switch (ref.verdict) {
        case ExpectedVerdict::PNE:
            row(ref.tag + ": pure equilibrium", "yes", check(is_pure_nash(inst, ref.opinions).is_pne));
            break;
        case ExpectedVerdict::NotEquilibrium:
            row(ref.tag + ": pure equilibrium", "no", check(is_pure_nash(inst, ref.opinions).is_pne));
            break;
        case ExpectedVerdict::MNE:
        case ExpectedVerdict::NearOpt:
            break;
        }
        row(ref.tag + ": social cost", ref.expected_cost.str(), cost.str());
    }

    if (e.expected_pne_count) {
        const auto found = enumerate_pne(inst, 1000);
        row("pure equilibria (segment graph)", std::to_string(*e.expected_pne_count),
            std::to_string(found.equilibria.size()));
        row("pure equilibrium exists", check(*e.expected_pne_count > 0), check(exists_pne(inst)));
        if (inst.size() <= 16) {
            row("pure equilibria (exhaustive)", std::to_string(*e.expected_pne_count),
                std::to_string(brute_force_pne_oracle(inst).size()));
        }
    }

    if (e.expect_no_convergence) {
        DynamicsOptions opts;
        opts.max_rounds = options.dynamics_rounds;
        const auto res = best_response_dynamics(inst, inst.beliefs(), opts);
        row("dynamics from beliefs (" + std::to_string(options.dynamics_rounds) + " rounds) converge", "no",
            check(res.outcome == DynamicsOutcome::Converged));
    }

    if (e.small_chain_start) {
        const PlayerIndex a = *e.small_chain_start;
        const auto v = small_chain_conditions(inst.belief(a), inst.belief(a + 1), inst.belief(a + 2));
        const std::string where = " at players " + std::to_string(a + 1) + ".." + std::to_string(a + 3);
        row("small-chain case 1 holds" + where, "no", check(v.case1_ok));
        row("small-chain case 2 holds" + where, "no", check(v.case2_ok));
    }
    return rows;
}

std::vector<CatalogEntry> catalog(const CatalogParams& params, const VerifyOptions& options)
{
    auto entries = build_catalog(params);
    for (const auto& e : entries) {
        for (const auto& r : verify_entry(e, options)) {
            if (!r.match) {
                fail(ErrorCode::Internal, "catalog entry " + r.entry + ": " + r.quantity + " expected " + r.expected
                                              + ", recomputed " + r.recomputed);
            }
        }
    }
    return entries;
}

std::vector<OpinionVector> deterministic_references(const CatalogEntry& entry)
{
    std::vector<OpinionVector> out;
    for (const auto& r : entry.references) {
        if (!r.randomized) {
            out.push_back(r.opinions);
        }
    }
    return out;
}

} // namespace kcof
