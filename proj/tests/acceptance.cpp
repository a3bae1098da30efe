// Acceptance run: one PASS/FAIL line per criterion. Every comparison is exact
// and each criterion's wall time is part of its verdict.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "generators.hpp"
#include "kcof/bounds.hpp"
#include "kcof/error.hpp"
#include "kcof/instances.hpp"
#include "kcof/mixed.hpp"
#include "kcof/optimizer.hpp"
#include "kcof/segment_solver.hpp"
#include "oracles.hpp"

using namespace kcof;
using R = Rational;

namespace {

struct Outcome {
    bool ok = true;
    std::vector<std::string> notes;

    void expect(bool cond, const std::string& what)
    {
        if (!cond) {
            ok = false;
            notes.push_back(what);
        }
    }
};

std::string show(const OpinionVector& z)
{
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < z.size(); ++i) {
        os << (i ? ", " : "") << z[i];
    }
    os << ")";
    return os.str();
}

int failures = 0;

void criterion(int id, const std::string& title, double limit_s, const std::function<void(Outcome&)>& body)
{
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(out);
    } catch (const std::exception& e) {
        out.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream took;
    took.precision(3);
    took << std::fixed << secs;
    out.expect(secs < limit_s, "took " + took.str() + " s, limit " + std::to_string(static_cast<int>(limit_s)) + " s");
    std::cout << (out.ok ? "[PASS]" : "[FAIL]") << " criterion " << id << ": " << title << " (" << took.str()
              << " s)\n";
    for (const auto& n : out.notes) {
        std::cout << "       " << n << "\n";
    }
    std::cout.flush();
    if (!out.ok) {
        ++failures;
    }
}

std::vector<R> repeat(const R& x, int times) { return std::vector<R>(static_cast<std::size_t>(times), x); }

std::vector<R> concat(std::initializer_list<std::vector<R>> parts)
{
    std::vector<R> out;
    for (const auto& p : parts) {
        out.insert(out.end(), p.begin(), p.end());
    }
    return out;
}

GameInstance anarchy_1(const R& l) { return GameInstance(1, {R(-10) - l, R(-10) - l, R(-2) - l, R(2) + l, R(10) + l, R(10) + l}); }

MixedStrategy coin(const R& a, const R& b) { return {{a, R(1, 2)}, {b, R(1, 2)}}; }

// The shared random corpus: n uniform in 3..10, integer beliefs in [0, 100].
std::vector<GameInstance> random_corpus()
{
    gen::Rng rng(20240601);
    std::vector<GameInstance> out;
    for (int t = 0; t < 200; ++t) {
        const auto n = static_cast<std::size_t>(rng.uniform(3, 10));
        out.emplace_back(1, gen::integer_beliefs(rng, n, 0, 100));
    }
    return out;
}

void three_players(Outcome& out)
{
    const GameInstance g(1, {R(-10), R(2), R(5)});
    const OpinionVector z{R(-10), R(-5), R(4)};
    const OpinionVector zp{R(-7, 2), R(3), R(4)};
    out.expect(player_costs(g, z) == std::vector<R>{R(5), R(9), R(9)}, "costs of z");
    out.expect(social_cost(g, z) == R(23), "SC(z) = " + social_cost(g, z).str());
    out.expect(player_costs(g, zp) == std::vector<R>{R(13, 2), R(1), R(1)}, "costs of z'");
    out.expect(social_cost(g, zp) == R(17, 2), "SC(z') = " + social_cost(g, zp).str());
    out.expect(is_pure_nash(g, zp).is_pne, "z' should be an equilibrium");
    out.expect(!is_pure_nash(g, z).is_pne, "z should not be an equilibrium");
}

void two_equilibria(Outcome& out)
{
    const GameInstance g(1, {R(0), R(9), R(12), R(21)});
    const auto graph = build_segment_graph(g);
    std::vector<std::string> keys;
    for (const auto& n : graph.nodes()) {
        keys.push_back(to_string(n.key));
    }
    std::sort(keys.begin(), keys.end());
    out.expect(keys == std::vector<std::string>{"C(1,1,2)", "C(1,2,4)", "C(3,3,4)"},
               "legit segments: " + std::to_string(keys.size()));
    const auto e = enumerate_pne(g, 100);
    std::vector<OpinionVector> found;
    for (const auto& s : e.equilibria) {
        found.push_back(s.opinions);
        out.expect(is_pure_nash(g, s.opinions).is_pne, show(s.opinions) + " fails the equilibrium check");
    }
    std::sort(found.begin(), found.end());
    const std::vector<OpinionVector> want{{R(3), R(6), R(15), R(18)}, {R(5), R(10), R(11), R(16)}};
    out.expect(found == want, "equilibria found: " + std::to_string(found.size()));
}

void no_equilibrium(Outcome& out)
{
    const R eps(1, 8);
    const GameInstance g1(1, {R(0), R(1) - eps, R(2)});
    out.expect(!exists_pne(g1), "k = 1: an equilibrium was reported");
    for (int k : {2, 3}) {
        const GameInstance g(k, concat({repeat(R(0), k), {R(1) - eps}, repeat(R(2), k)}));
        DynamicsOptions opts;
        opts.max_rounds = 10000;
        const auto r = best_response_dynamics(g, g.beliefs(), opts);
        out.expect(r.outcome != DynamicsOutcome::Converged,
                   "k = " + std::to_string(k) + ": dynamics converged after " + std::to_string(r.rounds) + " rounds");
        bool refused = false;
        try {
            build_segment_graph(g);
        } catch (const Error& err) {
            refused = err.code() == ErrorCode::Domain;
        }
        out.expect(refused, "k = " + std::to_string(k) + ": segment machinery accepted the instance");
    }
    out.expect(!small_chain_conditions(R(0), R(1) - eps, R(2)).case1_ok, "case 1 holds on (0, 1-eps, 2)");
}

void stability_gap_k(Outcome& out)
{
    for (int k : {3, 4, 5}) {
        const std::string tag = "k = " + std::to_string(k) + ": ";
        const GameInstance g(k, concat({repeat(R(0), k), {R(1)}}));
        const OpinionVector z = concat({repeat(R(1, 3), k), {R(2, 3)}});
        out.expect(is_pure_nash(g, z).is_pne, tag + "construction is not an equilibrium");
        out.expect(oracle::is_pne(g, z), tag + "nearest-set oracle rejects the construction");
        const R sc = social_cost(g, z);
        out.expect(sc == R(k + 1, 3), tag + "SC = " + sc.str());
        const auto opt = optimize_social_cost(g);
        out.expect(opt.social_cost <= R(1), tag + "optimizer reached " + opt.social_cost.str());
        out.expect(opt.social_cost.sign() > 0 && sc / opt.social_cost >= R(k + 1, 3), tag + "ratio below (k+1)/3");
    }
}

void stability_gap_1(Outcome& out)
{
    const R l(1, 10);
    const GameInstance g(1, {R(0), R(5) - R(3) * l, R(8), R(15), R(18) + R(3) * l, R(23)});
    const auto e = enumerate_pne(g, 100);
    out.expect(e.equilibria.size() == 1, "equilibria found: " + std::to_string(e.equilibria.size()));
    const R target = R(34, 3) - R(2, 5);
    if (!e.equilibria.empty()) {
        const R sc = e.equilibria.front().social_cost;
        out.expect(sc == target, "SC = " + sc.str());
        const auto opt = optimize_social_cost(g);
        const R bound = R(10) + R(6, 5);
        out.expect(opt.social_cost <= bound, "optimizer reached " + opt.social_cost.str());
        out.expect(sc / opt.social_cost >= target / bound, "certified ratio " + (sc / opt.social_cost).str());
    }
}

void stability_gap_2(Outcome& out)
{
    const GameInstance g(2, {R(0), R(1), R(1), R(2)});
    const OpinionVector z{R(4, 7), R(6, 7), R(8, 7), R(10, 7)};
    out.expect(is_pure_nash(g, z).is_pne, "construction is not an equilibrium");
    out.expect(social_cost(g, z) == R(12, 7), "SC = " + social_cost(g, z).str());
    const auto opt = optimize_social_cost(g);
    out.expect(opt.social_cost <= R(3, 2), "optimizer reached " + opt.social_cost.str());
}

void anarchy(Outcome& out)
{
    {
        const auto br = poa_bracket(anarchy_1(R(1, 2)));
        out.expect(br.worst_pne_cost && *br.worst_pne_cost == R(8), "worst equilibrium cost differs from 8");
        out.expect(br.opt_upper <= R(10, 3), "optimizer reached " + br.opt_upper.str());
        out.expect(br.ratio_lower && *br.ratio_lower >= R(12, 5), "ratio below 12/5");
    }
    {
        const R l(1, 100);
        const auto br = poa_bracket(anarchy_1(l));
        out.expect(br.worst_pne_cost && *br.worst_pne_cost == R(8), "small lambda: worst equilibrium cost differs from 8");
        const R want = R(8) / ((R(8) + R(4) * l) / R(3));
        out.expect(br.ratio_lower && *br.ratio_lower >= want,
                   "small lambda: ratio " + (br.ratio_lower ? br.ratio_lower->str() : "none") + " below " + want.str());
    }
}

void mixed_anarchy(Outcome& out)
{
    const R l(1, 2);
    const auto g = anarchy_1(l);
    auto rz = as_randomized(g.beliefs());
    rz[2] = coin(R(-6) - l, R(-6) + R(3) * l);
    rz[3] = coin(R(6) + l, R(6) - R(3) * l);
    out.expect(is_mixed_nash(g, rz).is_mne, "randomized construction is not an equilibrium");
    const R e = expected_social_cost(g, rz);
    out.expect(e == R(15) && e == R(16) - R(2) * l, "E[SC] = " + e.str());
    const auto opt = optimize_social_cost(g);
    const R want = (R(16) - R(2) * l) * R(3) / (R(8) + R(4) * l);
    out.expect(e / opt.social_cost >= want, "ratio " + (e / opt.social_cost).str() + " below " + want.str());
}

void anarchy_k(Outcome& out)
{
    const R l(1, 2);
    const OptimizerConfig light{1, 200, 1, 0};
    for (int k : {2, 3, 5}) {
        const std::string tag = "k = " + std::to_string(k) + ": ";
        const GameInstance g(k, concat({repeat(R(-16) - R(2) * l, k + 1), {R(-4) - l}, repeat(R(0), k - 1), {R(4) + l},
                                        repeat(R(16) + R(2) * l, k + 1)}));
        const auto left = static_cast<std::size_t>(k + 1);
        const std::size_t right = left + static_cast<std::size_t>(k);

        OpinionVector z = g.beliefs();
        z[left] = R(-8) - l;
        z[right] = R(8) + l;
        out.expect(is_pure_nash(g, z).is_pne, tag + "pure construction is not an equilibrium");
        out.expect(social_cost(g, z) == (R(8) + l) * R(k + 1), tag + "SC = " + social_cost(g, z).str());

        auto rz = as_randomized(g.beliefs());
        rz[left] = coin(R(-8) - l, R(-8) + R(3) * l);
        rz[right] = coin(R(8) - R(3) * l, R(8) + l);
        out.expect(is_mixed_nash(g, rz).is_mne, tag + "randomized construction is not an equilibrium");
        const R e = expected_social_cost(g, rz);
        out.expect(e == R(8 * k + 16) - l, tag + "E[SC] = " + e.str());

        OpinionVector near = g.beliefs();
        const R bound = k >= 3 ? R(8) + R(2) * l : R(5, 3) * (R(4) + l);
        if (k >= 3) {
            near[left] = R(0);
            near[right] = R(0);
        } else {
            near[left] = -(R(4) + l) / R(3);
            near[right] = (R(4) + l) / R(3);
        }
        const auto opt = optimize_social_cost(g, light, {near});
        out.expect(opt.social_cost <= bound, tag + "optimizer reached " + opt.social_cost.str());
    }
}

void oracle_equivalence(Outcome& out)
{
    std::size_t total = 0;
    for (const auto& g : random_corpus()) {
        const auto e = enumerate_pne(g, 1'000'000);
        std::vector<OpinionVector> dag;
        for (const auto& s : e.equilibria) {
            dag.push_back(s.opinions);
        }
        auto brute = brute_force_pne_oracle(g);
        std::sort(dag.begin(), dag.end());
        std::sort(brute.begin(), brute.end());
        total += dag.size();
        out.expect(!e.truncated && dag == brute, "sets differ on beliefs " + show(g.beliefs()));
    }
    out.expect(total > 0, "no equilibria at all in the corpus");
}

void check_bounds(Outcome& out, const GameInstance& g, const std::vector<OpinionVector>& pnes, const std::string& where)
{
    if (pnes.empty()) {
        return;
    }
    const int k = g.k();
    BracketOptions opts;
    opts.run_optimizer = false;
    opts.optimizer_starts = pnes;
    const auto br = poa_bracket(g, opts);
    const R lb_k = opt_lower_bound_k(g);
    for (const auto& z : pnes) {
        const R sc = social_cost(g, z);
        const auto costs = player_costs(g, z);
        out.expect(sc >= lb_k, where + ": SC below the window bound");
        for (PlayerIndex i = 0; i < g.size(); ++i) {
            out.expect(costs[i] <= pne_player_cost_cap(g, i), where + ": player " + std::to_string(i + 1) + " above cap");
        }
        const R lim = k == 1 ? R(3) : R(4 * (k + 1));
        if (k == 1) {
            out.expect(sc >= opt_lower_bound_1(g), where + ": SC below the adjacent-gap bound");
            for (PlayerIndex i = 0; i < g.size(); ++i) {
                out.expect(costs[i] <= pne_player_cost_cap_1(g, i),
                           where + ": player " + std::to_string(i + 1) + " above the adjacent-gap cap");
            }
            out.expect(sc <= lim * opt_lower_bound_1(g), where + ": SC above 3 times the adjacent-gap bound");
        } else {
            out.expect(sc <= lim * lb_k, where + ": SC above 4(k+1) times the window bound");
        }
        if (br.opt_upper.sign() > 0) {
            out.expect(sc / br.opt_upper <= lim, where + ": ratio " + (sc / br.opt_upper).str());
        } else {
            out.expect(sc.sign() == 0, where + ": positive cost against a zero upper bound");
        }
    }
}

void bound_invariants(Outcome& out)
{
    std::size_t checked = 0;
    for (const auto& g : random_corpus()) {
        std::vector<OpinionVector> pnes;
        for (const auto& s : enumerate_pne(g, 1'000'000).equilibria) {
            pnes.push_back(s.opinions);
        }
        checked += pnes.size();
        check_bounds(out, g, pnes, "beliefs " + show(g.beliefs()));
    }
    for (int k : {1, 2, 3, 5}) {
        for (const auto& e : build_catalog({k, R(1, 2), R(1, 8)})) {
            std::vector<OpinionVector> pnes;
            if (k == 1) {
                for (const auto& s : enumerate_pne(e.instance, 1'000'000).equilibria) {
                    pnes.push_back(s.opinions);
                }
            } else {
                for (const auto& r : e.references) {
                    if (!r.randomized && r.verdict == ExpectedVerdict::PNE) {
                        pnes.push_back(r.opinions);
                    }
                }
            }
            checked += pnes.size();
            check_bounds(out, e.instance, pnes, e.name + " (k = " + std::to_string(k) + ")");
        }
    }
    // Many random instances have no pure equilibrium; guard against an empty run.
    out.expect(checked >= 100, "only " + std::to_string(checked) + " equilibria checked");
    std::cout << "       " << checked << " equilibria checked\n";
}

void degenerate_mixed(Outcome& out)
{
    gen::Rng rng(977);
    int equilibria = 0;
    for (int t = 0; t < 100; ++t) {
        const auto g = gen::any_instance(rng, 3, 8);
        OpinionVector z = gen::opinions(rng, g);
        if (g.k() == 1 && t % 2 == 0) {
            const auto e = enumerate_pne(g, 1);
            if (!e.equilibria.empty()) {
                z = e.equilibria.front().opinions;
            }
        }
        const std::string where = "case " + std::to_string(t + 1) + ": ";
        const auto rz = as_randomized(z);
        const auto pure = is_pure_nash(g, z);
        const auto mixed = is_mixed_nash(g, rz);
        equilibria += pure.is_pne ? 1 : 0;
        out.expect(pure.is_pne == mixed.is_mne, where + "verdicts differ");
        out.expect(player_costs(g, z) == expected_player_costs(g, rz), where + "player costs differ");
        out.expect(social_cost(g, z) == expected_social_cost(g, rz), where + "social costs differ");
        out.expect(pure.violations.size() == mixed.violations.size(), where + "violation counts differ");
        for (std::size_t v = 0; v < std::min(pure.violations.size(), mixed.violations.size()); ++v) {
            out.expect(pure.violations[v].player == mixed.violations[v].player
                           && pure.violations[v].cost_delta == mixed.violations[v].improvement,
                       where + "violations differ");
        }
    }
    out.expect(equilibria > 0, "no equilibrium among the wrapped vectors");
}

} // namespace

int main()
{
    criterion(1, "three-player costs and verdicts", 10, three_players);
    criterion(2, "segment graph of the two-equilibria instance", 10, two_equilibria);
    criterion(3, "no pure equilibrium on the 2k+1 chain", 10, no_equilibrium);
    criterion(4, "stability gap (k+1)/3 for k = 3, 4, 5", 10, stability_gap_k);
    criterion(5, "unique equilibrium with cost 34/3 - 2/5", 10, stability_gap_1);
    criterion(6, "k = 2 equilibrium 12/7 against 3/2", 10, stability_gap_2);
    criterion(7, "worst equilibrium 8 against 10/3 and the small-lambda ratio", 10, anarchy);
    criterion(8, "randomized equilibrium with expected cost 16 - 2 lambda", 10, mixed_anarchy);
    criterion(9, "five-group constructions for k = 2, 3, 5", 10, anarchy_k);
    criterion(10, "segment graph equals brute force on 200 random instances", 60, oracle_equivalence);
    criterion(11, "bound invariants on the random corpus and the catalog", 10, bound_invariants);
    criterion(12, "point-mass wrappings reproduce the deterministic game", 10, degenerate_mixed);
    std::cout << (12 - failures) << "/12 criteria passed\n";
    return failures == 0 ? 0 : 1;
}
