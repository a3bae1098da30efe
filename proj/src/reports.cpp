#include "kcof/reports.hpp"

#include <json.hpp>

#include "kcof/bounds.hpp"
#include "kcof/error.hpp"
#include "kcof/segment_solver.hpp"

namespace kcof {

namespace {

using json = nlohmann::ordered_json;

json str(const Rational& x) { return x.str(); }

json vec(const std::vector<Rational>& xs)
{
    json a = json::array();
    for (const auto& x : xs) {
        a.push_back(x.str());
    }
    return a;
}

json players(const std::vector<PlayerIndex>& idx)
{
    json a = json::array();
    for (PlayerIndex i : idx) {
        a.push_back(i + 1);
    }
    return a;
}

json header(const GameInstance& inst)
{
    json j;
    j["k"] = inst.k();
    j["players"] = inst.size();
    j["beliefs"] = vec(inst.beliefs());
    return j;
}

json path_json(const std::vector<SegmentKey>& path)
{
    json a = json::array();
    for (const auto& key : path) {
        a.push_back(to_string(key));
    }
    return a;
}

json solution_json(const PneSolution& sol)
{
    json j;
    j["opinions"] = vec(sol.opinions);
    j["social_cost"] = str(sol.social_cost);
    j["path"] = path_json(sol.path);
    return j;
}

json mixed_json(const GameInstance& inst, const RandomizedOpinionVector& rz)
{
    const auto verdict = is_mixed_nash(inst, rz);
    json j = header(inst);
    j["kind"] = "mixed";
    j["is_equilibrium"] = verdict.is_mne;
    Rational total;
    json rows = json::array();
    for (PlayerIndex i = 0; i < inst.size(); ++i) {
        total += verdict.expected_costs[i];
        json support = json::array();
        for (const auto& w : rz[i]) {
            support.push_back({w.opinion.str(), w.probability.str()});
        }
        rows.push_back({{"player", i + 1},
                        {"belief", str(inst.belief(i))},
                        {"support", std::move(support)},
                        {"expected_cost", str(verdict.expected_costs[i])},
                        {"best_deviation", str(verdict.best_deviations[i].y_star)},
                        {"best_deviation_cost", str(verdict.best_deviations[i].expected_cost)}});
    }
    j["expected_social_cost"] = str(total);
    j["per_player"] = std::move(rows);
    json viol = json::array();
    for (const auto& v : verdict.violations) {
        viol.push_back({{"player", v.player + 1}, {"deviation", str(v.y_star)}, {"improvement", str(v.improvement)}});
    }
    j["violations"] = std::move(viol);
    return j;
}

json pure_json(const GameInstance& inst, const OpinionVector& z)
{
    const auto verdict = is_pure_nash(inst, z);
    const auto costs = player_costs(inst, z);
    json j = header(inst);
    j["kind"] = "pure";
    j["is_equilibrium"] = verdict.is_pne;
    j["social_cost"] = str(social_cost(inst, z));
    json rows = json::array();
    for (PlayerIndex i = 0; i < inst.size(); ++i) {
        const auto nb = neighborhood(inst, z, i);
        const auto iv = interval(inst, z, i);
        rows.push_back({{"player", i + 1},
                        {"belief", str(inst.belief(i))},
                        {"opinion", str(z[i])},
                        {"cost", str(costs[i])},
                        {"neighbors", players(nb.members)},
                        {"interval", {iv.interval.lo.str(), iv.interval.hi.str()}},
                        {"best_response", str(best_response(inst, z, i))}});
    }
    j["per_player"] = std::move(rows);
    json viol = json::array();
    for (const auto& v : verdict.violations) {
        viol.push_back({{"player", v.player + 1}, {"best_response", str(v.best_response)}, {"improvement", str(v.cost_delta)}});
    }
    j["violations"] = std::move(viol);
    j["distance_tie"] = verdict.distance_tie;
    j["tie_dependent"] = verdict.tie_dependent;
    const auto sr = check_structural_lemmas(inst, z);
    j["structure"] = {{"monotone", sr.monotone},
                      {"in_belief_range", sr.in_belief_range},
                      {"consecutive_neighborhoods", sr.consecutive_neighborhoods}};
    return j;
}

json optimizer_json(const OptimizerResult& r)
{
    return {{"opinions", vec(r.opinions)}, {"social_cost", str(r.social_cost)}, {"starts", r.starts}, {"sweeps", r.sweeps}};
}

} // namespace

std::string check_report(const InstanceFile& file)
{
    const GameInstance inst = file.game();
    if (file.mixed) {
        return mixed_json(inst, *file.mixed).dump(2);
    }
    if (!file.opinions) {
        fail(ErrorCode::InvalidArgument, "the instance has neither \"opinions\" nor \"mixed\" to check");
    }
    return pure_json(inst, *file.opinions).dump(2);
}

std::string mixed_check_report(const InstanceFile& file)
{
    const GameInstance inst = file.game();
    if (file.mixed) {
        return mixed_json(inst, *file.mixed).dump(2);
    }
    if (!file.opinions) {
        fail(ErrorCode::InvalidArgument, "the instance has neither \"opinions\" nor \"mixed\" to check");
    }
    return mixed_json(inst, as_randomized(*file.opinions)).dump(2);
}

std::string solve_report(const InstanceFile& file, std::size_t enumerate_limit, std::size_t rounds)
{
    const GameInstance inst = file.game();
    json j = header(inst);
    if (inst.k() == 1) {
        j["method"] = "segment_graph";
        const SegmentGraph g = build_segment_graph(inst);
        j["graph"] = {{"legit_segments", g.nodes().size()}, {"edges", g.edge_count()},
                      {"consistency_discrepancies", g.discrepancies()}};
        json segs = json::array();
        for (const auto& s : g.nodes()) {
            segs.push_back({{"segment", to_string(s.key)}, {"opinions", vec(s.opinions)}, {"weight", str(s.weight)}});
        }
        j["segments"] = std::move(segs);
        const auto best = best_pne(inst);
        j["exists"] = best.has_value();
        j["best"] = best ? solution_json(*best) : json(nullptr);
        const auto worst = worst_pne(inst);
        j["worst"] = worst ? solution_json(*worst) : json(nullptr);
        if (enumerate_limit > 0) {
            const auto e = enumerate_pne(inst, enumerate_limit);
            json list = json::array();
            for (const auto& sol : e.equilibria) {
                list.push_back(solution_json(sol));
            }
            j["enumeration"] = {{"equilibria", std::move(list)}, {"rejected_paths", e.rejected_paths},
                                {"duplicate_paths", e.duplicate_paths},
                                {"truncated", e.truncated}};
        }
        return j.dump(2);
    }

    j["method"] = "best_response_dynamics";
    DynamicsOptions opts;
    opts.max_rounds = rounds;
    const auto r = best_response_dynamics(inst, inst.beliefs(), opts);
    j["outcome"] = to_string(r.outcome);
    j["rounds"] = r.rounds;
    if (r.outcome == DynamicsOutcome::CycleDetected) {
        j["period"] = r.period;
    }
    const bool found = r.outcome == DynamicsOutcome::Converged && is_pure_nash(inst, r.final_state).is_pne;
    j["exists"] = found ? json(true) : json(nullptr); // unknown unless found
    if (found) {
        j["equilibrium"] = {{"opinions", vec(r.final_state)}, {"social_cost", str(social_cost(inst, r.final_state))}};
    } else {
        j["final_state_social_cost"] = str(social_cost(inst, r.final_state));
    }
    return j.dump(2);
}

std::string bounds_report(const InstanceFile& file, bool run_optimizer, const OptimizerConfig& cfg)
{
    const GameInstance inst = file.game();
    json j = header(inst);
    j["opt_lower_bound_k"] = str(opt_lower_bound_k(inst));
    if (inst.k() == 1) {
        j["opt_lower_bound_1"] = str(opt_lower_bound_1(inst));
    }
    const auto windows = star_windows(inst);
    std::vector<PlayerIndex> eta;
    if (inst.k() == 1) {
        eta = eta_map(inst);
    }
    json rows = json::array();
    for (PlayerIndex i = 0; i < inst.size(); ++i) {
        json row = {{"player", i + 1},
                    {"window", {windows[i].l_star + 1, windows[i].r_star + 1}},
                    {"cap", str(pne_player_cost_cap(inst, i))}};
        if (inst.k() == 1) {
            row["eta"] = eta[i] + 1;
            row["cap_1"] = str(pne_player_cost_cap_1(inst, i));
        }
        rows.push_back(std::move(row));
    }
    j["per_player"] = std::move(rows);

    BracketOptions opts;
    opts.run_optimizer = run_optimizer;
    opts.optimizer = cfg;
    if (file.opinions) {
        opts.optimizer_starts.push_back(*file.opinions);
        if (inst.k() >= 2 && is_pure_nash(inst, *file.opinions).is_pne) {
            opts.known_pne = file.opinions;
        }
    }
    const auto br = poa_bracket(inst, opts);
    auto opt_str = [](const std::optional<Rational>& x) { return x ? json(x->str()) : json(nullptr); };
    j["bracket"] = {{"worst_pne_cost", opt_str(br.worst_pne_cost)},
                    {"worst_pne", br.worst_pne ? vec(*br.worst_pne) : json(nullptr)},
                    {"opt_lower", str(br.opt_lower)},
                    {"opt_upper", str(br.opt_upper)},
                    {"opt_upper_vector", vec(br.opt_upper_vector)},
                    {"optimizer_run", run_optimizer},
                    {"ratio_lower", br.ratio_lower_unbounded ? json("unbounded") : opt_str(br.ratio_lower)},
                    {"ratio_upper", br.ratio_upper_unbounded ? json("unbounded") : opt_str(br.ratio_upper)}};
    return j.dump(2);
}

std::string optimize_report(const InstanceFile& file, const OptimizerConfig& cfg)
{
    const GameInstance inst = file.game();
    std::vector<OpinionVector> starts;
    if (file.opinions) {
        starts.push_back(*file.opinions);
    }
    json j = header(inst);
    j["config"] = {{"refinement_levels", cfg.candidate_grid_extra}, {"max_sweeps", cfg.max_sweeps},
                   {"restarts", cfg.restarts}, {"seed", cfg.seed}};
    j["result"] = optimizer_json(optimize_social_cost(inst, cfg, starts));
    j["opt_lower_bound_k"] = str(opt_lower_bound_k(inst));
    return j.dump(2);
}

std::string segment_graph_dot(const InstanceFile& file) { return build_segment_graph(file.game()).to_dot(); }

std::string catalog_report(const CatalogParams& params, const VerifyOptions& options)
{
    const auto entries = build_catalog(params);
    json j;
    j["k"] = params.k;
    j["lambda"] = params.lambda.str();
    j["epsilon"] = params.epsilon.str();
    j["dynamics_rounds"] = options.dynamics_rounds;
    json list = json::array();
    bool all = true;
    for (const auto& e : entries) {
        json item;
        item["name"] = e.name;
        item["notes"] = e.notes;
        item["lambda"] = e.lambda.str();
        json docs = json::array();
        InstanceFile base{e.instance.k(), e.instance.beliefs(), {}, std::nullopt, std::nullopt};
        docs.push_back({{"tag", "instance"}, {"document", json::parse(to_json(base))}});
        for (const auto& r : e.references) {
            InstanceFile f = base;
            if (r.randomized) {
                f.mixed = r.mixed;
            } else {
                f.opinions = r.opinions;
            }
            docs.push_back({{"tag", r.tag}, {"verdict", to_string(r.verdict)}, {"document", json::parse(to_json(f))}});
        }
        item["documents"] = std::move(docs);
        json rows = json::array();
        for (const auto& row : verify_entry(e, options)) {
            all = all && row.match;
            rows.push_back({{"quantity", row.quantity}, {"expected", row.expected}, {"recomputed", row.recomputed},
                            {"match", row.match}});
        }
        item["checks"] = std::move(rows);
        list.push_back(std::move(item));
    }
    j["entries"] = std::move(list);
    j["all_match"] = all;
    return j.dump(2);
}

} // namespace kcof
