// Command-line front end. Talks to the library only through kcof.h.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "kcof/kcof.h"

namespace {

using json = nlohmann::ordered_json;

constexpr int exit_ok = 0;
constexpr int exit_negative = 1; // not an equilibrium / catalog mismatch
constexpr int exit_input = 2;
constexpr int exit_internal = 3;

struct Failure {
    kcof_status status;
    std::string message;
};

void check(kcof_status st)
{
    if (st != KCOF_OK) {
        throw Failure{st, kcof_last_error()};
    }
}

std::string take(char* s)
{
    std::string out(s);
    kcof_string_free(s);
    return out;
}

struct Game {
    kcof_game* handle = nullptr;
    explicit Game(const std::string& path) { check(kcof_game_from_file(path.c_str(), &handle)); }
    ~Game() { kcof_game_free(handle); }
    Game(const Game&) = delete;
    Game& operator=(const Game&) = delete;
};

template <class F>
json report(F&& call)
{
    char* out = nullptr;
    check(call(&out));
    return json::parse(take(out));
}

std::string tuple(const json& values)
{
    std::string s = "(";
    for (std::size_t i = 0; i < values.size(); ++i) {
        s += (i ? ", " : "") + values[i].get<std::string>();
    }
    return s + ")";
}

std::string yes(bool b) { return b ? "yes" : "no"; }

std::string pad(const std::string& s, std::size_t w) { return s.size() >= w ? s + " " : s + std::string(w - s.size(), ' '); }

void print_pure(const json& r)
{
    std::cout << "PNE: " << yes(r["is_equilibrium"]) << ", SC = " << r["social_cost"].get<std::string>() << "\n";
    std::cout << pad("player", 8) << pad("belief", 12) << pad("opinion", 12) << pad("cost", 12) << pad("neighbors", 12)
              << pad("interval", 20) << "best response\n";
    for (const auto& p : r["per_player"]) {
        std::string nb;
        for (const auto& j : p["neighbors"]) {
            nb += (nb.empty() ? "" : ",") + std::to_string(j.get<int>());
        }
        const std::string iv = "[" + p["interval"][0].get<std::string>() + ", " + p["interval"][1].get<std::string>() + "]";
        std::cout << pad(std::to_string(p["player"].get<int>()), 8) << pad(p["belief"], 12) << pad(p["opinion"], 12)
                  << pad(p["cost"], 12) << pad(nb, 12) << pad(iv, 20) << p["best_response"].get<std::string>() << "\n";
    }
    if (r["violations"].empty()) {
        std::cout << "violations: none\n";
    }
    for (const auto& v : r["violations"]) {
        std::cout << "violation: player " << v["player"].get<int>() << " improves by "
                  << v["improvement"].get<std::string>() << " moving to " << v["best_response"].get<std::string>() << "\n";
    }
    const auto& s = r["structure"];
    std::cout << "structure: monotone " << yes(s["monotone"]) << ", in belief range " << yes(s["in_belief_range"])
              << ", consecutive neighborhoods " << yes(s["consecutive_neighborhoods"]) << "\n";
    if (r["distance_tie"].get<bool>()) {
        std::cout << "note: exact distance ties at a neighborhood boundary"
                  << (r["tie_dependent"].get<bool>() ? " (resolved towards the current opinions)" : "") << "\n";
    }
}

void print_mixed(const json& r)
{
    std::cout << "MNE: " << yes(r["is_equilibrium"]) << ", E[SC] = " << r["expected_social_cost"].get<std::string>() << "\n";
    std::cout << pad("player", 8) << pad("belief", 12) << pad("support", 36) << pad("E[cost]", 12) << "best deviation\n";
    for (const auto& p : r["per_player"]) {
        std::string sup;
        for (const auto& w : p["support"]) {
            sup += (sup.empty() ? "" : " ") + w[0].get<std::string>() + "@" + w[1].get<std::string>();
        }
        std::cout << pad(std::to_string(p["player"].get<int>()), 8) << pad(p["belief"], 12) << pad(sup, 36)
                  << pad(p["expected_cost"], 12) << p["best_deviation"].get<std::string>() << " (E[cost] "
                  << p["best_deviation_cost"].get<std::string>() << ")\n";
    }
    if (r["violations"].empty()) {
        std::cout << "violations: none\n";
    }
    for (const auto& v : r["violations"]) {
        std::cout << "violation: player " << v["player"].get<int>() << " improves by "
                  << v["improvement"].get<std::string>() << " deviating to " << v["deviation"].get<std::string>() << "\n";
    }
}

int run_check(const std::string& path, bool as_json, bool mixed)
{
    Game g(path);
    const json r = report([&](char** out) { return mixed ? kcof_mixed_check_report(g.handle, out) : kcof_check_report(g.handle, out); });
    if (as_json) {
        std::cout << r.dump(2) << "\n";
    } else if (r["kind"] == "mixed") {
        print_mixed(r);
    } else {
        print_pure(r);
    }
    return r["is_equilibrium"].get<bool>() ? exit_ok : exit_negative;
}

void print_solution(const std::string& label, const json& s)
{
    std::cout << label << tuple(s["opinions"]) << ", SC = " << s["social_cost"].get<std::string>() << ", path";
    for (const auto& seg : s["path"]) {
        std::cout << " " << seg.get<std::string>();
    }
    std::cout << "\n";
}

int run_solve(const std::string& path, std::size_t enumerate, const std::string& dot, std::size_t rounds, bool as_json)
{
    Game g(path);
    const json r = report([&](char** out) { return kcof_solve_report(g.handle, enumerate, rounds, out); });
    if (!dot.empty()) {
        char* text = nullptr;
        check(kcof_segment_graph_dot(g.handle, &text));
        std::ofstream(dot) << take(text);
    }
    if (as_json) {
        std::cout << r.dump(2) << "\n";
        return exit_ok;
    }
    if (r["method"] == "segment_graph") {
        std::cout << "segment graph: " << r["graph"]["legit_segments"].get<int>() << " legit segments, "
                  << r["graph"]["edges"].get<int>() << " edges\n";
        if (!r["exists"].get<bool>()) {
            std::cout << "no pure Nash equilibrium exists\n";
            return exit_ok;
        }
        std::cout << "pure Nash equilibrium exists\n";
        print_solution("best PNE: ", r["best"]);
        print_solution("worst PNE: ", r["worst"]);
        if (r.contains("enumeration")) {
            const auto& e = r["enumeration"];
            std::cout << e["equilibria"].size() << " PNE" << (e["truncated"].get<bool>() ? " (truncated)" : "") << ":\n";
            int idx = 0;
            for (const auto& s : e["equilibria"]) {
                print_solution("  PNE " + std::to_string(++idx) + ": ", s);
            }
        }
        return exit_ok;
    }
    std::cout << "best-response dynamics from the beliefs: " << r["outcome"].get<std::string>() << " after "
              << r["rounds"].get<std::size_t>() << " rounds";
    if (r.contains("period")) {
        std::cout << " (period " << r["period"].get<std::size_t>() << ")";
    }
    std::cout << "\n";
    if (r.contains("equilibrium")) {
        std::cout << "PNE found: " << tuple(r["equilibrium"]["opinions"]) << ", SC = "
                  << r["equilibrium"]["social_cost"].get<std::string>() << "\n";
    } else {
        std::cout << "no PNE found\n";
    }
    return exit_ok;
}

std::string value_or(const json& v) { return v.is_null() ? "n/a" : v.get<std::string>(); }

int run_bounds(const std::string& path, bool no_opt, const kcof_optimizer_config& cfg, bool as_json)
{
    Game g(path);
    const json r = report([&](char** out) { return kcof_bounds_report(g.handle, no_opt ? nullptr : &cfg, out); });
    if (as_json) {
        std::cout << r.dump(2) << "\n";
        return exit_ok;
    }
    std::cout << "OPT lower bound (windows): " << r["opt_lower_bound_k"].get<std::string>() << "\n";
    if (r.contains("opt_lower_bound_1")) {
        std::cout << "OPT lower bound (nearest beliefs): " << r["opt_lower_bound_1"].get<std::string>() << "\n";
    }
    std::cout << pad("player", 8) << pad("window", 10) << pad("cap", 12) << "nearest-belief cap\n";
    for (const auto& p : r["per_player"]) {
        const std::string w = std::to_string(p["window"][0].get<int>()) + ".." + std::to_string(p["window"][1].get<int>());
        std::cout << pad(std::to_string(p["player"].get<int>()), 8) << pad(w, 10) << pad(p["cap"], 12)
                  << (p.contains("cap_1") ? p["cap_1"].get<std::string>() : "-") << "\n";
    }
    const auto& b = r["bracket"];
    std::cout << "worst known PNE cost: " << value_or(b["worst_pne_cost"]) << "\n";
    std::cout << "OPT in [" << b["opt_lower"].get<std::string>() << ", " << b["opt_upper"].get<std::string>() << "]"
              << (b["optimizer_run"].get<bool>() ? "" : " (optimizer skipped)") << "\n";
    std::cout << "PoA ratio_lower = " << value_or(b["ratio_lower"]) << ", ratio_upper = " << value_or(b["ratio_upper"]) << "\n";
    return exit_ok;
}

int run_optimize(const std::string& path, const kcof_optimizer_config& cfg, bool as_json)
{
    Game g(path);
    const json r = report([&](char** out) { return kcof_optimize_report(g.handle, &cfg, out); });
    if (as_json) {
        std::cout << r.dump(2) << "\n";
        return exit_ok;
    }
    std::cout << "best vector: " << tuple(r["result"]["opinions"]) << "\n";
    std::cout << "SC = " << r["result"]["social_cost"].get<std::string>() << " (lower bound "
              << r["opt_lower_bound_k"].get<std::string>() << ", " << r["result"]["starts"].get<int>() << " starts)\n";
    return exit_ok;
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        out += c == '"' ? "\"\"" : std::string(1, c);
    }
    return out + "\"";
}

int run_catalog(int k, const std::string& lambda, const std::string& epsilon, std::size_t rounds,
                const std::string& out_dir, bool as_json)
{
    const json r = report([&](char** out) { return kcof_catalog_report(k, lambda.c_str(), epsilon.c_str(), rounds, out); });

    std::ostringstream md;
    std::ostringstream csv;
    md << "| entry | quantity | expected | recomputed | status |\n|---|---|---|---|---|\n";
    csv << "entry,quantity,expected,recomputed,status\n";
    for (const auto& e : r["entries"]) {
        for (const auto& c : e["checks"]) {
            const std::string status = c["match"].get<bool>() ? "match" : "MISMATCH";
            md << "| " << e["name"].get<std::string>() << " | " << c["quantity"].get<std::string>() << " | "
               << c["expected"].get<std::string>() << " | " << c["recomputed"].get<std::string>() << " | " << status << " |\n";
            csv << csv_field(e["name"]) << "," << csv_field(c["quantity"]) << "," << csv_field(c["expected"]) << ","
                << csv_field(c["recomputed"]) << "," << status << "\n";
        }
    }

    if (!out_dir.empty()) {
        namespace fs = std::filesystem;
        fs::create_directories(out_dir);
        for (const auto& e : r["entries"]) {
            for (const auto& d : e["documents"]) {
                const std::string tag = d["tag"];
                const std::string name = e["name"].get<std::string>() + (tag == "instance" ? "" : "__" + tag) + ".json";
                std::ofstream(fs::path(out_dir) / name) << d["document"].dump(2) << "\n";
            }
        }
        std::ofstream(fs::path(out_dir) / "reproduction.md") << md.str();
        std::ofstream(fs::path(out_dir) / "reproduction.csv") << csv.str();
    }

    if (as_json) {
        std::cout << r.dump(2) << "\n";
    } else {
        std::cout << "k = " << k << ", lambda = " << r["lambda"].get<std::string>() << ", epsilon = "
                  << r["epsilon"].get<std::string>() << "\n" << md.str();
    }
    return r["all_match"].get<bool>() ? exit_ok : exit_negative;
}

int exit_for(kcof_status st)
{
    return st == KCOF_ERR_INTERNAL ? exit_internal : exit_input;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Solver for k-nearest compromising opinion formation games"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "Emit the JSON report instead of text");

    std::string file;
    auto* check_cmd = app.add_subcommand("check", "Verify a pure or mixed opinion vector");
    check_cmd->add_option("file", file, "Instance JSON")->required();
    check_cmd->add_flag("--json", as_json);

    auto* mixed_cmd = app.add_subcommand("mixed-check", "Verify a randomized opinion vector");
    mixed_cmd->add_option("file", file, "Instance JSON")->required();
    mixed_cmd->add_flag("--json", as_json);

    std::size_t enumerate = 0;
    std::string dot;
    std::size_t rounds = 1000;
    auto* solve_cmd = app.add_subcommand("solve", "Find pure Nash equilibria");
    solve_cmd->add_option("file", file, "Instance JSON")->required();
    solve_cmd->add_option("--enumerate", enumerate, "List up to N equilibria (k = 1)");
    solve_cmd->add_option("--dot", dot, "Write the segment graph in DOT format (k = 1)");
    solve_cmd->add_option("--rounds", rounds, "Best-response rounds (k >= 2)")->check(CLI::PositiveNumber);
    solve_cmd->add_flag("--json", as_json);

    kcof_optimizer_config cfg;
    kcof_optimizer_config_default(&cfg);
    auto add_optimizer_options = [&cfg](CLI::App* cmd) {
        cmd->add_option("--refine", cfg.refinement_levels, "Grid refinement levels");
        cmd->add_option("--sweeps", cfg.max_sweeps, "Maximum sweeps per descent");
        cmd->add_option("--restarts", cfg.restarts, "Random restarts");
        cmd->add_option("--seed", cfg.seed, "Random seed");
    };

    bool no_opt = false;
    auto* bounds_cmd = app.add_subcommand("bounds", "Lower bounds, caps and PoA bracket");
    bounds_cmd->add_option("file", file, "Instance JSON")->required();
    bounds_cmd->add_flag("--no-opt", no_opt, "Skip the optimizer");
    add_optimizer_options(bounds_cmd);
    bounds_cmd->add_flag("--json", as_json);

    auto* opt_cmd = app.add_subcommand("optimize", "Upper bound on the optimal social cost");
    opt_cmd->add_option("file", file, "Instance JSON")->required();
    add_optimizer_options(opt_cmd);
    opt_cmd->add_flag("--json", as_json);

    int k = 1;
    std::string lambda = "1/2";
    std::string epsilon = "1/8";
    std::string out_dir;
    std::size_t catalog_rounds = 1000;
    auto* cat_cmd = app.add_subcommand("catalog", "Rebuild and re-verify the constructed instances");
    cat_cmd->add_option("--k", k, "Neighborhood size");
    cat_cmd->add_option("--lambda", lambda, "Construction parameter lambda in (0,1)");
    cat_cmd->add_option("--epsilon", epsilon, "Construction parameter epsilon in (0,1/4)");
    cat_cmd->add_option("--rounds", catalog_rounds, "Dynamics rounds for non-existence checks")->check(CLI::PositiveNumber);
    cat_cmd->add_option("--out", out_dir, "Directory for instance files and reproduction tables");
    cat_cmd->add_flag("--json", as_json);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_input;
    }

    try {
        if (check_cmd->parsed()) {
            return run_check(file, as_json, false);
        }
        if (mixed_cmd->parsed()) {
            return run_check(file, as_json, true);
        }
        if (solve_cmd->parsed()) {
            return run_solve(file, enumerate, dot, rounds, as_json);
        }
        if (bounds_cmd->parsed()) {
            return run_bounds(file, no_opt, cfg, as_json);
        }
        if (opt_cmd->parsed()) {
            return run_optimize(file, cfg, as_json);
        }
        return run_catalog(k, lambda, epsilon, catalog_rounds, out_dir, as_json);
    } catch (const Failure& f) {
        std::cerr << "error: " << f.message << "\n";
        return exit_for(f.status);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_internal;
    }
}
