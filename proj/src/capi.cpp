#include "kcof/kcof.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "kcof/error.hpp"
#include "kcof/instance_file.hpp"
#include "kcof/reports.hpp"

struct kcof_game {
    kcof::InstanceFile file;
};

namespace {

thread_local std::string last_error;

kcof_status status_for(kcof::ErrorCode code)
{
    switch (code) {
    case kcof::ErrorCode::InvalidArgument: return KCOF_ERR_INVALID_ARGUMENT;
    case kcof::ErrorCode::Parse: return KCOF_ERR_PARSE;
    case kcof::ErrorCode::Domain: return KCOF_ERR_DOMAIN;
    case kcof::ErrorCode::LimitExceeded: return KCOF_ERR_LIMIT;
    case kcof::ErrorCode::Internal: return KCOF_ERR_INTERNAL;
    case kcof::ErrorCode::Io: return KCOF_ERR_IO;
    }
    return KCOF_ERR_INTERNAL;
}

template <class F>
kcof_status guarded(F&& body)
{
    try {
        last_error.clear();
        body();
        return KCOF_OK;
    } catch (const kcof::Error& e) {
        last_error = e.what();
        return status_for(e.code());
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return KCOF_ERR_LIMIT;
    } catch (const std::exception& e) {
        last_error = e.what();
        return KCOF_ERR_INTERNAL;
    }
}

void require(const void* p, const char* what)
{
    if (p == nullptr) {
        kcof::fail(kcof::ErrorCode::InvalidArgument, std::string(what) + " must not be NULL");
    }
}

char* dup(const std::string& s)
{
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out == nullptr) {
        throw std::bad_alloc();
    }
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

std::vector<kcof::Rational> parse_all(const char* const* values, std::size_t n)
{
    if (n > 0) {
        require(values, "value array");
    }
    std::vector<kcof::Rational> out;
    for (std::size_t i = 0; i < n; ++i) {
        require(values[i], "value string");
        out.push_back(kcof::Rational::parse(values[i]));
    }
    return out;
}

const kcof::OpinionVector& opinions_of(const kcof_game* game)
{
    require(game, "game");
    if (!game->file.opinions) {
        kcof::fail(kcof::ErrorCode::InvalidArgument, "the game has no opinion vector");
    }
    return *game->file.opinions;
}

void check_player(const kcof_game* game, std::size_t player)
{
    if (player >= game->file.beliefs.size()) {
        kcof::fail(kcof::ErrorCode::InvalidArgument, "player index out of range");
    }
}

kcof::OptimizerConfig to_config(const kcof_optimizer_config* cfg)
{
    kcof::OptimizerConfig c;
    if (cfg != nullptr) {
        c.candidate_grid_extra = cfg->refinement_levels;
        c.max_sweeps = cfg->max_sweeps;
        c.restarts = cfg->restarts;
        c.seed = cfg->seed;
    }
    kcof::validate_config(c);
    return c;
}

template <class F>
kcof_status string_result(char** out, F&& make)
{
    return guarded([&] {
        require(out, "output pointer");
        *out = dup(make());
    });
}

} // namespace

extern "C" {

const char* kcof_last_error(void) { return last_error.c_str(); }

void kcof_string_free(char* s) { std::free(s); }

kcof_status kcof_game_from_json(const char* json, kcof_game** out)
{
    return guarded([&] {
        require(json, "json");
        require(out, "output pointer");
        *out = new kcof_game{kcof::parse_instance(json)};
    });
}

kcof_status kcof_game_from_file(const char* path, kcof_game** out)
{
    return guarded([&] {
        require(path, "path");
        require(out, "output pointer");
        *out = new kcof_game{kcof::load_instance(path)};
    });
}

kcof_status kcof_game_create(int k, const char* const* beliefs, size_t n, kcof_game** out)
{
    return guarded([&] {
        require(out, "output pointer");
        kcof::InstanceFile f;
        f.k = k;
        f.beliefs = parse_all(beliefs, n);
        (void)f.game();
        *out = new kcof_game{std::move(f)};
    });
}

void kcof_game_free(kcof_game* game) { delete game; }

kcof_status kcof_game_set_opinions(kcof_game* game, const char* const* opinions, size_t n)
{
    return guarded([&] {
        require(game, "game");
        auto z = parse_all(opinions, n);
        kcof::validate_opinions(game->file.game(), z);
        game->file.opinions = std::move(z);
        game->file.mixed.reset();
    });
}

size_t kcof_game_num_players(const kcof_game* game) { return game ? game->file.beliefs.size() : 0; }

int kcof_game_k(const kcof_game* game) { return game ? game->file.k : 0; }

kcof_status kcof_game_to_json(const kcof_game* game, char** out)
{
    return string_result(out, [&] {
        require(game, "game");
        return kcof::to_json(game->file);
    });
}

kcof_status kcof_player_cost(const kcof_game* game, size_t player, char** out)
{
    return string_result(out, [&] {
        const auto& z = opinions_of(game);
        check_player(game, player);
        return kcof::player_cost(game->file.game(), z, player).str();
    });
}

kcof_status kcof_social_cost(const kcof_game* game, char** out)
{
    return string_result(out, [&] {
        const auto& z = opinions_of(game);
        return kcof::social_cost(game->file.game(), z).str();
    });
}

kcof_status kcof_best_response(const kcof_game* game, size_t player, char** out)
{
    return string_result(out, [&] {
        const auto& z = opinions_of(game);
        check_player(game, player);
        return kcof::best_response(game->file.game(), z, player).str();
    });
}

kcof_status kcof_is_pure_nash(const kcof_game* game, int* out)
{
    return guarded([&] {
        require(out, "output pointer");
        const auto& z = opinions_of(game);
        *out = kcof::is_pure_nash(game->file.game(), z).is_pne ? 1 : 0;
    });
}

void kcof_optimizer_config_default(kcof_optimizer_config* cfg)
{
    if (cfg == nullptr) {
        return;
    }
    const kcof::OptimizerConfig d;
    cfg->refinement_levels = d.candidate_grid_extra;
    cfg->max_sweeps = d.max_sweeps;
    cfg->restarts = d.restarts;
    cfg->seed = d.seed;
}

kcof_status kcof_check_report(const kcof_game* game, char** out)
{
    return string_result(out, [&] {
        require(game, "game");
        return kcof::check_report(game->file);
    });
}

kcof_status kcof_mixed_check_report(const kcof_game* game, char** out)
{
    return string_result(out, [&] {
        require(game, "game");
        return kcof::mixed_check_report(game->file);
    });
}

kcof_status kcof_solve_report(const kcof_game* game, size_t enumerate_limit, size_t rounds, char** out)
{
    return string_result(out, [&] {
        require(game, "game");
        return kcof::solve_report(game->file, enumerate_limit, rounds);
    });
}

kcof_status kcof_bounds_report(const kcof_game* game, const kcof_optimizer_config* cfg, char** out)
{
    return string_result(out, [&] {
        require(game, "game");
        return kcof::bounds_report(game->file, cfg != nullptr, to_config(cfg));
    });
}

kcof_status kcof_optimize_report(const kcof_game* game, const kcof_optimizer_config* cfg, char** out)
{
    return string_result(out, [&] {
        require(game, "game");
        return kcof::optimize_report(game->file, to_config(cfg));
    });
}

kcof_status kcof_segment_graph_dot(const kcof_game* game, char** out)
{
    return string_result(out, [&] {
        require(game, "game");
        return kcof::segment_graph_dot(game->file);
    });
}

kcof_status kcof_catalog_report(int k, const char* lambda, const char* epsilon, size_t dynamics_rounds, char** out)
{
    return string_result(out, [&] {
        kcof::CatalogParams p;
        p.k = k;
        if (lambda != nullptr) {
            p.lambda = kcof::Rational::parse(lambda);
        }
        if (epsilon != nullptr) {
            p.epsilon = kcof::Rational::parse(epsilon);
        }
        kcof::VerifyOptions opts;
        opts.dynamics_rounds = dynamics_rounds;
        return kcof::catalog_report(p, opts);
    });
}

} // extern "C"
