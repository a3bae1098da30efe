#ifndef KCOF_KCOF_H
#define KCOF_KCOF_H

/* C interface to the k-COF solver library.
 *
 * Games are opaque handles. Rationals cross the boundary as strings
 * ("p", "p/q" or exact decimals). Strings returned through char** are
 * heap-allocated and must be released with kcof_string_free. Player
 * indices are 0-based here; JSON reports number players from 1.
 * On failure a function returns a non-zero status and kcof_last_error()
 * describes the problem (per thread, valid until the next call). */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum kcof_status {
    KCOF_OK = 0,
    KCOF_ERR_INVALID_ARGUMENT = 1,
    KCOF_ERR_PARSE = 2,
    KCOF_ERR_DOMAIN = 3,
    KCOF_ERR_LIMIT = 4,
    KCOF_ERR_INTERNAL = 5,
    KCOF_ERR_IO = 6
} kcof_status;

typedef struct kcof_game kcof_game;

typedef struct kcof_optimizer_config {
    int refinement_levels;
    int max_sweeps;
    int restarts;
    uint64_t seed;
} kcof_optimizer_config;

const char* kcof_last_error(void);
void kcof_string_free(char* s);

kcof_status kcof_game_from_json(const char* json, kcof_game** out);
kcof_status kcof_game_from_file(const char* path, kcof_game** out);
kcof_status kcof_game_create(int k, const char* const* beliefs, size_t n, kcof_game** out);
void kcof_game_free(kcof_game* game);

/* Replaces the opinion vector (and drops any mixed strategies). */
kcof_status kcof_game_set_opinions(kcof_game* game, const char* const* opinions, size_t n);
size_t kcof_game_num_players(const kcof_game* game);
int kcof_game_k(const kcof_game* game);
kcof_status kcof_game_to_json(const kcof_game* game, char** out);

/* These use the game's opinion vector. */
kcof_status kcof_player_cost(const kcof_game* game, size_t player, char** out);
kcof_status kcof_social_cost(const kcof_game* game, char** out);
kcof_status kcof_best_response(const kcof_game* game, size_t player, char** out);
kcof_status kcof_is_pure_nash(const kcof_game* game, int* out);

void kcof_optimizer_config_default(kcof_optimizer_config* cfg);

/* JSON reports. */
kcof_status kcof_check_report(const kcof_game* game, char** out);
kcof_status kcof_mixed_check_report(const kcof_game* game, char** out);
kcof_status kcof_solve_report(const kcof_game* game, size_t enumerate_limit, size_t rounds, char** out);
/* cfg == NULL skips the optimizer. */
kcof_status kcof_bounds_report(const kcof_game* game, const kcof_optimizer_config* cfg, char** out);
kcof_status kcof_optimize_report(const kcof_game* game, const kcof_optimizer_config* cfg, char** out);
kcof_status kcof_segment_graph_dot(const kcof_game* game, char** out);
kcof_status kcof_catalog_report(int k, const char* lambda, const char* epsilon, size_t dynamics_rounds, char** out);

#ifdef __cplusplus
}
#endif

#endif
