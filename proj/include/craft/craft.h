/* CRAFT: deterministic simulator and optimizer for edge/fog compute-node
 * placement on a city base-station graph.
 *
 * Conventions: every object returned through an out-parameter is owned by
 * the caller and released with its _destroy function; strings returned
 * through char** are released with craft_string_free. All functions are
 * thread safe as long as no object is mutated while another thread uses it.
 * On failure the out-parameters are untouched and craft_last_error() gives
 * a message for the calling thread.
 */
#ifndef CRAFT_H
#define CRAFT_H

#include <stdint.h>

#if defined(_WIN32)
#define CRAFT_API __declspec(dllexport)
#else
#define CRAFT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum craft_status {
  CRAFT_OK = 0,
  CRAFT_ERR_INVALID_ARGUMENT = 1,
  CRAFT_ERR_PARSE = 2,
  CRAFT_ERR_IO = 3,
  CRAFT_ERR_NO_FEASIBLE = 4,
  CRAFT_ERR_TOO_LARGE = 5,
  CRAFT_ERR_INTERNAL = 6
} craft_status;

/* Library version, static storage. */
CRAFT_API const char* craft_version(void);

/* Message for the last failure on this thread; empty string if none. */
CRAFT_API const char* craft_last_error(void);

CRAFT_API void craft_string_free(char* s);

/* ---- configuration ---- */

typedef struct craft_config craft_config;

/* Default configuration (standard city: 30 edge candidates, 5 fog, 100
 * users). */
CRAFT_API craft_status craft_config_create(craft_config** out);

/* Defaults overridden field by field from a JSON object; accepts the same
 * keys the scenario file's "config" section uses, plus "sigma2_dbm" as an
 * alternative to "sigma2_w". Validates the result. */
CRAFT_API craft_status craft_config_from_json(const char* json, craft_config** out);

CRAFT_API craft_status craft_config_to_json(const craft_config* cfg, char** out_json);

CRAFT_API void craft_config_destroy(craft_config* cfg);

/* ---- scenarios ---- */

typedef struct craft_scenario craft_scenario;

/* Deterministic generation: a pure function of the config (its seed
 * included). */
CRAFT_API craft_status craft_scenario_generate(const craft_config* cfg, craft_scenario** out);

CRAFT_API craft_status craft_scenario_load(const char* path, craft_scenario** out);

CRAFT_API craft_status craft_scenario_save(const craft_scenario* scn, const char* path);

CRAFT_API craft_status craft_scenario_to_json(const craft_scenario* scn, char** out_json);

CRAFT_API craft_status craft_scenario_counts(const craft_scenario* scn, int* n_edge, int* n_fog, int* n_users);

/* The scenario's resolved configuration as JSON. */
CRAFT_API craft_status craft_scenario_config_json(const craft_scenario* scn, char** out_json);

/* Switches the computation-latency model: "literal" or "per_bit". */
CRAFT_API craft_status craft_scenario_set_comp_model(craft_scenario* scn, const char* name);

CRAFT_API void craft_scenario_destroy(craft_scenario* scn);

/* ---- deployments ---- */

typedef struct craft_deployment craft_deployment;

CRAFT_API craft_status craft_deployment_counts(const craft_deployment* dep, int* n_edge_genes, int* n_fog_genes);

CRAFT_API craft_status craft_deployment_edge_gene(const craft_deployment* dep, int index, int* site_id, int* sc,
                                                  int* ac, int* x);

CRAFT_API craft_status craft_deployment_fog_gene(const craft_deployment* dep, int index, int* site_id, int* sc,
                                                 int* y);

CRAFT_API craft_status craft_deployment_to_json(const craft_deployment* dep, char** out_json);

CRAFT_API void craft_deployment_destroy(craft_deployment* dep);

/* ---- evaluation ---- */

typedef struct craft_report craft_report;

typedef struct craft_report_view {
  double avg_latency_s; /* NaN when the workload cannot be assigned */
  double total_cost;
  double edge_cost;
  double fog_cost;
  double fitness; /* -inf when infeasible */
  int fitness_finite;
  int feasible;
} craft_report_view;

/* Scores one deployment at weight v >= 0: fitness is
 * -(v * avg_latency + total_cost), or infeasible when the workload cannot be
 * served. */
CRAFT_API craft_status craft_evaluate(const craft_scenario* scn, const craft_deployment* dep, double v,
                                      craft_report** out);

CRAFT_API craft_status craft_report_get(const craft_report* report, craft_report_view* out);

CRAFT_API void craft_report_destroy(craft_report* report);

/* ---- the optimizer ---- */

typedef struct craft_ga_params {
  int population;
  int generations;
  double mut_min;
  double mut_max;
  int elite_count; /* < 0 resolves to ceil(0.02 * population) */
  int tournament_min;
  int tournament_max;
  double v;
  uint64_t seed;
  int threads; /* evaluation workers, >= 1; never changes results */
} craft_ga_params;

CRAFT_API void craft_ga_params_default(craft_ga_params* out);

typedef struct craft_generation_stats {
  int gen;
  double best; /* over feasible individuals; NaN when none */
  double mean;
  double worst;
  int n_infeasible;
  double df; /* diversity factor in [0, 1] */
} craft_generation_stats;

typedef struct craft_ga_result craft_ga_result;

/* Runs the optimizer; fails with CRAFT_ERR_NO_FEASIBLE when every individual
 * of every generation is infeasible. */
CRAFT_API craft_status craft_evolve(const craft_scenario* scn, const craft_ga_params* params, craft_ga_result** out);

/* Best deployment ever evaluated (a copy). */
CRAFT_API craft_status craft_ga_result_best(const craft_ga_result* result, craft_deployment** out);

/* The best deployment's evaluation report (a copy). */
CRAFT_API craft_status craft_ga_result_report(const craft_ga_result* result, craft_report** out);

/* Number of recorded generations; negative on a null argument. */
CRAFT_API int craft_ga_result_generations(const craft_ga_result* result);

CRAFT_API craft_status craft_ga_result_stats(const craft_ga_result* result, int index, craft_generation_stats* out);

CRAFT_API void craft_ga_result_destroy(craft_ga_result* result);

/* ---- baselines and ground truth ---- */

/* Random placement: up to max_tries seeded draws, first capacity-feasible
 * one wins, last draw returned when none is. */
CRAFT_API craft_status craft_random_placement(const craft_scenario* scn, uint64_t seed, int max_tries,
                                              craft_deployment** out);

/* Restricted per-candidate gene choices for exhaustive search. An sc choice
 * of 0 is the dormant option; ac choices apply to placed edge candidates. */
typedef struct craft_lattice_spec {
  const int* edge_sc;
  int n_edge_sc;
  const int* ac;
  int n_ac;
  const int* fog_sc;
  int n_fog_sc;
} craft_lattice_spec;

CRAFT_API craft_status craft_oracle_size(const craft_scenario* scn, const craft_lattice_spec* spec, double* out_size);

/* Exhaustive search over the lattice; refuses lattices beyond 10^6
 * deployments with CRAFT_ERR_TOO_LARGE. Either out-parameter may be NULL. */
CRAFT_API craft_status craft_oracle(const craft_scenario* scn, const craft_lattice_spec* spec, double v, int threads,
                                    craft_deployment** out_best, craft_report** out_report);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* CRAFT_H */
