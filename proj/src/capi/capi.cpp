#include "craft/craft.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <string>

#include <json.hpp>

#include "core/baselines.hpp"
#include "core/genetic.hpp"
#include "core/objectives.hpp"
#include "core/scenario.hpp"
#include "core/scenario_io.hpp"
#include "core/types.hpp"

struct craft_config {
  craft::ScenarioConfig cfg;
};

struct craft_scenario {
  craft::Scenario scn;
};

struct craft_deployment {
  craft::Deployment dep;
};

struct craft_report {
  craft::EvalReport rep;
};

struct craft_ga_result {
  craft::EvolveResult res;
};

namespace {

thread_local std::string t_last_error;

craft_status fail(craft_status status, const char* what) {
  t_last_error = what;
  return status;
}

template <typename Fn>
craft_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const craft::ParseError& e) {
    return fail(CRAFT_ERR_PARSE, e.what());
  } catch (const craft::IoError& e) {
    return fail(CRAFT_ERR_IO, e.what());
  } catch (const craft::OracleError& e) {
    return fail(CRAFT_ERR_TOO_LARGE, e.what());
  } catch (const craft::OptimizeError& e) {
    return fail(CRAFT_ERR_NO_FEASIBLE, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(CRAFT_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::domain_error& e) {
    return fail(CRAFT_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(CRAFT_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(CRAFT_ERR_INTERNAL, "unknown error");
  }
}

craft_status null_arg(const char* name) {
  t_last_error = std::string("null argument: ") + name;
  return CRAFT_ERR_INVALID_ARGUMENT;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

craft_status string_out(const std::string& s, char** out) {
  char* copy = dup_string(s);
  if (copy == nullptr) return fail(CRAFT_ERR_INTERNAL, "out of memory");
  *out = copy;
  return CRAFT_OK;
}

craft::LatticeSpec to_lattice(const craft_lattice_spec* spec) {
  craft::LatticeSpec out;
  out.edge_sc_choices.assign(spec->edge_sc, spec->edge_sc + spec->n_edge_sc);
  out.ac_choices.assign(spec->ac, spec->ac + spec->n_ac);
  out.fog_sc_choices.assign(spec->fog_sc, spec->fog_sc + spec->n_fog_sc);
  return out;
}

}  // namespace

extern "C" {

const char* craft_version(void) { return "1.0.0"; }

const char* craft_last_error(void) { return t_last_error.c_str(); }

void craft_string_free(char* s) { std::free(s); }

craft_status craft_config_create(craft_config** out) {
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    *out = new craft_config{};
    return CRAFT_OK;
  });
}

craft_status craft_config_from_json(const char* json, craft_config** out) {
  if (json == nullptr) return null_arg("json");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    auto cfg = craft::config_from_json(json);
    *out = new craft_config{cfg};
    return CRAFT_OK;
  });
}

craft_status craft_config_to_json(const craft_config* cfg, char** out_json) {
  if (cfg == nullptr) return null_arg("cfg");
  if (out_json == nullptr) return null_arg("out_json");
  return guarded([&] { return string_out(craft::config_to_json(cfg->cfg), out_json); });
}

void craft_config_destroy(craft_config* cfg) { delete cfg; }

craft_status craft_scenario_generate(const craft_config* cfg, craft_scenario** out) {
  if (cfg == nullptr) return null_arg("cfg");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    auto scn = craft::generate(cfg->cfg);
    *out = new craft_scenario{std::move(scn)};
    return CRAFT_OK;
  });
}

craft_status craft_scenario_load(const char* path, craft_scenario** out) {
  if (path == nullptr) return null_arg("path");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    auto scn = craft::load(path);
    *out = new craft_scenario{std::move(scn)};
    return CRAFT_OK;
  });
}

craft_status craft_scenario_save(const craft_scenario* scn, const char* path) {
  if (scn == nullptr) return null_arg("scn");
  if (path == nullptr) return null_arg("path");
  return guarded([&] {
    craft::save(scn->scn, path);
    return CRAFT_OK;
  });
}

craft_status craft_scenario_to_json(const craft_scenario* scn, char** out_json) {
  if (scn == nullptr) return null_arg("scn");
  if (out_json == nullptr) return null_arg("out_json");
  return guarded([&] { return string_out(craft::scenario_to_json(scn->scn), out_json); });
}

craft_status craft_scenario_counts(const craft_scenario* scn, int* n_edge, int* n_fog, int* n_users) {
  if (scn == nullptr) return null_arg("scn");
  if (n_edge != nullptr) *n_edge = scn->scn.graph.edge_count();
  if (n_fog != nullptr) *n_fog = scn->scn.graph.fog_count();
  if (n_users != nullptr) *n_users = static_cast<int>(scn->scn.tasks.size());
  return CRAFT_OK;
}

craft_status craft_scenario_config_json(const craft_scenario* scn, char** out_json) {
  if (scn == nullptr) return null_arg("scn");
  if (out_json == nullptr) return null_arg("out_json");
  return guarded([&] { return string_out(craft::config_to_json(scn->scn.config), out_json); });
}

craft_status craft_scenario_set_comp_model(craft_scenario* scn, const char* name) {
  if (scn == nullptr) return null_arg("scn");
  if (name == nullptr) return null_arg("name");
  craft::CompModel model;
  if (!craft::parse_comp_model(name, model)) {
    return fail(CRAFT_ERR_INVALID_ARGUMENT, "comp_model: expected \"literal\" or \"per_bit\"");
  }
  scn->scn.config.comp_model = model;
  return CRAFT_OK;
}

void craft_scenario_destroy(craft_scenario* scn) { delete scn; }

craft_status craft_deployment_counts(const craft_deployment* dep, int* n_edge_genes, int* n_fog_genes) {
  if (dep == nullptr) return null_arg("dep");
  if (n_edge_genes != nullptr) *n_edge_genes = static_cast<int>(dep->dep.edge_genes.size());
  if (n_fog_genes != nullptr) *n_fog_genes = static_cast<int>(dep->dep.fog_genes.size());
  return CRAFT_OK;
}

craft_status craft_deployment_edge_gene(const craft_deployment* dep, int index, int* site_id, int* sc, int* ac,
                                        int* x) {
  if (dep == nullptr) return null_arg("dep");
  if (index < 0 || static_cast<std::size_t>(index) >= dep->dep.edge_genes.size()) {
    return fail(CRAFT_ERR_INVALID_ARGUMENT, "edge gene index out of range");
  }
  const auto& gene = dep->dep.edge_genes[static_cast<std::size_t>(index)];
  if (site_id != nullptr) *site_id = gene.site_id;
  if (sc != nullptr) *sc = gene.sc;
  if (ac != nullptr) *ac = gene.ac;
  if (x != nullptr) *x = gene.x;
  return CRAFT_OK;
}

craft_status craft_deployment_fog_gene(const craft_deployment* dep, int index, int* site_id, int* sc, int* y) {
  if (dep == nullptr) return null_arg("dep");
  if (index < 0 || static_cast<std::size_t>(index) >= dep->dep.fog_genes.size()) {
    return fail(CRAFT_ERR_INVALID_ARGUMENT, "fog gene index out of range");
  }
  const auto& gene = dep->dep.fog_genes[static_cast<std::size_t>(index)];
  if (site_id != nullptr) *site_id = gene.site_id;
  if (sc != nullptr) *sc = gene.sc;
  if (y != nullptr) *y = gene.y;
  return CRAFT_OK;
}

craft_status craft_deployment_to_json(const craft_deployment* dep, char** out_json) {
  if (dep == nullptr) return null_arg("dep");
  if (out_json == nullptr) return null_arg("out_json");
  return guarded([&] {
    nlohmann::json j;
    j["edge_genes"] = nlohmann::json::array();
    for (const auto& g : dep->dep.edge_genes) {
      j["edge_genes"].push_back({{"site_id", g.site_id}, {"sc", g.sc}, {"ac", g.ac}, {"x", g.x}});
    }
    j["fog_genes"] = nlohmann::json::array();
    for (const auto& g : dep->dep.fog_genes) {
      j["fog_genes"].push_back({{"site_id", g.site_id}, {"sc", g.sc}, {"y", g.y}});
    }
    return string_out(j.dump(2), out_json);
  });
}

void craft_deployment_destroy(craft_deployment* dep) { delete dep; }

craft_status craft_evaluate(const craft_scenario* scn, const craft_deployment* dep, double v, craft_report** out) {
  if (scn == nullptr) return null_arg("scn");
  if (dep == nullptr) return null_arg("dep");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    auto rep = craft::evaluate(scn->scn, dep->dep, v);
    *out = new craft_report{std::move(rep)};
    return CRAFT_OK;
  });
}

craft_status craft_report_get(const craft_report* report, craft_report_view* out) {
  if (report == nullptr) return null_arg("report");
  if (out == nullptr) return null_arg("out");
  const auto& rep = report->rep;
  out->avg_latency_s = rep.avg_latency_s;
  out->total_cost = rep.total_cost;
  out->edge_cost = rep.edge_cost;
  out->fog_cost = rep.fog_cost;
  out->fitness_finite = rep.fitness.is_finite() ? 1 : 0;
  out->fitness = rep.fitness.is_finite() ? rep.fitness.value() : -std::numeric_limits<double>::infinity();
  out->feasible = rep.feasible ? 1 : 0;
  return CRAFT_OK;
}

void craft_report_destroy(craft_report* report) { delete report; }

void craft_ga_params_default(craft_ga_params* out) {
  if (out == nullptr) return;
  const craft::GaParams defaults;
  out->population = defaults.population;
  out->generations = defaults.generations;
  out->mut_min = defaults.mut_min;
  out->mut_max = defaults.mut_max;
  out->elite_count = defaults.elite_count;
  out->tournament_min = defaults.tournament_min;
  out->tournament_max = defaults.tournament_max;
  out->v = defaults.v;
  out->seed = defaults.seed;
  out->threads = 1;
}

craft_status craft_evolve(const craft_scenario* scn, const craft_ga_params* params, craft_ga_result** out) {
  if (scn == nullptr) return null_arg("scn");
  if (params == nullptr) return null_arg("params");
  if (out == nullptr) return null_arg("out");
  if (params->threads < 1) return fail(CRAFT_ERR_INVALID_ARGUMENT, "threads must be >= 1");
  return guarded([&] {
    craft::GaParams p;
    p.population = params->population;
    p.generations = params->generations;
    p.mut_min = params->mut_min;
    p.mut_max = params->mut_max;
    p.elite_count = params->elite_count;
    p.tournament_min = params->tournament_min;
    p.tournament_max = params->tournament_max;
    p.v = params->v;
    p.seed = params->seed;
    auto res = craft::evolve(scn->scn, p, params->threads);
    *out = new craft_ga_result{std::move(res)};
    return CRAFT_OK;
  });
}

craft_status craft_ga_result_best(const craft_ga_result* result, craft_deployment** out) {
  if (result == nullptr) return null_arg("result");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    *out = new craft_deployment{result->res.best};
    return CRAFT_OK;
  });
}

craft_status craft_ga_result_report(const craft_ga_result* result, craft_report** out) {
  if (result == nullptr) return null_arg("result");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    *out = new craft_report{result->res.report};
    return CRAFT_OK;
  });
}

int craft_ga_result_generations(const craft_ga_result* result) {
  if (result == nullptr) return -1;
  return static_cast<int>(result->res.history.size());
}

craft_status craft_ga_result_stats(const craft_ga_result* result, int index, craft_generation_stats* out) {
  if (result == nullptr) return null_arg("result");
  if (out == nullptr) return null_arg("out");
  if (index < 0 || static_cast<std::size_t>(index) >= result->res.history.size()) {
    return fail(CRAFT_ERR_INVALID_ARGUMENT, "generation index out of range");
  }
  const auto& s = result->res.history[static_cast<std::size_t>(index)];
  out->gen = s.gen;
  out->best = s.best;
  out->mean = s.mean;
  out->worst = s.worst;
  out->n_infeasible = s.n_infeasible;
  out->df = s.df;
  return CRAFT_OK;
}

void craft_ga_result_destroy(craft_ga_result* result) { delete result; }

craft_status craft_random_placement(const craft_scenario* scn, uint64_t seed, int max_tries, craft_deployment** out) {
  if (scn == nullptr) return null_arg("scn");
  if (out == nullptr) return null_arg("out");
  return guarded([&] {
    auto dep = craft::random_placement(scn->scn, seed, max_tries);
    *out = new craft_deployment{std::move(dep)};
    return CRAFT_OK;
  });
}

craft_status craft_oracle_size(const craft_scenario* scn, const craft_lattice_spec* spec, double* out_size) {
  if (scn == nullptr) return null_arg("scn");
  if (spec == nullptr) return null_arg("spec");
  if (out_size == nullptr) return null_arg("out_size");
  return guarded([&] {
    *out_size = craft::lattice_size(scn->scn, to_lattice(spec));
    return CRAFT_OK;
  });
}

craft_status craft_oracle(const craft_scenario* scn, const craft_lattice_spec* spec, double v, int threads,
                          craft_deployment** out_best, craft_report** out_report) {
  if (scn == nullptr) return null_arg("scn");
  if (spec == nullptr) return null_arg("spec");
  if (threads < 1) return fail(CRAFT_ERR_INVALID_ARGUMENT, "threads must be >= 1");
  return guarded([&] {
    auto res = craft::exhaustive_oracle(scn->scn, v, to_lattice(spec), threads);
    if (out_best != nullptr) *out_best = new craft_deployment{std::move(res.best)};
    if (out_report != nullptr) *out_report = new craft_report{std::move(res.report)};
    return CRAFT_OK;
  });
}

}  // extern "C"
