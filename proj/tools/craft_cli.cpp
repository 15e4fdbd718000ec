#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "craft/craft.h"

namespace {

using nlohmann::json;

[[noreturn]] void die() {
  std::cerr << "error: " << craft_last_error() << "\n";
  std::exit(1);
}

void check(craft_status status) {
  if (status != CRAFT_OK) die();
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string take_string(char* owned) {
  std::string s(owned != nullptr ? owned : "");
  craft_string_free(owned);
  return s;
}

// Options shared by every scenario-producing command. Sentinel defaults mark
// flags the user never set.
struct ConfigFlags {
  std::string config_path;
  std::vector<std::string> sets;  // key=value pairs applied onto the config JSON
  int users = std::numeric_limits<int>::min();
  double sigma2_dbm = std::numeric_limits<double>::quiet_NaN();
  std::string comp_model;

  bool users_set() const { return users != std::numeric_limits<int>::min(); }
  bool sigma2_dbm_set() const { return !std::isnan(sigma2_dbm); }
};

void add_config_flags(CLI::App* cmd, ConfigFlags& flags) {
  cmd->add_option("--config", flags.config_path, "config JSON file to start from");
  cmd->add_option("--set", flags.sets, "config override as key=value, repeatable");
  cmd->add_option("--users", flags.users, "number of user tasks");
  cmd->add_option("--sigma2-dbm", flags.sigma2_dbm, "noise power in dBm");
  cmd->add_option("--comp-model", flags.comp_model, "computation model: literal or per_bit")
      ->check(CLI::IsMember({"literal", "per_bit"}));
}

json config_json(const ConfigFlags& flags, std::uint64_t seed) {
  json j = json::object();
  if (!flags.config_path.empty()) {
    std::ifstream in(flags.config_path, std::ios::binary);
    if (!in) {
      std::cerr << "error: cannot open: " << flags.config_path << "\n";
      std::exit(1);
    }
    try {
      in >> j;
    } catch (const std::exception& e) {
      std::cerr << "error: " << flags.config_path << ": " << e.what() << "\n";
      std::exit(1);
    }
  }
  for (const auto& kv : flags.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      std::cerr << "error: --set expects key=value, got: " << kv << "\n";
      std::exit(1);
    }
    const auto key = kv.substr(0, eq);
    const auto value = kv.substr(eq + 1);
    try {
      j[key] = json::parse(value);  // numbers and booleans
    } catch (const std::exception&) {
      j[key] = value;  // plain string
    }
  }
  if (flags.users_set()) j["n_users"] = flags.users;
  if (flags.sigma2_dbm_set()) {
    j["sigma2_dbm"] = flags.sigma2_dbm;
    j.erase("sigma2_w");
  }
  if (!flags.comp_model.empty()) j["comp_model"] = flags.comp_model;
  j["seed"] = seed;
  return j;
}

craft_scenario* make_scenario(const ConfigFlags& flags, std::uint64_t seed) {
  craft_config* cfg = nullptr;
  check(craft_config_from_json(config_json(flags, seed).dump().c_str(), &cfg));
  craft_scenario* scn = nullptr;
  const auto status = craft_scenario_generate(cfg, &scn);
  craft_config_destroy(cfg);
  check(status);
  return scn;
}

struct GaFlags {
  craft_ga_params params{};

  void add(CLI::App* cmd) {
    craft_ga_params_default(&params);
    cmd->add_option("--pop", params.population, "population size");
    cmd->add_option("--gens", params.generations, "generation count");
    cmd->add_option("--mut-min", params.mut_min, "mutation probability at full diversity");
    cmd->add_option("--mut-max", params.mut_max, "mutation probability at zero diversity");
    cmd->add_option("--elite", params.elite_count, "elite survivors per generation (-1: 2% of population)");
    cmd->add_option("--tournament-min", params.tournament_min, "tournament size at full diversity");
    cmd->add_option("--tournament-max", params.tournament_max, "tournament size at zero diversity");
  }
};

int resolve_threads(int flag_value) {
  if (const char* env = std::getenv("CRAFT_THREADS"); env != nullptr && *env != '\0') {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return flag_value;
}

std::ofstream open_csv(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open for writing: " << path << "\n";
    std::exit(1);
  }
  return out;
}

void print_deployment_summary(const craft_deployment* dep, const craft_report_view& view) {
  std::cout << "fitness: " << fmt(view.fitness) << "\n";
  std::cout << "avg latency (s): " << fmt(view.avg_latency_s) << "\n";
  std::cout << "total cost: " << fmt(view.total_cost) << " (edge " << fmt(view.edge_cost) << ", fog "
            << fmt(view.fog_cost) << ")\n";
  int n_edge = 0;
  int n_fog = 0;
  check(craft_deployment_counts(dep, &n_edge, &n_fog));
  std::cout << "placed:";
  bool any = false;
  for (int i = 0; i < n_edge; ++i) {
    int site = 0, sc = 0, ac = 0, x = 0;
    check(craft_deployment_edge_gene(dep, i, &site, &sc, &ac, &x));
    if (x == 1) {
      std::cout << " edge" << site << "(sc=" << sc << ",ac=" << ac << ")";
      any = true;
    }
  }
  for (int i = 0; i < n_fog; ++i) {
    int site = 0, sc = 0, y = 0;
    check(craft_deployment_fog_gene(dep, i, &site, &sc, &y));
    if (y == 1) {
      std::cout << " fog" << site << "(sc=" << sc << ")";
      any = true;
    }
  }
  if (!any) std::cout << " none";
  std::cout << "\n";
}

int cmd_generate(const ConfigFlags& flags, std::uint64_t seed, const std::string& out_path) {
  craft_scenario* scn = make_scenario(flags, seed);
  check(craft_scenario_save(scn, out_path.c_str()));
  char* cfg_json = nullptr;
  check(craft_scenario_config_json(scn, &cfg_json));
  std::cout << take_string(cfg_json) << "\n";
  int n_edge = 0, n_fog = 0, n_users = 0;
  check(craft_scenario_counts(scn, &n_edge, &n_fog, &n_users));
  std::cout << "wrote " << out_path << ": " << n_edge << " edge candidates, " << n_fog << " fog candidates, "
            << n_users << " users\n";
  craft_scenario_destroy(scn);
  return 0;
}

int cmd_run(const std::string& scenario_path, const std::string& comp_model, GaFlags& ga, double v,
            std::uint64_t seed, int threads, const std::string& out_path) {
  craft_scenario* scn = nullptr;
  check(craft_scenario_load(scenario_path.c_str(), &scn));
  if (!comp_model.empty()) check(craft_scenario_set_comp_model(scn, comp_model.c_str()));

  ga.params.v = v;
  ga.params.seed = seed;
  ga.params.threads = threads;
  craft_ga_result* result = nullptr;
  check(craft_evolve(scn, &ga.params, &result));

  auto csv = open_csv(out_path);
  csv << "gen,best_fitness,mean_fitness,worst_fitness,n_infeasible,df\n";
  const int n = craft_ga_result_generations(result);
  for (int i = 0; i < n; ++i) {
    craft_generation_stats stats{};
    check(craft_ga_result_stats(result, i, &stats));
    csv << stats.gen << ',' << fmt(stats.best) << ',' << fmt(stats.mean) << ',' << fmt(stats.worst) << ','
        << stats.n_infeasible << ',' << fmt(stats.df) << "\n";
  }
  csv.close();

  craft_deployment* best = nullptr;
  craft_report* report = nullptr;
  check(craft_ga_result_best(result, &best));
  check(craft_ga_result_report(result, &report));
  craft_report_view view{};
  check(craft_report_get(report, &view));
  print_deployment_summary(best, view);
  std::cout << "wrote " << out_path << ": " << n << " generations\n";

  craft_report_destroy(report);
  craft_deployment_destroy(best);
  craft_ga_result_destroy(result);
  craft_scenario_destroy(scn);
  return 0;
}

int cmd_sweep(const std::string& axis, std::vector<double> values, const std::vector<std::string>& methods,
              int repeats, const ConfigFlags& cfg_flags, GaFlags& ga, double v, std::uint64_t seed, int threads,
              int max_tries, bool no_timing, const std::string& out_path) {
  for (const auto& m : methods) {
    if (m != "craft" && m != "random") {
      std::cerr << "error: unknown method: " << m << "\n";
      return 1;
    }
  }
  if (values.empty()) {
    if (axis == "users") {
      values = {70, 90, 110, 130, 150, 170};
    } else {
      values = {1e0, 1e1, 1e2, 1e3, 1e4, 1e5, 1e6};
    }
  }
  if (repeats < 1) {
    std::cerr << "error: --repeats must be >= 1\n";
    return 1;
  }

  auto csv = open_csv(out_path);
  csv << "axis,axis_value,method,seed,avg_latency_s,total_cost,fitness,feasible,wall_ms\n";

  for (const double value : values) {
    std::vector<craft_scenario*> scenarios;
    for (int r = 0; r < repeats; ++r) {
      ConfigFlags flags = cfg_flags;
      if (axis == "users") flags.users = static_cast<int>(value);
      scenarios.push_back(make_scenario(flags, seed + static_cast<std::uint64_t>(r)));
    }
    const double cell_v = axis == "V" ? value : v;

    for (const auto& method : methods) {
      for (int r = 0; r < repeats; ++r) {
        const std::uint64_t run_seed = seed + static_cast<std::uint64_t>(r);
        craft_report* report = nullptr;
        const auto start = std::chrono::steady_clock::now();
        if (method == "craft") {
          ga.params.v = cell_v;
          ga.params.seed = run_seed;
          ga.params.threads = threads;
          craft_ga_result* result = nullptr;
          check(craft_evolve(scenarios[static_cast<std::size_t>(r)], &ga.params, &result));
          check(craft_ga_result_report(result, &report));
          craft_ga_result_destroy(result);
        } else {
          craft_deployment* dep = nullptr;
          check(craft_random_placement(scenarios[static_cast<std::size_t>(r)], run_seed, max_tries, &dep));
          check(craft_evaluate(scenarios[static_cast<std::size_t>(r)], dep, cell_v, &report));
          craft_deployment_destroy(dep);
        }
        const auto stop = std::chrono::steady_clock::now();
        const auto wall_ms =
            no_timing ? 0 : std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count();

        craft_report_view view{};
        check(craft_report_get(report, &view));
        craft_report_destroy(report);
        csv << axis << ',' << fmt(value) << ',' << method << ',' << run_seed << ',' << fmt(view.avg_latency_s) << ','
            << fmt(view.total_cost) << ',' << fmt(view.fitness) << ',' << (view.feasible ? 1 : 0) << ',' << wall_ms
            << "\n";
      }
    }
    for (auto* scn : scenarios) craft_scenario_destroy(scn);
  }
  csv.close();
  std::cout << "wrote " << out_path << "\n";
  return 0;
}

int cmd_oracle(const std::string& scenario_path, const std::string& comp_model, std::vector<int> edge_sc,
               std::vector<int> ac, std::vector<int> fog_sc, double v, int threads, bool compare_ga, GaFlags& ga,
               std::uint64_t seed) {
  craft_scenario* scn = nullptr;
  check(craft_scenario_load(scenario_path.c_str(), &scn));
  if (!comp_model.empty()) check(craft_scenario_set_comp_model(scn, comp_model.c_str()));

  craft_lattice_spec spec{};
  spec.edge_sc = edge_sc.data();
  spec.n_edge_sc = static_cast<int>(edge_sc.size());
  spec.ac = ac.data();
  spec.n_ac = static_cast<int>(ac.size());
  spec.fog_sc = fog_sc.data();
  spec.n_fog_sc = static_cast<int>(fog_sc.size());

  double size = 0.0;
  check(craft_oracle_size(scn, &spec, &size));
  std::cout << "lattice size: " << fmt(size) << "\n";

  craft_deployment* best = nullptr;
  craft_report* report = nullptr;
  check(craft_oracle(scn, &spec, v, threads, &best, &report));
  craft_report_view view{};
  check(craft_report_get(report, &view));
  std::cout << "oracle optimum\n";
  print_deployment_summary(best, view);

  if (compare_ga) {
    ga.params.v = v;
    ga.params.seed = seed;
    ga.params.threads = threads;
    craft_ga_result* result = nullptr;
    check(craft_evolve(scn, &ga.params, &result));
    craft_report* ga_report = nullptr;
    check(craft_ga_result_report(result, &ga_report));
    craft_report_view ga_view{};
    check(craft_report_get(ga_report, &ga_view));
    std::cout << "ga fitness: " << fmt(ga_view.fitness) << "\n";
    const double gap = (view.fitness - ga_view.fitness) / std::abs(view.fitness) * 100.0;
    std::cout << "ga gap: " << fmt(gap) << "%\n";
    craft_report_destroy(ga_report);
    craft_ga_result_destroy(result);
  }

  craft_report_destroy(report);
  craft_deployment_destroy(best);
  craft_scenario_destroy(scn);
  return 0;
}

int cmd_baseline(const std::string& scenario_path, const std::string& comp_model, double v, std::uint64_t seed,
                 int max_tries) {
  craft_scenario* scn = nullptr;
  check(craft_scenario_load(scenario_path.c_str(), &scn));
  if (!comp_model.empty()) check(craft_scenario_set_comp_model(scn, comp_model.c_str()));
  craft_deployment* dep = nullptr;
  check(craft_random_placement(scn, seed, max_tries, &dep));
  craft_report* report = nullptr;
  check(craft_evaluate(scn, dep, v, &report));
  craft_report_view view{};
  check(craft_report_get(report, &view));
  std::cout << "random placement\n";
  print_deployment_summary(dep, view);
  craft_report_destroy(report);
  craft_deployment_destroy(dep);
  craft_scenario_destroy(scn);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deterministic edge/fog placement simulator and optimizer"};
  app.require_subcommand(1);
  app.set_version_flag("--version", craft_version());

  std::uint64_t seed = 0;
  std::string out_path;
  int threads = 1;
  double v = 1e5;

  // generate
  auto* gen = app.add_subcommand("generate", "generate a scenario file");
  ConfigFlags gen_cfg;
  add_config_flags(gen, gen_cfg);
  gen->add_option("--seed", seed, "generation seed");
  gen->add_option("-o,--out", out_path, "output scenario path")->required();

  // run
  auto* run = app.add_subcommand("run", "optimize one scenario");
  std::string run_scenario;
  std::string run_comp_model;
  GaFlags run_ga;
  run->add_option("--scenario", run_scenario, "scenario file")->required();
  run->add_option("--comp-model", run_comp_model, "computation model override")
      ->check(CLI::IsMember({"literal", "per_bit"}));
  run_ga.add(run);
  run->add_option("-V,--v-weight", v, "latency weight V");
  run->add_option("--seed", seed, "optimizer seed");
  run->add_option("--threads", threads, "evaluation workers");
  run->add_option("-o,--out", out_path, "per-generation stats CSV path");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "run a sweep grid and emit CSV");
  std::string sweep_axis;
  std::vector<double> sweep_values;
  std::vector<std::string> sweep_methods{"craft", "random"};
  int sweep_repeats = 3;
  int sweep_max_tries = 1000;
  bool sweep_no_timing = false;
  ConfigFlags sweep_cfg;
  GaFlags sweep_ga;
  sweep->add_option("--axis", sweep_axis, "sweep axis: users or V")
      ->required()
      ->check(CLI::IsMember({"users", "V"}));
  sweep->add_option("--values", sweep_values, "axis values")->delimiter(',');
  sweep->add_option("--methods", sweep_methods, "methods: craft, random")->delimiter(',');
  sweep->add_option("--repeats", sweep_repeats, "seeded repeats per cell");
  sweep->add_option("--max-tries", sweep_max_tries, "random baseline draw budget");
  sweep->add_flag("--no-timing", sweep_no_timing, "write wall_ms as 0 for byte-stable output");
  add_config_flags(sweep, sweep_cfg);
  sweep_ga.add(sweep);
  sweep->add_option("-V,--v-weight", v, "latency weight V (users axis)");
  sweep->add_option("--seed", seed, "base seed; row seed = base + repeat");
  sweep->add_option("--threads", threads, "evaluation workers");
  sweep->add_option("-o,--out", out_path, "sweep CSV path");

  // oracle
  auto* oracle = app.add_subcommand("oracle", "exhaustive search on a restricted lattice");
  std::string oracle_scenario;
  std::string oracle_comp_model;
  std::vector<int> oracle_edge_sc{0, 4};
  std::vector<int> oracle_ac{1};
  std::vector<int> oracle_fog_sc{0, 6};
  bool compare_ga = false;
  GaFlags oracle_ga;
  oracle->add_option("--scenario", oracle_scenario, "scenario file")->required();
  oracle->add_option("--comp-model", oracle_comp_model, "computation model override")
      ->check(CLI::IsMember({"literal", "per_bit"}));
  oracle->add_option("--edge-sc", oracle_edge_sc, "edge sc choices (0 = dormant)")->delimiter(',');
  oracle->add_option("--ac", oracle_ac, "access-point choices")->delimiter(',');
  oracle->add_option("--fog-sc", oracle_fog_sc, "fog sc choices (0 = dormant)")->delimiter(',');
  oracle->add_flag("--compare-ga", compare_ga, "also run the optimizer and print its gap");
  oracle_ga.add(oracle);
  oracle->add_option("-V,--v-weight", v, "latency weight V");
  oracle->add_option("--seed", seed, "optimizer seed for --compare-ga");
  oracle->add_option("--threads", threads, "evaluation workers");

  // baseline
  auto* baseline = app.add_subcommand("baseline", "random placement on one scenario");
  std::string baseline_scenario;
  std::string baseline_comp_model;
  int baseline_max_tries = 1000;
  baseline->add_option("--scenario", baseline_scenario, "scenario file")->required();
  baseline->add_option("--comp-model", baseline_comp_model, "computation model override")
      ->check(CLI::IsMember({"literal", "per_bit"}));
  baseline->add_option("--max-tries", baseline_max_tries, "draw budget");
  baseline->add_option("-V,--v-weight", v, "latency weight V");
  baseline->add_option("--seed", seed, "draw seed");

  CLI11_PARSE(app, argc, argv);
  threads = resolve_threads(threads);

  if (gen->parsed()) return cmd_generate(gen_cfg, seed, out_path);
  if (run->parsed()) {
    if (out_path.empty()) out_path = "run.csv";
    return cmd_run(run_scenario, run_comp_model, run_ga, v, seed, threads, out_path);
  }
  if (sweep->parsed()) {
    if (out_path.empty()) out_path = "sweep.csv";
    return cmd_sweep(sweep_axis, sweep_values, sweep_methods, sweep_repeats, sweep_cfg, sweep_ga, v, seed, threads,
                     sweep_max_tries, sweep_no_timing, out_path);
  }
  if (oracle->parsed()) {
    return cmd_oracle(oracle_scenario, oracle_comp_model, oracle_edge_sc, oracle_ac, oracle_fog_sc, v, threads,
                      compare_ga, oracle_ga, seed);
  }
  if (baseline->parsed()) return cmd_baseline(baseline_scenario, baseline_comp_model, v, seed, baseline_max_tries);
  return 1;
}
