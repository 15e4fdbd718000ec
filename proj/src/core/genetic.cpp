#include "core/genetic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "core/parallel.hpp"

namespace craft {

std::vector<std::string> validate_params(const GaParams& params) {
  std::vector<std::string> errors;
  if (params.population < 2) errors.push_back("population must be >= 2");
  if (params.generations < 1) errors.push_back("generations must be >= 1");
  if (!(params.mut_min >= 0.0 && params.mut_min <= params.mut_max && params.mut_max <= 1.0)) {
    errors.push_back("mutation probabilities must satisfy 0 <= mut_min <= mut_max <= 1");
  }
  if (resolved_elite_count(params) >= params.population) errors.push_back("elite_count must be < population");
  if (params.tournament_min < 1) errors.push_back("tournament_min must be >= 1");
  if (params.tournament_max < params.tournament_min) errors.push_back("tournament_max must be >= tournament_min");
  if (!(params.v >= 0.0) || !std::isfinite(params.v)) errors.push_back("V must be a non-negative finite value");
  return errors;
}

int resolved_elite_count(const GaParams& params) {
  if (params.elite_count >= 0) return params.elite_count;
  return (params.population * 2 + 99) / 100;  // ceil(0.02 K)
}

Deployment draw_random_deployment(const Scenario& scn, Rng& rng) {
  const auto& bounds = scn.config.bounds;
  Deployment dep;
  for (const auto& site : scn.graph.sites) {
    if (site.kind == SiteKind::Edge) {
      EdgeGene gene;
      gene.site_id = site.site_id;
      if (rng.bernoulli(0.5)) {
        gene.sc = static_cast<int>(rng.uniform_int(bounds.edge_sc_min, bounds.edge_sc_max));
        gene.ac = static_cast<int>(rng.uniform_int(1, bounds.ac_max));
      }
      dep.edge_genes.push_back(gene);
    } else {
      FogGene gene;
      gene.site_id = site.site_id;
      if (rng.bernoulli(0.5)) gene.sc = static_cast<int>(rng.uniform_int(bounds.fog_sc_min, bounds.fog_sc_max));
      dep.fog_genes.push_back(gene);
    }
  }
  return repair_deployment(dep, bounds);
}

std::vector<Deployment> init_population(const Scenario& scn, const GaParams& params, Rng& rng) {
  if (auto errors = validate_params(params); !errors.empty()) throw std::invalid_argument(errors.front());
  std::vector<Deployment> pop;
  pop.reserve(static_cast<std::size_t>(params.population));
  for (int k = 0; k < params.population; ++k) {
    Deployment dep = draw_random_deployment(scn, rng);
    for (int redraw = 0; redraw < 20 && !capacity_feasible(scn, dep); ++redraw) {
      dep = draw_random_deployment(scn, rng);
    }
    pop.push_back(std::move(dep));
  }
  return pop;
}

std::vector<Deployment> init_population(const Scenario& scn, const GaParams& params) {
  Rng rng(params.seed);
  return init_population(scn, params, rng);
}

double diversity_factor(const std::vector<Fitness>& fits, DiversityState& state) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  bool any = false;
  for (const auto& f : fits) {
    if (!f.is_finite()) continue;
    any = true;
    lo = std::min(lo, f.value());
    hi = std::max(hi, f.value());
  }
  if (!any) return 1.0;
  const double spread = hi - lo;
  state.max_spread = std::max(state.max_spread, spread);
  if (state.max_spread == 0.0) return 1.0;
  return spread / state.max_spread;
}

namespace {

double lerp(double lo, double hi, double t) { return lo + (hi - lo) * t; }

}  // namespace

int tournament_size(double df, const GaParams& params) {
  return static_cast<int>(std::lround(lerp(params.tournament_min, params.tournament_max, 1.0 - df)));
}

double mutation_probability(double df, const GaParams& params) {
  return lerp(params.mut_min, params.mut_max, 1.0 - df);
}

std::size_t select_parent_index(std::size_t pop_size, double df, const GaParams& params, Rng& rng) {
  const int size = tournament_size(df, params);
  std::size_t winner = std::numeric_limits<std::size_t>::max();
  for (int k = 0; k < size; ++k) {
    const auto pick = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(pop_size) - 1));
    winner = std::min(winner, pick);  // sorted descending: lower index is better
  }
  return winner;
}

std::pair<Deployment, Deployment> crossover(const Deployment& a, const Deployment& b, const GeneBounds& bounds,
                                            Rng& rng) {
  Deployment c1 = a;
  Deployment c2 = b;
  for (std::size_t i = 0; i < c1.edge_genes.size(); ++i) {
    if (!rng.bernoulli(0.5)) std::swap(c1.edge_genes[i], c2.edge_genes[i]);
  }
  for (std::size_t i = 0; i < c1.fog_genes.size(); ++i) {
    if (!rng.bernoulli(0.5)) std::swap(c1.fog_genes[i], c2.fog_genes[i]);
  }
  return {repair_deployment(c1, bounds), repair_deployment(c2, bounds)};
}

Deployment mutate(const Deployment& dep, double df, const GaParams& params, const GeneBounds& bounds, Rng& rng) {
  const double p = mutation_probability(df, params);
  Deployment out = dep;
  for (auto& gene : out.edge_genes) {
    if (!rng.bernoulli(p)) continue;
    switch (rng.uniform_int(0, 2)) {
      case 0:  // toggle placement
        gene.sc = gene.sc >= 1 ? 0 : static_cast<int>(rng.uniform_int(bounds.edge_sc_min, bounds.edge_sc_max));
        break;
      case 1:
        gene.sc = static_cast<int>(rng.uniform_int(bounds.edge_sc_min, bounds.edge_sc_max));
        break;
      default:
        gene.ac = static_cast<int>(rng.uniform_int(1, bounds.ac_max));
        break;
    }
  }
  for (auto& gene : out.fog_genes) {
    if (!rng.bernoulli(p)) continue;
    if (rng.uniform_int(0, 1) == 0) {
      gene.sc = gene.sc >= 1 ? 0 : static_cast<int>(rng.uniform_int(bounds.fog_sc_min, bounds.fog_sc_max));
    } else {
      gene.sc = static_cast<int>(rng.uniform_int(bounds.fog_sc_min, bounds.fog_sc_max));
    }
  }
  return repair_deployment(out, bounds);
}

namespace {

// Sorts pop and fits together, best fitness first; stable so equal-fitness
// individuals keep their construction order.
void sort_by_fitness(std::vector<Deployment>& pop, std::vector<Fitness>& fits) {
  std::vector<std::size_t> order(pop.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) { return fits[l] > fits[r]; });
  std::vector<Deployment> pop2;
  std::vector<Fitness> fits2;
  pop2.reserve(pop.size());
  fits2.reserve(fits.size());
  for (const auto i : order) {
    pop2.push_back(std::move(pop[i]));
    fits2.push_back(fits[i]);
  }
  pop = std::move(pop2);
  fits = std::move(fits2);
}

GenerationStats make_stats(int gen, const std::vector<Fitness>& fits, double df) {
  GenerationStats stats;
  stats.gen = gen;
  stats.df = df;
  double sum = 0.0;
  int n_finite = 0;
  for (const auto& f : fits) {
    if (!f.is_finite()) continue;
    sum += f.value();
    ++n_finite;
  }
  stats.n_infeasible = static_cast<int>(fits.size()) - n_finite;
  if (n_finite == 0) {
    stats.best = stats.mean = stats.worst = std::numeric_limits<double>::quiet_NaN();
  } else {
    stats.best = fits.front().value();  // sorted descending, feasible first
    stats.worst = fits[static_cast<std::size_t>(n_finite) - 1].value();
    stats.mean = sum / n_finite;
  }
  return stats;
}

}  // namespace

EvolveResult evolve(const Scenario& scn, const GaParams& params, int n_threads) {
  if (auto errors = validate_params(params); !errors.empty()) throw std::invalid_argument(errors.front());
  const auto& bounds = scn.config.bounds;
  const auto k = static_cast<std::size_t>(params.population);
  const int elite = resolved_elite_count(params);

  const Evaluator ev(scn);
  Rng rng(params.seed);

  auto pop = init_population(scn, params, rng);
  std::vector<Fitness> fits(k);
  auto evaluate_all = [&] {
    parallel_for(k, n_threads, [&](std::size_t i) { fits[i] = ev.evaluate(pop[i], params.v).fitness; });
  };

  evaluate_all();
  sort_by_fitness(pop, fits);

  Deployment best;
  Fitness best_fit;
  bool have_best = false;
  auto track_best = [&] {
    if (fits.front().is_finite() && (!have_best || fits.front() > best_fit)) {
      best = pop.front();
      best_fit = fits.front();
      have_best = true;
    }
  };
  track_best();

  DiversityState dstate;
  double df = diversity_factor(fits, dstate);

  EvolveResult result;
  result.history.reserve(static_cast<std::size_t>(params.generations));
  std::vector<Deployment> next;
  next.reserve(k);

  for (int gen = 1; gen <= params.generations; ++gen) {
    next.clear();
    for (int e = 0; e < elite; ++e) next.push_back(pop[static_cast<std::size_t>(e)]);
    while (next.size() < k) {
      const auto i = select_parent_index(k, df, params, rng);
      const auto j = select_parent_index(k, df, params, rng);
      auto children = crossover(pop[i], pop[j], bounds, rng);
      next.push_back(mutate(children.first, df, params, bounds, rng));
      if (next.size() < k) next.push_back(mutate(children.second, df, params, bounds, rng));
    }
    pop.swap(next);
    evaluate_all();
    sort_by_fitness(pop, fits);
    df = diversity_factor(fits, dstate);
    result.history.push_back(make_stats(gen, fits, df));
    track_best();
  }

  if (!have_best) throw OptimizeError("no feasible deployment found");
  result.best = std::move(best);
  result.report = ev.evaluate(result.best, params.v);
  return result;
}

}  // namespace craft
