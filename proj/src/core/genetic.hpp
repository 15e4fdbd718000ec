#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "core/objectives.hpp"
#include "core/rng.hpp"
#include "core/scenario.hpp"
#include "core/types.hpp"

namespace craft {

struct GaParams {
  int population = 1000;  // K
  int generations = 100;  // T
  double mut_min = 0.1;
  double mut_max = 0.3;
  int elite_count = -1;  // < 0 resolves to ceil(0.02 * population)
  int tournament_min = 2;
  int tournament_max = 8;
  double v = 1e5;
  std::uint64_t seed = 0;
};

// Returns one message per violated parameter rule; empty means valid.
std::vector<std::string> validate_params(const GaParams& params);

int resolved_elite_count(const GaParams& params);

struct GenerationStats {
  int gen = 0;
  double best = 0.0;   // over feasible individuals; NaN when none
  double mean = 0.0;
  double worst = 0.0;
  int n_infeasible = 0;
  double df = 0.0;
};

// Raised by evolve and the exhaustive oracle when no feasible deployment is
// ever seen.
class OptimizeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One random individual: per candidate Bernoulli(0.5) placement, sc uniform
// in the placed range, ac uniform in [1, ac_max] when placed. Shared by
// population init and the random-placement baseline.
Deployment draw_random_deployment(const Scenario& scn, Rng& rng);

// K random individuals; each gets up to 20 redraws to pass the aggregate
// capacity check and is kept as-is after that (infeasible members are legal).
std::vector<Deployment> init_population(const Scenario& scn, const GaParams& params, Rng& rng);
std::vector<Deployment> init_population(const Scenario& scn, const GaParams& params);

// Tracks the largest fitness spread seen so far, the normalizer for the
// diversity factor.
struct DiversityState {
  double max_spread = 0.0;
};

// Normalized spread of the current finite fitness values: spread over the
// running maximum spread. 1 when the running maximum is still zero or no
// individual is feasible. Updates state.
double diversity_factor(const std::vector<Fitness>& fits, DiversityState& state);

// Adaptive knobs: low diversity widens tournaments and raises mutation.
int tournament_size(double df, const GaParams& params);
double mutation_probability(double df, const GaParams& params);

// Tournament selection over a population sorted descending by fitness:
// returns the winner's index, the smallest drawn (ties inherently go to the
// better-ranked individual).
std::size_t select_parent_index(std::size_t pop_size, double df, const GaParams& params, Rng& rng);

// Uniform per-position crossover; each child gene comes whole from one
// parent. Children are repaired.
std::pair<Deployment, Deployment> crossover(const Deployment& a, const Deployment& b, const GeneBounds& bounds,
                                            Rng& rng);

// Per-gene mutation with probability mutation_probability(df): a hit redraws
// one field (placement toggle, sc, or ac). Result is repaired.
Deployment mutate(const Deployment& dep, double df, const GaParams& params, const GeneBounds& bounds, Rng& rng);

struct EvolveResult {
  Deployment best;
  EvalReport report;
  std::vector<GenerationStats> history;  // one row per generation 1..T
};

// The full optimizer: seeded init, T generations of elitist carryover plus
// tournament-selected crossover and mutation offspring, returning the best
// individual ever evaluated. All randomness is drawn serially before each
// generation's evaluations fan out, so results do not depend on n_threads.
// Throws OptimizeError when every individual of every generation is
// infeasible, std::invalid_argument on bad params.
EvolveResult evolve(const Scenario& scn, const GaParams& params, int n_threads = 1);

}  // namespace craft
