#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "core/genetic.hpp"
#include "core/objectives.hpp"
#include "core/scenario.hpp"
#include "core/types.hpp"

namespace craft {

// Random-placement baseline: draws deployments exactly like population init
// (shared draw path) and returns the first passing the aggregate capacity
// check, or the last of max_tries draws when none does.
Deployment random_placement(const Scenario& scn, std::uint64_t seed, int max_tries = 1000);

// Per-candidate gene choices defining a restricted deployment lattice for
// exhaustive search. An sc choice of 0 means the dormant option; ac choices
// apply to placed edge candidates only.
struct LatticeSpec {
  std::vector<int> edge_sc_choices;
  std::vector<int> ac_choices;
  std::vector<int> fog_sc_choices;
};

// Raised when a lattice is too large to enumerate.
class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Number of deployments in the lattice.
double lattice_size(const Scenario& scn, const LatticeSpec& spec);

struct OracleResult {
  Deployment best;
  EvalReport report;
};

// Ground truth by brute force: evaluates every deployment in the lattice and
// returns the maximum-fitness one, ties to the lexicographically smallest
// gene vector. The result is independent of n_threads. Throws OracleError
// when the lattice exceeds 10^6 deployments, OptimizeError when it contains
// no feasible deployment.
OracleResult exhaustive_oracle(const Scenario& scn, double v, const LatticeSpec& spec, int n_threads = 1);

}  // namespace craft
