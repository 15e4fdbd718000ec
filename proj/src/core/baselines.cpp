#include "core/baselines.hpp"

#include <algorithm>
#include <cstdio>

#include "core/parallel.hpp"
#include "core/rng.hpp"

namespace craft {

namespace {

constexpr double kMaxLattice = 1e6;

std::vector<int> cleaned_choices(std::vector<int> choices, int floor_value, const char* what) {
  std::sort(choices.begin(), choices.end());
  choices.erase(std::unique(choices.begin(), choices.end()), choices.end());
  if (choices.empty()) throw std::invalid_argument(std::string(what) + ": needs at least one choice");
  if (choices.front() < floor_value) {
    throw std::invalid_argument(std::string(what) + ": choices must be >= " + std::to_string(floor_value));
  }
  return choices;
}

struct EdgeOption {
  int sc = 0;
  int ac = 1;
};

// Enumeration works in mixed radix with the first candidate most significant
// and options ordered ascending by (sc, ac), dormant first; index order is
// then exactly lexicographic order of gene vectors.
struct Lattice {
  std::vector<EdgeOption> edge_options;
  std::vector<int> fog_options;
  std::size_t n_edge = 0;
  std::size_t n_fog = 0;

  double size() const {
    double n = 1.0;
    for (std::size_t i = 0; i < n_edge; ++i) n *= static_cast<double>(edge_options.size());
    for (std::size_t i = 0; i < n_fog; ++i) n *= static_cast<double>(fog_options.size());
    return n;
  }

  Deployment decode(const NetworkGraph& g, std::uint64_t index) const {
    Deployment dep;
    dep.edge_genes.resize(n_edge);
    dep.fog_genes.resize(n_fog);
    // Peel least-significant digits: fog candidates in reverse, then edges.
    for (std::size_t i = n_fog; i-- > 0;) {
      const auto radix = static_cast<std::uint64_t>(fog_options.size());
      const int sc = fog_options[static_cast<std::size_t>(index % radix)];
      index /= radix;
      dep.fog_genes[i].sc = sc;
      dep.fog_genes[i].y = sc >= 1 ? 1 : 0;
    }
    for (std::size_t i = n_edge; i-- > 0;) {
      const auto radix = static_cast<std::uint64_t>(edge_options.size());
      const auto& opt = edge_options[static_cast<std::size_t>(index % radix)];
      index /= radix;
      dep.edge_genes[i].sc = opt.sc;
      dep.edge_genes[i].ac = opt.sc >= 1 ? opt.ac : 1;
      dep.edge_genes[i].x = opt.sc >= 1 ? 1 : 0;
    }
    int edge_seen = 0;
    int fog_seen = 0;
    for (const auto& site : g.sites) {
      if (site.kind == SiteKind::Edge) {
        dep.edge_genes[static_cast<std::size_t>(edge_seen++)].site_id = site.site_id;
      } else {
        dep.fog_genes[static_cast<std::size_t>(fog_seen++)].site_id = site.site_id;
      }
    }
    return dep;
  }
};

Lattice build_lattice(const Scenario& scn, const LatticeSpec& spec) {
  Lattice lat;
  lat.n_edge = static_cast<std::size_t>(scn.graph.edge_count());
  lat.n_fog = static_cast<std::size_t>(scn.graph.fog_count());

  if (lat.n_edge > 0) {
    const auto sc_choices = cleaned_choices(spec.edge_sc_choices, 0, "edge sc choices");
    const auto ac_choices = cleaned_choices(spec.ac_choices, 1, "ac choices");
    for (const int sc : sc_choices) {
      if (sc == 0) {
        lat.edge_options.push_back({0, 1});
        continue;
      }
      for (const int ac : ac_choices) lat.edge_options.push_back({sc, ac});
    }
  }
  if (lat.n_fog > 0) lat.fog_options = cleaned_choices(spec.fog_sc_choices, 0, "fog sc choices");
  return lat;
}

}  // namespace

Deployment random_placement(const Scenario& scn, std::uint64_t seed, int max_tries) {
  if (max_tries < 1) throw std::invalid_argument("max_tries must be >= 1");
  Rng rng(seed);
  Deployment dep = draw_random_deployment(scn, rng);
  for (int draw = 1; draw < max_tries && !capacity_feasible(scn, dep); ++draw) {
    dep = draw_random_deployment(scn, rng);
  }
  return dep;
}

double lattice_size(const Scenario& scn, const LatticeSpec& spec) { return build_lattice(scn, spec).size(); }

OracleResult exhaustive_oracle(const Scenario& scn, double v, const LatticeSpec& spec, int n_threads) {
  const auto lat = build_lattice(scn, spec);
  const double size = lat.size();
  if (size > kMaxLattice) {
    char msg[128];
    std::snprintf(msg, sizeof msg, "lattice too large: %.0f deployments, limit is %.0f", size, kMaxLattice);
    throw OracleError(msg);
  }
  const auto n = static_cast<std::uint64_t>(size);

  const Evaluator ev(scn);
  std::vector<Fitness> fits(n);
  parallel_for(n, n_threads, [&](std::size_t i) {
    fits[i] = ev.evaluate(lat.decode(scn.graph, static_cast<std::uint64_t>(i)), v).fitness;
  });

  std::uint64_t best = 0;
  for (std::uint64_t i = 1; i < n; ++i) {
    if (fits[i] > fits[best]) best = i;  // first strict max: smallest gene vector on ties
  }
  if (!fits[best].is_finite()) throw OptimizeError("no feasible deployment");

  OracleResult result;
  result.best = lat.decode(scn.graph, best);
  result.report = ev.evaluate(result.best, v);
  return result;
}

}  // namespace craft
