#include "core/scenario.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "core/rng.hpp"

namespace craft {

const char* comp_model_name(CompModel m) {
  return m == CompModel::Literal ? "literal" : "per_bit";
}

bool parse_comp_model(const std::string& name, CompModel& out) {
  if (name == "literal") {
    out = CompModel::Literal;
    return true;
  }
  if (name == "per_bit" || name == "per-bit") {
    out = CompModel::PerBit;
    return true;
  }
  return false;
}

std::vector<std::string> validate_config(const ScenarioConfig& cfg) {
  std::vector<std::string> out;
  auto positive = [&](double v, const char* msg) {
    if (!(v > 0.0)) out.push_back(msg);
  };
  auto range_ok = [&](const ValueRange& r, const char* name) {
    if (!(r.min <= r.max)) out.push_back(std::string(name) + " range must satisfy min <= max");
    if (!(r.min > 0.0)) out.push_back(std::string(name) + " range must be > 0");
  };

  if (cfg.n_edge_candidates < 2) out.push_back("n_edge_candidates must be >= 2");
  if (cfg.n_fog_candidates < 0) out.push_back("n_fog_candidates must be >= 0");
  if (cfg.n_users < 1) out.push_back("n_users must be >= 1");
  positive(cfg.area_side_m, "area_side_m must be > 0");

  if (cfg.bounds.edge_sc_min > cfg.bounds.edge_sc_max || cfg.bounds.edge_sc_min < 0)
    out.push_back("edge_sc range must satisfy 0 <= min <= max");
  if (cfg.bounds.fog_sc_min > cfg.bounds.fog_sc_max || cfg.bounds.fog_sc_min < 0)
    out.push_back("fog_sc range must satisfy 0 <= min <= max");
  if (cfg.bounds.ac_max < 1) out.push_back("ac_max must be >= 1");

  positive(cfg.alpha_hz, "alpha_hz must be > 0");
  positive(cfg.omega_hz, "omega_hz must be > 0");
  range_ok(cfg.edge_edge_bitrate_bps, "edge_edge_bitrate_bps");
  range_ok(cfg.edge_fog_bitrate_bps, "edge_fog_bitrate_bps");

  positive(cfg.w_hz, "W must be > 0");
  positive(cfg.h_bar, "h_bar must be > 0");
  positive(cfg.sigma2_w, "sigma2_w must be > 0");
  positive(cfg.p_w, "p_w must be > 0");
  if (cfg.c_fixed < 0.0) out.push_back("c_fixed must be >= 0");
  if (cfg.c_dynamic < 0.0) out.push_back("c_dynamic must be >= 0");

  range_ok(cfg.task_freq_hz, "task_freq_hz");
  range_ok(cfg.task_cycles, "task_cycles");
  range_ok(cfg.task_d_bits, "task_d_bits");

  if (cfg.extra_link_fraction < 0.0) out.push_back("extra_link_fraction must be >= 0");
  return out;
}

namespace {

// Inclusive-range sample; degenerate ranges return min exactly.
double sample_range(Rng& rng, const ValueRange& r) {
  if (r.min == r.max) return r.min;
  return rng.uniform_real(r.min, r.max);
}

}  // namespace

Scenario generate(const ScenarioConfig& cfg) {
  if (auto errors = validate_config(cfg); !errors.empty()) {
    throw std::invalid_argument("invalid scenario config: " + errors.front());
  }

  Rng rng(cfg.seed);
  const int n_edge = cfg.n_edge_candidates;
  const int n_fog = cfg.n_fog_candidates;

  std::vector<SiteCandidate> sites;
  sites.reserve(static_cast<std::size_t>(n_edge + n_fog));
  for (int i = 0; i < n_edge; ++i) {
    sites.push_back({i, SiteKind::Edge,
                     {rng.uniform_real(0.0, cfg.area_side_m), rng.uniform_real(0.0, cfg.area_side_m)}});
  }
  for (int i = 0; i < n_fog; ++i) {
    sites.push_back({n_edge + i, SiteKind::Fog,
                     {rng.uniform_real(0.0, cfg.area_side_m), rng.uniform_real(0.0, cfg.area_side_m)}});
  }

  std::vector<WiredLink> links;

  // Random spanning tree over edge candidates: attach each site in a random
  // order to a random earlier site.
  std::vector<int> order(static_cast<std::size_t>(n_edge));
  for (int i = 0; i < n_edge; ++i) order[static_cast<std::size_t>(i)] = i;
  rng.shuffle(order);
  for (int i = 1; i < n_edge; ++i) {
    const int parent = order[static_cast<std::size_t>(rng.uniform_int(0, i - 1))];
    links.push_back({order[static_cast<std::size_t>(i)], parent,
                     sample_range(rng, cfg.edge_edge_bitrate_bps)});
  }

  // Extra edge-edge links, distinct from the tree and from each other.
  const int n_extra = static_cast<int>(cfg.extra_link_fraction * n_edge);
  if (n_extra > 0) {
    std::vector<std::vector<char>> used(static_cast<std::size_t>(n_edge),
                                        std::vector<char>(static_cast<std::size_t>(n_edge), 0));
    for (const auto& l : links) {
      used[static_cast<std::size_t>(l.a)][static_cast<std::size_t>(l.b)] = 1;
      used[static_cast<std::size_t>(l.b)][static_cast<std::size_t>(l.a)] = 1;
    }
    std::vector<std::pair<int, int>> candidates;
    for (int a = 0; a < n_edge; ++a) {
      for (int b = a + 1; b < n_edge; ++b) {
        if (!used[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]) candidates.push_back({a, b});
      }
    }
    if (static_cast<std::size_t>(n_extra) > candidates.size()) {
      throw std::invalid_argument("extra_link_fraction requests more links than distinct edge pairs allow");
    }
    rng.shuffle(candidates);
    for (int k = 0; k < n_extra; ++k) {
      const auto [a, b] = candidates[static_cast<std::size_t>(k)];
      links.push_back({a, b, sample_range(rng, cfg.edge_edge_bitrate_bps)});
    }
  }

  // Each fog candidate connects to its 2 nearest edge candidates
  // (Euclidean distance, ties by lower site_id).
  for (int f = 0; f < n_fog; ++f) {
    const auto& fog = sites[static_cast<std::size_t>(n_edge + f)];
    int first = -1, second = -1;
    for (int e = 0; e < n_edge; ++e) {
      const double d2 = squared_distance(fog.pos, sites[static_cast<std::size_t>(e)].pos);
      if (first < 0 || d2 < squared_distance(fog.pos, sites[static_cast<std::size_t>(first)].pos)) {
        second = first;
        first = e;
      } else if (second < 0 || d2 < squared_distance(fog.pos, sites[static_cast<std::size_t>(second)].pos)) {
        second = e;
      }
    }
    links.push_back({first, fog.site_id, sample_range(rng, cfg.edge_fog_bitrate_bps)});
    if (second >= 0) links.push_back({second, fog.site_id, sample_range(rng, cfg.edge_fog_bitrate_bps)});
  }

  std::vector<TaskSpec> tasks;
  tasks.reserve(static_cast<std::size_t>(cfg.n_users));
  for (int i = 0; i < cfg.n_users; ++i) {
    TaskSpec t;
    t.user_id = i;
    t.pos = {rng.uniform_real(0.0, cfg.area_side_m), rng.uniform_real(0.0, cfg.area_side_m)};
    t.d_bits = sample_range(rng, cfg.task_d_bits);
    t.freq_hz = sample_range(rng, cfg.task_freq_hz);
    t.cycles = sample_range(rng, cfg.task_cycles);
    tasks.push_back(t);
  }

  Scenario scn;
  scn.config = cfg;
  scn.graph = make_graph(std::move(sites), std::move(links));
  scn.tasks = std::move(tasks);
  return scn;
}

}  // namespace craft
