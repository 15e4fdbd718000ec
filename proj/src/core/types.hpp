#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace craft {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline double squared_distance(const Vec2& a, const Vec2& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

inline double distance(const Vec2& a, const Vec2& b) {
  return std::sqrt(squared_distance(a, b));
}

// One user's workload: data size, required frequency, cycle demand, position.
// How `cycles` enters the computation latency depends on the configured
// computation model (see objectives.hpp).
struct TaskSpec {
  int user_id = 0;
  double d_bits = 0.0;
  double freq_hz = 0.0;
  double cycles = 0.0;
  Vec2 pos;

  friend bool operator==(const TaskSpec&, const TaskSpec&) = default;
};

enum class SiteKind { Edge, Fog };

// A base-station location that may receive servers.
struct SiteCandidate {
  int site_id = 0;
  SiteKind kind = SiteKind::Edge;
  Vec2 pos;

  friend bool operator==(const SiteCandidate&, const SiteCandidate&) = default;
};

// A fixed-bitrate fiber link between two sites.
struct WiredLink {
  int a = 0;
  int b = 0;
  double bitrate_bps = 0.0;

  friend bool operator==(const WiredLink&, const WiredLink&) = default;
};

struct AdjacentLink {
  int to = 0;
  double bitrate_bps = 0.0;
};

// Base-station candidates plus wired links. Sites are indexed by site_id:
// sites[i].site_id == i. The adjacency index is derived from links.
struct NetworkGraph {
  std::vector<SiteCandidate> sites;
  std::vector<WiredLink> links;
  std::vector<std::vector<AdjacentLink>> adjacency;

  int edge_count() const {
    int n = 0;
    for (const auto& s : sites) n += (s.kind == SiteKind::Edge) ? 1 : 0;
    return n;
  }
  int fog_count() const { return static_cast<int>(sites.size()) - edge_count(); }

  friend bool operator==(const NetworkGraph& l, const NetworkGraph& r) {
    return l.sites == r.sites && l.links == r.links;  // adjacency is derived
  }
};

// Builds the derived adjacency index; call after sites/links are final.
// Neighbors are kept sorted by site_id.
void rebuild_adjacency(NetworkGraph& g);

NetworkGraph make_graph(std::vector<SiteCandidate> sites, std::vector<WiredLink> links);

// Per-candidate placement decision for an edge site. x is derived state:
// x = 1 exactly when sc >= 1; repair_deployment enforces it.
struct EdgeGene {
  int site_id = 0;
  int sc = 0;  // server count
  int ac = 1;  // access-point count, >= 1 always
  int x = 0;   // placement indicator

  friend bool operator==(const EdgeGene&, const EdgeGene&) = default;
};

struct FogGene {
  int site_id = 0;
  int sc = 0;
  int y = 0;

  friend bool operator==(const FogGene&, const FogGene&) = default;
};

// A chromosome: one gene per candidate, ordered by site_id.
struct Deployment {
  std::vector<EdgeGene> edge_genes;
  std::vector<FogGene> fog_genes;

  friend bool operator==(const Deployment&, const Deployment&) = default;
};

// Allowed server/access-point counts for placed candidates.
struct GeneBounds {
  int edge_sc_min = 4;
  int edge_sc_max = 6;
  int fog_sc_min = 6;
  int fog_sc_max = 8;
  int ac_max = 5;

  friend bool operator==(const GeneBounds&, const GeneBounds&) = default;
};

// Fitness is either a finite real or Infeasible. Infeasible orders strictly
// below every finite value; a distinct variant avoids -inf/NaN hazards in
// sorting and statistics.
class Fitness {
 public:
  Fitness() = default;

  static Fitness infeasible() { return Fitness{}; }
  static Fitness finite(double v) {
    if (!std::isfinite(v)) throw std::invalid_argument("Fitness::finite requires a finite value");
    Fitness f;
    f.finite_ = true;
    f.value_ = v;
    return f;
  }

  bool is_finite() const { return finite_; }
  double value() const {
    if (!finite_) throw std::logic_error("Fitness::value on infeasible fitness");
    return value_;
  }

  friend bool operator==(const Fitness& l, const Fitness& r) {
    if (l.finite_ != r.finite_) return false;
    return !l.finite_ || l.value_ == r.value_;
  }
  friend bool operator<(const Fitness& l, const Fitness& r) {
    if (l.finite_ != r.finite_) return !l.finite_;
    return l.finite_ && l.value_ < r.value_;
  }
  friend bool operator>(const Fitness& l, const Fitness& r) { return r < l; }
  friend bool operator<=(const Fitness& l, const Fitness& r) { return !(r < l); }
  friend bool operator>=(const Fitness& l, const Fitness& r) { return !(l < r); }

 private:
  bool finite_ = false;
  double value_ = 0.0;
};

// Raised when a deployment cannot serve the workload: no wireless coverage,
// no node with spare capacity, or a dead wireless channel. evaluate() maps
// it to Infeasible fitness.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Returns one description per violated deployment/gene rule, empty when the
// deployment is valid against the graph. Checks structure (coverage, order,
// site kinds) and gene rules (indicator/server-count sync, access points),
// not configured sc/ac bounds; bounds are maintained by repair_deployment.
std::vector<std::string> validate_deployment(const NetworkGraph& g, const Deployment& dep);

// Restores every gene invariant: indicators recomputed from sc, nonzero sc
// clamped into bounds, ac clamped into [1, ac_max], dormant candidates reset
// to ac = 1. Idempotent.
Deployment repair_deployment(const Deployment& dep, const GeneBounds& bounds);

}  // namespace craft
