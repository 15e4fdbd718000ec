#pragma once

#include <vector>

#include "core/types.hpp"

namespace craft {

// A shortest wired route between two sites. `sites` lists the site ids from
// source to destination inclusive ({src} when src == dst); `weight` is the
// sum of 1/bitrate over its links, in seconds per bit, so weight * d_bits is
// the wired transmission latency of a d_bits task. Unreachable destinations
// carry weight = +inf and an empty site list.
struct Route {
  std::vector<int> sites;
  double weight = 0.0;

  bool reachable() const { return !sites.empty(); }
};

// Single-source shortest paths under additive weight 1/bitrate_bps, one
// Route per site_id. Ties are broken toward the lexicographically smallest
// site-id sequence, which makes the result independent of link order.
std::vector<Route> shortest_wired_paths(const NetworkGraph& g, int src);

// All-pairs route cache. Wired weights do not depend on the deployment, so
// one table, built once per scenario, serves every evaluation.
class RoutingTable {
 public:
  explicit RoutingTable(const NetworkGraph& g);

  const Route& route(int src, int dst) const { return rows_[static_cast<std::size_t>(src)][static_cast<std::size_t>(dst)]; }
  double weight(int src, int dst) const { return route(src, dst).weight; }
  int site_count() const { return n_; }

 private:
  int n_ = 0;
  std::vector<std::vector<Route>> rows_;
};

// Expands a route into its links, bitrates included, for latency accounting.
std::vector<WiredLink> route_links(const NetworkGraph& g, const Route& route);

}  // namespace craft
