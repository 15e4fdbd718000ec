#include "core/routing.hpp"

#include <limits>
#include <stdexcept>

namespace craft {

namespace {

// Candidate paths compare by (weight, site sequence). With strictly positive
// link weights every proper prefix of a shortest path is strictly shorter, so
// settling nodes in this order yields, per node, the lexicographically
// smallest among its minimum-weight paths.
bool better(double w_new, const std::vector<int>& p_new, double w_old, const std::vector<int>& p_old) {
  if (w_new != w_old) return w_new < w_old;
  return p_new < p_old;
}

}  // namespace

std::vector<Route> shortest_wired_paths(const NetworkGraph& g, int src) {
  const auto n = g.sites.size();
  if (src < 0 || static_cast<std::size_t>(src) >= n) throw std::invalid_argument("shortest_wired_paths: unknown source site");

  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<Route> routes(n);
  for (auto& r : routes) r.weight = kInf;
  routes[static_cast<std::size_t>(src)].weight = 0.0;
  routes[static_cast<std::size_t>(src)].sites = {src};

  std::vector<char> settled(n, 0);
  for (std::size_t round = 0; round < n; ++round) {
    int u = -1;
    for (std::size_t v = 0; v < n; ++v) {
      if (settled[v] || routes[v].weight == kInf) continue;
      if (u < 0 || better(routes[v].weight, routes[v].sites, routes[static_cast<std::size_t>(u)].weight,
                          routes[static_cast<std::size_t>(u)].sites)) {
        u = static_cast<int>(v);
      }
    }
    if (u < 0) break;
    settled[static_cast<std::size_t>(u)] = 1;

    const auto& from = routes[static_cast<std::size_t>(u)];
    for (const auto& adj : g.adjacency[static_cast<std::size_t>(u)]) {
      auto& to = routes[static_cast<std::size_t>(adj.to)];
      const double w = from.weight + 1.0 / adj.bitrate_bps;
      if (to.weight == kInf) {
        to.weight = w;
        to.sites = from.sites;
        to.sites.push_back(adj.to);
        continue;
      }
      std::vector<int> cand = from.sites;
      cand.push_back(adj.to);
      if (better(w, cand, to.weight, to.sites)) {
        to.weight = w;
        to.sites = std::move(cand);
      }
    }
  }
  return routes;
}

RoutingTable::RoutingTable(const NetworkGraph& g) : n_(static_cast<int>(g.sites.size())) {
  rows_.reserve(g.sites.size());
  for (std::size_t s = 0; s < g.sites.size(); ++s) {
    rows_.push_back(shortest_wired_paths(g, static_cast<int>(s)));
  }
}

std::vector<WiredLink> route_links(const NetworkGraph& g, const Route& route) {
  std::vector<WiredLink> links;
  if (route.sites.size() < 2) return links;
  links.reserve(route.sites.size() - 1);
  for (std::size_t i = 0; i + 1 < route.sites.size(); ++i) {
    const int a = route.sites[i];
    const int b = route.sites[i + 1];
    bool found = false;
    for (const auto& adj : g.adjacency[static_cast<std::size_t>(a)]) {
      if (adj.to == b) {
        links.push_back({a, b, adj.bitrate_bps});
        found = true;
        break;
      }
    }
    if (!found) throw std::logic_error("route_links: route uses a missing link");
  }
  return links;
}

}  // namespace craft
