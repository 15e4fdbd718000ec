#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "core/assignment.hpp"
#include "core/rng.hpp"
#include "core/routing.hpp"
#include "core/scenario.hpp"
#include "support/builders.hpp"

using namespace craft;
using namespace testsupport;

namespace {

// 0 -2- 1
// |     |     two 2-hop routes 0->3: via 1 at 6 Mbit/s per hop,
// 2 -4- 3     via 2 at 5 Mbit/s per hop.
NetworkGraph two_route_graph(double fast_bps, double slow_bps) {
  std::vector<SiteCandidate> sites{
      {0, SiteKind::Edge, {0, 0}},
      {1, SiteKind::Edge, {1, 0}},
      {2, SiteKind::Edge, {0, 1}},
      {3, SiteKind::Edge, {1, 1}},
  };
  std::vector<WiredLink> links{
      {0, 1, fast_bps}, {1, 3, fast_bps}, {0, 2, slow_bps}, {2, 3, slow_bps}};
  return make_graph(std::move(sites), std::move(links));
}

}  // namespace

TEST_CASE("route to self is trivial") {
  const auto g = two_route_graph(6e6, 5e6);
  const auto routes = shortest_wired_paths(g, 2);
  CHECK(routes[2].sites == std::vector<int>{2});
  CHECK(routes[2].weight == 0.0);
  CHECK(routes[2].reachable());
}

TEST_CASE("shortest path picks the lighter of two parallel routes") {
  const auto g = two_route_graph(6e6, 5e6);
  const auto routes = shortest_wired_paths(g, 0);
  CHECK(routes[3].sites == std::vector<int>{0, 1, 3});
  CHECK(routes[3].weight == doctest::Approx(2.0 / 6e6).epsilon(1e-12));
  CHECK(routes[1].sites == std::vector<int>{0, 1});
  CHECK(routes[2].sites == std::vector<int>{0, 2});
}

TEST_CASE("equal-weight ties break to the lexicographically smallest sequence") {
  const auto g = two_route_graph(5e6, 5e6);
  const auto routes = shortest_wired_paths(g, 0);
  // Both 0-1-3 and 0-2-3 weigh 2/5e6; 0-1-3 is the smaller sequence.
  CHECK(routes[3].sites == std::vector<int>{0, 1, 3});
  // And from site 3: 3-1-0 beats 3-2-0.
  const auto back = shortest_wired_paths(g, 3);
  CHECK(back[0].sites == std::vector<int>{3, 1, 0});
}

TEST_CASE("unreachable sites carry empty routes with infinite weight") {
  std::vector<SiteCandidate> sites{
      {0, SiteKind::Edge, {0, 0}}, {1, SiteKind::Edge, {1, 0}}, {2, SiteKind::Edge, {2, 0}}};
  std::vector<WiredLink> links{{0, 1, 1e6}};
  const auto g = make_graph(std::move(sites), std::move(links));
  const auto routes = shortest_wired_paths(g, 0);
  CHECK_FALSE(routes[2].reachable());
  CHECK(std::isinf(routes[2].weight));
}

TEST_CASE("routing table matches single-source results and floyd-warshall weights") {
  ScenarioConfig cfg;
  cfg.n_edge_candidates = 10;
  cfg.n_fog_candidates = 3;
  cfg.n_users = 5;
  for (std::uint64_t seed : {11ull, 12ull, 13ull}) {
    cfg.seed = seed;
    const auto scn = generate(cfg);
    const int n = static_cast<int>(scn.graph.sites.size());
    const RoutingTable table(scn.graph);
    REQUIRE(table.site_count() == n);

    // Independent all-pairs weights.
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> w(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), inf));
    for (int i = 0; i < n; ++i) w[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 0.0;
    for (const auto& link : scn.graph.links) {
      const auto a = static_cast<std::size_t>(link.a);
      const auto b = static_cast<std::size_t>(link.b);
      w[a][b] = std::min(w[a][b], 1.0 / link.bitrate_bps);
      w[b][a] = w[a][b];
    }
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const auto kk = static_cast<std::size_t>(k), ii = static_cast<std::size_t>(i), jj = static_cast<std::size_t>(j);
          if (w[ii][kk] + w[kk][jj] < w[ii][jj]) w[ii][jj] = w[ii][kk] + w[kk][jj];
        }

    for (int src = 0; src < n; ++src) {
      const auto routes = shortest_wired_paths(scn.graph, src);
      for (int dst = 0; dst < n; ++dst) {
        const auto& via_table = table.route(src, dst);
        CHECK(via_table.sites == routes[static_cast<std::size_t>(dst)].sites);
        CHECK(via_table.weight == routes[static_cast<std::size_t>(dst)].weight);
        const double expect = w[static_cast<std::size_t>(src)][static_cast<std::size_t>(dst)];
        if (std::isinf(expect)) {
          CHECK_FALSE(via_table.reachable());
        } else {
          CHECK(via_table.weight == doctest::Approx(expect).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("route weight equals the sum over its expanded links") {
  const auto cfg = [] {
    ScenarioConfig c;
    c.n_edge_candidates = 8;
    c.n_fog_candidates = 2;
    c.n_users = 5;
    c.seed = 77;
    return c;
  }();
  const auto scn = generate(cfg);
  const RoutingTable table(scn.graph);
  for (int src = 0; src < table.site_count(); ++src) {
    for (int dst = 0; dst < table.site_count(); ++dst) {
      const auto& route = table.route(src, dst);
      if (!route.reachable()) continue;
      const auto links = route_links(scn.graph, route);
      CHECK(links.size() + 1 == route.sites.size());
      double sum = 0.0;
      int at = src;
      for (const auto& link : links) {
        CHECK(link.a == at);
        sum += 1.0 / link.bitrate_bps;
        at = link.b;
      }
      CHECK(at == dst);
      CHECK(route.weight == doctest::Approx(sum).epsilon(1e-12));
    }
  }
}

TEST_CASE("attach_users picks the nearest placed edge, ties to the lower id") {
  ScenarioConfig cfg = loose_config(3, 0, 3);
  auto scn = manual_scenario(
      cfg,
      {{0, SiteKind::Edge, {0, 0}}, {1, SiteKind::Edge, {10, 0}}, {2, SiteKind::Edge, {5, 8}}},
      {{0, 1, 1e6}, {1, 2, 1e6}},
      {task(0, {1, 0}, 100, 10, 10),    // nearest to site 0
       task(1, {9, 0}, 100, 10, 10),    // nearest to site 1
       task(2, {5, 0}, 100, 10, 10)});  // exactly between 0 and 1

  auto dep = empty_deployment(scn);
  place_edge(dep, 0, 4, 1);
  place_edge(dep, 1, 4, 1);

  const auto att = attach_users(scn, dep);
  CHECK(att.attach_site == std::vector<int>{0, 1, 0});  // tie goes to site 0
  CHECK(att.n_attached[0] == 2);
  CHECK(att.n_attached[1] == 1);
  CHECK(att.n_attached[2] == 0);

  // Placement changes attachment: only site 2 placed pulls everyone there.
  auto dep2 = empty_deployment(scn);
  place_edge(dep2, 2, 4, 1);
  const auto att2 = attach_users(scn, dep2);
  CHECK(att2.attach_site == std::vector<int>{2, 2, 2});
}

TEST_CASE("attach_users without placed edges reports no coverage") {
  ScenarioConfig cfg = loose_config(2, 0, 1);
  auto scn = manual_scenario(cfg, {{0, SiteKind::Edge, {0, 0}}, {1, SiteKind::Edge, {1, 0}}},
                             {{0, 1, 1e6}}, {task(0, {0, 0}, 100, 10, 10)});
  const auto dep = empty_deployment(scn);
  CHECK_THROWS_WITH_AS(attach_users(scn, dep), "no edge coverage", AssignmentError);
}

TEST_CASE("greedy assignment keeps tasks local while capacity lasts, then spills over") {
  // One placed edge with 4 * 0.5 GHz and one placed fog; five 0.5 GHz users.
  ScenarioConfig cfg = loose_config(2, 1, 5);
  cfg.alpha_hz = 0.5e9;
  cfg.omega_hz = 0.5e9;
  auto scn = manual_scenario(
      cfg,
      {{0, SiteKind::Edge, {0, 0}}, {1, SiteKind::Edge, {100, 0}}, {2, SiteKind::Fog, {0, 100}}},
      {{0, 1, 5e6}, {0, 2, 3e6}, {1, 2, 3e6}},
      {task(0, {0, 1}, 1e6, 0.5e9, 10), task(1, {0, 2}, 1e6, 0.5e9, 10),
       task(2, {0, 3}, 1e6, 0.5e9, 10), task(3, {0, 4}, 1e6, 0.5e9, 10),
       task(4, {0, 5}, 1e6, 0.5e9, 10)});

  auto dep = empty_deployment(scn);
  place_edge(dep, 0, 4, 2);
  place_fog(dep, 2, 2);

  const auto plan = assign(scn, dep);
  CHECK(plan.exec_site == std::vector<int>{0, 0, 0, 0, 2});
  for (int t = 0; t < 4; ++t) CHECK(plan.wired_path[static_cast<std::size_t>(t)].empty());
  REQUIRE(plan.wired_path[4].size() == 1);
  CHECK(plan.wired_path[4][0].a == 0);
  CHECK(plan.wired_path[4][0].b == 2);
  CHECK(plan.load_hz[0] == 2e9);
  CHECK(plan.load_hz[2] == 0.5e9);
  CHECK(plan.capacity_hz[0] == 2e9);
  CHECK(plan.capacity_hz[2] == 1e9);
  CHECK(plan.n_attached[0] == 5);
  CHECK(audit_plan(scn, dep, plan).empty());
}

TEST_CASE("spillover picks the cheapest wired destination, ties to the lower id") {
  // Home edge 0 is full; edges 1 and 2 both have room. The route 0-1 is
  // cheaper than 0-2, so the overflow goes to 1.
  ScenarioConfig cfg = loose_config(3, 0, 2);
  cfg.alpha_hz = 1e9;
  auto scn = manual_scenario(
      cfg,
      {{0, SiteKind::Edge, {0, 0}}, {1, SiteKind::Edge, {50, 0}}, {2, SiteKind::Edge, {0, 50}}},
      {{0, 1, 8e6}, {0, 2, 2e6}},
      {task(0, {0, 0}, 1e6, 1e9, 10), task(1, {1, 0}, 1e6, 1e9, 10)});

  auto dep = empty_deployment(scn);
  place_edge(dep, 0, 1, 1);
  place_edge(dep, 1, 1, 1);
  place_edge(dep, 2, 1, 1);

  const auto plan = assign(scn, dep);
  CHECK(plan.exec_site[0] == 0);
  CHECK(plan.exec_site[1] == 1);

  // With equal link rates the tie falls to the lower site id.
  auto scn2 = scn;
  scn2.graph.links[0].bitrate_bps = 2e6;
  rebuild_adjacency(scn2.graph);
  const auto plan2 = assign(scn2, dep);
  CHECK(plan2.exec_site[1] == 1);
}

TEST_CASE("assignment can fail even when aggregate capacity suffices") {
  // Two edges of 1 GHz each; three 0.6 GHz tasks. Aggregate demand 1.8 <= 2
  // but no single node can take two tasks, so the third cannot fit anywhere.
  ScenarioConfig cfg = loose_config(2, 0, 3);
  cfg.alpha_hz = 1e9;
  auto scn = manual_scenario(
      cfg, {{0, SiteKind::Edge, {0, 0}}, {1, SiteKind::Edge, {10, 0}}}, {{0, 1, 1e6}},
      {task(0, {0, 0}, 1e6, 0.6e9, 10), task(1, {0.1, 0}, 1e6, 0.6e9, 10), task(2, {10, 0}, 1e6, 0.6e9, 10)});
  auto dep = empty_deployment(scn);
  place_edge(dep, 0, 1, 1);
  place_edge(dep, 1, 1, 1);
  CHECK_THROWS_WITH_AS(assign(scn, dep), "capacity routing failed", AssignmentError);
}

TEST_CASE("assignment matches an independent greedy reimplementation") {
  ScenarioConfig cfg;
  cfg.n_edge_candidates = 6;
  cfg.n_fog_candidates = 2;
  cfg.n_users = 12;
  for (std::uint64_t seed = 200; seed < 220; ++seed) {
    cfg.seed = seed;
    const auto scn = generate(cfg);
    const int n = static_cast<int>(scn.graph.sites.size());

    // A deployment wide enough to usually be assignable.
    auto dep = empty_deployment(scn);
    Rng rng(seed);
    for (const auto& site : scn.graph.sites) {
      if (!rng.bernoulli(0.7)) continue;
      if (site.kind == SiteKind::Edge) {
        place_edge(dep, site.site_id, static_cast<int>(rng.uniform_int(4, 6)), static_cast<int>(rng.uniform_int(1, 5)));
      } else {
        place_fog(dep, site.site_id, static_cast<int>(rng.uniform_int(6, 8)));
      }
    }

    // Independent greedy: Floyd-Warshall weights + straight-line rules.
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> cap(static_cast<std::size_t>(n), 0.0);
    std::vector<bool> placed(static_cast<std::size_t>(n), false);
    for (const auto& g : dep.edge_genes)
      if (g.x == 1) {
        cap[static_cast<std::size_t>(g.site_id)] = g.sc * cfg.alpha_hz;
        placed[static_cast<std::size_t>(g.site_id)] = true;
      }
    for (const auto& g : dep.fog_genes)
      if (g.y == 1) {
        cap[static_cast<std::size_t>(g.site_id)] = g.sc * cfg.omega_hz;
        placed[static_cast<std::size_t>(g.site_id)] = true;
      }
    bool any_edge = false;
    for (const auto& g : dep.edge_genes) any_edge = any_edge || g.x == 1;
    if (!any_edge) {
      CHECK_THROWS_AS(assign(scn, dep), AssignmentError);
      continue;
    }

    std::vector<std::vector<double>> w(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), inf));
    for (int i = 0; i < n; ++i) w[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 0.0;
    for (const auto& link : scn.graph.links) {
      const auto a = static_cast<std::size_t>(link.a), b = static_cast<std::size_t>(link.b);
      w[a][b] = std::min(w[a][b], 1.0 / link.bitrate_bps);
      w[b][a] = w[a][b];
    }
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const auto kk = static_cast<std::size_t>(k), ii = static_cast<std::size_t>(i), jj = static_cast<std::size_t>(j);
          if (w[ii][kk] + w[kk][jj] < w[ii][jj]) w[ii][jj] = w[ii][kk] + w[kk][jj];
        }

    std::vector<int> expect_exec;
    std::vector<double> load(static_cast<std::size_t>(n), 0.0);
    bool expect_fail = false;
    for (const auto& t : scn.tasks) {
      int home = -1;
      double best_d2 = inf;
      for (const auto& site : scn.graph.sites) {
        if (site.kind != SiteKind::Edge || !placed[static_cast<std::size_t>(site.site_id)]) continue;
        const double d2 = squared_distance(t.pos, site.pos);
        if (d2 < best_d2) {
          best_d2 = d2;
          home = site.site_id;
        }
      }
      const auto h = static_cast<std::size_t>(home);
      if (load[h] + t.freq_hz <= cap[h]) {
        load[h] += t.freq_hz;
        expect_exec.push_back(home);
        continue;
      }
      int best = -1;
      double best_cost = inf;
      for (int jx = 0; jx < n; ++jx) {
        const auto j = static_cast<std::size_t>(jx);
        if (!placed[j] || load[j] + t.freq_hz > cap[j] || w[h][j] == inf) continue;
        const double c = t.d_bits * w[h][j];
        if (c < best_cost) {
          best_cost = c;
          best = jx;
        }
      }
      if (best < 0) {
        expect_fail = true;
        break;
      }
      load[static_cast<std::size_t>(best)] += t.freq_hz;
      expect_exec.push_back(best);
    }

    if (expect_fail) {
      CHECK_THROWS_AS(assign(scn, dep), AssignmentError);
      continue;
    }
    const auto plan = assign(scn, dep);
    CHECK(plan.exec_site == expect_exec);
    CHECK(audit_plan(scn, dep, plan).empty());
  }
}

TEST_CASE("audit_plan flags tampered plans") {
  ScenarioConfig cfg = loose_config(2, 1, 2);
  cfg.alpha_hz = 1e9;
  cfg.omega_hz = 1e9;
  auto scn = manual_scenario(
      cfg, {{0, SiteKind::Edge, {0, 0}}, {1, SiteKind::Edge, {10, 0}}, {2, SiteKind::Fog, {5, 5}}},
      {{0, 1, 1e6}, {0, 2, 2e6}, {1, 2, 2e6}},
      {task(0, {0, 0}, 1e6, 0.6e9, 10), task(1, {10, 0}, 1e6, 0.6e9, 10)});
  auto dep = empty_deployment(scn);
  place_edge(dep, 0, 1, 1);
  place_edge(dep, 1, 1, 1);
  const auto plan = assign(scn, dep);
  REQUIRE(audit_plan(scn, dep, plan).empty());

  auto tampered = plan;
  tampered.load_hz[0] += 1.0;
  CHECK_FALSE(audit_plan(scn, dep, tampered).empty());

  tampered = plan;
  tampered.exec_site[0] = 2;  // not placed
  CHECK_FALSE(audit_plan(scn, dep, tampered).empty());

  tampered = plan;
  tampered.capacity_hz[1] = 5e9;
  CHECK_FALSE(audit_plan(scn, dep, tampered).empty());

  tampered = plan;
  tampered.wired_path[0] = {{0, 2, 2e6}};  // local execution with a path
  CHECK_FALSE(audit_plan(scn, dep, tampered).empty());

  // Overload beyond capacity is caught: both 0.6 GHz tasks on a 1 GHz node.
  tampered = plan;
  tampered.exec_site[1] = 0;
  tampered.wired_path[1] = {{1, 0, 1e6}};
  tampered.load_hz[0] = 1.2e9;
  tampered.load_hz[1] = 0.0;
  bool overload = false;
  for (const auto& m : audit_plan(scn, dep, tampered)) overload = overload || m.find("load exceeds capacity") != std::string::npos;
  CHECK(overload);
}
