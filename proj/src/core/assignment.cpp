#include "core/assignment.hpp"

#include <limits>

namespace craft {

namespace {

// Per-site placement view: capacity in Hz and the gene driving it.
struct SiteState {
  bool placed = false;
  double capacity_hz = 0.0;
};

std::vector<SiteState> site_states(const Scenario& scn, const Deployment& dep) {
  std::vector<SiteState> states(scn.graph.sites.size());
  for (const auto& gene : dep.edge_genes) {
    auto& s = states.at(static_cast<std::size_t>(gene.site_id));
    s.placed = gene.x == 1;
    s.capacity_hz = s.placed ? gene.sc * scn.config.alpha_hz : 0.0;
  }
  for (const auto& gene : dep.fog_genes) {
    auto& s = states.at(static_cast<std::size_t>(gene.site_id));
    s.placed = gene.y == 1;
    s.capacity_hz = s.placed ? gene.sc * scn.config.omega_hz : 0.0;
  }
  return states;
}

}  // namespace

Attachment attach_users(const Scenario& scn, const Deployment& dep) {
  std::vector<const SiteCandidate*> placed_edges;
  for (const auto& gene : dep.edge_genes) {
    if (gene.x == 1) placed_edges.push_back(&scn.graph.sites.at(static_cast<std::size_t>(gene.site_id)));
  }
  if (placed_edges.empty()) throw AssignmentError("no edge coverage");

  Attachment att;
  att.attach_site.reserve(scn.tasks.size());
  att.n_attached.assign(scn.graph.sites.size(), 0);
  for (const auto& task : scn.tasks) {
    int best = -1;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (const auto* site : placed_edges) {  // ascending site_id: ties keep the lower id
      const double d2 = squared_distance(task.pos, site->pos);
      if (d2 < best_d2) {
        best_d2 = d2;
        best = site->site_id;
      }
    }
    att.attach_site.push_back(best);
    ++att.n_attached[static_cast<std::size_t>(best)];
  }
  return att;
}

AssignmentPlan assign(const Scenario& scn, const Deployment& dep, const RoutingTable& table) {
  const auto att = attach_users(scn, dep);
  const auto states = site_states(scn, dep);

  AssignmentPlan plan;
  plan.attach_site = att.attach_site;
  plan.n_attached = att.n_attached;
  plan.exec_site.assign(scn.tasks.size(), -1);
  plan.wired_path.assign(scn.tasks.size(), {});
  plan.load_hz.assign(states.size(), 0.0);
  plan.capacity_hz.resize(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) plan.capacity_hz[i] = states[i].capacity_hz;

  for (const auto& task : scn.tasks) {
    const auto t = static_cast<std::size_t>(task.user_id);
    const int home = plan.attach_site[t];
    if (plan.load_hz[static_cast<std::size_t>(home)] + task.freq_hz <= plan.capacity_hz[static_cast<std::size_t>(home)]) {
      plan.exec_site[t] = home;
      plan.load_hz[static_cast<std::size_t>(home)] += task.freq_hz;
      continue;
    }
    int best = -1;
    double best_cost = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < states.size(); ++j) {
      if (!states[j].placed) continue;
      if (plan.load_hz[j] + task.freq_hz > plan.capacity_hz[j]) continue;
      const auto& route = table.route(home, static_cast<int>(j));
      if (!route.reachable()) continue;
      const double cost = task.d_bits * route.weight;
      if (cost < best_cost) {  // ascending j: ties keep the lower site_id
        best_cost = cost;
        best = static_cast<int>(j);
      }
    }
    if (best < 0) throw AssignmentError("capacity routing failed");
    plan.exec_site[t] = best;
    plan.wired_path[t] = route_links(scn.graph, table.route(home, best));
    plan.load_hz[static_cast<std::size_t>(best)] += task.freq_hz;
  }
  return plan;
}

AssignmentPlan assign(const Scenario& scn, const Deployment& dep) {
  return assign(scn, dep, RoutingTable(scn.graph));
}

std::vector<std::string> audit_plan(const Scenario& scn, const Deployment& dep, const AssignmentPlan& plan) {
  std::vector<std::string> issues;
  const auto states = site_states(scn, dep);
  const auto n_sites = scn.graph.sites.size();
  const auto n_tasks = scn.tasks.size();

  if (plan.attach_site.size() != n_tasks || plan.exec_site.size() != n_tasks || plan.wired_path.size() != n_tasks) {
    issues.push_back("plan task arrays do not match the task count");
    return issues;
  }
  if (plan.load_hz.size() != n_sites || plan.capacity_hz.size() != n_sites || plan.n_attached.size() != n_sites) {
    issues.push_back("plan site arrays do not match the site count");
    return issues;
  }

  std::vector<double> load(n_sites, 0.0);
  std::vector<int> attached(n_sites, 0);
  for (std::size_t t = 0; t < n_tasks; ++t) {
    const int a = plan.attach_site[t];
    const int e = plan.exec_site[t];
    const auto tag = "task " + std::to_string(t);
    if (a < 0 || static_cast<std::size_t>(a) >= n_sites || scn.graph.sites[static_cast<std::size_t>(a)].kind != SiteKind::Edge) {
      issues.push_back(tag + ": attach site is not an edge site");
      continue;
    }
    if (!states[static_cast<std::size_t>(a)].placed) issues.push_back(tag + ": attach site is not placed");
    if (e < 0 || static_cast<std::size_t>(e) >= n_sites) {
      issues.push_back(tag + ": bad exec site");
      continue;
    }
    if (!states[static_cast<std::size_t>(e)].placed) issues.push_back(tag + ": exec site is not placed");
    ++attached[static_cast<std::size_t>(a)];
    load[static_cast<std::size_t>(e)] += scn.tasks[t].freq_hz;

    const auto& path = plan.wired_path[t];
    if (e == a) {
      if (!path.empty()) issues.push_back(tag + ": local execution with a nonempty wired path");
      continue;
    }
    if (path.empty()) {
      issues.push_back(tag + ": remote execution with an empty wired path");
      continue;
    }
    int at = a;
    bool ok = true;
    for (const auto& hop : path) {
      if (hop.a != at) {
        issues.push_back(tag + ": wired path is disconnected");
        ok = false;
        break;
      }
      bool exists = false;
      for (const auto& adj : scn.graph.adjacency[static_cast<std::size_t>(hop.a)]) {
        if (adj.to == hop.b && adj.bitrate_bps == hop.bitrate_bps) exists = true;
      }
      if (!exists) {
        issues.push_back(tag + ": wired path uses a link absent from the graph");
        ok = false;
        break;
      }
      at = hop.b;
    }
    if (ok && at != e) issues.push_back(tag + ": wired path does not end at the exec site");
  }

  for (std::size_t j = 0; j < n_sites; ++j) {
    const auto tag = "site " + std::to_string(j);
    if (plan.capacity_hz[j] != states[j].capacity_hz) issues.push_back(tag + ": capacity does not match the deployment");
    if (load[j] != plan.load_hz[j]) issues.push_back(tag + ": recorded load does not match the task mapping");
    if (load[j] > states[j].capacity_hz) issues.push_back(tag + ": load exceeds capacity");
    if (attached[j] != plan.n_attached[j]) issues.push_back(tag + ": recorded attachment count is wrong");
  }
  return issues;
}

}  // namespace craft
