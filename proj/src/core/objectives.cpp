#include "core/objectives.hpp"

#include <limits>
#include <stdexcept>

#include "core/wireless.hpp"

namespace craft {

double t_comp(const TaskSpec& task, CompModel model) {
  if (task.freq_hz <= 0.0) throw std::domain_error("t_comp: task frequency must be > 0");
  if (model == CompModel::Literal) return task.cycles / task.freq_hz;
  return task.cycles * task.d_bits / task.freq_hz;
}

double t_tr(const TaskSpec& task, double wireless_rate_bps, const std::vector<WiredLink>& wired_path) {
  if (wireless_rate_bps <= 0.0) throw InfeasibleError("dead wireless channel");
  double t = task.d_bits / wireless_rate_bps;
  for (const auto& hop : wired_path) t += task.d_bits / hop.bitrate_bps;
  return t;
}

double site_wireless_rate(const ScenarioConfig& cfg, int n_attached, int ac) {
  const double interference = mean_interference(n_attached, ac, cfg.p_w, cfg.h_bar);
  return wireless_bitrate(cfg.w_hz, sinr(cfg.p_w, cfg.h_bar, cfg.sigma2_w, interference));
}

bool capacity_feasible(const Scenario& scn, const Deployment& dep) {
  double demand = 0.0;
  for (const auto& task : scn.tasks) demand += task.freq_hz;
  double capacity = 0.0;
  for (const auto& gene : dep.edge_genes) {
    if (gene.x == 1) capacity += gene.sc * scn.config.alpha_hz;
  }
  for (const auto& gene : dep.fog_genes) {
    if (gene.y == 1) capacity += gene.sc * scn.config.omega_hz;
  }
  return demand <= capacity;
}

CostBreakdown deployment_cost(const ScenarioConfig& cfg, const Deployment& dep) {
  CostBreakdown costs;
  for (const auto& gene : dep.edge_genes) {
    if (gene.x == 1) costs.edge_cost += cfg.c_fixed + (gene.sc + gene.ac) * cfg.c_dynamic;
  }
  for (const auto& gene : dep.fog_genes) {
    if (gene.y == 1) costs.fog_cost += cfg.c_fixed + gene.sc * cfg.c_dynamic;
  }
  costs.total = costs.edge_cost + costs.fog_cost;
  return costs;
}

namespace {

EvalReport evaluate_with(const Scenario& scn, const Deployment& dep, double v, const RoutingTable& table) {
  if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument("V must be a non-negative finite value");

  EvalReport report;
  const auto costs = deployment_cost(scn.config, dep);
  report.edge_cost = costs.edge_cost;
  report.fog_cost = costs.fog_cost;
  report.total_cost = costs.total;
  report.avg_latency_s = std::numeric_limits<double>::quiet_NaN();
  report.fitness = Fitness::infeasible();

  if (!capacity_feasible(scn, dep)) return report;

  AssignmentPlan plan;
  try {
    plan = assign(scn, dep, table);
  } catch (const AssignmentError&) {
    return report;
  }

  std::vector<double> rate(scn.graph.sites.size(), 0.0);
  for (const auto& gene : dep.edge_genes) {
    if (gene.x == 1) rate[static_cast<std::size_t>(gene.site_id)] = site_wireless_rate(scn.config, plan.n_attached[static_cast<std::size_t>(gene.site_id)], gene.ac);
  }

  double latency_sum = 0.0;
  std::vector<TaskTimes> times;
  times.reserve(scn.tasks.size());
  try {
    for (const auto& task : scn.tasks) {
      const auto t = static_cast<std::size_t>(task.user_id);
      TaskTimes tt;
      tt.comp_s = t_comp(task, scn.config.comp_model);
      tt.tr_s = t_tr(task, rate[static_cast<std::size_t>(plan.attach_site[t])], plan.wired_path[t]);
      tt.total_s = tt.comp_s + tt.tr_s;
      latency_sum += tt.total_s;
      times.push_back(tt);
    }
  } catch (const InfeasibleError&) {
    return report;
  }

  report.per_task = std::move(times);
  report.avg_latency_s = scn.tasks.empty() ? 0.0 : latency_sum / static_cast<double>(scn.tasks.size());
  report.fitness = Fitness::finite(-(v * report.avg_latency_s + report.total_cost));
  report.feasible = true;
  return report;
}

}  // namespace

EvalReport evaluate(const Scenario& scn, const Deployment& dep, double v) {
  return evaluate_with(scn, dep, v, RoutingTable(scn.graph));
}

EvalReport Evaluator::evaluate(const Deployment& dep, double v) const {
  return evaluate_with(*scn_, dep, v, table_);
}

}  // namespace craft
