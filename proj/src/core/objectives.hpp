#pragma once

#include <vector>

#include "core/assignment.hpp"
#include "core/routing.hpp"
#include "core/scenario.hpp"
#include "core/types.hpp"

namespace craft {

// Computation latency of one task in seconds. Literal reads `cycles` as a
// total count (cycles / freq); PerBit reads it as per-bit demand
// (cycles * d_bits / freq).
double t_comp(const TaskSpec& task, CompModel model);

// Transmission latency in seconds: the wireless uplink hop plus every wired
// hop of the task's path. Downlink is ignored. Throws InfeasibleError when
// the wireless rate is not positive (dead channel).
double t_tr(const TaskSpec& task, double wireless_rate_bps, const std::vector<WiredLink>& wired_path);

// Uplink bitrate of one edge site given its attached-user count and access
// points, in bits per second.
double site_wireless_rate(const ScenarioConfig& cfg, int n_attached, int ac);

// Aggregate capacity check: total required user frequency must not exceed
// total placed server frequency.
bool capacity_feasible(const Scenario& scn, const Deployment& dep);

struct CostBreakdown {
  double edge_cost = 0.0;
  double fog_cost = 0.0;
  double total = 0.0;
};

// Deployment cost: per placed edge site c_fixed + (sc + ac) * c_dynamic, per
// placed fog site c_fixed + sc * c_dynamic. Independent of tasks and V.
CostBreakdown deployment_cost(const ScenarioConfig& cfg, const Deployment& dep);

struct TaskTimes {
  double comp_s = 0.0;
  double tr_s = 0.0;
  double total_s = 0.0;
};

struct EvalReport {
  double avg_latency_s = 0.0;  // NaN when no assignment exists
  double total_cost = 0.0;
  double edge_cost = 0.0;
  double fog_cost = 0.0;
  Fitness fitness;
  bool feasible = false;
  std::vector<TaskTimes> per_task;  // empty when no assignment exists
};

// Scores one deployment: fitness = -(V * avg_latency + total_cost) when the
// workload is servable, Infeasible otherwise. Cost fields are always filled;
// latency fields only when an assignment exists. V must be a non-negative
// finite value.
EvalReport evaluate(const Scenario& scn, const Deployment& dep, double v);

// Same scoring with the routing table built once and reused across calls;
// evaluate() on disjoint deployments is safe to run concurrently.
class Evaluator {
 public:
  explicit Evaluator(const Scenario& scn) : scn_(&scn), table_(scn.graph) {}

  EvalReport evaluate(const Deployment& dep, double v) const;
  const RoutingTable& table() const { return table_; }

 private:
  const Scenario* scn_;
  RoutingTable table_;
};

}  // namespace craft
