#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "core/routing.hpp"
#include "core/scenario.hpp"
#include "core/types.hpp"

namespace craft {

// Raised when no deterministic assignment exists for a deployment: zero edge
// coverage or a task that fits nowhere. evaluate() maps it to Infeasible.
class AssignmentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Wireless attachment only: per-task nearest placed edge plus per-site user
// counts (nonzero for edge sites only).
struct Attachment {
  std::vector<int> attach_site;  // indexed by user_id
  std::vector<int> n_attached;   // indexed by site_id
};

// Full task-to-node mapping with capacity accounting. All vectors indexed by
// user_id or site_id. wired_path is empty when a task runs where it attaches;
// load stays within capacity on every site (capacity = sc * alpha for placed
// edge sites, sc * omega for placed fog sites, 0 for dormant sites).
struct AssignmentPlan {
  std::vector<int> attach_site;
  std::vector<int> exec_site;
  std::vector<std::vector<WiredLink>> wired_path;
  std::vector<double> load_hz;
  std::vector<double> capacity_hz;
  std::vector<int> n_attached;
};

// Attaches every task to the placed edge site with minimum Euclidean
// distance; ties go to the lower site_id. Throws AssignmentError("no edge
// coverage") when the deployment places no edge site.
Attachment attach_users(const Scenario& scn, const Deployment& dep);

// Deterministic greedy assignment. Tasks are processed in ascending user_id:
// each runs at its attach site when residual capacity allows, otherwise at
// the placed node minimizing d_bits * wired path weight from the attach site
// among nodes with room (ties to the lower site_id). Throws AssignmentError
// when some task fits nowhere.
AssignmentPlan assign(const Scenario& scn, const Deployment& dep, const RoutingTable& table);

// Convenience overload that builds the routing table itself.
AssignmentPlan assign(const Scenario& scn, const Deployment& dep);

// Re-derives every plan invariant from scratch; returns one message per
// violation, empty when the plan is sound for (scn, dep).
std::vector<std::string> audit_plan(const Scenario& scn, const Deployment& dep, const AssignmentPlan& plan);

}  // namespace craft
