#ifndef CRP_BALANCE_H_
#define CRP_BALANCE_H_

// Iterative line balancing: find the bottleneck, add one unit of the
// resource that binds it, re-analyze, and repeat until the target output is
// reached or the bottleneck can no longer be relieved.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "crp/capacity.h"
#include "crp/model.h"
#include "crp/simplex.h"

namespace crp {

struct StationAllowance {
  bool may_add_labor = false;
  bool may_add_machines = false;
  int64_t max_labor = 0;
  int64_t max_machines = 0;

  friend bool operator==(const StationAllowance&, const StationAllowance&) =
      default;
};

struct BalancePolicy {
  int64_t target_throughput = 0;
  // Stations absent from the map may not be changed.
  std::map<std::string, StationAllowance> allowed_actions;
  double labor_cost = 1.0;
  double machine_cost = 1.0;

  friend bool operator==(const BalancePolicy&, const BalancePolicy&) = default;
};

// Every station may grow labor, and machines where it has a pool, up to
// twice its current count (at least one more unit).
BalancePolicy DefaultPolicy(const ProductionLine& line,
                            int64_t target_throughput);

std::vector<Violation> ValidatePolicy(const ProductionLine& line,
                                      const BalancePolicy& policy);

struct BalanceStep {
  int iteration = 0;
  std::string bottleneck_station;
  ScenarioDelta action;
  int64_t fg_throughput = 0;  // after the action
  double cost = 0.0;

  friend bool operator==(const BalanceStep&, const BalanceStep&) = default;
};

struct BalancePlan {
  int64_t initial_throughput = 0;
  std::vector<BalanceStep> steps;
  ProductionLine final_line;
  bool achieved = false;
  // Set when the loop stopped because the bottleneck could not be relieved.
  std::string limiting_station;

  double total_cost() const;
  int64_t final_throughput() const;
  // All step actions concatenated in order.
  ScenarioDelta CombinedDelta() const;
};

// Greedy single-increment balancing. A labor-bound bottleneck gets one more
// labor unit; a machine-bound or tied bottleneck gets one labor unit and one
// machine together. When that action is not allowed (or does not raise the
// station's capacity) the cheapest allowed action that does is used instead.
//
// Fails with InvalidArgument for an invalid line or policy.
absl::StatusOr<BalancePlan> BalanceLine(const ProductionLine& line,
                                        const BalancePolicy& policy);

struct IterationResult {
  CapacityReport capacity_report;
  CrpLinearProgram lp;
  LpSolution lp_solution;
  bool converged = false;
  std::optional<ScenarioDelta> recommended_delta;
  std::string limiting_station;  // set when no recommendation is possible
};

// One turn of the plan-review loop: analyze capacity, solve the capacity LP
// for `styles` (the line's single cycle-time style when empty), and either
// report convergence or recommend the next delta without applying it.
absl::StatusOr<IterationResult> MethodologyIteration(
    const ProductionLine& line, const BalancePolicy& policy,
    const std::vector<StyleRouting>& styles);

}  // namespace crp

#endif  // CRP_BALANCE_H_
