#include "crp/balance.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace crp {
namespace {

struct Candidate {
  int labor = 0;
  int machines = 0;
};

absl::Status FirstViolation(const std::vector<Violation>& violations,
                            const char* what) {
  if (violations.empty()) return absl::OkStatus();
  const Violation& v = violations.front();
  return absl::InvalidArgumentError(absl::StrCat(
      "invalid ", what, ": ", v.station_id, v.station_id.empty() ? "" : ": ",
      v.message));
}

bool Permitted(const Workstation& ws, const StationAllowance* allow,
               Candidate c) {
  if (allow == nullptr) return false;
  if (c.labor > 0 &&
      (!allow->may_add_labor || ws.labor_resources + c.labor > allow->max_labor)) {
    return false;
  }
  if (c.machines > 0) {
    if (!ws.machine_pool || !allow->may_add_machines ||
        ws.machine_pool->machine_count + c.machines > allow->max_machines) {
      return false;
    }
  }
  return true;
}

Workstation WithCandidate(Workstation ws, Candidate c) {
  ws.labor_resources += c.labor;
  if (c.machines > 0) ws.machine_pool->machine_count += c.machines;
  return ws;
}

ScenarioDelta ToDelta(const std::string& station_id, Candidate c) {
  ScenarioDelta delta;
  if (c.labor > 0) delta.edits.push_back(Edit::AddLabor(station_id, c.labor));
  if (c.machines > 0) {
    delta.edits.push_back(Edit::AddMachines(station_id, c.machines));
  }
  return delta;
}

}  // namespace

BalancePolicy DefaultPolicy(const ProductionLine& line,
                            int64_t target_throughput) {
  BalancePolicy policy;
  policy.target_throughput = target_throughput;
  for (const Workstation& ws : line.workstations) {
    StationAllowance allow;
    allow.may_add_labor = true;
    allow.max_labor = std::max(2 * ws.labor_resources, ws.labor_resources + 1);
    if (ws.machine_pool) {
      const int64_t count = ws.machine_pool->machine_count;
      allow.may_add_machines = true;
      allow.max_machines = std::max(2 * count, count + 1);
    }
    policy.allowed_actions[ws.id] = allow;
  }
  return policy;
}

std::vector<Violation> ValidatePolicy(const ProductionLine& line,
                                      const BalancePolicy& policy) {
  std::vector<Violation> out;
  if (policy.target_throughput <= 0) {
    out.push_back({"", "target_throughput", "target_throughput must be > 0"});
  }
  if (!(policy.labor_cost >= 0.0) || !std::isfinite(policy.labor_cost) ||
      !(policy.machine_cost >= 0.0) || !std::isfinite(policy.machine_cost)) {
    out.push_back({"", "cost", "cost weights must be finite and >= 0"});
  }
  for (const auto& [station_id, allow] : policy.allowed_actions) {
    const Workstation* ws = line.Find(station_id);
    if (ws == nullptr) {
      out.push_back({station_id, "allowed_actions",
                     absl::StrCat("unknown station '", station_id, "'")});
      continue;
    }
    if (allow.may_add_labor && allow.max_labor < ws->labor_resources) {
      out.push_back({station_id, "max_labor",
                     absl::StrCat("max_labor ", allow.max_labor,
                                  " is below current labor ",
                                  ws->labor_resources)});
    }
    const int64_t machines = ws->machine_pool ? ws->machine_pool->machine_count : 0;
    if (allow.may_add_machines && allow.max_machines < machines) {
      out.push_back({station_id, "max_machines",
                     absl::StrCat("max_machines ", allow.max_machines,
                                  " is below current machine count ",
                                  machines)});
    }
  }
  return out;
}

double BalancePlan::total_cost() const {
  double total = 0.0;
  for (const BalanceStep& step : steps) total += step.cost;
  return total;
}

int64_t BalancePlan::final_throughput() const {
  return steps.empty() ? initial_throughput : steps.back().fg_throughput;
}

ScenarioDelta BalancePlan::CombinedDelta() const {
  ScenarioDelta out;
  for (const BalanceStep& step : steps) out = Concat(out, step.action);
  return out;
}

absl::StatusOr<BalancePlan> BalanceLine(const ProductionLine& line,
                                        const BalancePolicy& policy) {
  if (auto s = FirstViolation(ValidateLine(line), "line"); !s.ok()) return s;
  if (auto s = FirstViolation(ValidatePolicy(line, policy), "policy");
      !s.ok()) {
    return s;
  }

  BalancePlan plan;
  plan.final_line = line;
  CapacityReport report = AnalyzeCapacity(line);
  plan.initial_throughput = report.fg_throughput;

  while (report.fg_throughput < policy.target_throughput) {
    const CapacityRow& bottleneck = report.bottleneck();
    const size_t index = *plan.final_line.IndexOf(bottleneck.station_id);
    const Workstation& ws = plan.final_line.workstations[index];
    auto allow_it = policy.allowed_actions.find(ws.id);
    const StationAllowance* allow = allow_it == policy.allowed_actions.end()
                                        ? nullptr
                                        : &allow_it->second;

    auto cost_of = [&](Candidate c) {
      return c.labor * policy.labor_cost + c.machines * policy.machine_cost;
    };
    auto raises = [&](Candidate c) {
      return ComputeEffectiveCapacity(WithCandidate(ws, c),
                                      plan.final_line.available_minutes)
                 .capacity > bottleneck.effective_capacity;
    };
    auto usable = [&](Candidate c) {
      return Permitted(ws, allow, c) && raises(c);
    };

    const Candidate preferred =
        bottleneck.constraint_kind == ConstraintKind::kLabor ? Candidate{1, 0}
                                                             : Candidate{1, 1};
    std::optional<Candidate> chosen;
    if (usable(preferred)) {
      chosen = preferred;
    } else {
      for (Candidate c : {Candidate{1, 0}, Candidate{0, 1}, Candidate{1, 1}}) {
        if (!usable(c)) continue;
        if (!chosen || cost_of(c) < cost_of(*chosen)) chosen = c;
      }
    }
    if (!chosen) {
      plan.limiting_station = ws.id;
      break;
    }

    BalanceStep step;
    step.iteration = static_cast<int>(plan.steps.size());
    step.bottleneck_station = ws.id;
    step.action = ToDelta(ws.id, *chosen);
    step.cost = cost_of(*chosen);
    auto next = ApplyDelta(plan.final_line, step.action);
    if (!next.ok()) return next.status();
    plan.final_line = *std::move(next);
    report = AnalyzeCapacity(plan.final_line);
    step.fg_throughput = report.fg_throughput;
    plan.steps.push_back(std::move(step));
  }
  plan.achieved = report.fg_throughput >= policy.target_throughput;
  return plan;
}

absl::StatusOr<IterationResult> MethodologyIteration(
    const ProductionLine& line, const BalancePolicy& policy,
    const std::vector<StyleRouting>& styles) {
  if (auto s = FirstViolation(ValidateLine(line), "line"); !s.ok()) return s;

  IterationResult result;
  result.capacity_report = AnalyzeCapacity(line);

  std::vector<StyleRouting> lp_styles = styles;
  if (lp_styles.empty()) lp_styles.push_back(CycleTimeStyle(line));
  auto lp = BuildCrpLp(line, lp_styles);
  if (!lp.ok()) return lp.status();
  result.lp = *std::move(lp);
  auto solution = Solve(result.lp.problem);
  if (!solution.ok()) return solution.status();
  result.lp_solution = *std::move(solution);

  if (result.capacity_report.fg_throughput >= policy.target_throughput) {
    result.converged = true;
    return result;
  }
  auto plan = BalanceLine(line, policy);
  if (!plan.ok()) return plan.status();
  if (plan->steps.empty()) {
    result.limiting_station = plan->limiting_station;
  } else {
    result.recommended_delta = plan->steps.front().action;
  }
  return result;
}

}  // namespace crp
