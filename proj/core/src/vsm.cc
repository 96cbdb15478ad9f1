#include "crp/vsm.h"

#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace crp {
namespace {

bool Finite(double v) { return std::isfinite(v); }

absl::Status ViolationsToStatus(const std::vector<Violation>& violations) {
  if (violations.empty()) return absl::OkStatus();
  const Violation& v = violations.front();
  return absl::InvalidArgumentError(
      absl::StrCat("invalid VSM map: ", v.station_id.empty() ? "" : v.station_id,
                   v.station_id.empty() ? "" : ": ", v.message));
}

}  // namespace

std::vector<Violation> ValidateVsmMap(const VsmMap& map) {
  std::vector<Violation> out;
  if (map.buffers.size() != map.processes.size()) {
    out.push_back({"", "buffers",
                   absl::StrCat("expected ", map.processes.size(),
                                " buffers, got ", map.buffers.size())});
  }
  if (!(map.customer_demand > 0.0) || !Finite(map.customer_demand)) {
    out.push_back({"", "customer_demand", "customer_demand must be > 0"});
  }
  for (double b : map.buffers) {
    if (!(b >= 0.0) || !Finite(b)) {
      out.push_back({"", "buffers", "buffer levels must be finite and >= 0"});
      break;
    }
  }
  for (const VsmProcess& p : map.processes) {
    auto add = [&](const char* field, const char* message) {
      out.push_back({p.name, field, message});
    };
    if (!(p.cycle_time >= 0.0) || !Finite(p.cycle_time)) {
      add("cycle_time", "cycle_time must be finite and >= 0");
    }
    if (!(p.changeover_time >= 0.0) || !Finite(p.changeover_time)) {
      add("changeover_time", "changeover_time must be finite and >= 0");
    }
    if (p.operators < 0) add("operators", "operators must be >= 0");
    if (!(p.available_time > 0.0) || !Finite(p.available_time)) {
      add("available_time", "available_time must be > 0");
    }
    if (!(p.uptime_fraction >= 0.0 && p.uptime_fraction <= 1.0)) {
      add("uptime_fraction", "uptime_fraction must lie in [0, 1]");
    }
    if (!(p.defect_rate >= 0.0 && p.defect_rate < 1.0)) {
      add("defect_rate", "defect_rate must lie in [0, 1)");
    }
    if (!(p.value_added_time >= 0.0 && p.value_added_time <= p.cycle_time)) {
      add("value_added_time", "value_added_time must lie in [0, cycle_time]");
    }
    if (p.changeovers_per_day &&
        (!(*p.changeovers_per_day >= 0.0) || !Finite(*p.changeovers_per_day))) {
      add("changeovers_per_day", "changeovers_per_day must be >= 0");
    }
  }
  return out;
}

absl::StatusOr<LeadTimeBreakdown> AnalyzeLeadTime(const VsmMap& map) {
  if (absl::Status s = ViolationsToStatus(ValidateVsmMap(map)); !s.ok()) {
    return s;
  }
  LeadTimeBreakdown out;
  for (size_t i = 0; i < map.processes.size(); ++i) {
    const VsmProcess& p = map.processes[i];
    if (p.uptime_fraction == 0.0) {
      return absl::InvalidArgumentError(
          absl::StrCat("process '", p.name, "' has zero uptime"));
    }
    out.processing += p.cycle_time / p.uptime_fraction;
    out.waiting += map.buffers[i] / map.customer_demand * p.available_time;
    if (p.changeovers_per_day) {
      out.changeover +=
          p.changeover_time * *p.changeovers_per_day / map.customer_demand;
    }
    out.value_added += p.value_added_time;
  }
  out.total = out.processing + out.waiting + out.changeover;
  return out;
}

absl::StatusOr<double> LeadTime(const VsmMap& map) {
  auto breakdown = AnalyzeLeadTime(map);
  if (!breakdown.ok()) return breakdown.status();
  return breakdown->total;
}

absl::StatusOr<double> VaRatio(const VsmMap& map) {
  auto breakdown = AnalyzeLeadTime(map);
  if (!breakdown.ok()) return breakdown.status();
  if (!(breakdown->total > 0.0)) {
    return absl::FailedPreconditionError("lead time is zero");
  }
  return breakdown->value_added / breakdown->total;
}

double RolledThroughputYield(const VsmMap& map) {
  double yield = 1.0;
  for (const VsmProcess& p : map.processes) yield *= 1.0 - p.defect_rate;
  return yield;
}

absl::StatusOr<double> WeightedCycleTime(
    const std::vector<StyleCycle>& styles) {
  if (styles.empty()) {
    return absl::InvalidArgumentError("style list is empty");
  }
  double demand = 0.0;
  double weighted = 0.0;
  for (const StyleCycle& s : styles) {
    if (!(s.demand_qty >= 0.0) || !(s.cycle_time >= 0.0)) {
      return absl::InvalidArgumentError(
          "demand and cycle time must be non-negative");
    }
    demand += s.demand_qty;
    weighted += s.demand_qty * s.cycle_time;
  }
  if (!(demand > 0.0)) {
    return absl::InvalidArgumentError("total demand is zero");
  }
  return weighted / demand;
}

StateComparison CompareLeadTimes(double lead_current, double lead_future) {
  StateComparison out;
  out.lead_current = lead_current;
  out.lead_future = lead_future;
  out.reduction = lead_current - lead_future;
  out.reduction_pct = lead_current > 0.0 ? out.reduction / lead_current : 0.0;
  return out;
}

absl::StatusOr<StateComparison> CompareStates(const VsmMap& current,
                                              const VsmMap& future) {
  auto lead_current = LeadTime(current);
  if (!lead_current.ok()) return lead_current.status();
  auto lead_future = LeadTime(future);
  if (!lead_future.ok()) return lead_future.status();
  StateComparison out = CompareLeadTimes(*lead_current, *lead_future);
  out.yield_current = RolledThroughputYield(current);
  out.yield_future = RolledThroughputYield(future);
  return out;
}

}  // namespace crp
