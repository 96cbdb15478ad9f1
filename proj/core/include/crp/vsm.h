#ifndef CRP_VSM_H_
#define CRP_VSM_H_

// Value-stream-mapping metrics.
//
// Lead time is the sum over processes of the effective cycle time
// (cycle_time / uptime_fraction) plus the wait in the inventory buffer in
// front of each process. A buffer of I pieces in front of a process waits
// I / customer_demand days, expressed in that process's available minutes.
// Changeover time adds C/O * changeovers_per_day / customer_demand per unit
// when a changeover frequency is given; defect rates are reported but do not
// stretch lead time.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "crp/model.h"

namespace crp {

struct VsmProcess {
  std::string name;
  double cycle_time = 0.0;       // C/T, minutes
  double changeover_time = 0.0;  // C/O, minutes
  int64_t operators = 0;
  double available_time = kDefaultAvailableMinutes;  // minutes/day
  double uptime_fraction = 1.0;
  double defect_rate = 0.0;
  double value_added_time = 0.0;  // minutes, <= cycle_time
  std::optional<double> changeovers_per_day;

  friend bool operator==(const VsmProcess&, const VsmProcess&) = default;
};

struct VsmMap {
  std::vector<VsmProcess> processes;
  std::vector<double> buffers;  // pieces waiting before each process
  double customer_demand = 0.0;  // pieces/day

  friend bool operator==(const VsmMap&, const VsmMap&) = default;
};

std::vector<Violation> ValidateVsmMap(const VsmMap& map);

struct LeadTimeBreakdown {
  double processing = 0.0;   // sum of effective cycle times
  double waiting = 0.0;      // sum of buffer waits
  double changeover = 0.0;   // amortized changeovers
  double value_added = 0.0;  // sum of value_added_time
  double total = 0.0;

  double non_value_added() const { return total - value_added; }
};

// Fails when the map is invalid or any process has zero uptime.
absl::StatusOr<LeadTimeBreakdown> AnalyzeLeadTime(const VsmMap& map);
absl::StatusOr<double> LeadTime(const VsmMap& map);

// Value-added minutes over lead time. Fails on a zero lead time.
absl::StatusOr<double> VaRatio(const VsmMap& map);

// Product of per-process first-pass yields (1 - defect_rate).
double RolledThroughputYield(const VsmMap& map);

struct StyleCycle {
  double demand_qty = 0.0;
  double cycle_time = 0.0;
};

// Demand-weighted mean cycle time over a style mix.
absl::StatusOr<double> WeightedCycleTime(const std::vector<StyleCycle>& styles);

struct StateComparison {
  double lead_current = 0.0;
  double lead_future = 0.0;
  double reduction = 0.0;
  double reduction_pct = 0.0;  // fraction of lead_current
  double yield_current = 1.0;
  double yield_future = 1.0;
};

absl::StatusOr<StateComparison> CompareStates(const VsmMap& current,
                                              const VsmMap& future);

// Comparison from two known lead times.
StateComparison CompareLeadTimes(double lead_current, double lead_future);

}  // namespace crp

#endif  // CRP_VSM_H_
