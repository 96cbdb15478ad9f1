#ifndef CRP_CAPACITY_H_
#define CRP_CAPACITY_H_

// Capacity requirement planning over a ProductionLine: per-station labor and
// machine capacity, the effective (binding) capacity, bottleneck detection,
// and the time-form linear program over style routings.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "crp/model.h"
#include "crp/simplex.h"

namespace crp {

enum class ConstraintKind { kLabor, kMachine, kTie };

const char* ConstraintKindName(ConstraintKind kind);
std::optional<ConstraintKind> ParseConstraintKind(const std::string& name);

// Capacity of a work center of identical parallel machines.
struct WorkCenterCapacity {
  int64_t per_machine = 0;  // units/day per machine
  int64_t machines = 0;
  int64_t total = 0;        // per_machine * machines
};

// per_machine * machines. Negative inputs are rejected.
absl::StatusOr<int64_t> MachineCapacity(int64_t per_machine, int64_t machines);
absl::StatusOr<WorkCenterCapacity> MakeWorkCenterCapacity(int64_t per_machine,
                                                          int64_t machines);

// floor(available_minutes / cycle_time) * labor_resources.
int64_t LaborDailyOutput(const Workstation& station, double available_minutes);

struct EffectiveCapacity {
  int64_t capacity = 0;
  ConstraintKind kind = ConstraintKind::kLabor;
};

EffectiveCapacity ComputeEffectiveCapacity(const Workstation& station,
                                           double available_minutes);

struct CapacityRow {
  std::string station_id;
  int64_t labor_daily_output = 0;
  std::optional<int64_t> machine_daily_capacity;
  int64_t effective_capacity = 0;
  bool is_bottleneck = false;
  ConstraintKind constraint_kind = ConstraintKind::kLabor;

  friend bool operator==(const CapacityRow&, const CapacityRow&) = default;
};

struct CapacityReport {
  std::vector<CapacityRow> rows;  // routing order
  int64_t fg_throughput = 0;

  // Index of the flagged bottleneck row.
  size_t bottleneck_index() const;
  const CapacityRow& bottleneck() const { return rows[bottleneck_index()]; }

  friend bool operator==(const CapacityReport&, const CapacityReport&) =
      default;
};

// Computes every station's capacities and the line's finished-goods output.
//
// Exactly one bottleneck is flagged. Among stations sharing the minimum
// effective capacity, machine- or tie-constrained stations win over
// labor-only ones, and the latest station in routing order wins what remains.
//
// `line` must be valid (see ValidateLine).
CapacityReport AnalyzeCapacity(const ProductionLine& line);

// The single-style routing whose SAM at each station is that station's cycle
// time.
StyleRouting CycleTimeStyle(const ProductionLine& line,
                            std::string style_id = "line");

// Describes one LP row produced by BuildCrpLp.
struct CrpRowInfo {
  enum class Kind { kLabor, kMachine, kDemand };
  Kind kind = Kind::kLabor;
  std::string station_id;  // for kLabor and kMachine
  std::string style_id;    // for kDemand
};

struct CrpLinearProgram {
  LpProblem problem;
  std::vector<CrpRowInfo> rows;
};

// Builds the capacity LP: one variable x_j per style with objective
// coefficient unit_profit, and per station
//
//   sum_j sam_ij x_j <= available_minutes * labor_resources        (labor)
//   sum_j sam_ij r_i x_j <= available_minutes * machine_count      (machine)
//
// where r_i = available_minutes / (unit_capacity * cycle_time) rescales style
// minutes into machine minutes (r_i = 1 when the pool is paced exactly by the
// station's cycle time). Styles with demand_qty get x_j <= demand_qty.
//
// Fails with InvalidArgument for an empty style list and NotFound when a
// style routes over an unknown station.
absl::StatusOr<CrpLinearProgram> BuildCrpLp(
    const ProductionLine& line, const std::vector<StyleRouting>& styles);

// Picks the binding LP row the bottleneck rule would name: among active
// capacity rows, machine rows beat labor rows and later stations beat
// earlier ones. Returns nullopt when no capacity row is active.
std::optional<size_t> LimitingRow(const CrpLinearProgram& lp,
                                  const ProductionLine& line,
                                  const LpSolution& solution);

}  // namespace crp

#endif  // CRP_CAPACITY_H_
