#ifndef CRP_MODEL_H_
#define CRP_MODEL_H_

// Shared domain types for production-line capacity planning.
//
// Units are fixed across the library: time in minutes, capacity in units per
// day, and a day is `ProductionLine::available_minutes` long (600 for a
// ten-hour shift).

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"

namespace crp {

inline constexpr double kDefaultAvailableMinutes = 600.0;

// A pool of identical parallel machines at one station.
struct MachinePool {
  int64_t unit_capacity = 0;  // units/day per machine
  int64_t machine_count = 0;

  friend bool operator==(const MachinePool&, const MachinePool&) = default;
};

// One process step of a line. `total_batch_time` is descriptive only and is
// never used in capacity arithmetic.
struct Workstation {
  std::string id;
  std::string name;
  int64_t batch_qty = 1;
  double total_batch_time = 0.0;
  double cycle_time = 0.0;  // minutes per unit
  int64_t labor_resources = 0;  // operators or teams
  std::optional<MachinePool> machine_pool;

  friend bool operator==(const Workstation&, const Workstation&) = default;
};

// Per-style routing: the technical coefficients (standard applied minutes)
// of one style at each station it visits.
struct StyleRouting {
  std::string style_id;
  std::map<std::string, double> sam_per_station;
  std::optional<int64_t> demand_qty;
  double unit_profit = 1.0;

  friend bool operator==(const StyleRouting&, const StyleRouting&) = default;
};

struct ProductionLine {
  std::string id;
  std::vector<Workstation> workstations;  // routing order
  double available_minutes = kDefaultAvailableMinutes;
  std::vector<StyleRouting> styles;

  // Returns the index of the station with `station_id`, if any.
  std::optional<size_t> IndexOf(const std::string& station_id) const;
  const Workstation* Find(const std::string& station_id) const;

  friend bool operator==(const ProductionLine&, const ProductionLine&) =
      default;
};

struct Violation {
  std::string station_id;  // empty for line-level violations
  std::string field;
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

// Returns every invariant violation found in `line`. An empty result means
// the line is valid.
std::vector<Violation> ValidateLine(const ProductionLine& line);

enum class EditKind {
  kAddLabor,         // signed change to labor_resources
  kAddMachines,      // signed change to machine_pool->machine_count
  kSetCycleTime,     // absolute cycle_time
  kSetUnitCapacity,  // absolute machine_pool->unit_capacity
  kSetTotalBatchTime,  // absolute total_batch_time
};

struct Edit {
  EditKind kind = EditKind::kAddLabor;
  std::string station_id;
  int64_t amount = 0;  // kAddLabor, kAddMachines, kSetUnitCapacity
  double value = 0.0;  // kSetCycleTime, kSetTotalBatchTime

  static Edit AddLabor(std::string station_id, int64_t amount);
  static Edit AddMachines(std::string station_id, int64_t amount);
  static Edit SetCycleTime(std::string station_id, double minutes);
  static Edit SetUnitCapacity(std::string station_id, int64_t units_per_day);
  static Edit SetTotalBatchTime(std::string station_id, double minutes);

  friend bool operator==(const Edit&, const Edit&) = default;
};

struct ScenarioDelta {
  std::vector<Edit> edits;

  bool empty() const { return edits.empty(); }
  friend bool operator==(const ScenarioDelta&, const ScenarioDelta&) = default;
};

ScenarioDelta Concat(const ScenarioDelta& first, const ScenarioDelta& second);

// Applies `delta` to a copy of `line`.
//
// Setting the cycle time of a station whose machines are paced by it (the
// pool's unit capacity equals floor(available_minutes / cycle_time)) also
// re-paces the pool to the new cycle time, so that machine capacity follows
// the station's speed. Pools with an independent unit capacity are left
// alone. Likewise a total_batch_time equal to batch_qty * cycle_time is kept
// equal to it.
//
// Fails with NotFound for an unknown station and InvalidArgument when an
// edit would break an invariant; the message carries the edit index.
absl::StatusOr<ProductionLine> ApplyDelta(const ProductionLine& line,
                                          const ScenarioDelta& delta);

// Returns the delta that undoes `delta` when applied to
// ApplyDelta(line, delta). `delta` must apply cleanly to `line`.
absl::StatusOr<ScenarioDelta> InvertDelta(const ProductionLine& line,
                                          const ScenarioDelta& delta);

// Units per day one resource delivers at `cycle_time`, i.e.
// floor(available_minutes / cycle_time).
int64_t UnitsPerResource(double available_minutes, double cycle_time);

}  // namespace crp

#endif  // CRP_MODEL_H_
