#include "crp/capacity.h"

#include <algorithm>
#include <limits>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace crp {

const char* ConstraintKindName(ConstraintKind kind) {
  switch (kind) {
    case ConstraintKind::kLabor:
      return "labor";
    case ConstraintKind::kMachine:
      return "machine";
    case ConstraintKind::kTie:
      return "tie";
  }
  return "labor";
}

std::optional<ConstraintKind> ParseConstraintKind(const std::string& name) {
  if (name == "labor") return ConstraintKind::kLabor;
  if (name == "machine") return ConstraintKind::kMachine;
  if (name == "tie") return ConstraintKind::kTie;
  return std::nullopt;
}

absl::StatusOr<int64_t> MachineCapacity(int64_t per_machine, int64_t machines) {
  if (per_machine < 0 || machines < 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("machine capacity inputs must be >= 0, got (",
                     per_machine, ", ", machines, ")"));
  }
  return per_machine * machines;
}

absl::StatusOr<WorkCenterCapacity> MakeWorkCenterCapacity(int64_t per_machine,
                                                          int64_t machines) {
  auto total = MachineCapacity(per_machine, machines);
  if (!total.ok()) return total.status();
  return WorkCenterCapacity{per_machine, machines, *total};
}

int64_t LaborDailyOutput(const Workstation& station,
                         double available_minutes) {
  return UnitsPerResource(available_minutes, station.cycle_time) *
         station.labor_resources;
}

EffectiveCapacity ComputeEffectiveCapacity(const Workstation& station,
                                           double available_minutes) {
  const int64_t labor = LaborDailyOutput(station, available_minutes);
  if (!station.machine_pool) return {labor, ConstraintKind::kLabor};
  const int64_t machine = station.machine_pool->unit_capacity *
                          station.machine_pool->machine_count;
  if (labor < machine) return {labor, ConstraintKind::kLabor};
  if (machine < labor) return {machine, ConstraintKind::kMachine};
  return {labor, ConstraintKind::kTie};
}

size_t CapacityReport::bottleneck_index() const {
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].is_bottleneck) return i;
  }
  return 0;
}

CapacityReport AnalyzeCapacity(const ProductionLine& line) {
  CapacityReport report;
  report.rows.reserve(line.workstations.size());
  for (const Workstation& ws : line.workstations) {
    CapacityRow row;
    row.station_id = ws.id;
    row.labor_daily_output = LaborDailyOutput(ws, line.available_minutes);
    if (ws.machine_pool) {
      row.machine_daily_capacity =
          ws.machine_pool->unit_capacity * ws.machine_pool->machine_count;
    }
    const EffectiveCapacity eff =
        ComputeEffectiveCapacity(ws, line.available_minutes);
    row.effective_capacity = eff.capacity;
    row.constraint_kind = eff.kind;
    report.rows.push_back(std::move(row));
  }
  if (report.rows.empty()) return report;

  int64_t minimum = std::numeric_limits<int64_t>::max();
  for (const CapacityRow& row : report.rows) {
    minimum = std::min(minimum, row.effective_capacity);
  }
  report.fg_throughput = minimum;

  // Tie-break: machine/tie-kind over labor-only, then latest in routing.
  size_t chosen = report.rows.size();
  for (size_t i = 0; i < report.rows.size(); ++i) {
    const CapacityRow& row = report.rows[i];
    if (row.effective_capacity != minimum) continue;
    const bool machine_bound = row.constraint_kind != ConstraintKind::kLabor;
    const bool chosen_machine_bound =
        chosen < report.rows.size() &&
        report.rows[chosen].constraint_kind != ConstraintKind::kLabor;
    if (chosen == report.rows.size() || machine_bound ||
        !chosen_machine_bound) {
      chosen = i;
    }
  }
  report.rows[chosen].is_bottleneck = true;
  return report;
}

StyleRouting CycleTimeStyle(const ProductionLine& line, std::string style_id) {
  StyleRouting style;
  style.style_id = std::move(style_id);
  for (const Workstation& ws : line.workstations) {
    style.sam_per_station[ws.id] = ws.cycle_time;
  }
  return style;
}

absl::StatusOr<CrpLinearProgram> BuildCrpLp(
    const ProductionLine& line, const std::vector<StyleRouting>& styles) {
  if (styles.empty()) {
    return absl::InvalidArgumentError("at least one style is required");
  }
  for (const StyleRouting& style : styles) {
    for (const auto& [station_id, sam] : style.sam_per_station) {
      if (!line.IndexOf(station_id)) {
        return absl::NotFoundError(absl::StrCat("style '", style.style_id,
                                                "' routes over unknown station '",
                                                station_id, "'"));
      }
    }
  }

  CrpLinearProgram lp;
  LpProblem& problem = lp.problem;
  problem.sense = Sense::kMaximize;
  for (const StyleRouting& style : styles) {
    problem.objective.push_back(style.unit_profit);
    problem.variable_labels.push_back(style.style_id);
  }

  auto sam_of = [](const StyleRouting& style, const std::string& station_id) {
    auto it = style.sam_per_station.find(station_id);
    return it == style.sam_per_station.end() ? 0.0 : it->second;
  };

  for (const Workstation& ws : line.workstations) {
    std::vector<double> labor_row;
    for (const StyleRouting& style : styles) {
      labor_row.push_back(sam_of(style, ws.id));
    }
    problem.constraint_matrix.push_back(labor_row);
    problem.rhs.push_back(line.available_minutes *
                          static_cast<double>(ws.labor_resources));
    problem.constraint_labels.push_back(absl::StrCat(ws.id, "/labor"));
    lp.rows.push_back({CrpRowInfo::Kind::kLabor, ws.id, ""});

    if (!ws.machine_pool) continue;
    const MachinePool& pool = *ws.machine_pool;
    std::vector<double> machine_row = labor_row;
    if (pool.unit_capacity > 0) {
      const double scale =
          line.available_minutes /
          (static_cast<double>(pool.unit_capacity) * ws.cycle_time);
      for (double& a : machine_row) a *= scale;
    }
    problem.constraint_matrix.push_back(std::move(machine_row));
    problem.rhs.push_back(
        pool.unit_capacity > 0
            ? line.available_minutes * static_cast<double>(pool.machine_count)
            : 0.0);
    problem.constraint_labels.push_back(absl::StrCat(ws.id, "/machine"));
    lp.rows.push_back({CrpRowInfo::Kind::kMachine, ws.id, ""});
  }

  for (size_t j = 0; j < styles.size(); ++j) {
    if (!styles[j].demand_qty) continue;
    std::vector<double> row(styles.size(), 0.0);
    row[j] = 1.0;
    problem.constraint_matrix.push_back(std::move(row));
    problem.rhs.push_back(static_cast<double>(*styles[j].demand_qty));
    problem.constraint_labels.push_back(
        absl::StrCat(styles[j].style_id, "/demand"));
    lp.rows.push_back({CrpRowInfo::Kind::kDemand, "", styles[j].style_id});
  }
  return lp;
}

std::optional<size_t> LimitingRow(const CrpLinearProgram& lp,
                                  const ProductionLine& line,
                                  const LpSolution& solution) {
  std::optional<size_t> best;
  auto rank = [&](size_t row) {
    const CrpRowInfo& info = lp.rows[row];
    const size_t position = *line.IndexOf(info.station_id);
    const int machine = info.kind == CrpRowInfo::Kind::kMachine ? 1 : 0;
    return std::make_pair(machine, position);
  };
  for (size_t row : solution.active_constraints) {
    if (row >= lp.rows.size() ||
        lp.rows[row].kind == CrpRowInfo::Kind::kDemand ||
        !line.IndexOf(lp.rows[row].station_id)) {
      continue;
    }
    if (!best || rank(row) > rank(*best)) best = row;
  }
  return best;
}

}  // namespace crp
