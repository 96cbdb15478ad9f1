#include "crp/model.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace crp {
namespace {

// Guards floor() against quotients such as 0.6 / 0.2 landing just below an
// integer.
constexpr double kFloorSlack = 1e-9;

void ValidateStation(const Workstation& ws, std::vector<Violation>& out) {
  auto add = [&](std::string field, std::string message) {
    out.push_back({ws.id, std::move(field), std::move(message)});
  };
  if (ws.id.empty()) add("id", "station id must not be empty");
  if (!(ws.cycle_time > 0.0) || !std::isfinite(ws.cycle_time)) {
    add("cycle_time", absl::StrCat("cycle_time must be > 0, got ",
                                   ws.cycle_time));
  }
  if (ws.labor_resources < 0) {
    add("labor_resources", absl::StrCat("labor_resources must be >= 0, got ",
                                        ws.labor_resources));
  }
  if (ws.batch_qty < 1) {
    add("batch_qty",
        absl::StrCat("batch_qty must be >= 1, got ", ws.batch_qty));
  }
  if (!std::isfinite(ws.total_batch_time) || ws.total_batch_time < 0.0) {
    add("total_batch_time", "total_batch_time must be finite and >= 0");
  }
  if (ws.machine_pool.has_value()) {
    if (ws.machine_pool->unit_capacity < 0) {
      add("machine_pool.unit_capacity",
          absl::StrCat("unit_capacity must be >= 0, got ",
                       ws.machine_pool->unit_capacity));
    }
    if (ws.machine_pool->machine_count < 0) {
      add("machine_pool.machine_count",
          absl::StrCat("machine_count must be >= 0, got ",
                       ws.machine_pool->machine_count));
    }
  }
}

bool BatchTimeConsistent(const Workstation& ws) {
  const double expected = static_cast<double>(ws.batch_qty) * ws.cycle_time;
  return std::abs(ws.total_batch_time - expected) <=
         1e-9 * std::max(1.0, std::abs(expected));
}

bool IsPaced(const MachinePool& pool, double available_minutes,
             double cycle_time) {
  return pool.unit_capacity == UnitsPerResource(available_minutes, cycle_time);
}

}  // namespace

std::optional<size_t> ProductionLine::IndexOf(
    const std::string& station_id) const {
  for (size_t i = 0; i < workstations.size(); ++i) {
    if (workstations[i].id == station_id) return i;
  }
  return std::nullopt;
}

const Workstation* ProductionLine::Find(const std::string& station_id) const {
  auto index = IndexOf(station_id);
  return index ? &workstations[*index] : nullptr;
}

int64_t UnitsPerResource(double available_minutes, double cycle_time) {
  if (!(cycle_time > 0.0)) return 0;
  return static_cast<int64_t>(
      std::floor(available_minutes / cycle_time + kFloorSlack));
}

std::vector<Violation> ValidateLine(const ProductionLine& line) {
  std::vector<Violation> out;
  if (line.workstations.empty()) {
    out.push_back({"", "workstations", "line must have at least one station"});
  }
  if (!(line.available_minutes > 0.0) ||
      !std::isfinite(line.available_minutes)) {
    out.push_back({"", "available_minutes",
                   absl::StrCat("available_minutes must be > 0, got ",
                                line.available_minutes)});
  }
  std::set<std::string> seen;
  for (const Workstation& ws : line.workstations) {
    if (!seen.insert(ws.id).second) {
      out.push_back({ws.id, "id", absl::StrCat("duplicate id '", ws.id, "'")});
    }
    ValidateStation(ws, out);
  }
  std::set<std::string> style_ids;
  for (const StyleRouting& style : line.styles) {
    if (!style_ids.insert(style.style_id).second) {
      out.push_back({"", "styles",
                     absl::StrCat("duplicate style id '", style.style_id,
                                  "'")});
    }
    for (const auto& [station_id, sam] : style.sam_per_station) {
      if (seen.count(station_id) == 0) {
        out.push_back({station_id, "sam_per_station",
                       absl::StrCat("style '", style.style_id,
                                    "' routes over unknown station '",
                                    station_id, "'")});
      }
      if (!(sam >= 0.0) || !std::isfinite(sam)) {
        out.push_back({station_id, "sam_per_station",
                       absl::StrCat("style '", style.style_id,
                                    "' has negative or non-finite SAM")});
      }
    }
    if (style.demand_qty.has_value() && *style.demand_qty < 0) {
      out.push_back({"", "demand_qty",
                     absl::StrCat("style '", style.style_id,
                                  "' has negative demand_qty")});
    }
    if (!std::isfinite(style.unit_profit)) {
      out.push_back({"", "unit_profit",
                     absl::StrCat("style '", style.style_id,
                                  "' has non-finite unit_profit")});
    }
  }
  return out;
}

Edit Edit::AddLabor(std::string station_id, int64_t amount) {
  return {EditKind::kAddLabor, std::move(station_id), amount, 0.0};
}

Edit Edit::AddMachines(std::string station_id, int64_t amount) {
  return {EditKind::kAddMachines, std::move(station_id), amount, 0.0};
}

Edit Edit::SetCycleTime(std::string station_id, double minutes) {
  return {EditKind::kSetCycleTime, std::move(station_id), 0, minutes};
}

Edit Edit::SetUnitCapacity(std::string station_id, int64_t units_per_day) {
  return {EditKind::kSetUnitCapacity, std::move(station_id), units_per_day,
          0.0};
}

Edit Edit::SetTotalBatchTime(std::string station_id, double minutes) {
  return {EditKind::kSetTotalBatchTime, std::move(station_id), 0, minutes};
}

ScenarioDelta Concat(const ScenarioDelta& first, const ScenarioDelta& second) {
  ScenarioDelta out = first;
  out.edits.insert(out.edits.end(), second.edits.begin(), second.edits.end());
  return out;
}

absl::StatusOr<ProductionLine> ApplyDelta(const ProductionLine& line,
                                          const ScenarioDelta& delta) {
  ProductionLine out = line;
  for (size_t i = 0; i < delta.edits.size(); ++i) {
    const Edit& edit = delta.edits[i];
    auto index = out.IndexOf(edit.station_id);
    if (!index) {
      return absl::NotFoundError(absl::StrCat(
          "edit ", i, ": unknown station '", edit.station_id, "'"));
    }
    Workstation& ws = out.workstations[*index];
    auto invalid = [&](const std::string& why) {
      return absl::InvalidArgumentError(
          absl::StrCat("edit ", i, " at '", edit.station_id, "': ", why));
    };
    switch (edit.kind) {
      case EditKind::kAddLabor:
        if (ws.labor_resources + edit.amount < 0) {
          return invalid("labor_resources would become negative");
        }
        ws.labor_resources += edit.amount;
        break;
      case EditKind::kAddMachines:
        if (!ws.machine_pool) return invalid("station has no machine pool");
        if (ws.machine_pool->machine_count + edit.amount < 0) {
          return invalid("machine_count would become negative");
        }
        ws.machine_pool->machine_count += edit.amount;
        break;
      case EditKind::kSetCycleTime:
        if (!(edit.value > 0.0) || !std::isfinite(edit.value)) {
          return invalid("cycle_time must be > 0");
        }
        if (ws.machine_pool &&
            IsPaced(*ws.machine_pool, out.available_minutes, ws.cycle_time)) {
          ws.machine_pool->unit_capacity =
              UnitsPerResource(out.available_minutes, edit.value);
        }
        if (BatchTimeConsistent(ws)) {
          ws.total_batch_time = static_cast<double>(ws.batch_qty) * edit.value;
        }
        ws.cycle_time = edit.value;
        break;
      case EditKind::kSetUnitCapacity:
        if (!ws.machine_pool) return invalid("station has no machine pool");
        if (edit.amount < 0) return invalid("unit_capacity must be >= 0");
        ws.machine_pool->unit_capacity = edit.amount;
        break;
      case EditKind::kSetTotalBatchTime:
        if (!(edit.value >= 0.0) || !std::isfinite(edit.value)) {
          return invalid("total_batch_time must be finite and >= 0");
        }
        ws.total_batch_time = edit.value;
        break;
    }
  }
  return out;
}

absl::StatusOr<ScenarioDelta> InvertDelta(const ProductionLine& line,
                                          const ScenarioDelta& delta) {
  // Walk forward recording the inverse of each edit against the state it
  // was applied to, then reverse.
  std::vector<std::vector<Edit>> inverses;
  ProductionLine state = line;
  for (const Edit& edit : delta.edits) {
    const Workstation* ws = state.Find(edit.station_id);
    if (ws == nullptr) {
      return absl::NotFoundError(
          absl::StrCat("unknown station '", edit.station_id, "'"));
    }
    std::vector<Edit> inverse;
    switch (edit.kind) {
      case EditKind::kAddLabor:
        inverse.push_back(Edit::AddLabor(edit.station_id, -edit.amount));
        break;
      case EditKind::kAddMachines:
        inverse.push_back(Edit::AddMachines(edit.station_id, -edit.amount));
        break;
      case EditKind::kSetCycleTime:
        inverse.push_back(Edit::SetCycleTime(edit.station_id, ws->cycle_time));
        inverse.push_back(
            Edit::SetTotalBatchTime(edit.station_id, ws->total_batch_time));
        if (ws->machine_pool) {
          inverse.push_back(Edit::SetUnitCapacity(
              edit.station_id, ws->machine_pool->unit_capacity));
        }
        break;
      case EditKind::kSetUnitCapacity:
        if (ws->machine_pool) {
          inverse.push_back(Edit::SetUnitCapacity(
              edit.station_id, ws->machine_pool->unit_capacity));
        }
        break;
      case EditKind::kSetTotalBatchTime:
        inverse.push_back(
            Edit::SetTotalBatchTime(edit.station_id, ws->total_batch_time));
        break;
    }
    auto next = ApplyDelta(state, ScenarioDelta{{edit}});
    if (!next.ok()) return next.status();
    state = *std::move(next);
    inverses.push_back(std::move(inverse));
  }
  ScenarioDelta out;
  for (auto it = inverses.rbegin(); it != inverses.rend(); ++it) {
    out.edits.insert(out.edits.end(), it->begin(), it->end());
  }
  return out;
}

}  // namespace crp
