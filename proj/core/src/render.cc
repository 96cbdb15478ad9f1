#include "crp/render.h"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"

namespace crp {
namespace {

struct Column {
  std::string header;
  std::string unit;
  bool left_align = false;
};

std::string Pad(const std::string& text, size_t width, bool left) {
  if (text.size() >= width) return text;
  std::string fill(width - text.size(), ' ');
  return left ? text + fill : fill + text;
}

std::string RStrip(std::string s) {
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

// Lays out `cells` under `columns`, two spaces between columns.
std::string Grid(const std::vector<Column>& columns,
                 const std::vector<std::vector<std::string>>& cells) {
  std::vector<size_t> widths(columns.size());
  for (size_t c = 0; c < columns.size(); ++c) {
    widths[c] = std::max(columns[c].header.size(), columns[c].unit.size());
    for (const auto& row : cells) widths[c] = std::max(widths[c], row[c].size());
  }
  auto line = [&](auto cell_of) {
    std::vector<std::string> parts;
    for (size_t c = 0; c < columns.size(); ++c) {
      parts.push_back(Pad(cell_of(c), widths[c], columns[c].left_align));
    }
    return RStrip(absl::StrJoin(parts, "  ")) + "\n";
  };
  std::string out;
  out += line([&](size_t c) { return columns[c].header; });
  out += line([&](size_t c) { return columns[c].unit; });
  size_t total = 0;
  for (size_t w : widths) total += w;
  out += std::string(total + 2 * (columns.size() - 1), '-') + "\n";
  for (const auto& row : cells) {
    out += line([&](size_t c) { return row[c]; });
  }
  return out;
}

const char* EditVerb(const Edit& e) {
  switch (e.kind) {
    case EditKind::kAddLabor:
      return e.amount >= 0 ? "add labor" : "remove labor";
    case EditKind::kAddMachines:
      return e.amount >= 0 ? "add machines" : "remove machines";
    case EditKind::kSetCycleTime:
      return "set cycle time";
    case EditKind::kSetUnitCapacity:
      return "set unit capacity";
    case EditKind::kSetTotalBatchTime:
      return "set batch time";
  }
  return "";
}

}  // namespace

std::string FormatNumber(double value) {
  if (std::isfinite(value) && value == std::floor(value) &&
      std::abs(value) < 1e15) {
    return absl::StrFormat("%.0f", value);
  }
  std::string s = absl::StrFormat("%.4f", value);
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  return s;
}

std::string RenderCapacityTable(const ProductionLine& line,
                                const CapacityReport& report) {
  const std::vector<Column> columns = {
      {"Work Station", "", false},
      {"Process", "", true},
      {"(a) Batch Qty.", "kit unit", false},
      {"(b) Total Time", "min/batch", false},
      {"(c) Cycle Time", "min/unit", false},
      {"(d) Operators", "", false},
      {"(e) Daily Output", "kit unit/day", false},
      {"(f) Machine Daily Capacity", "kit/day", false},
      {"(g) No. of Machine", "set", false},
      {"(h) Total Machine Daily Capacity", "kit/day", true},
  };
  const size_t count = std::min(line.workstations.size(), report.rows.size());
  // Column (h) right-aligns the number and lets the bottleneck marker trail.
  std::vector<std::string> totals;
  size_t total_width = columns.back().header.size();
  for (size_t i = 0; i < count; ++i) {
    const CapacityRow& row = report.rows[i];
    totals.push_back(row.machine_daily_capacity
                         ? absl::StrCat(*row.machine_daily_capacity)
                         : "N/A");
    total_width = std::max(total_width, totals.back().size());
  }
  std::vector<std::vector<std::string>> cells;
  for (size_t i = 0; i < count; ++i) {
    const Workstation& ws = line.workstations[i];
    const CapacityRow& row = report.rows[i];
    std::string total = Pad(totals[i], total_width, /*left=*/false);
    if (row.is_bottleneck) absl::StrAppend(&total, " (Bottleneck)");
    cells.push_back({
        absl::StrCat(i + 1),
        ws.name.empty() ? ws.id : ws.name,
        absl::StrCat(ws.batch_qty),
        FormatNumber(ws.total_batch_time),
        FormatNumber(ws.cycle_time),
        absl::StrCat(ws.labor_resources),
        absl::StrCat(row.labor_daily_output),
        ws.machine_pool ? absl::StrCat(ws.machine_pool->unit_capacity) : "",
        ws.machine_pool ? absl::StrCat(ws.machine_pool->machine_count) : "",
        std::move(total),
    });
  }
  std::string out = absl::StrCat("Line: ", line.id, "\n",
                                 "Daily basis: ",
                                 FormatNumber(line.available_minutes),
                                 " min/day\n\n");
  out += Grid(columns, cells);
  absl::StrAppend(&out, "\nFG Output (pcs): ", report.fg_throughput, "\n");
  return out;
}

std::string RenderDelta(const ScenarioDelta& delta) {
  if (delta.empty()) return "(no change)";
  std::vector<std::string> parts;
  for (const Edit& e : delta.edits) {
    switch (e.kind) {
      case EditKind::kAddLabor:
      case EditKind::kAddMachines:
        parts.push_back(absl::StrCat(EditVerb(e), " ", std::abs(e.amount),
                                     " at ", e.station_id));
        break;
      case EditKind::kSetCycleTime:
      case EditKind::kSetTotalBatchTime:
        parts.push_back(absl::StrCat(EditVerb(e), " ", FormatNumber(e.value),
                                     " at ", e.station_id));
        break;
      case EditKind::kSetUnitCapacity:
        parts.push_back(
            absl::StrCat(EditVerb(e), " ", e.amount, " at ", e.station_id));
        break;
    }
  }
  return absl::StrJoin(parts, ", ");
}

std::string RenderBalancePlan(const BalancePlan& plan,
                              int64_t target_throughput) {
  std::string out =
      absl::StrCat("Target FG output (pcs): ", target_throughput, "\n",
                   "Initial FG output (pcs): ", plan.initial_throughput, "\n");
  if (plan.steps.empty()) {
    out += "No steps.\n";
  } else {
    std::vector<std::vector<std::string>> cells;
    for (const BalanceStep& step : plan.steps) {
      cells.push_back({absl::StrCat(step.iteration + 1),
                       step.bottleneck_station, RenderDelta(step.action),
                       absl::StrCat(step.fg_throughput)});
    }
    out += "\n";
    out += Grid({{"Step", "", false},
                 {"Bottleneck", "", true},
                 {"Action", "", true},
                 {"FG Output", "pcs", false}},
                cells);
    out += "\n";
  }
  absl::StrAppend(&out, "Final FG output (pcs): ", plan.final_throughput(),
                  "\n", "Total cost: ", FormatNumber(plan.total_cost()), "\n",
                  "Achieved: ", plan.achieved ? "yes" : "no", "\n");
  if (!plan.limiting_station.empty()) {
    absl::StrAppend(&out, "Limiting station: ", plan.limiting_station, "\n");
  }
  return out;
}

std::string RenderLp(const LpProblem& problem, const LpSolution& solution) {
  auto var = [&](size_t j) {
    return j < problem.variable_labels.size() ? problem.variable_labels[j]
                                              : absl::StrCat("x", j + 1);
  };
  auto row_label = [&](size_t i) {
    return i < problem.constraint_labels.size() ? problem.constraint_labels[i]
                                                : absl::StrCat("c", i + 1);
  };
  auto term_list = [&](const std::vector<double>& coefs) {
    std::string s;
    for (size_t j = 0; j < coefs.size(); ++j) {
      if (coefs[j] == 0.0) continue;
      const bool negative = coefs[j] < 0.0;
      if (s.empty()) {
        if (negative) s += "-";
      } else {
        s += negative ? " - " : " + ";
      }
      const double mag = std::abs(coefs[j]);
      if (mag != 1.0) absl::StrAppend(&s, FormatNumber(mag), " ");
      s += var(j);
    }
    return s.empty() ? std::string("0") : s;
  };

  std::string out = absl::StrCat(
      problem.sense == Sense::kMaximize ? "maximize " : "minimize ",
      term_list(problem.objective), "\nsubject to\n");
  std::vector<std::vector<std::string>> cells;
  for (size_t i = 0; i < problem.num_constraints(); ++i) {
    cells.push_back({row_label(i), term_list(problem.constraint_matrix[i]),
                     "<=", FormatNumber(problem.rhs[i])});
  }
  if (!cells.empty()) {
    size_t label_w = 0, expr_w = 0, rhs_w = 0;
    for (const auto& c : cells) {
      label_w = std::max(label_w, c[0].size());
      expr_w = std::max(expr_w, c[1].size());
      rhs_w = std::max(rhs_w, c[3].size());
    }
    for (const auto& c : cells) {
      out += RStrip(absl::StrCat("  ", Pad(c[0] + ":", label_w + 1, true), "  ",
                                 Pad(c[1], expr_w, true), "  <=  ",
                                 Pad(c[3], rhs_w, false))) +
             "\n";
    }
  }
  out += "  all variables >= 0\n\n";
  absl::StrAppend(&out, "status: ", LpStatusName(solution.status), "\n");
  if (solution.status == LpStatus::kOptimal) {
    for (size_t j = 0; j < solution.x.size(); ++j) {
      absl::StrAppend(&out, "  ", var(j), " = ", FormatNumber(solution.x[j]),
                      "\n");
    }
    absl::StrAppend(&out, "objective: ", FormatNumber(solution.z), "\n");
    std::vector<std::string> active;
    for (size_t i : solution.active_constraints) active.push_back(row_label(i));
    absl::StrAppend(&out, "binding: ",
                    active.empty() ? "(none)" : absl::StrJoin(active, ", "),
                    "\n");
  }
  return out;
}

std::string RenderLeadTime(const LeadTimeBreakdown& b) {
  std::string out;
  absl::StrAppend(&out, "Lead time (min): ", FormatNumber(b.total), "\n");
  absl::StrAppend(&out, "  processing: ", FormatNumber(b.processing), "\n");
  absl::StrAppend(&out, "  waiting: ", FormatNumber(b.waiting), "\n");
  absl::StrAppend(&out, "  changeover: ", FormatNumber(b.changeover), "\n");
  absl::StrAppend(&out, "Value-added time (min): ", FormatNumber(b.value_added),
                  "\n");
  absl::StrAppend(&out, "Non-value-added time (min): ",
                  FormatNumber(b.non_value_added()), "\n");
  absl::StrAppend(&out, "VA ratio: ",
                  b.total > 0.0 ? FormatNumber(b.value_added / b.total)
                                : std::string("n/a"),
                  "\n");
  return out;
}

std::string RenderComparison(const StateComparison& c) {
  return absl::StrCat(
      "Lead time current (min): ", FormatNumber(c.lead_current), "\n",
      "Lead time future (min): ", FormatNumber(c.lead_future), "\n",
      "Reduction (min): ", FormatNumber(c.reduction), "\n",
      "Reduction (%): ", FormatNumber(100.0 * c.reduction_pct), "\n",
      "Rolled yield current: ", FormatNumber(c.yield_current), "\n",
      "Rolled yield future: ", FormatNumber(c.yield_future), "\n");
}

}  // namespace crp
