#include "crp/document.h"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"

namespace crp {
namespace {

// Collects typed fields out of JSON objects, recording every problem with a
// JSON-pointer location instead of stopping at the first one.
class FieldReader {
 public:
  explicit FieldReader(std::vector<DocumentError>* errors) : errors_(errors) {}

  void Error(std::string location, std::string message) {
    errors_->push_back({std::move(location), std::move(message)});
  }

  const Json* Get(const Json& obj, const std::string& key,
                  const std::string& path, bool required) {
    if (!obj.is_object()) return nullptr;
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) {
      if (required) Error(Path(path, key), "missing required field");
      return nullptr;
    }
    return &*it;
  }

  bool Object(const Json& value, const std::string& path) {
    if (value.is_object()) return true;
    Error(path, "expected an object");
    return false;
  }

  bool Array(const Json& value, const std::string& path) {
    if (value.is_array()) return true;
    Error(path, "expected an array");
    return false;
  }

  void String(const Json& obj, const std::string& key, const std::string& path,
              std::string* out, bool required = true) {
    const Json* v = Get(obj, key, path, required);
    if (v == nullptr) return;
    if (!v->is_string()) {
      Error(Path(path, key), "expected a string");
      return;
    }
    *out = v->get<std::string>();
  }

  bool Int(const Json* v, const std::string& location, int64_t* out) {
    if (v->is_number_integer()) {
      *out = v->get<int64_t>();
      return true;
    }
    if (v->is_number_float()) {
      const double d = v->get<double>();
      if (std::isfinite(d) && d == std::floor(d) && std::abs(d) < 9e15) {
        *out = static_cast<int64_t>(d);
        return true;
      }
    }
    Error(location, "expected an integer");
    return false;
  }

  void Int(const Json& obj, const std::string& key, const std::string& path,
           int64_t* out, bool required = true) {
    const Json* v = Get(obj, key, path, required);
    if (v != nullptr) Int(v, Path(path, key), out);
  }

  void OptionalInt(const Json& obj, const std::string& key,
                   const std::string& path, std::optional<int64_t>* out) {
    const Json* v = Get(obj, key, path, false);
    if (v == nullptr) return;
    int64_t value = 0;
    if (Int(v, Path(path, key), &value)) *out = value;
  }

  bool Double(const Json* v, const std::string& location, double* out) {
    if (!v->is_number()) {
      Error(location, "expected a number");
      return false;
    }
    *out = v->get<double>();
    return true;
  }

  void Double(const Json& obj, const std::string& key, const std::string& path,
              double* out, bool required = true) {
    const Json* v = Get(obj, key, path, required);
    if (v != nullptr) Double(v, Path(path, key), out);
  }

  void OptionalDouble(const Json& obj, const std::string& key,
                      const std::string& path, std::optional<double>* out) {
    const Json* v = Get(obj, key, path, false);
    if (v == nullptr) return;
    double value = 0.0;
    if (Double(v, Path(path, key), &value)) *out = value;
  }

  void Bool(const Json& obj, const std::string& key, const std::string& path,
            bool* out, bool required = true) {
    const Json* v = Get(obj, key, path, required);
    if (v == nullptr) return;
    if (!v->is_boolean()) {
      Error(Path(path, key), "expected a boolean");
      return;
    }
    *out = v->get<bool>();
  }

  static std::string Path(const std::string& base, const std::string& key) {
    std::string escaped;
    for (char c : key) {
      if (c == '~') {
        escaped += "~0";
      } else if (c == '/') {
        escaped += "~1";
      } else {
        escaped += c;
      }
    }
    return absl::StrCat(base, "/", escaped);
  }

  static std::string Path(const std::string& base, size_t index) {
    return absl::StrCat(base, "/", index);
  }

 private:
  std::vector<DocumentError>* errors_;
};

Workstation ReadWorkstation(FieldReader& r, const Json& j,
                            const std::string& path) {
  Workstation ws;
  if (!r.Object(j, path)) return ws;
  r.String(j, "id", path, &ws.id);
  r.String(j, "name", path, &ws.name, /*required=*/false);
  r.Int(j, "batch_qty", path, &ws.batch_qty, /*required=*/false);
  r.Double(j, "total_batch_time", path, &ws.total_batch_time,
           /*required=*/false);
  r.Double(j, "cycle_time", path, &ws.cycle_time);
  r.Int(j, "labor_resources", path, &ws.labor_resources);
  if (const Json* pool = r.Get(j, "machine_pool", path, false)) {
    const std::string pool_path = FieldReader::Path(path, "machine_pool");
    if (r.Object(*pool, pool_path)) {
      MachinePool mp;
      r.Int(*pool, "unit_capacity", pool_path, &mp.unit_capacity);
      r.Int(*pool, "machine_count", pool_path, &mp.machine_count);
      ws.machine_pool = mp;
    }
  }
  return ws;
}

StyleRouting ReadStyle(FieldReader& r, const Json& j, const std::string& path) {
  StyleRouting style;
  if (!r.Object(j, path)) return style;
  r.String(j, "style_id", path, &style.style_id);
  if (const Json* sams = r.Get(j, "sam_per_station", path, true)) {
    const std::string sam_path = FieldReader::Path(path, "sam_per_station");
    if (r.Object(*sams, sam_path)) {
      for (auto it = sams->begin(); it != sams->end(); ++it) {
        double sam = 0.0;
        if (r.Double(&it.value(), FieldReader::Path(sam_path, it.key()),
                     &sam)) {
          style.sam_per_station[it.key()] = sam;
        }
      }
    }
  }
  r.OptionalInt(j, "demand_qty", path, &style.demand_qty);
  r.Double(j, "unit_profit", path, &style.unit_profit, /*required=*/false);
  return style;
}

VsmMap ReadVsmMap(FieldReader& r, const Json& j, const std::string& path) {
  VsmMap map;
  if (!r.Object(j, path)) return map;
  if (const Json* procs = r.Get(j, "processes", path, true)) {
    const std::string procs_path = FieldReader::Path(path, "processes");
    if (r.Array(*procs, procs_path)) {
      for (size_t i = 0; i < procs->size(); ++i) {
        const Json& pj = (*procs)[i];
        const std::string p_path = FieldReader::Path(procs_path, i);
        VsmProcess p;
        if (!r.Object(pj, p_path)) continue;
        r.String(pj, "name", p_path, &p.name);
        r.Double(pj, "cycle_time", p_path, &p.cycle_time);
        r.Double(pj, "changeover_time", p_path, &p.changeover_time, false);
        r.Int(pj, "operators", p_path, &p.operators, false);
        r.Double(pj, "available_time", p_path, &p.available_time, false);
        r.Double(pj, "uptime_fraction", p_path, &p.uptime_fraction, false);
        r.Double(pj, "defect_rate", p_path, &p.defect_rate, false);
        r.Double(pj, "value_added_time", p_path, &p.value_added_time, false);
        r.OptionalDouble(pj, "changeovers_per_day", p_path,
                         &p.changeovers_per_day);
        map.processes.push_back(std::move(p));
      }
    }
  }
  if (const Json* buffers = r.Get(j, "buffers", path, true)) {
    const std::string b_path = FieldReader::Path(path, "buffers");
    if (r.Array(*buffers, b_path)) {
      for (size_t i = 0; i < buffers->size(); ++i) {
        double level = 0.0;
        if (r.Double(&(*buffers)[i], FieldReader::Path(b_path, i), &level)) {
          map.buffers.push_back(level);
        }
      }
    }
  }
  r.Double(j, "customer_demand", path, &map.customer_demand);
  return map;
}

BalancePolicy ReadPolicy(FieldReader& r, const Json& j,
                         const std::string& path) {
  BalancePolicy policy;
  if (!r.Object(j, path)) return policy;
  r.Int(j, "target_throughput", path, &policy.target_throughput);
  if (const Json* actions = r.Get(j, "allowed_actions", path, false)) {
    const std::string a_path = FieldReader::Path(path, "allowed_actions");
    if (r.Object(*actions, a_path)) {
      for (auto it = actions->begin(); it != actions->end(); ++it) {
        const std::string s_path = FieldReader::Path(a_path, it.key());
        if (!r.Object(it.value(), s_path)) continue;
        StationAllowance allow;
        r.Bool(it.value(), "may_add_labor", s_path, &allow.may_add_labor,
               false);
        r.Bool(it.value(), "may_add_machines", s_path,
               &allow.may_add_machines, false);
        r.Int(it.value(), "max_labor", s_path, &allow.max_labor, false);
        r.Int(it.value(), "max_machines", s_path, &allow.max_machines, false);
        policy.allowed_actions[it.key()] = allow;
      }
    }
  }
  r.Double(j, "labor_cost", path, &policy.labor_cost, false);
  r.Double(j, "machine_cost", path, &policy.machine_cost, false);
  return policy;
}

// Maps a station-level violation to the pointer of the offending field.
std::string ViolationLocation(const ProductionLine& line, const Violation& v) {
  if (v.field == "sam_per_station") {
    for (size_t s = 0; s < line.styles.size(); ++s) {
      if (line.styles[s].sam_per_station.count(v.station_id) > 0) {
        return FieldReader::Path(
            FieldReader::Path(FieldReader::Path("/styles", s),
                              "sam_per_station"),
            v.station_id);
      }
    }
    return "/styles";
  }
  if (!v.station_id.empty()) {
    if (auto index = line.IndexOf(v.station_id)) {
      std::string base = FieldReader::Path("/workstations", *index);
      if (v.field.rfind("machine_pool.", 0) == 0) {
        return FieldReader::Path(FieldReader::Path(base, "machine_pool"),
                                 v.field.substr(13));
      }
      return FieldReader::Path(base, v.field);
    }
  }
  return FieldReader::Path("", v.field);
}

std::string LineColumn(std::string_view text, size_t byte) {
  size_t line = 1;
  size_t column = 1;
  for (size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return absl::StrCat("line ", line, ", column ", column);
}

Json WorkstationToJson(const Workstation& ws) {
  Json j;
  j["id"] = ws.id;
  j["name"] = ws.name;
  j["batch_qty"] = ws.batch_qty;
  j["total_batch_time"] = ws.total_batch_time;
  j["cycle_time"] = ws.cycle_time;
  j["labor_resources"] = ws.labor_resources;
  if (ws.machine_pool) {
    j["machine_pool"] = {{"unit_capacity", ws.machine_pool->unit_capacity},
                         {"machine_count", ws.machine_pool->machine_count}};
  }
  return j;
}

Json StyleToJson(const StyleRouting& style) {
  Json j;
  j["style_id"] = style.style_id;
  Json sams = Json::object();
  for (const auto& [station, sam] : style.sam_per_station) sams[station] = sam;
  j["sam_per_station"] = std::move(sams);
  if (style.demand_qty) j["demand_qty"] = *style.demand_qty;
  j["unit_profit"] = style.unit_profit;
  return j;
}

const char* EditOpName(EditKind kind) {
  switch (kind) {
    case EditKind::kAddLabor:
      return "add_labor";
    case EditKind::kAddMachines:
      return "add_machines";
    case EditKind::kSetCycleTime:
      return "set_cycle_time";
    case EditKind::kSetUnitCapacity:
      return "set_unit_capacity";
    case EditKind::kSetTotalBatchTime:
      return "set_total_batch_time";
  }
  return "add_labor";
}

void AppendLineFields(const ProductionLine& line, Json& j) {
  j["id"] = line.id;
  j["available_minutes"] = line.available_minutes;
  Json stations = Json::array();
  for (const Workstation& ws : line.workstations) {
    stations.push_back(WorkstationToJson(ws));
  }
  j["workstations"] = std::move(stations);
  Json styles = Json::array();
  for (const StyleRouting& s : line.styles) styles.push_back(StyleToJson(s));
  j["styles"] = std::move(styles);
}

absl::Status ErrorsToStatus(const std::vector<DocumentError>& errors) {
  std::vector<std::string> parts;
  for (const DocumentError& e : errors) parts.push_back(e.ToString());
  return absl::InvalidArgumentError(absl::StrJoin(parts, "; "));
}

}  // namespace

std::string DocumentError::ToString() const {
  return location.empty() ? message : absl::StrCat(location, ": ", message);
}

ParsedDocument LineDocumentFromJson(const Json& json) {
  ParsedDocument out;
  FieldReader r(&out.errors);
  if (!json.is_object()) {
    r.Error("", "document must be a JSON object");
    return out;
  }
  LineDocument doc;
  int64_t version = 0;
  r.Int(json, "schema_version", "", &version);
  if (out.errors.empty() && version != kSchemaVersion) {
    r.Error("/schema_version",
            absl::StrCat("unknown schema version ", version, " (expected ",
                         kSchemaVersion, ")"));
    return out;
  }
  doc.schema_version = static_cast<int>(version);
  r.String(json, "id", "", &doc.line.id);
  r.Double(json, "available_minutes", "", &doc.line.available_minutes, false);
  if (const Json* stations = r.Get(json, "workstations", "", true)) {
    if (r.Array(*stations, "/workstations")) {
      for (size_t i = 0; i < stations->size(); ++i) {
        doc.line.workstations.push_back(ReadWorkstation(
            r, (*stations)[i], FieldReader::Path("/workstations", i)));
      }
    }
  }
  if (const Json* styles = r.Get(json, "styles", "", false)) {
    if (r.Array(*styles, "/styles")) {
      for (size_t i = 0; i < styles->size(); ++i) {
        doc.line.styles.push_back(
            ReadStyle(r, (*styles)[i], FieldReader::Path("/styles", i)));
      }
    }
  }
  if (const Json* vsm = r.Get(json, "vsm_map", "", false)) {
    doc.vsm_map = ReadVsmMap(r, *vsm, "/vsm_map");
  }
  if (const Json* policy = r.Get(json, "balance_policy", "", false)) {
    doc.balance_policy = ReadPolicy(r, *policy, "/balance_policy");
  }
  if (!out.errors.empty()) return out;

  for (const Violation& v : ValidateLine(doc.line)) {
    r.Error(ViolationLocation(doc.line, v), v.message);
  }
  if (doc.vsm_map) {
    for (const Violation& v : ValidateVsmMap(*doc.vsm_map)) {
      r.Error(FieldReader::Path("/vsm_map", v.field),
              v.station_id.empty()
                  ? v.message
                  : absl::StrCat("process '", v.station_id, "': ", v.message));
    }
  }
  if (doc.balance_policy) {
    for (const Violation& v : ValidatePolicy(doc.line, *doc.balance_policy)) {
      r.Error(FieldReader::Path("/balance_policy", v.field),
              v.station_id.empty()
                  ? v.message
                  : absl::StrCat("station '", v.station_id, "': ", v.message));
    }
  }
  if (out.errors.empty()) out.document = std::move(doc);
  return out;
}

ParsedDocument ParseLineDocument(std::string_view text) {
  bool blank = true;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) {
      blank = false;
      break;
    }
  }
  if (blank) return {std::nullopt, {{"", "empty document"}}};
  try {
    return LineDocumentFromJson(Json::parse(text));
  } catch (const Json::parse_error& e) {
    std::string message = e.what();
    // Drop the library prefix, keep the human-readable tail.
    if (auto pos = message.find("syntax error"); pos != std::string::npos) {
      message = message.substr(pos);
    }
    return {std::nullopt, {{LineColumn(text, e.byte > 0 ? e.byte - 1 : 0),
                            message}}};
  }
}

ParsedDocument LoadLineDocument(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return {std::nullopt, {{path, "cannot open file"}}};
  std::stringstream buffer;
  buffer << in.rdbuf();
  ParsedDocument parsed = ParseLineDocument(buffer.str());
  for (DocumentError& e : parsed.errors) {
    e.location = e.location.empty() ? path : absl::StrCat(path, ": ", e.location);
  }
  return parsed;
}

Json LineToJson(const ProductionLine& line) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  AppendLineFields(line, j);
  return j;
}

Json LineDocumentToJson(const LineDocument& document) {
  Json j;
  j["schema_version"] = document.schema_version;
  AppendLineFields(document.line, j);
  if (document.vsm_map) j["vsm_map"] = VsmMapToJson(*document.vsm_map);
  if (document.balance_policy) {
    j["balance_policy"] = PolicyToJson(*document.balance_policy);
  }
  return j;
}

std::string SerializeLineDocument(const LineDocument& document) {
  return LineDocumentToJson(document).dump(2) + "\n";
}

Json CapacityReportToJson(const CapacityReport& report) {
  Json rows = Json::array();
  for (const CapacityRow& row : report.rows) {
    Json r;
    r["station_id"] = row.station_id;
    r["labor_daily_output"] = row.labor_daily_output;
    r["machine_daily_capacity"] =
        row.machine_daily_capacity ? Json(*row.machine_daily_capacity)
                                   : Json(nullptr);
    r["effective_capacity"] = row.effective_capacity;
    r["is_bottleneck"] = row.is_bottleneck;
    r["constraint_kind"] = ConstraintKindName(row.constraint_kind);
    rows.push_back(std::move(r));
  }
  Json j;
  j["rows"] = std::move(rows);
  j["fg_throughput"] = report.fg_throughput;
  return j;
}

absl::StatusOr<CapacityReport> CapacityReportFromJson(const Json& json) {
  std::vector<DocumentError> errors;
  FieldReader r(&errors);
  CapacityReport report;
  if (!r.Object(json, "")) return ErrorsToStatus(errors);
  if (const Json* rows = r.Get(json, "rows", "", true)) {
    if (r.Array(*rows, "/rows")) {
      for (size_t i = 0; i < rows->size(); ++i) {
        const Json& rj = (*rows)[i];
        const std::string path = FieldReader::Path("/rows", i);
        if (!r.Object(rj, path)) continue;
        CapacityRow row;
        r.String(rj, "station_id", path, &row.station_id);
        r.Int(rj, "labor_daily_output", path, &row.labor_daily_output);
        r.OptionalInt(rj, "machine_daily_capacity", path,
                      &row.machine_daily_capacity);
        r.Int(rj, "effective_capacity", path, &row.effective_capacity);
        r.Bool(rj, "is_bottleneck", path, &row.is_bottleneck);
        std::string kind;
        r.String(rj, "constraint_kind", path, &kind);
        if (auto parsed = ParseConstraintKind(kind)) {
          row.constraint_kind = *parsed;
        } else if (!kind.empty()) {
          r.Error(FieldReader::Path(path, "constraint_kind"),
                  absl::StrCat("unknown constraint kind '", kind, "'"));
        }
        report.rows.push_back(std::move(row));
      }
    }
  }
  r.Int(json, "fg_throughput", "", &report.fg_throughput);
  if (!errors.empty()) return ErrorsToStatus(errors);
  return report;
}

Json DeltaToJson(const ScenarioDelta& delta) {
  Json edits = Json::array();
  for (const Edit& e : delta.edits) {
    Json j;
    j["op"] = EditOpName(e.kind);
    j["station_id"] = e.station_id;
    if (e.kind == EditKind::kSetCycleTime ||
        e.kind == EditKind::kSetTotalBatchTime) {
      j["value"] = e.value;
    } else {
      j["amount"] = e.amount;
    }
    edits.push_back(std::move(j));
  }
  return Json{{"edits", std::move(edits)}};
}

absl::StatusOr<ScenarioDelta> DeltaFromJson(const Json& json) {
  std::vector<DocumentError> errors;
  FieldReader r(&errors);
  ScenarioDelta delta;
  if (!r.Object(json, "")) return ErrorsToStatus(errors);
  const Json* edits = r.Get(json, "edits", "", true);
  if (edits != nullptr && r.Array(*edits, "/edits")) {
    for (size_t i = 0; i < edits->size(); ++i) {
      const Json& ej = (*edits)[i];
      const std::string path = FieldReader::Path("/edits", i);
      if (!r.Object(ej, path)) continue;
      std::string op;
      Edit edit;
      r.String(ej, "op", path, &op);
      r.String(ej, "station_id", path, &edit.station_id);
      if (op == "add_labor" || op == "remove_labor") {
        edit.kind = EditKind::kAddLabor;
        r.Int(ej, "amount", path, &edit.amount);
        if (op == "remove_labor") edit.amount = -edit.amount;
      } else if (op == "add_machines" || op == "remove_machines") {
        edit.kind = EditKind::kAddMachines;
        r.Int(ej, "amount", path, &edit.amount);
        if (op == "remove_machines") edit.amount = -edit.amount;
      } else if (op == "set_cycle_time") {
        edit.kind = EditKind::kSetCycleTime;
        r.Double(ej, "value", path, &edit.value);
      } else if (op == "set_total_batch_time") {
        edit.kind = EditKind::kSetTotalBatchTime;
        r.Double(ej, "value", path, &edit.value);
      } else if (op == "set_unit_capacity") {
        edit.kind = EditKind::kSetUnitCapacity;
        r.Int(ej, "amount", path, &edit.amount);
      } else if (!op.empty()) {
        r.Error(FieldReader::Path(path, "op"),
                absl::StrCat("unknown edit op '", op, "'"));
      }
      delta.edits.push_back(std::move(edit));
    }
  }
  if (!errors.empty()) return ErrorsToStatus(errors);
  return delta;
}

Json VsmMapToJson(const VsmMap& map) {
  Json procs = Json::array();
  for (const VsmProcess& p : map.processes) {
    Json j;
    j["name"] = p.name;
    j["cycle_time"] = p.cycle_time;
    j["changeover_time"] = p.changeover_time;
    j["operators"] = p.operators;
    j["available_time"] = p.available_time;
    j["uptime_fraction"] = p.uptime_fraction;
    j["defect_rate"] = p.defect_rate;
    j["value_added_time"] = p.value_added_time;
    if (p.changeovers_per_day) j["changeovers_per_day"] = *p.changeovers_per_day;
    procs.push_back(std::move(j));
  }
  Json j;
  j["processes"] = std::move(procs);
  j["buffers"] = map.buffers;
  j["customer_demand"] = map.customer_demand;
  return j;
}

Json PolicyToJson(const BalancePolicy& policy) {
  Json actions = Json::object();
  for (const auto& [station, allow] : policy.allowed_actions) {
    actions[station] = {{"may_add_labor", allow.may_add_labor},
                        {"may_add_machines", allow.may_add_machines},
                        {"max_labor", allow.max_labor},
                        {"max_machines", allow.max_machines}};
  }
  Json j;
  j["target_throughput"] = policy.target_throughput;
  j["allowed_actions"] = std::move(actions);
  j["labor_cost"] = policy.labor_cost;
  j["machine_cost"] = policy.machine_cost;
  return j;
}

Json BalancePlanToJson(const BalancePlan& plan) {
  Json steps = Json::array();
  for (const BalanceStep& step : plan.steps) {
    Json s;
    s["iteration"] = step.iteration;
    s["bottleneck_station"] = step.bottleneck_station;
    s["action"] = DeltaToJson(step.action);
    s["fg_throughput"] = step.fg_throughput;
    s["cost"] = step.cost;
    steps.push_back(std::move(s));
  }
  Json j;
  j["initial_throughput"] = plan.initial_throughput;
  j["steps"] = std::move(steps);
  j["achieved"] = plan.achieved;
  j["final_throughput"] = plan.final_throughput();
  j["total_cost"] = plan.total_cost();
  if (!plan.limiting_station.empty()) {
    j["limiting_station"] = plan.limiting_station;
  }
  j["final_line"] = LineToJson(plan.final_line);
  return j;
}

Json LpProblemToJson(const LpProblem& problem) {
  Json j;
  j["sense"] = problem.sense == Sense::kMaximize ? "maximize" : "minimize";
  j["objective"] = problem.objective;
  j["constraint_matrix"] = problem.constraint_matrix;
  j["rhs"] = problem.rhs;
  j["variable_labels"] = problem.variable_labels;
  j["constraint_labels"] = problem.constraint_labels;
  return j;
}

absl::StatusOr<LpProblem> LpProblemFromJson(const Json& json) {
  std::vector<DocumentError> errors;
  FieldReader r(&errors);
  LpProblem problem;
  if (!r.Object(json, "")) return ErrorsToStatus(errors);
  std::string sense = "maximize";
  r.String(json, "sense", "", &sense, false);
  if (sense == "minimize") {
    problem.sense = Sense::kMinimize;
  } else if (sense != "maximize") {
    r.Error("/sense", absl::StrCat("unknown sense '", sense, "'"));
  }
  auto read_vector = [&](const Json& arr, const std::string& path,
                         std::vector<double>* out) {
    if (!r.Array(arr, path)) return;
    for (size_t i = 0; i < arr.size(); ++i) {
      double v = 0.0;
      if (r.Double(&arr[i], FieldReader::Path(path, i), &v)) out->push_back(v);
    }
  };
  if (const Json* c = r.Get(json, "objective", "", true)) {
    read_vector(*c, "/objective", &problem.objective);
  }
  if (const Json* a = r.Get(json, "constraint_matrix", "", true)) {
    if (r.Array(*a, "/constraint_matrix")) {
      for (size_t i = 0; i < a->size(); ++i) {
        std::vector<double> row;
        read_vector((*a)[i], FieldReader::Path("/constraint_matrix", i), &row);
        problem.constraint_matrix.push_back(std::move(row));
      }
    }
  }
  if (const Json* b = r.Get(json, "rhs", "", true)) {
    read_vector(*b, "/rhs", &problem.rhs);
  }
  auto read_labels = [&](const char* key, std::vector<std::string>* out) {
    const Json* labels = r.Get(json, key, "", false);
    if (labels == nullptr) return;
    if (!r.Array(*labels, FieldReader::Path("", key))) return;
    for (const Json& l : *labels) {
      if (l.is_string()) out->push_back(l.get<std::string>());
    }
  };
  read_labels("variable_labels", &problem.variable_labels);
  read_labels("constraint_labels", &problem.constraint_labels);
  if (!errors.empty()) return ErrorsToStatus(errors);
  if (absl::Status s = CheckProblem(problem); !s.ok()) return s;
  return problem;
}

Json LpSolutionToJson(const LpSolution& solution) {
  Json j;
  j["status"] = LpStatusName(solution.status);
  j["x"] = solution.x;
  j["z"] = solution.z;
  j["active_constraints"] = solution.active_constraints;
  j["iterations"] = solution.iterations;
  return j;
}

Json LeadTimeToJson(const LeadTimeBreakdown& breakdown) {
  Json j;
  j["lead_time"] = breakdown.total;
  j["processing_time"] = breakdown.processing;
  j["waiting_time"] = breakdown.waiting;
  j["changeover_time"] = breakdown.changeover;
  j["value_added_time"] = breakdown.value_added;
  j["non_value_added_time"] = breakdown.non_value_added();
  j["va_ratio"] =
      breakdown.total > 0.0 ? Json(breakdown.value_added / breakdown.total)
                            : Json(nullptr);
  return j;
}

Json StateComparisonToJson(const StateComparison& comparison) {
  Json j;
  j["lead_current"] = comparison.lead_current;
  j["lead_future"] = comparison.lead_future;
  j["reduction"] = comparison.reduction;
  j["reduction_pct"] = comparison.reduction_pct;
  j["yield_current"] = comparison.yield_current;
  j["yield_future"] = comparison.yield_future;
  return j;
}

Json ViolationsToJson(const std::vector<Violation>& violations) {
  Json out = Json::array();
  for (const Violation& v : violations) {
    out.push_back({{"station_id", v.station_id},
                   {"field", v.field},
                   {"message", v.message}});
  }
  return out;
}

}  // namespace crp
