#ifndef CRP_DOCUMENT_H_
#define CRP_DOCUMENT_H_

// JSON line documents and the JSON forms of every result type.
//
// A line document is a UTF-8 JSON object:
//
//   {
//     "schema_version": 1,
//     "id": "...",
//     "available_minutes": 600.0,
//     "workstations": [{"id", "name", "batch_qty", "total_batch_time",
//                       "cycle_time", "labor_resources",
//                       "machine_pool": {"unit_capacity", "machine_count"}}],
//     "styles": [{"style_id", "sam_per_station": {...}, "demand_qty",
//                 "unit_profit"}],
//     "vsm_map": {...},          // optional
//     "balance_policy": {...}    // optional
//   }
//
// Serialization is deterministic: keys are written in a fixed order with a
// two-space indent.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "absl/status/statusor.h"
#include "crp/balance.h"
#include "crp/capacity.h"
#include "crp/model.h"
#include "crp/simplex.h"
#include "crp/vsm.h"

namespace crp {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

struct LineDocument {
  int schema_version = kSchemaVersion;
  ProductionLine line;
  std::optional<VsmMap> vsm_map;
  std::optional<BalancePolicy> balance_policy;

  friend bool operator==(const LineDocument&, const LineDocument&) = default;
};

// A parse or validation problem. `location` is either "line L, column C"
// for syntax errors or a JSON pointer such as "/workstations/3/cycle_time".
struct DocumentError {
  std::string location;
  std::string message;

  std::string ToString() const;
};

struct ParsedDocument {
  std::optional<LineDocument> document;
  std::vector<DocumentError> errors;

  bool ok() const { return document.has_value() && errors.empty(); }
};

// Parses and validates `text`. On any error `document` is empty and every
// problem found is listed.
ParsedDocument ParseLineDocument(std::string_view text);

// Like ParseLineDocument but for an already-decoded JSON value.
ParsedDocument LineDocumentFromJson(const Json& json);

std::string SerializeLineDocument(const LineDocument& document);
Json LineDocumentToJson(const LineDocument& document);

// The document form of a bare line (no VSM map or policy).
Json LineToJson(const ProductionLine& line);

// Reads a file and parses it. File-system failures are reported as a single
// DocumentError with the path as location.
ParsedDocument LoadLineDocument(const std::string& path);

Json CapacityReportToJson(const CapacityReport& report);
absl::StatusOr<CapacityReport> CapacityReportFromJson(const Json& json);

Json DeltaToJson(const ScenarioDelta& delta);
absl::StatusOr<ScenarioDelta> DeltaFromJson(const Json& json);

Json VsmMapToJson(const VsmMap& map);
Json PolicyToJson(const BalancePolicy& policy);
Json BalancePlanToJson(const BalancePlan& plan);

Json LpProblemToJson(const LpProblem& problem);
absl::StatusOr<LpProblem> LpProblemFromJson(const Json& json);
Json LpSolutionToJson(const LpSolution& solution);

Json LeadTimeToJson(const LeadTimeBreakdown& breakdown);
Json StateComparisonToJson(const StateComparison& comparison);

Json ViolationsToJson(const std::vector<Violation>& violations);

}  // namespace crp

#endif  // CRP_DOCUMENT_H_
