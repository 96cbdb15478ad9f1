#include "crp/service.h"

#include <cstdio>
#include <fstream>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "crp/balance.h"
#include "crp/capacity.h"
#include "crp/vsm.h"
#include "httplib.h"

namespace crp {

ScenarioStore::ScenarioStore(LineDocument base, std::string snapshot_path)
    : base_(std::move(base)), snapshot_path_(std::move(snapshot_path)) {}

std::string ScenarioStore::Create() {
  std::string id;
  {
    std::unique_lock lock(map_mu_);
    id = absl::StrCat("s", next_id_++);
    auto scenario = std::make_unique<Scenario>();
    scenario->line = base_.line;
    scenarios_.emplace(id, std::move(scenario));
  }
  WriteSnapshot();
  return id;
}

ScenarioStore::Scenario* ScenarioStore::Find(const std::string& id) const {
  std::shared_lock lock(map_mu_);
  auto it = scenarios_.find(id);
  return it == scenarios_.end() ? nullptr : it->second.get();
}

absl::StatusOr<ScenarioSnapshot> ScenarioStore::Get(
    const std::string& id) const {
  Scenario* scenario = Find(id);
  if (scenario == nullptr) {
    return absl::NotFoundError(absl::StrCat("unknown scenario '", id, "'"));
  }
  std::lock_guard lock(scenario->mu);
  return ScenarioSnapshot{id, scenario->revision, scenario->deltas,
                          scenario->line};
}

absl::StatusOr<int64_t> ScenarioStore::PushDelta(
    const std::string& id, const ScenarioDelta& delta,
    std::optional<int64_t> expected_revision) {
  Scenario* scenario = Find(id);
  if (scenario == nullptr) {
    return absl::NotFoundError(absl::StrCat("unknown scenario '", id, "'"));
  }
  int64_t revision = 0;
  {
    std::lock_guard lock(scenario->mu);
    if (expected_revision && *expected_revision != scenario->revision) {
      return absl::AbortedError(
          absl::StrCat("stale revision ", *expected_revision,
                       "; current revision is ", scenario->revision));
    }
    auto next = ApplyDelta(scenario->line, delta);
    if (!next.ok()) return next.status();
    scenario->line = *std::move(next);
    scenario->deltas.push_back(delta);
    revision = ++scenario->revision;
  }
  WriteSnapshot();
  return revision;
}

absl::StatusOr<int64_t> ScenarioStore::Undo(
    const std::string& id, std::optional<int64_t> expected_revision) {
  Scenario* scenario = Find(id);
  if (scenario == nullptr) {
    return absl::NotFoundError(absl::StrCat("unknown scenario '", id, "'"));
  }
  int64_t revision = 0;
  {
    std::lock_guard lock(scenario->mu);
    if (expected_revision && *expected_revision != scenario->revision) {
      return absl::AbortedError(
          absl::StrCat("stale revision ", *expected_revision,
                       "; current revision is ", scenario->revision));
    }
    if (scenario->deltas.empty()) {
      return absl::FailedPreconditionError("nothing to undo");
    }
    // Replay from the base so the result is exactly the earlier line.
    ProductionLine line = base_.line;
    for (size_t i = 0; i + 1 < scenario->deltas.size(); ++i) {
      auto next = ApplyDelta(line, scenario->deltas[i]);
      if (!next.ok()) return next.status();
      line = *std::move(next);
    }
    scenario->deltas.pop_back();
    scenario->line = std::move(line);
    revision = ++scenario->revision;
  }
  WriteSnapshot();
  return revision;
}

std::vector<std::string> ScenarioStore::ScenarioIds() const {
  std::shared_lock lock(map_mu_);
  std::vector<std::string> ids;
  for (const auto& [id, scenario] : scenarios_) ids.push_back(id);
  return ids;
}

void ScenarioStore::WriteSnapshot() const {
  if (snapshot_path_.empty()) return;
  std::lock_guard snapshot_lock(snapshot_mu_);
  Json scenarios = Json::object();
  {
    std::shared_lock lock(map_mu_);
    for (const auto& [id, scenario] : scenarios_) {
      std::lock_guard scenario_lock(scenario->mu);
      Json deltas = Json::array();
      for (const ScenarioDelta& d : scenario->deltas) {
        deltas.push_back(DeltaToJson(d));
      }
      scenarios[id] = {{"revision", scenario->revision},
                       {"deltas", std::move(deltas)}};
    }
  }
  Json out;
  out["base"] = LineDocumentToJson(base_);
  out["scenarios"] = std::move(scenarios);
  const std::string tmp = snapshot_path_ + ".tmp";
  {
    std::ofstream file(tmp, std::ios::trunc);
    file << out.dump(2) << "\n";
  }
  std::rename(tmp.c_str(), snapshot_path_.c_str());
}

namespace {

ApiResponse JsonResponse(int status, const Json& body) {
  return {status, body.dump(), {}};
}

ApiResponse ErrorResponse(int status, const std::string& message) {
  return JsonResponse(status, Json{{"error", message}});
}

ApiResponse FromStatus(const absl::Status& status) {
  switch (status.code()) {
    case absl::StatusCode::kNotFound:
      return ErrorResponse(404, std::string(status.message()));
    case absl::StatusCode::kAborted:
      return ErrorResponse(409, std::string(status.message()));
    default:
      return ErrorResponse(422, std::string(status.message()));
  }
}

std::optional<Json> ParseBody(const std::string& body) {
  if (body.empty()) return Json::object();
  try {
    return Json::parse(body);
  } catch (const Json::parse_error&) {
    return std::nullopt;
  }
}

std::optional<int64_t> ExpectedRevision(const Json& body) {
  if (!body.is_object()) return std::nullopt;
  auto it = body.find("expected_revision");
  if (it == body.end() || !it->is_number_integer()) return std::nullopt;
  return it->get<int64_t>();
}

}  // namespace

ApiResponse PlanningApi::Handle(const ApiRequest& request) {
  std::vector<std::string> parts =
      absl::StrSplit(request.path, '/', absl::SkipEmpty());
  if (parts.size() < 2 || parts[0] != "api") {
    return ErrorResponse(404, "not found");
  }
  const bool get = request.method == "GET";
  const bool post = request.method == "POST";

  if (parts.size() == 2 && parts[1] == "line") {
    if (!get) return ErrorResponse(405, "method not allowed");
    return JsonResponse(200, LineDocumentToJson(store_.base()));
  }
  if (parts[1] != "scenarios") return ErrorResponse(404, "not found");

  if (parts.size() == 2) {
    if (!post) return ErrorResponse(405, "method not allowed");
    const std::string id = store_.Create();
    return JsonResponse(201, Json{{"id", id}, {"revision", 0}});
  }

  const std::string& id = parts[2];
  auto snapshot = store_.Get(id);
  if (!snapshot.ok()) return FromStatus(snapshot.status());
  const std::string action = parts.size() > 3 ? parts[3] : "";
  if (parts.size() > 4) return ErrorResponse(404, "not found");

  auto tag = [&](ApiResponse r, int64_t revision) {
    r.headers["X-Scenario-Revision"] = absl::StrCat(revision);
    return r;
  };

  if (action.empty()) {
    if (!get) return ErrorResponse(405, "method not allowed");
    Json body;
    body["id"] = id;
    body["revision"] = snapshot->revision;
    body["delta_count"] = snapshot->deltas.size();
    body["line"] = LineToJson(snapshot->line);
    return tag(JsonResponse(200, body), snapshot->revision);
  }

  if (action == "delta" || action == "undo") {
    if (!post) return ErrorResponse(405, "method not allowed");
    auto body = ParseBody(request.body);
    if (!body) return ErrorResponse(422, "request body is not valid JSON");
    absl::StatusOr<int64_t> revision;
    if (action == "delta") {
      auto delta = DeltaFromJson(*body);
      if (!delta.ok()) return FromStatus(delta.status());
      revision = store_.PushDelta(id, *delta, ExpectedRevision(*body));
    } else {
      revision = store_.Undo(id, ExpectedRevision(*body));
    }
    if (!revision.ok()) {
      ApiResponse error = FromStatus(revision.status());
      if (error.status == 409) {
        auto current = store_.Get(id);
        if (current.ok()) {
          error.body = Json{{"error", std::string(revision.status().message())},
                            {"current_revision", current->revision}}
                           .dump();
        }
      }
      return error;
    }
    return tag(JsonResponse(200, Json{{"id", id}, {"revision", *revision}}),
               *revision);
  }

  if (action == "capacity") {
    if (!get) return ErrorResponse(405, "method not allowed");
    return tag(
        JsonResponse(200, CapacityReportToJson(AnalyzeCapacity(snapshot->line))),
        snapshot->revision);
  }

  if (action == "vsm") {
    if (!get) return ErrorResponse(405, "method not allowed");
    if (!store_.base().vsm_map) {
      return ErrorResponse(404, "no VSM data in the loaded document");
    }
    auto breakdown = AnalyzeLeadTime(*store_.base().vsm_map);
    if (!breakdown.ok()) return FromStatus(breakdown.status());
    return tag(JsonResponse(200, LeadTimeToJson(*breakdown)),
               snapshot->revision);
  }

  if (action == "balance") {
    if (!post) return ErrorResponse(405, "method not allowed");
    auto body = ParseBody(request.body);
    if (!body || !body->is_object() || !body->contains("target") ||
        !(*body)["target"].is_number_integer()) {
      return ErrorResponse(422, "body must be {\"target\": <integer>}");
    }
    const int64_t target = (*body)["target"].get<int64_t>();
    BalancePolicy policy = store_.base().balance_policy
                               ? *store_.base().balance_policy
                               : DefaultPolicy(snapshot->line, target);
    policy.target_throughput = target;
    auto plan = BalanceLine(snapshot->line, policy);
    if (!plan.ok()) return FromStatus(plan.status());
    Json out = BalancePlanToJson(*plan);
    out["target_throughput"] = target;
    out["recommended_delta"] = DeltaToJson(plan->CombinedDelta());
    return tag(JsonResponse(200, out), snapshot->revision);
  }

  if (action == "lp") {
    if (!get) return ErrorResponse(405, "method not allowed");
    std::vector<StyleRouting> styles = snapshot->line.styles;
    if (styles.empty()) styles.push_back(CycleTimeStyle(snapshot->line));
    auto lp = BuildCrpLp(snapshot->line, styles);
    if (!lp.ok()) return FromStatus(lp.status());
    auto solution = Solve(lp->problem);
    if (!solution.ok()) return FromStatus(solution.status());
    Json out;
    out["problem"] = LpProblemToJson(lp->problem);
    out["solution"] = LpSolutionToJson(*solution);
    auto limiting = LimitingRow(*lp, snapshot->line, *solution);
    out["limiting_constraint"] =
        limiting ? Json(lp->problem.constraint_labels[*limiting])
                 : Json(nullptr);
    return tag(JsonResponse(200, out), snapshot->revision);
  }

  return ErrorResponse(404, "not found");
}

struct PlanningServer::Impl {
  Impl(ScenarioStore& store, ServerOptions opts)
      : api(store), options(std::move(opts)) {}

  PlanningApi api;
  ServerOptions options;
  httplib::Server server;
};

PlanningServer::PlanningServer(ScenarioStore& store, ServerOptions options)
    : impl_(std::make_unique<Impl>(store, std::move(options))) {
  auto handler = [this](const httplib::Request& req, httplib::Response& res) {
    ApiResponse out = impl_->api.Handle({req.method, req.path, req.body});
    res.status = out.status;
    for (const auto& [k, v] : out.headers) res.set_header(k, v);
    res.set_content(out.body, "application/json");
  };
  impl_->server.Get(R"(/api/.*)", handler);
  impl_->server.Post(R"(/api/.*)", handler);
  if (impl_->options.allow_dev_origin) {
    impl_->server.set_post_routing_handler(
        [](const httplib::Request&, httplib::Response& res) {
          res.set_header("Access-Control-Allow-Origin", "*");
          res.set_header("Access-Control-Allow-Headers", "Content-Type");
          res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
          res.set_header("Access-Control-Expose-Headers",
                         "X-Scenario-Revision");
        });
    impl_->server.Options(R"(/api/.*)",
                          [](const httplib::Request&, httplib::Response& res) {
                            res.status = 204;
                          });
  }
  if (!impl_->options.ui_dir.empty()) {
    impl_->server.set_mount_point("/", impl_->options.ui_dir);
  }
}

PlanningServer::~PlanningServer() { Stop(); }

int PlanningServer::Bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool PlanningServer::Listen() { return impl_->server.listen_after_bind(); }

void PlanningServer::Stop() { impl_->server.stop(); }

}  // namespace crp
