#ifndef CRP_SERVICE_H_
#define CRP_SERVICE_H_

// What-if scenario store and the JSON/HTTP planning API over it.
//
// Endpoints:
//   GET  /api/line                       base line document
//   POST /api/scenarios                  create a scenario (empty delta stack)
//   GET  /api/scenarios/{id}             derived line + revision
//   POST /api/scenarios/{id}/delta       push a delta; honours expected_revision
//   POST /api/scenarios/{id}/undo        pop the last delta
//   GET  /api/scenarios/{id}/capacity    CapacityReport of the derived line
//   GET  /api/scenarios/{id}/vsm         lead time and VA ratio
//   POST /api/scenarios/{id}/balance     BalancePlan for {"target": N}
//   GET  /api/scenarios/{id}/lp          capacity LP and its solution
//
// Errors: 404 unknown scenario, 409 stale revision, 422 invalid request.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "crp/document.h"
#include "crp/model.h"

namespace crp {

struct ScenarioSnapshot {
  std::string id;
  int64_t revision = 0;
  std::vector<ScenarioDelta> deltas;
  ProductionLine line;  // base line with `deltas` applied in order
};

// Thread-safe in-memory scenario store. Each scenario is a stack of deltas
// over a shared base document; mutations to one scenario are serialized and
// bump its revision.
class ScenarioStore {
 public:
  // `snapshot_path`, when non-empty, receives a JSON dump of the whole store
  // after every mutation.
  explicit ScenarioStore(LineDocument base, std::string snapshot_path = "");

  ScenarioStore(const ScenarioStore&) = delete;
  ScenarioStore& operator=(const ScenarioStore&) = delete;

  const LineDocument& base() const { return base_; }

  std::string Create();

  // NotFound for an unknown id.
  absl::StatusOr<ScenarioSnapshot> Get(const std::string& id) const;

  // Applies `delta` on top of the scenario. Returns the new revision.
  // Aborted when `expected_revision` is given and stale, InvalidArgument or
  // NotFound (unknown station) when the delta does not apply.
  absl::StatusOr<int64_t> PushDelta(const std::string& id,
                                    const ScenarioDelta& delta,
                                    std::optional<int64_t> expected_revision);

  // Pops the last delta. FailedPrecondition on an empty stack.
  absl::StatusOr<int64_t> Undo(const std::string& id,
                               std::optional<int64_t> expected_revision = {});

  std::vector<std::string> ScenarioIds() const;

 private:
  struct Scenario {
    mutable std::mutex mu;
    int64_t revision = 0;
    std::vector<ScenarioDelta> deltas;
    ProductionLine line;
  };

  Scenario* Find(const std::string& id) const;
  void WriteSnapshot() const;

  const LineDocument base_;
  const std::string snapshot_path_;
  mutable std::shared_mutex map_mu_;
  std::map<std::string, std::unique_ptr<Scenario>> scenarios_;
  int64_t next_id_ = 1;
  mutable std::mutex snapshot_mu_;
};

struct ApiRequest {
  std::string method;  // "GET", "POST"
  std::string path;
  std::string body;
};

struct ApiResponse {
  int status = 200;
  std::string body;  // JSON
  std::map<std::string, std::string> headers;
};

// Transport-independent request router. Every number it returns comes
// straight from the engines; it does no arithmetic of its own.
class PlanningApi {
 public:
  explicit PlanningApi(ScenarioStore& store) : store_(store) {}

  ApiResponse Handle(const ApiRequest& request);

 private:
  ScenarioStore& store_;
};

struct ServerOptions {
  bool allow_dev_origin = false;  // adds permissive CORS headers
  std::string ui_dir;             // static assets served under "/"
};

// HTTP/1.1 front end for PlanningApi.
class PlanningServer {
 public:
  PlanningServer(ScenarioStore& store, ServerOptions options);
  ~PlanningServer();

  PlanningServer(const PlanningServer&) = delete;
  PlanningServer& operator=(const PlanningServer&) = delete;

  // Binds to `port` (0 picks a free one). Returns the bound port or -1.
  int Bind(const std::string& host, int port);
  // Blocks serving until Stop().
  bool Listen();
  void Stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace crp

#endif  // CRP_SERVICE_H_
