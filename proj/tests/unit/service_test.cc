#include "crp/service.h"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include <unistd.h>

#include "crp/capacity.h"
#include "gtest/gtest.h"
#include "httplib.h"
#include "test_support.h"

namespace crp {
namespace {

using ::crp::testing::ExamplePath;
using ::crp::testing::LoadFixture;

const ScenarioDelta kAddCutting{{Edit::AddLabor("fabric_cutting", 1),
                                 Edit::AddMachines("fabric_cutting", 1)}};

std::string DeltaBody(std::optional<int64_t> expected) {
  Json body = DeltaToJson(kAddCutting);
  if (expected) body["expected_revision"] = *expected;
  return body.dump();
}

TEST(ScenarioStoreTest, PushUndoAndRevisions) {
  ScenarioStore store(LoadFixture("figure6_future.json"));
  const std::string id = store.Create();
  EXPECT_EQ(id, "s1");
  EXPECT_EQ(store.Create(), "s2");
  EXPECT_EQ(store.ScenarioIds(), (std::vector<std::string>{"s1", "s2"}));

  auto rev = store.PushDelta(id, kAddCutting, 0);
  ASSERT_TRUE(rev.ok());
  EXPECT_EQ(*rev, 1);
  auto snap = store.Get(id);
  ASSERT_TRUE(snap.ok());
  EXPECT_EQ(snap->line, LoadFixture("figure7.json").line);
  EXPECT_EQ(snap->deltas.size(), 1u);

  EXPECT_EQ(store.PushDelta(id, kAddCutting, 0).status().code(),
            absl::StatusCode::kAborted);
  EXPECT_EQ(store.PushDelta("s9", kAddCutting, {}).status().code(),
            absl::StatusCode::kNotFound);
  EXPECT_EQ(store.PushDelta(id, {{Edit::AddLabor("ghost", 1)}}, {})
                .status()
                .code(),
            absl::StatusCode::kNotFound);

  auto undone = store.Undo(id, 1);
  ASSERT_TRUE(undone.ok());
  EXPECT_EQ(*undone, 2);
  EXPECT_EQ(store.Get(id)->line, store.base().line);
  EXPECT_EQ(store.Undo(id).status().code(),
            absl::StatusCode::kFailedPrecondition);
  // The other scenario never moved.
  EXPECT_EQ(store.Get("s2")->revision, 0);
}

TEST(ScenarioStoreTest, UndoRestoresEarlierLineExactly) {
  ScenarioStore store(LoadFixture("figure6_current.json"));
  const std::string id = store.Create();
  ASSERT_TRUE(store.PushDelta(id, {{Edit::SetCycleTime("part_sewing", 20)}}, {}).ok());
  const ProductionLine after_first = store.Get(id)->line;
  ASSERT_TRUE(store.PushDelta(id, {{Edit::SetCycleTime("part_sewing", 7),
                                    Edit::AddLabor("picking_accessories", 3)}},
                              {})
                  .ok());
  ASSERT_TRUE(store.Undo(id).ok());
  EXPECT_EQ(store.Get(id)->line, after_first);
}

TEST(ScenarioStoreTest, ConcurrentPushesWithSameRevision) {
  ScenarioStore store(LoadFixture("figure6_future.json"));
  const std::string id = store.Create();
  std::atomic<int> ok{0};
  std::atomic<int> aborted{0};
  std::vector<std::thread> threads;
  for (int t = 0; t < 16; ++t) {
    threads.emplace_back([&] {
      auto rev = store.PushDelta(id, kAddCutting, 0);
      if (rev.ok()) {
        ++ok;
      } else if (rev.status().code() == absl::StatusCode::kAborted) {
        ++aborted;
      }
    });
  }
  for (auto& t : threads) t.join();
  EXPECT_EQ(ok.load(), 1);
  EXPECT_EQ(aborted.load(), 15);
  EXPECT_EQ(store.Get(id)->revision, 1);
}

TEST(ScenarioStoreTest, ConcurrentUnconditionalPushesAllLand) {
  ScenarioStore store(LoadFixture("figure6_future.json"));
  const std::string id = store.Create();
  std::vector<std::thread> threads;
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([&] {
      for (int i = 0; i < 25; ++i) {
        ASSERT_TRUE(store.PushDelta(id, {{Edit::AddLabor("packing_cartoning", 1)}}, {}).ok());
      }
    });
  }
  for (auto& t : threads) t.join();
  auto snap = store.Get(id);
  EXPECT_EQ(snap->revision, 200);
  EXPECT_EQ(snap->line.Find("packing_cartoning")->labor_resources, 203);
}

TEST(ScenarioStoreTest, SnapshotFile) {
  const std::string path =
      ::testing::TempDir() + "/crp_snapshot_" + std::to_string(::getpid()) + ".json";
  {
    ScenarioStore store(LoadFixture("figure6_future.json"), path);
    const std::string id = store.Create();
    ASSERT_TRUE(store.PushDelta(id, kAddCutting, {}).ok());
  }
  std::ifstream in(path);
  ASSERT_TRUE(in.good());
  Json j = Json::parse(in);
  EXPECT_EQ(j["scenarios"]["s1"]["revision"], 1);
  EXPECT_EQ(j["scenarios"]["s1"]["deltas"][0], DeltaToJson(kAddCutting));
  EXPECT_TRUE(LineDocumentFromJson(j["base"]).ok());
  std::remove(path.c_str());
}

class PlanningApiTest : public ::testing::Test {
 protected:
  PlanningApiTest() : store_(LoadFixture("figure6_future.json")), api_(store_) {}

  ApiResponse Call(std::string method, std::string path, std::string body = "") {
    return api_.Handle({std::move(method), std::move(path), std::move(body)});
  }

  Json Body(const ApiResponse& r) { return Json::parse(r.body); }

  ScenarioStore store_;
  PlanningApi api_;
};

TEST_F(PlanningApiTest, FutureToLeanTransition) {
  ApiResponse created = Call("POST", "/api/scenarios");
  ASSERT_EQ(created.status, 201);
  const std::string id = Body(created)["id"];
  const std::string base = "/api/scenarios/" + id;

  ApiResponse before = Call("GET", base + "/capacity");
  ASSERT_EQ(before.status, 200);
  EXPECT_EQ(Body(before)["fg_throughput"], 240);

  ApiResponse pushed = Call("POST", base + "/delta", DeltaBody(0));
  ASSERT_EQ(pushed.status, 200) << pushed.body;
  EXPECT_EQ(Body(pushed)["revision"], 1);
  EXPECT_EQ(pushed.headers["X-Scenario-Revision"], "1");

  ApiResponse after = Call("GET", base + "/capacity");
  ASSERT_EQ(after.status, 200);
  auto report = CapacityReportFromJson(Body(after));
  ASSERT_TRUE(report.ok());
  EXPECT_EQ(*report, AnalyzeCapacity(LoadFixture("figure7.json").line));
  EXPECT_EQ(report->fg_throughput, 300);
  EXPECT_EQ(report->bottleneck().station_id, "part_sewing");

  ApiResponse stale = Call("POST", base + "/delta", DeltaBody(0));
  EXPECT_EQ(stale.status, 409);
  EXPECT_EQ(Body(stale)["current_revision"], 1);

  ApiResponse undo = Call("POST", base + "/undo", R"({"expected_revision": 1})");
  ASSERT_EQ(undo.status, 200);
  ApiResponse scenario = Call("GET", base);
  ASSERT_EQ(scenario.status, 200);
  EXPECT_EQ(Body(scenario)["revision"], 2);
  EXPECT_EQ(Body(scenario)["delta_count"], 0);
  EXPECT_EQ(Body(scenario)["line"], LineToJson(store_.base().line));
  EXPECT_EQ(Body(Call("GET", base + "/capacity"))["fg_throughput"], 240);
}

TEST_F(PlanningApiTest, LineLpAndBalance) {
  ApiResponse line = Call("GET", "/api/line");
  ASSERT_EQ(line.status, 200);
  EXPECT_EQ(Body(line)["id"], "garment-line-style-a");

  const std::string id = Body(Call("POST", "/api/scenarios"))["id"];
  ApiResponse balance =
      Call("POST", "/api/scenarios/" + id + "/balance", R"({"target": 300})");
  ASSERT_EQ(balance.status, 200) << balance.body;
  Json plan = Body(balance);
  EXPECT_EQ(plan["steps"].size(), 1u);
  EXPECT_EQ(plan["achieved"], true);
  EXPECT_EQ(plan["recommended_delta"], DeltaToJson(kAddCutting));

  // The recommendation can be pushed straight back.
  ApiResponse pushed = Call("POST", "/api/scenarios/" + id + "/delta",
                            plan["recommended_delta"].dump());
  ASSERT_EQ(pushed.status, 200);

  ApiResponse lp = Call("GET", "/api/scenarios/" + id + "/lp");
  ASSERT_EQ(lp.status, 200);
  EXPECT_NEAR(Body(lp)["solution"]["z"].get<double>(), 300.0, 1e-6);
  EXPECT_EQ(Body(lp)["limiting_constraint"], "part_sewing/machine");
}

TEST_F(PlanningApiTest, Errors) {
  EXPECT_EQ(Call("GET", "/api/scenarios/s42/capacity").status, 404);
  EXPECT_EQ(Call("GET", "/nope").status, 404);
  EXPECT_EQ(Call("DELETE", "/api/line").status, 405);
  const std::string id = Body(Call("POST", "/api/scenarios"))["id"];
  const std::string base = "/api/scenarios/" + id;
  EXPECT_EQ(Call("POST", base + "/delta", "{not json").status, 422);
  EXPECT_EQ(Call("POST", base + "/delta", R"({"edits": [{"op": "x"}]})").status,
            422);
  EXPECT_EQ(Call("POST", base + "/delta",
                 R"({"edits": [{"op": "add_labor", "station_id": "ghost", "amount": 1}]})")
                .status,
            404);
  ApiResponse empty_undo = Call("POST", base + "/undo");
  EXPECT_EQ(empty_undo.status, 422);
  EXPECT_EQ(Body(empty_undo)["error"], "nothing to undo");
  EXPECT_EQ(Call("POST", base + "/balance", R"({"target": "lots"})").status, 422);
  EXPECT_EQ(Call("GET", base + "/vsm").status, 404);
  EXPECT_EQ(Call("GET", base + "/capacity/extra").status, 404);
}

TEST(PlanningApiVsmTest, LeadTimeWhenPresent) {
  ParsedDocument doc = LoadLineDocument(ExamplePath("three_process_current.json"));
  ASSERT_TRUE(doc.ok());
  ScenarioStore store(*doc.document);
  PlanningApi api(store);
  const std::string id = Json::parse(api.Handle({"POST", "/api/scenarios", ""}).body)["id"];
  ApiResponse vsm = api.Handle({"GET", "/api/scenarios/" + id + "/vsm", ""});
  ASSERT_EQ(vsm.status, 200);
  Json j = Json::parse(vsm.body);
  EXPECT_EQ(j["lead_time"], 485.0);
  EXPECT_NEAR(j["va_ratio"].get<double>(), 35.0 / 485.0, 1e-12);
}

TEST(PlanningServerTest, OverHttp) {
  ScenarioStore store(LoadFixture("figure6_future.json"));
  PlanningServer server(store, {/*allow_dev_origin=*/true, ""});
  const int port = server.Bind("127.0.0.1", 0);
  ASSERT_GT(port, 0);
  std::thread listener([&] { server.Listen(); });

  httplib::Client client("127.0.0.1", port);
  auto created = client.Post("/api/scenarios", "", "application/json");
  ASSERT_TRUE(created);
  ASSERT_EQ(created->status, 201);
  const std::string id = Json::parse(created->body)["id"];
  const std::string base = "/api/scenarios/" + id;

  auto pushed = client.Post(base + "/delta", DeltaBody(0), "application/json");
  ASSERT_TRUE(pushed);
  EXPECT_EQ(pushed->status, 200);
  EXPECT_EQ(pushed->get_header_value("X-Scenario-Revision"), "1");
  EXPECT_EQ(pushed->get_header_value("Access-Control-Allow-Origin"), "*");

  auto capacity = client.Get(base + "/capacity");
  ASSERT_TRUE(capacity);
  EXPECT_EQ(Json::parse(capacity->body)["fg_throughput"], 300);

  auto stale = client.Post(base + "/delta", DeltaBody(0), "application/json");
  ASSERT_TRUE(stale);
  EXPECT_EQ(stale->status, 409);

  auto undo = client.Post(base + "/undo", "", "application/json");
  ASSERT_TRUE(undo);
  EXPECT_EQ(undo->status, 200);
  auto restored = client.Get(base + "/capacity");
  ASSERT_TRUE(restored);
  EXPECT_EQ(Json::parse(restored->body)["fg_throughput"], 240);

  auto preflight = client.Options(base + "/delta");
  ASSERT_TRUE(preflight);
  EXPECT_EQ(preflight->status, 204);

  server.Stop();
  listener.join();
}

}  // namespace
}  // namespace crp
