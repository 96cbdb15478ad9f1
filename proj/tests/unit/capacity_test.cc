#include "crp/capacity.h"

#include <cmath>
#include <random>

#include "crp/simplex.h"
#include "gtest/gtest.h"
#include "test_support.h"

namespace crp {
namespace {

using ::crp::testing::LoadFixture;
using ::crp::testing::RandomLine;

std::vector<int64_t> Outputs(const CapacityReport& report) {
  std::vector<int64_t> out;
  for (const CapacityRow& row : report.rows) {
    out.push_back(row.effective_capacity);
  }
  return out;
}

TEST(MachineCapacityTest, ProductOfRateAndCount) {
  EXPECT_EQ(*MachineCapacity(20, 10), 200);
  EXPECT_EQ(*MachineCapacity(120, 3), 360);
  EXPECT_EQ(*MachineCapacity(75, 0), 0);
  EXPECT_FALSE(MachineCapacity(-1, 2).ok());
  EXPECT_FALSE(MachineCapacity(1, -2).ok());
  auto wc = MakeWorkCenterCapacity(30, 10);
  ASSERT_TRUE(wc.ok());
  EXPECT_EQ(wc->total, 300);
}

TEST(ConstraintKindTest, NamesRoundTrip) {
  for (ConstraintKind k :
       {ConstraintKind::kLabor, ConstraintKind::kMachine, ConstraintKind::kTie}) {
    EXPECT_EQ(ParseConstraintKind(ConstraintKindName(k)), k);
  }
  EXPECT_FALSE(ParseConstraintKind("bogus").has_value());
}

TEST(EffectiveCapacityTest, MinOfLaborAndMachine) {
  Workstation ws;
  ws.id = "x";
  ws.cycle_time = 5;
  ws.labor_resources = 2;
  EXPECT_EQ(LaborDailyOutput(ws, 600), 240);
  auto labor_only = ComputeEffectiveCapacity(ws, 600);
  EXPECT_EQ(labor_only.capacity, 240);
  EXPECT_EQ(labor_only.kind, ConstraintKind::kLabor);

  ws.machine_pool = MachinePool{120, 1};
  auto machine = ComputeEffectiveCapacity(ws, 600);
  EXPECT_EQ(machine.capacity, 120);
  EXPECT_EQ(machine.kind, ConstraintKind::kMachine);

  ws.machine_pool->machine_count = 2;
  EXPECT_EQ(ComputeEffectiveCapacity(ws, 600).kind, ConstraintKind::kTie);

  ws.machine_pool->machine_count = 5;
  auto labor = ComputeEffectiveCapacity(ws, 600);
  EXPECT_EQ(labor.capacity, 240);
  EXPECT_EQ(labor.kind, ConstraintKind::kLabor);
}

TEST(AnalyzeCapacityTest, CurrentState) {
  const CapacityReport report =
      AnalyzeCapacity(LoadFixture("figure6_current.json").line);
  EXPECT_EQ(Outputs(report),
            (std::vector<int64_t>{360, 240, 300, 200, 375, 300, 600, 360}));
  EXPECT_EQ(report.fg_throughput, 200);
  EXPECT_EQ(report.bottleneck().station_id, "part_sewing");
  EXPECT_EQ(report.rows[3].constraint_kind, ConstraintKind::kTie);
  EXPECT_FALSE(report.rows[0].machine_daily_capacity.has_value());
  EXPECT_EQ(report.rows[1].machine_daily_capacity, 240);
  int bottlenecks = 0;
  for (const CapacityRow& row : report.rows) bottlenecks += row.is_bottleneck;
  EXPECT_EQ(bottlenecks, 1);
}

TEST(AnalyzeCapacityTest, FutureStateShiftsBottleneckToCutting) {
  const CapacityReport report =
      AnalyzeCapacity(LoadFixture("figure6_future.json").line);
  EXPECT_EQ(report.fg_throughput, 240);
  EXPECT_EQ(report.bottleneck().station_id, "fabric_cutting");
  EXPECT_EQ(report.rows[3].effective_capacity, 300);
  EXPECT_EQ(report.rows[4].effective_capacity, 750);
  EXPECT_EQ(report.rows[5].effective_capacity, 600);
}

TEST(AnalyzeCapacityTest, LeanStateTieGoesToMachineStation) {
  const CapacityReport report =
      AnalyzeCapacity(LoadFixture("figure7.json").line);
  EXPECT_EQ(report.fg_throughput, 300);
  // Picking (labor only) also delivers 300.
  EXPECT_EQ(report.rows[2].effective_capacity, 300);
  EXPECT_EQ(report.bottleneck().station_id, "part_sewing");
  EXPECT_EQ(report.rows[1].effective_capacity, 360);
}

TEST(AnalyzeCapacityTest, LaterStationWinsAmongEqualKinds) {
  ProductionLine line;
  for (const char* id : {"a", "b", "c"}) {
    Workstation ws;
    ws.id = id;
    ws.cycle_time = 10;
    ws.total_batch_time = 10;
    ws.labor_resources = 2;
    line.workstations.push_back(ws);
  }
  line.workstations[2].labor_resources = 5;
  EXPECT_EQ(AnalyzeCapacity(line).bottleneck().station_id, "b");
}

TEST(BuildCrpLpTest, LeanStateSolvesToThreeHundred) {
  const ProductionLine line = LoadFixture("figure7.json").line;
  auto lp = BuildCrpLp(line, line.styles);
  ASSERT_TRUE(lp.ok()) << lp.status();
  EXPECT_EQ(lp->problem.num_variables(), 1u);
  EXPECT_EQ(lp->problem.num_constraints(), 12u);
  auto solution = Solve(lp->problem);
  ASSERT_TRUE(solution.ok());
  EXPECT_EQ(solution->status, LpStatus::kOptimal);
  EXPECT_NEAR(solution->z, 300.0, 1e-6);
  auto row = LimitingRow(*lp, line, *solution);
  ASSERT_TRUE(row.has_value());
  EXPECT_EQ(lp->problem.constraint_labels[*row], "part_sewing/machine");
}

TEST(BuildCrpLpTest, DemandRowsCapOutput) {
  ProductionLine line = LoadFixture("figure7.json").line;
  line.styles[0].demand_qty = 120;
  auto lp = BuildCrpLp(line, line.styles);
  ASSERT_TRUE(lp.ok());
  auto solution = Solve(lp->problem);
  ASSERT_TRUE(solution.ok());
  EXPECT_NEAR(solution->z, 120.0, 1e-6);
  // Only the demand row binds; no station limits the line.
  ASSERT_EQ(solution->active_constraints.size(), 1u);
  EXPECT_EQ(lp->rows[solution->active_constraints[0]].kind,
            CrpRowInfo::Kind::kDemand);
  EXPECT_FALSE(LimitingRow(*lp, line, *solution).has_value());
}

TEST(BuildCrpLpTest, TwoStylesShareCapacity) {
  ProductionLine line = LoadFixture("figure7.json").line;
  StyleRouting b = line.styles[0];
  b.style_id = "style-b";
  b.unit_profit = 2.0;
  for (auto& [station, sam] : b.sam_per_station) sam *= 2.0;
  line.styles.push_back(b);
  auto lp = BuildCrpLp(line, line.styles);
  ASSERT_TRUE(lp.ok());
  EXPECT_EQ(lp->problem.num_variables(), 2u);
  auto solution = Solve(lp->problem);
  ASSERT_TRUE(solution.ok());
  // Style b earns twice per unit and uses twice the time: same profit rate.
  EXPECT_NEAR(solution->z, 300.0, 1e-6);
}

TEST(BuildCrpLpTest, RejectsEmptyStyles) {
  EXPECT_EQ(BuildCrpLp(LoadFixture("figure7.json").line, {}).status().code(),
            absl::StatusCode::kInvalidArgument);
}

TEST(CapacityProperty, AddingResourcesNeverLowersOutput) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    ProductionLine line = RandomLine(rng);
    const int64_t before = AnalyzeCapacity(line).fg_throughput;
    const size_t k = rng() % line.workstations.size();
    line.workstations[k].labor_resources += 1;
    if (line.workstations[k].machine_pool) {
      line.workstations[k].machine_pool->machine_count += rng() % 2;
    }
    const CapacityReport after = AnalyzeCapacity(line);
    EXPECT_GE(after.fg_throughput, before);
    for (const CapacityRow& row : after.rows) {
      EXPECT_GE(row.effective_capacity, after.fg_throughput);
    }
  }
}

TEST(CapacityProperty, LpOptimumMatchesThroughputOnIntegralRates) {
  std::mt19937 rng(9);
  int checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const ProductionLine line = RandomLine(rng);
    const CapacityReport report = AnalyzeCapacity(line);
    auto lp = BuildCrpLp(line, {CycleTimeStyle(line)});
    ASSERT_TRUE(lp.ok());
    auto solution = Solve(lp->problem);
    ASSERT_TRUE(solution.ok());
    ASSERT_EQ(solution->status, LpStatus::kOptimal);
    EXPECT_GE(solution->z + 1e-6, static_cast<double>(report.fg_throughput));
    bool integral = true;
    for (const Workstation& ws : line.workstations) {
      const double rate = line.available_minutes / ws.cycle_time;
      integral = integral && std::abs(rate - std::round(rate)) < 1e-12;
    }
    if (integral) {
      ++checked;
      EXPECT_NEAR(solution->z, static_cast<double>(report.fg_throughput), 1e-6);
    }
  }
  EXPECT_GT(checked, 50);
}

}  // namespace
}  // namespace crp
