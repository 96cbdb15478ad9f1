#include "crp/vsm.h"

#include <random>

#include "gtest/gtest.h"
#include "test_support.h"

namespace crp {
namespace {

using ::crp::testing::RandomVsmMap;

VsmMap ThreeProcess() {
  VsmMap map;
  for (double ct : {5.0, 20.0, 10.0}) {
    VsmProcess p;
    p.name = "p" + std::to_string(static_cast<int>(ct));
    p.cycle_time = ct;
    p.value_added_time = ct;
    map.processes.push_back(p);
  }
  map.buffers = {0, 100, 50};
  map.customer_demand = 200;
  return map;
}

TEST(LeadTimeTest, ThreeProcessExample) {
  auto breakdown = AnalyzeLeadTime(ThreeProcess());
  ASSERT_TRUE(breakdown.ok());
  EXPECT_EQ(breakdown->processing, 35.0);
  EXPECT_EQ(breakdown->waiting, 450.0);
  EXPECT_EQ(breakdown->total, 485.0);
  EXPECT_EQ(breakdown->non_value_added(), 450.0);
  EXPECT_NEAR(*VaRatio(ThreeProcess()), 35.0 / 485.0, 1e-12);
}

TEST(LeadTimeTest, UptimeStretchesCycleTime) {
  VsmMap map = ThreeProcess();
  map.processes[1].uptime_fraction = 0.5;
  EXPECT_DOUBLE_EQ(*LeadTime(map), 505.0);
}

TEST(LeadTimeTest, ChangeoverOnlyWithFrequency) {
  VsmMap map = ThreeProcess();
  map.processes[0].changeover_time = 40;
  EXPECT_DOUBLE_EQ(*LeadTime(map), 485.0);
  map.processes[0].changeovers_per_day = 5;
  EXPECT_DOUBLE_EQ(*LeadTime(map), 486.0);
}

TEST(LeadTimeTest, DefectsDoNotStretchLeadTime) {
  VsmMap map = ThreeProcess();
  map.processes[2].defect_rate = 0.1;
  map.processes[1].defect_rate = 0.5;
  EXPECT_DOUBLE_EQ(*LeadTime(map), 485.0);
  EXPECT_DOUBLE_EQ(RolledThroughputYield(map), 0.45);
}

TEST(LeadTimeTest, Errors) {
  VsmMap map = ThreeProcess();
  map.processes[0].uptime_fraction = 0.0;
  EXPECT_FALSE(LeadTime(map).ok());

  map = ThreeProcess();
  map.buffers.pop_back();
  EXPECT_FALSE(ValidateVsmMap(map).empty());
  EXPECT_FALSE(LeadTime(map).ok());

  map = ThreeProcess();
  map.customer_demand = 0;
  EXPECT_FALSE(LeadTime(map).ok());

  VsmMap empty;
  empty.customer_demand = 10;
  EXPECT_EQ(*LeadTime(empty), 0.0);
  EXPECT_EQ(VaRatio(empty).status().code(),
            absl::StatusCode::kFailedPrecondition);
}

TEST(WeightedCycleTimeTest, DemandWeightedMean) {
  EXPECT_DOUBLE_EQ(*WeightedCycleTime({{100, 10}, {300, 20}}), 17.5);
  EXPECT_FALSE(WeightedCycleTime({}).ok());
  EXPECT_FALSE(WeightedCycleTime({{0, 10}}).ok());
  EXPECT_FALSE(WeightedCycleTime({{-1, 10}, {2, 3}}).ok());
}

TEST(CompareStatesTest, ReductionAndPercentage) {
  StateComparison c = CompareLeadTimes(1000, 600);
  EXPECT_EQ(c.reduction, 400);
  EXPECT_DOUBLE_EQ(c.reduction_pct, 0.4);

  VsmMap future = ThreeProcess();
  future.buffers = {0, 20, 10};
  auto cmp = CompareStates(ThreeProcess(), future);
  ASSERT_TRUE(cmp.ok());
  EXPECT_EQ(cmp->lead_current, 485);
  EXPECT_EQ(cmp->lead_future, 125);
  EXPECT_EQ(cmp->reduction, 360);
  EXPECT_EQ(cmp->yield_current, 1.0);
}

TEST(CompareStatesTest, FutureLeadTimeAndReductionReadings) {
  // A single quoted number may be the future lead time or the reduction.
  const StateComparison as_future = CompareLeadTimes(9000, 5000);
  const StateComparison as_reduction = CompareLeadTimes(9000, 9000 - 5000);
  EXPECT_EQ(as_future.reduction, 4000);
  EXPECT_EQ(as_reduction.lead_future, 4000);
  EXPECT_EQ(as_reduction.reduction, 5000);
}

TEST(VsmProperty, LeadTimeMonotoneUnderPerturbation) {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> more(0.0, 50.0);
  for (int trial = 0; trial < 600; ++trial) {
    const VsmMap map = RandomVsmMap(rng);
    ASSERT_TRUE(ValidateVsmMap(map).empty()) << "trial " << trial;
    const double base = *LeadTime(map);
    const size_t k = rng() % map.processes.size();

    VsmMap buffer = map;
    buffer.buffers[k] += more(rng);
    EXPECT_GE(*LeadTime(buffer), base);

    VsmMap cycle = map;
    cycle.processes[k].cycle_time += more(rng);
    EXPECT_GE(*LeadTime(cycle), base);

    VsmMap uptime = map;
    uptime.processes[k].uptime_fraction *= 0.9;
    EXPECT_GE(*LeadTime(uptime), base);

    VsmMap demand = map;
    demand.customer_demand *= 2.0;
    EXPECT_LE(*LeadTime(demand), base);
  }
}

TEST(VsmProperty, LeadTimeBoundsValueAdded) {
  std::mt19937 rng(37);
  for (int trial = 0; trial < 600; ++trial) {
    const VsmMap map = RandomVsmMap(rng);
    auto breakdown = AnalyzeLeadTime(map);
    ASSERT_TRUE(breakdown.ok());
    EXPECT_GE(breakdown->total + 1e-9, breakdown->value_added);
    auto ratio = VaRatio(map);
    ASSERT_TRUE(ratio.ok());
    EXPECT_GE(*ratio, 0.0);
    EXPECT_LE(*ratio, 1.0);
    const double yield = RolledThroughputYield(map);
    EXPECT_GT(yield, 0.0);
    EXPECT_LE(yield, 1.0);
  }
}

}  // namespace
}  // namespace crp
