#include <random>

#include "benchmark/benchmark.h"
#include "crp/balance.h"
#include "crp/capacity.h"
#include "crp/simplex.h"

namespace crp {
namespace {

ProductionLine LongLine(int stations) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> pick(1, 30);
  ProductionLine line;
  line.id = "bench";
  for (int i = 0; i < stations; ++i) {
    Workstation ws;
    ws.id = "s" + std::to_string(i);
    ws.cycle_time = pick(rng);
    ws.total_batch_time = ws.cycle_time;
    ws.labor_resources = pick(rng);
    if (i % 2 == 0) {
      ws.machine_pool =
          MachinePool{UnitsPerResource(line.available_minutes, ws.cycle_time),
                      pick(rng)};
    }
    line.workstations.push_back(ws);
  }
  line.styles.push_back(CycleTimeStyle(line, "a"));
  return line;
}

void BM_AnalyzeCapacity(benchmark::State& state) {
  const ProductionLine line = LongLine(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    CapacityReport report = AnalyzeCapacity(line);
    benchmark::DoNotOptimize(report);
  }
}
BENCHMARK(BM_AnalyzeCapacity)->Range(8, 1024);

void BM_CrpLp(benchmark::State& state) {
  const ProductionLine line = LongLine(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto lp = BuildCrpLp(line, line.styles);
    auto solution = Solve(lp->problem);
    benchmark::DoNotOptimize(solution);
  }
}
BENCHMARK(BM_CrpLp)->Range(8, 128);

void BM_BalanceLine(benchmark::State& state) {
  const ProductionLine line = LongLine(static_cast<int>(state.range(0)));
  const int64_t target = AnalyzeCapacity(line).fg_throughput * 3 / 2;
  const BalancePolicy policy = DefaultPolicy(line, target);
  for (auto _ : state) {
    auto plan = BalanceLine(line, policy);
    benchmark::DoNotOptimize(plan);
  }
}
BENCHMARK(BM_BalanceLine)->Range(8, 128);

}  // namespace
}  // namespace crp
