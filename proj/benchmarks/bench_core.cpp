#include <benchmark/benchmark.h>

#include "markoff/action.hpp"
#include "markoff/charsum.hpp"
#include "markoff/composite.hpp"
#include "markoff/quadorder.hpp"
#include "markoff/surface.hpp"
#include "markoff/t2.hpp"

using namespace markoff;

static void BM_Enumerate(benchmark::State& state) {
  const u64 p = static_cast<u64>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(SolutionTable::build(p).size());
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Enumerate)->Arg(101)->Arg(499)->Arg(997)->Unit(benchmark::kMillisecond);

static void BM_Orbits(benchmark::State& state) {
  const SolutionTable t = SolutionTable::build(static_cast<u64>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(orbits(t, kDefaultGens, Level::Blocks).count());
}
BENCHMARK(BM_Orbits)->Arg(101)->Arg(499)->Unit(benchmark::kMillisecond);

static void BM_Certify(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(certify(static_cast<u64>(state.range(0))).conclusion);
}
BENCHMARK(BM_Certify)->Arg(53)->Arg(199)->Unit(benchmark::kMillisecond);

static void BM_Composite770(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(composite_transitivity(770).solutions.start_orbit);
}
BENCHMARK(BM_Composite770)->Unit(benchmark::kMillisecond);

static void BM_SignPatternCount(benchmark::State& state) {
  const u64 p = static_cast<u64>(state.range(0));
  const u64 x = maximal_elliptic(p).front();
  for (auto _ : state) benchmark::DoNotOptimize(prop56_count(p, x).counts[0][1]);
}
BENCHMARK(BM_SignPatternCount)->Arg(127)->Arg(499)->Unit(benchmark::kMillisecond);

static void BM_OrderScan(benchmark::State& state) {
  ScanOptions opts;
  for (auto _ : state) benchmark::DoNotOptimize(scan(static_cast<u64>(state.range(0)), opts).total.primes);
}
BENCHMARK(BM_OrderScan)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_Psl2Table(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(PSL2(static_cast<u64>(state.range(0))).order());
}
BENCHMARK(BM_Psl2Table)->Arg(7)->Arg(11)->Unit(benchmark::kMillisecond);

static void BM_GenerationTest(benchmark::State& state) {
  const PSL2 g(11);
  u32 a = 1, b = 2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(g.is_generating(a, b));
    a = (a + 7) % static_cast<u32>(g.order());
    b = (b + 13) % static_cast<u32>(g.order());
  }
}
BENCHMARK(BM_GenerationTest);
BENCHMARK_MAIN();
