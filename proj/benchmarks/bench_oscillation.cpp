#include <benchmark/benchmark.h>

#include "oscot/counterexample.hpp"
#include "oscot/oscillation.hpp"

using namespace oscot;

namespace {

void BM_OscMapTent(benchmark::State& state) {
  Counterexample cx = make_counterexample(Rat(1, 10));
  Domain supp = cx.instance.mu.support();
  for (auto _ : state) {
    Rat v = osc_map(cx.u_map, supp, cx.instance.delta);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_OscMapTent);

void BM_OscMapMonotone(benchmark::State& state) {
  Counterexample cx = make_counterexample(Rat(1, 10));
  Domain supp = cx.instance.mu.support();
  for (auto _ : state) {
    Rat v = osc_map(cx.monotone, supp, cx.instance.delta);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_OscMapMonotone);

}  // namespace

BENCHMARK_MAIN();
