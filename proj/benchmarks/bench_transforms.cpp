#include <benchmark/benchmark.h>

#include <random>

#include "oscot/transforms.hpp"

using namespace oscot;

namespace {

StepFn random_step_fn(int pieces, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(0, 400);
  std::vector<Rat> cuts;
  while (static_cast<int>(cuts.size()) < pieces - 1) {
    Rat c(num(rng), 400);
    if (std::find(cuts.begin(), cuts.end(), c) == cuts.end() && c > 0 && c < 1) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<Piece> out;
  Bound cursor{Rat(0), 0};
  for (const Rat& c : cuts) {
    out.push_back(Piece{Interval::from_bounds(cursor, Bound{c, -1}).value(), Rat(num(rng), 40)});
    cursor = Bound{c, 0};
  }
  out.push_back(Piece{Interval::from_bounds(cursor, Bound{Rat(1), 0}).value(), Rat(num(rng), 40)});
  return StepFn(Domain::unit(), std::move(out));
}

void BM_UpTransform(benchmark::State& state) {
  StepFn f = random_step_fn(static_cast<int>(state.range(0)), 42);
  Rat delta(1, 20);
  for (auto _ : state) {
    StepFn up = up_transform(f, delta);
    benchmark::DoNotOptimize(up.pieces().size());
  }
}
BENCHMARK(BM_UpTransform)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_ConjugateClosure(benchmark::State& state) {
  StepFn f = random_step_fn(static_cast<int>(state.range(0)), 43);
  Rat delta(1, 20);
  for (auto _ : state) {
    ConjugatePair pair = conjugate_closure(f, delta);
    benchmark::DoNotOptimize(pair.psi().pieces().size());
  }
}
BENCHMARK(BM_ConjugateClosure)->Arg(8)->Arg(32);

void BM_MonotoneDecomposition(benchmark::State& state) {
  StepFn f = random_step_fn(32, 44);
  Rat delta(1, 20);
  ConjugatePair pair = conjugate_closure(f, delta);
  for (auto _ : state) {
    MonotoneDecomposition dec = monotone_decomposition(pair);
    benchmark::DoNotOptimize(dec.merged.size());
  }
}
BENCHMARK(BM_MonotoneDecomposition);

}  // namespace

BENCHMARK_MAIN();
