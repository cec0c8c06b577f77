#include <benchmark/benchmark.h>

#include <random>

#include "oscot/solver.hpp"

using namespace oscot;

namespace {

Instance random_instance(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(0, 200);
  auto grid = [&](int count) {
    std::vector<Rat> xs;
    while (static_cast<int>(xs.size()) < count) {
      Rat x(num(rng), 200);
      if (std::find(xs.begin(), xs.end(), x) == xs.end()) xs.push_back(x);
    }
    std::sort(xs.begin(), xs.end());
    std::vector<Atom> atoms;
    for (const Rat& x : xs) atoms.push_back(Atom{x, Rat(1, count)});
    return Measure1D::atomic(atoms);
  };
  return Instance{Domain::unit(), Domain::unit(), Rat(1, 5), grid(n), grid(n)};
}

void BM_Solve(benchmark::State& state) {
  Instance inst = random_instance(static_cast<int>(state.range(0)), 7);
  for (auto _ : state) {
    SolveResult r = solve(inst);
    benchmark::DoNotOptimize(r.K);
  }
}
BENCHMARK(BM_Solve)->Arg(6)->Arg(10)->Arg(14)->Unit(benchmark::kMillisecond);

void BM_OracleSolve(benchmark::State& state) {
  Instance inst = random_instance(static_cast<int>(state.range(0)), 7);
  for (auto _ : state) {
    Rat k = oracle_solve(inst);
    benchmark::DoNotOptimize(k);
  }
}
BENCHMARK(BM_OracleSolve)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
