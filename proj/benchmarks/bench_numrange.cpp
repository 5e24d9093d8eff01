#include <benchmark/benchmark.h>

#include "flatrange/hermitian_eig.hpp"
#include "flatrange/numrange.hpp"
#include "flatrange/random_matrices.hpp"

using namespace flatrange;

static void BM_HermitianEig(benchmark::State& state) {
  Rng rng(1);
  const CMat h = random_hermitian(static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_eig(h));
}
BENCHMARK(BM_HermitianEig)->DenseRange(2, 8, 2);

static void BM_SupportValue(benchmark::State& state) {
  Rng rng(2);
  const CMat a = random_general(static_cast<std::size_t>(state.range(0)), rng);
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(support_value(a, t));
    t += 0.01;
  }
}
BENCHMARK(BM_SupportValue)->DenseRange(2, 8, 2);

static void BM_FlatPortionsNilpotent4(benchmark::State& state) {
  Rng rng(3);
  const CMat a = random_nilpotent(4, rng);
  for (auto _ : state) benchmark::DoNotOptimize(flat_portions(a));
}
BENCHMARK(BM_FlatPortionsNilpotent4)->Unit(benchmark::kMillisecond);

static void BM_FlatPortionsScan(benchmark::State& state) {
  Rng rng(4);
  const CMat a = random_nilpotent(4, rng);
  Tolerances tol;
  tol.scan = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(flat_portions(a, tol));
}
BENCHMARK(BM_FlatPortionsScan)->RangeMultiplier(4)->Range(256, 16384)->Unit(benchmark::kMillisecond);
