#include <benchmark/benchmark.h>

#include <cmath>

#include "flatrange/kippenhahn.hpp"
#include "flatrange/random_matrices.hpp"

using namespace flatrange;

static void BM_CoeffsNilpotent4(benchmark::State& state) {
  Rng rng(5);
  const CMat a = random_nilpotent(4, rng);
  for (auto _ : state) benchmark::DoNotOptimize(coeffs_nilpotent4(a));
}
BENCHMARK(BM_CoeffsNilpotent4);

static void BM_KippenhahnPolynomial(benchmark::State& state) {
  Rng rng(6);
  const CMat a = random_general(static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(kippenhahn_polynomial(a));
}
BENCHMARK(BM_KippenhahnPolynomial)->DenseRange(2, 8, 2);

static void BM_SingularPointsWithflat(benchmark::State& state) {
  const double h = std::sqrt(3.0) / 2.0;
  const CMat a{{0.0, 1.0, 0.5, h}, {0.0, 0.0, 0.5, h}, {0.0, 0.0, 0.0, h}, {0.0, 0.0, 0.0, 0.0}};
  const KippenhahnQuartic q = coeffs_nilpotent4(a);
  const int grid = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(singular_points(q, 10.0, grid));
}
BENCHMARK(BM_SingularPointsWithflat)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);
