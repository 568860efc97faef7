// Character-sum kernels and the Fredholm determinant, parallel against serial.
// Set OMP_NUM_THREADS to control the parallel width.

#include <benchmark/benchmark.h>

#include "tadic/dwork.hpp"
#include "tadic/expsum.hpp"

using namespace tadic;

namespace {

PolyInput sample() {
  PolyInput f;
  f.p = 13;
  f.d = 3;
  f.k = 2;
  f.coeffs = {{3, 2}, {2, 5}, {1, 1}};
  return f;
}

void ExpSum(benchmark::State& state, Kernel kernel) {
  const auto f = sample();
  const int l = static_cast<int>(state.range(0));
  ExpSumOptions o;
  o.kernel = kernel;
  for (auto _ : state) benchmark::DoNotOptimize(exp_sum(f, l, 5, 40, o));
  std::uint64_t n = 1;
  for (int i = 0; i < l; ++i) n *= f.p;
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * (n - 1)));
}

void Fredholm(benchmark::State& state) {
  PolyInput f;
  f.p = 11;
  f.d = 2;
  f.k = 1;
  f.coeffs = {{2, 1}, {1, 1}};
  const auto A = build_matrix(f, tail_rule(11, 2, 40), 40, 5);
  for (auto _ : state) benchmark::DoNotOptimize(fredholm(A, 4));
}

}  // namespace

BENCHMARK_CAPTURE(ExpSum, parallel, Kernel::Parallel)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(ExpSum, serial, Kernel::Serial)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(ExpSum, reference, Kernel::Reference)->DenseRange(2, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(Fredholm)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
