#include <benchmark/benchmark.h>

#include "canonq/dynamics.hpp"
#include "canonq/lang.hpp"
#include "canonq/matrixlab.hpp"

using namespace canonq;

static void BM_Flow(benchmark::State& state) {
  const PhasePoly f = parse_poly("1/2*p^2 + 1/4*q^4", 1);
  for (auto _ : state) benchmark::DoNotOptimize(integrate_flow(f, {1.0, 0.0}, 10.0, 1e-10));
}
BENCHMARK(BM_Flow)->Unit(benchmark::kMillisecond);

static void BM_Monodromy(benchmark::State& state) {
  const double r = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(monodromy(0.5, r, 1.0, 1e-9));
}
BENCHMARK(BM_Monodromy)->Arg(0)->Arg(1)->Arg(5)->Unit(benchmark::kMicrosecond);

static void BM_SpectrumScan(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(spectrum_scan(-3.2, 3.2, 0.05, 1.0, 1.0, 1e-9));
}
BENCHMARK(BM_SpectrumScan)->Unit(benchmark::kMillisecond);

static void BM_Uncertainty(benchmark::State& state) {
  Rng rng = case_rng(3, 0);
  const int dim = static_cast<int>(state.range(0));
  const ComplexMatrix f = random_hermitian(rng, dim), g = random_hermitian(rng, dim);
  const ComplexVector psi = random_state(rng, dim);
  for (auto _ : state) benchmark::DoNotOptimize(uncertainty_check(f, g, psi));
}
BENCHMARK(BM_Uncertainty)->DenseRange(2, 6, 2);

BENCHMARK_MAIN();
