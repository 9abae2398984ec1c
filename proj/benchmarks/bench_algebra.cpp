#include <benchmark/benchmark.h>

#include "canonq/lang.hpp"
#include "canonq/poisson.hpp"
#include "canonq/quantise.hpp"
#include "canonq/sampling.hpp"
#include "canonq/weyl.hpp"

using namespace canonq;

static void BM_PolyProduct(benchmark::State& state) {
  Rng rng = case_rng(1, 0);
  PolySpec spec;
  spec.n = static_cast<int>(state.range(0));
  spec.max_degree = 6;
  spec.max_terms = 8;
  const PhasePoly f = random_poly(rng, spec), g = random_poly(rng, spec);
  for (auto _ : state) benchmark::DoNotOptimize(f * g);
}
BENCHMARK(BM_PolyProduct)->Arg(1)->Arg(2)->Arg(3);

static void BM_PoissonBracket(benchmark::State& state) {
  Rng rng = case_rng(2, 0);
  PolySpec spec;
  spec.n = static_cast<int>(state.range(0));
  spec.max_degree = 6;
  spec.max_terms = 8;
  const PhasePoly f = random_poly(rng, spec), g = random_poly(rng, spec);
  for (auto _ : state) benchmark::DoNotOptimize(bracket(f, g));
}
BENCHMARK(BM_PoissonBracket)->Arg(1)->Arg(2)->Arg(3);

static void BM_WeylProduct(benchmark::State& state) {
  const WeylOp a = pow(WeylOp::p_hat(1, 0), static_cast<unsigned>(state.range(0)));
  const WeylOp b = pow(WeylOp::q_hat(1, 0), static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_WeylProduct)->RangeMultiplier(2)->Range(2, 16);

static void BM_GvhExact(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(gvh_contradiction());
}
BENCHMARK(BM_GvhExact);

static void BM_Prequantise(benchmark::State& state) {
  const QuantMap map{MapKind::Prequant, 2};
  const PhasePoly f = parse_poly("q1^3*p2 + q2^2*p1^2 - 3*p1*p2 + hbar*q1", 2);
  for (auto _ : state) benchmark::DoNotOptimize(apply_map(map, f));
}
BENCHMARK(BM_Prequantise);

static void BM_ParsePrint(benchmark::State& state) {
  const std::string src = "(q1 + p2)^4 - (3/2)*i*hbar*q1*p1^2 + q2^3";
  for (auto _ : state) benchmark::DoNotOptimize(to_string(parse_poly(src, 2)));
}
BENCHMARK(BM_ParsePrint);
