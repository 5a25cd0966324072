#include <benchmark/benchmark.h>

#include "carnot/casimir.hpp"
#include "carnot/flow.hpp"
#include "carnot/poisson.hpp"

using namespace carnot;

static void BM_BuildAlgebra(benchmark::State& state) {
  const int r = static_cast<int>(state.range(0)), s = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(build_algebra(r, s));
}
BENCHMARK(BM_BuildAlgebra)->Args({3, 3})->Args({4, 3})->Args({3, 4})->Args({6, 3});

static void BM_Bracket(benchmark::State& state) {
  const auto alg = build_algebra(4, 3);
  const auto a = LieElement::basis(0) + LieElement::basis(5), b = LieElement::basis(1) + LieElement::basis(6);
  for (auto _ : state) benchmark::DoNotOptimize(alg.bracket(a, b));
}
BENCHMARK(BM_Bracket);

static void BM_PoissonBracket(benchmark::State& state) {
  const auto alg = build_algebra(2, 3);
  const auto q = complete_system(alg).quadratic_on_levels.front().polynomial;
  const auto h = parse_polynomial(alg, "x1^2 + x2^2");
  for (auto _ : state) benchmark::DoNotOptimize(poisson_bracket(alg, h, q));
}
BENCHMARK(BM_PoissonBracket);

static void BM_MinorCasimirs(benchmark::State& state) {
  const auto alg = build_algebra(static_cast<int>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(minor_casimirs(alg));
}
BENCHMARK(BM_MinorCasimirs)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_Step4Quadratic(benchmark::State& state) {
  const auto alg = build_algebra(static_cast<int>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(quadratic_casimirs_step4(alg));
}
BENCHMARK(BM_Step4Quadratic)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_RK4(benchmark::State& state) {
  const auto alg = build_algebra(3, 3);
  Point p(alg);
  p.set("x1", 1);
  p.set("x12", 1);
  p.set("x112", 1);
  p.set("x213", -2);
  const auto spec = ControlSpec::identity(3);
  for (auto _ : state) benchmark::DoNotOptimize(integrate_vertical(alg, spec, p, 10, 1e-3));
  state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_RK4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
