#include <benchmark/benchmark.h>

#include "helfrich/theorem.hpp"

using namespace helfrich;
using namespace helfrich::algebra;

namespace {

// The slope tower is cached per process, so this times clearing, matching and elimination.
void BM_VerifyTheorem(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(verify_theorem());
}
BENCHMARK(BM_VerifyTheorem)->Unit(benchmark::kMillisecond);

void BM_BuildResidual(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(build_residual_symbolic(true));
}
BENCHMARK(BM_BuildResidual)->Unit(benchmark::kMillisecond);

void BM_ClearRadicals(benchmark::State& state) {
  const RadExpr h = build_residual_symbolic(true);
  for (auto _ : state) benchmark::DoNotOptimize(clear_radicals(h));
}
BENCHMARK(BM_ClearRadicals)->Unit(benchmark::kMillisecond);

void BM_Differentiate(benchmark::State& state) {
  const RadExpr u = build_u_symbolic();
  for (auto _ : state) benchmark::DoNotOptimize(differentiate(u));
}
BENCHMARK(BM_Differentiate)->Unit(benchmark::kMicrosecond);

void BM_SymbolicThirdDerivative(benchmark::State& state) {
  const SymbolicCassiniProfile p(0.6);
  double r = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(p.third_derivative(r));
    r = r > 1.0 ? 0.1 : r + 1e-3;
  }
}
BENCHMARK(BM_SymbolicThirdDerivative);

}  // namespace

BENCHMARK_MAIN();
