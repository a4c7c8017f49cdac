#include <benchmark/benchmark.h>

#include <cmath>

#include "helfrich/cmc.hpp"
#include "helfrich/functional.hpp"
#include "helfrich/quadrature.hpp"
#include "helfrich/residual.hpp"

using namespace helfrich;

namespace {

constexpr SignConvention kPlus = SignConvention::plus;

void BM_SingularQuadrature(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(
        integrate_radial([](double x) { return 1.0 / std::sqrt(1.0 - x * x); }, 0.0, 1.0, false, true));
}
BENCHMARK(BM_SingularQuadrature);

void BM_HelfrichEnergy(benchmark::State& state) {
  const CassiniProfile p(static_cast<double>(state.range(0)) / 10.0);
  for (auto _ : state) benchmark::DoNotOptimize(helfrich_energy(p, {1.0, 0.5, 0.2, -0.1}, kPlus));
}
BENCHMARK(BM_HelfrichEnergy)->Arg(0)->Arg(5)->Arg(12)->Unit(benchmark::kMicrosecond);

void BM_ResidualReport(benchmark::State& state) {
  const CassiniProfile p(0.5);
  const auto form = static_cast<ResidualForm>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(residual_report(p, {1.0, 0.5, 0.2, -0.1}, form, 64, 0.05, kPlus));
}
BENCHMARK(BM_ResidualReport)
    ->Arg(static_cast<int>(ResidualForm::u_form))
    ->Arg(static_cast<int>(ResidualForm::psi_form))
    ->Unit(benchmark::kMicrosecond);

void BM_FitParameters(benchmark::State& state) {
  const double eps = static_cast<double>(state.range(0)) / 10.0;
  for (auto _ : state) benchmark::DoNotOptimize(fit_parameters(eps));
}
BENCHMARK(BM_FitParameters)->Arg(1)->Arg(5)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_CompositeMetrics(benchmark::State& state) {
  const CompositeProfile p = build_composite(-1.0, 0.5, 0.8, +1, kPlus);
  for (auto _ : state) benchmark::DoNotOptimize(composite_metrics(p, {}));
}
BENCHMARK(BM_CompositeMetrics)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
