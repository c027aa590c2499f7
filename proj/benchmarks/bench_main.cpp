#include <benchmark/benchmark.h>

#include "incexp/functionals.hpp"
#include "incexp/hermite_wick.hpp"
#include "incexp/pathgen.hpp"

namespace {

void BM_CirculantSample(benchmark::State& state) {
  const auto model = incexp::make_fbm(1.8);
  const incexp::CirculantSampler sampler(model, incexp::Grid{2.0, static_cast<std::size_t>(state.range(0))});
  std::vector<double> path;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    sampler.sample_into(seed++, path);
    benchmark::DoNotOptimize(path.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CirculantSample)->RangeMultiplier(4)->Range(1 << 12, 1 << 18)->Unit(benchmark::kMillisecond);

void BM_CirculantSetup(benchmark::State& state) {
  const auto model = incexp::make_fbm(1.8);
  for (auto _ : state) {
    incexp::CirculantSampler sampler(model, incexp::Grid{2.0, static_cast<std::size_t>(state.range(0))});
    benchmark::DoNotOptimize(&sampler);
  }
}
BENCHMARK(BM_CirculantSetup)->Arg(1 << 14)->Arg(1 << 18)->Unit(benchmark::kMillisecond);

void BM_HermiteCoeffs(benchmark::State& state) {
  const auto f = incexp::parse_test_function(state.range(0) == 0 ? "poly:0,1,0,1" : "abs");
  for (auto _ : state) benchmark::DoNotOptimize(incexp::hermite_coeffs(f, 20, 128));
}
BENCHMARK(BM_HermiteCoeffs)->Arg(0)->Arg(1);

void BM_KernelIntegral(benchmark::State& state) {
  const auto model = incexp::make_fbm(1.8);
  for (auto _ : state) benchmark::DoNotOptimize(incexp::kernel_integral(model, static_cast<int>(state.range(0)), 1e-4, 1.0));
}
BENCHMARK(BM_KernelIntegral)->DenseRange(1, 3);

void BM_ChaosSecondMoment(benchmark::State& state) {
  const auto model = incexp::make_fbm(1.8);
  for (auto _ : state) benchmark::DoNotOptimize(incexp::chaos_second_moment(model, 2, 1.0));
}
BENCHMARK(BM_ChaosSecondMoment);

void BM_IncrementFunctional(benchmark::State& state) {
  const auto model = incexp::make_fbm(1.8);
  const auto path = incexp::simulate_circulant(model, incexp::Grid{2.0, 1 << 18}, 1);
  const auto f = incexp::parse_test_function("abs");
  for (auto _ : state) benchmark::DoNotOptimize(incexp::increment_functional(path, model, f, 64, 0.25, 1.25));
}
BENCHMARK(BM_IncrementFunctional)->Unit(benchmark::kMillisecond);

void BM_LogSpectralSigma2(benchmark::State& state) {
  const auto model = incexp::make_log_spectral();
  double x = 1e-6;
  for (auto _ : state) {
    benchmark::DoNotOptimize(model.sigma2(x));
    x = x < 1.0 ? x * 1.01 : 1e-6;
  }
}
BENCHMARK(BM_LogSpectralSigma2);

}  // namespace
BENCHMARK_MAIN();
