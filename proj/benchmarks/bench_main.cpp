#include <benchmark/benchmark.h>

#include <algorithm>

#include "gclab/conditions.hpp"
#include "gclab/empirical.hpp"
#include "gclab/entropy.hpp"
#include "gclab/gaussian.hpp"
#include "gclab/generators.hpp"
#include "gclab/markov.hpp"
#include "gclab/rng.hpp"

using namespace gclab;

static void BM_PhiloxUniform(benchmark::State& state) {
  CounterStream s(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(s.next_uniform());
}
BENCHMARK(BM_PhiloxUniform);

static void BM_SampleAr1(benchmark::State& state) {
  const auto model = make_gaussian_ar1(0.6);
  std::uint64_t stream = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample(model, state.range(0), 1, stream++));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleAr1)->Range(1 << 6, 1 << 14);

static void BM_KsSupDeviation(benchmark::State& state) {
  const auto path = sample(make_iid(Marginal::normal()), state.range(0), 3);
  for (auto _ : state) benchmark::DoNotOptimize(ks_sup_deviation(path.values, Marginal::normal()));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_KsSupDeviation)->Range(1 << 6, 1 << 14)->Complexity(benchmark::oNLogN);

static void BM_GcDiagnostic(benchmark::State& state) {
  const auto model = make_iid(Marginal::uniform());
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_gc_diagnostic(model, {4096}, 200, 1, {static_cast<unsigned>(state.range(0))}));
  }
}
BENCHMARK(BM_GcDiagnostic)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_BivariateNormalExcess(benchmark::State& state) {
  const double rho = static_cast<double>(state.range(0)) / 100.0;
  for (auto _ : state) benchmark::DoNotOptimize(bivariate_normal_excess(0.3, -0.7, rho));
}
BENCHMARK(BM_BivariateNormalExcess)->Arg(1)->Arg(30)->Arg(90)->Arg(99);

static void BM_PhiProfile(benchmark::State& state) {
  const auto spec = MarkovChainSpec::create({{0.6, 0.3, 0.1}, {0.2, 0.5, 0.3}, {0.1, 0.3, 0.6}}, {-1.0, 0.0, 2.0});
  for (auto _ : state) benchmark::DoNotOptimize(phi_mixing_profile(spec, state.range(0)));
}
BENCHMARK(BM_PhiProfile)->Arg(50)->Arg(200)->Arg(1000);

static void BM_GcipC2(benchmark::State& state) {
  const auto gamma = identity_gamma(make_gaussian_ar1(0.6));
  for (auto _ : state) benchmark::DoNotOptimize(gcip_c2(gamma, {1.0, static_cast<std::size_t>(state.range(0))}));
}
BENCHMARK(BM_GcipC2)->Arg(100)->Arg(1000)->Arg(10000);

static void BM_GcepIndicatorAr1(benchmark::State& state) {
  const auto model = make_gaussian_ar1(0.6);
  std::vector<double> grid;
  for (int i = 0; i <= 20; ++i) grid.push_back(normal_quantile(0.025 + 0.0475 * i));
  for (auto _ : state) benchmark::DoNotOptimize(gcep_indicator_conditions(model, grid, {1.0, 1000}));
}
BENCHMARK(BM_GcepIndicatorAr1)->Unit(benchmark::kMillisecond);

static void BM_Shatters(benchmark::State& state) {
  std::vector<double> points(state.range(0));
  for (std::size_t i = 0; i < points.size(); ++i) points[i] = static_cast<double>(i);
  const auto family = SetFamily::power_set(points);
  for (auto _ : state) benchmark::DoNotOptimize(shatters(points, family));
}
BENCHMARK(BM_Shatters)->DenseRange(4, 16, 4);
BENCHMARK_MAIN();
