#include <benchmark/benchmark.h>

#include <random>

#include "supcon/envelope.hpp"
#include "supcon/funcspace.hpp"

using namespace supcon;

namespace {

SampledFunction random_grid_function(Dims dims, int points) {
  const GridSpec g{dims, 1.0, points};
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::vector<double> v(g.point_count());
  for (double& x : v) x = U(rng);
  return SampledFunction(g, std::move(v), OutsideMode::plus_infinity);
}

void BM_ConvexEnvelope1D(benchmark::State& state) {
  const auto f = random_grid_function({1, 1}, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(convex_envelope(f));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ConvexEnvelope1D)->RangeMultiplier(4)->Range(64, 16384)->Complexity();

void BM_ConvexEnvelope2x2(benchmark::State& state) {
  const auto f = random_grid_function({2, 2}, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(convex_envelope(f));
}
BENCHMARK(BM_ConvexEnvelope2x2)->Arg(5)->Arg(7)->Arg(9)->Unit(benchmark::kMillisecond);

void BM_LevelConvexLsc(benchmark::State& state) {
  const auto f = random_grid_function({1, 2}, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(level_convex_lsc_envelope(f));
}
BENCHMARK(BM_LevelConvexLsc)->Arg(11)->Arg(21)->Arg(41)->Unit(benchmark::kMillisecond);

void BM_LaminationHull(benchmark::State& state) {
  const auto f = random_grid_function({2, 2}, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(lamination_hull(f));
}
BENCHMARK(BM_LaminationHull)->Arg(5)->Arg(9)->Unit(benchmark::kMillisecond);

void BM_PaschHausdorff(benchmark::State& state) {
  const auto f = random_grid_function({1, 2}, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(pasch_hausdorff(f, 2.0));
}
BENCHMARK(BM_PaschHausdorff)->Arg(21)->Arg(41)->Unit(benchmark::kMillisecond);

void BM_PowerLaw(benchmark::State& state) {
  const auto f = sample(corpus_entry("exampleD_scalar"), grid_with_spacing({1, 1}, 4.0, 0.01));
  for (auto _ : state) benchmark::DoNotOptimize(power_law_envelope(f, default_p_schedule(), PowerLawMode::convex_lower));
}
BENCHMARK(BM_PowerLaw)->Unit(benchmark::kMillisecond);

}  // namespace
