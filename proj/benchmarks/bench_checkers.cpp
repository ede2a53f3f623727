#include <benchmark/benchmark.h>

#include "supcon/classify.hpp"
#include "supcon/fem1d.hpp"
#include "supcon/laminate.hpp"

using namespace supcon;

namespace {

void BM_LevelConvexCheck(benchmark::State& state) {
  const auto f = corpus_entry("arctan_det").supremand();
  CheckOptions o;
  o.budget = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(check_level_convex(f, o));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LevelConvexCheck)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_CurlYoungLaminates(benchmark::State& state) {
  const auto f = corpus_entry("arctan_det").supremand();
  CheckOptions o;
  o.budget = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(check_curl_young_on_laminates(f, o));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CurlYoungLaminates)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_StrongMorreySearch(benchmark::State& state) {
  const auto& e = corpus_entry("one_minus_chi_pair");
  const auto f = e.supremand();
  const MatrixPoint xi = axpby(0.5, e.anchors[0], 0.5, e.anchors[1]);
  for (auto _ : state) benchmark::DoNotOptimize(search_strong_morrey_violation(f, xi));
}
BENCHMARK(BM_StrongMorreySearch)->Unit(benchmark::kMillisecond);

void BM_MinimizeFp(benchmark::State& state) {
  const auto f = corpus_entry("exampleD_scalar").supremand();
  Mesh1D m;
  m.cells = static_cast<int>(state.range(0));
  m.xi = 0.5;
  FeOptions o;
  o.restarts = 4;
  for (auto _ : state) benchmark::DoNotOptimize(minimize_Fp(f, 8.0, m, o));
}
BENCHMARK(BM_MinimizeFp)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace
