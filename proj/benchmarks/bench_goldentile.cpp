#include <benchmark/benchmark.h>

#include "goldentile/cocycle.hpp"
#include "goldentile/diffraction.hpp"
#include "goldentile/windows.hpp"

using namespace goldentile;

static void BM_CocycleAmplitude1D(benchmark::State& state) {
  const CocycleEvaluator ev(builtin_rule("fibonacci1d"));
  const auto ks = enumerate_module(1, 5, 20);
  for (auto _ : state)
    for (const auto& k : ks) benchmark::DoNotOptimize(ev.fb_amplitude(k));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(ks.size()));
}
BENCHMARK(BM_CocycleAmplitude1D);

static void BM_CocycleAmplitude2D(benchmark::State& state) {
  const CocycleEvaluator ev(dpv_rule({0, 0, 6}));
  const auto ks = enumerate_module(2, 2, 5);
  for (auto _ : state)
    for (const auto& k : ks) benchmark::DoNotOptimize(ev.fb_amplitude(k));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(ks.size()));
}
BENCHMARK(BM_CocycleAmplitude2D);

static void BM_WindowSolve(benchmark::State& state) {
  const auto ifs = window_ifs(dpv_rule({0, 0, 6}));
  const int res = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_windows(ifs, res));
}
BENCHMARK(BM_WindowSolve)->Arg(1024)->Arg(2048)->Unit(benchmark::kMillisecond);

static void BM_PatchAmplitude(benchmark::State& state) {
  const auto rule = builtin_rule("fibonacci1d");
  const PointCloud cloud = to_cloud(generate_patch(rule, 24, 0), 2);
  Region region;
  region.hi = {1e5, 0};
  const FourierIndex k(ModuleCoord{3, 1});
  for (auto _ : state) benchmark::DoNotOptimize(patch_amplitude(cloud, region, k));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cloud.type.size()));
}
BENCHMARK(BM_PatchAmplitude)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
