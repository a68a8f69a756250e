#include <benchmark/benchmark.h>

#include "variety/divergence.hpp"
#include "variety/estimation.hpp"
#include "variety/special.hpp"
#include "variety/synthesis.hpp"

using namespace variety;

static void BM_IncompleteBeta(benchmark::State& state) {
  double x = 0.0;
  for (auto _ : state) {
    x += 0.001;
    if (x >= 1.0) x = 0.001;
    benchmark::DoNotOptimize(regularized_incomplete_beta(8.0, 3.0, x));
  }
}
BENCHMARK(BM_IncompleteBeta);

static void BM_FVariety(benchmark::State& state) {
  const auto joint = exact_discretized_joint(preset("uniform-1").with_ratio(0.3));
  const auto& kind = DivergenceKind::hellinger();
  for (auto _ : state) benchmark::DoNotOptimize(f_variety(joint, kind));
}
BENCHMARK(BM_FVariety);

static void BM_ContinuousFVariety(benchmark::State& state) {
  const auto model = preset("non-uniform-1").with_ratio(0.4);
  const DivergenceKind* kinds[] = {&DivergenceKind::tvd(), &DivergenceKind::pearson()};
  const auto& kind = *kinds[state.range(0)];
  for (auto _ : state) benchmark::DoNotOptimize(continuous_f_variety(model, kind));
  state.SetLabel(kind.name());
}
BENCHMARK(BM_ContinuousFVariety)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

static void BM_DrawAndEstimate(benchmark::State& state) {
  const auto model = preset("uniform-1");
  const auto n = static_cast<std::size_t>(state.range(0));
  RandomStream stream(1, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(empirical_f_variety(draw_samples(model, n, stream), DivergenceKind::tvd()));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DrawAndEstimate)->Arg(100)->Arg(1000)->Unit(benchmark::kMicrosecond);

static void BM_CompareGroups(benchmark::State& state) {
  RandomStream stream(2, 0);
  const auto a = draw_samples(preset("uniform-1").with_ratio(0.2), 300, stream);
  const auto b = draw_samples(preset("uniform-1").with_ratio(0.9), 200, stream);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        compare_groups_equalized(a, b, DivergenceKind::tvd(), 100, RandomStream(3, 0)));
  }
}
BENCHMARK(BM_CompareGroups)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
