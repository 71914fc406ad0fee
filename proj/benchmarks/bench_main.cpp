#include <benchmark/benchmark.h>

#include "dunkl/conv.hpp"
#include "dunkl/kernel.hpp"
#include "dunkl/paleywiener.hpp"
#include "dunkl/transform.hpp"

using namespace dunkl;

static void BM_Kernel1D(benchmark::State& st) {
  double x = 0.1;
  for (auto _ : st) {
    benchmark::DoNotOptimize(kernel_1d(0.5 + 0.25 * static_cast<double>(st.range(0)), cplx(0.0, -1.7), x));
    x += 1e-3;
    if (x > 30.0) x = 0.1;
  }
}
BENCHMARK(BM_Kernel1D)->Arg(0)->Arg(1)->Arg(2);

static void BM_PlanBuild(benchmark::State& st) {
  const MultiplicitySpec s = MultiplicitySpec::uniform(static_cast<std::size_t>(st.range(0)), 0.5);
  for (auto _ : st) benchmark::DoNotOptimize(TransformPlan::automatic(s, 9.0, 9.0, {}, {}, false));
}
BENCHMARK(BM_PlanBuild)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_Forward(benchmark::State& st) {
  const MultiplicitySpec s = MultiplicitySpec::uniform(static_cast<std::size_t>(st.range(0)), 0.5);
  const TransformPlan plan = TransformPlan::automatic(s, 9.0, 9.0, {}, {}, false);
  const SampledFunction f = plan.sample_space(HeatKernel(s, 1.0).expr());
  for (auto _ : st) benchmark::DoNotOptimize(plan.forward(f));
}
BENCHMARK(BM_Forward)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_SpectralMoments(benchmark::State& st) {
  const MultiplicitySpec s = MultiplicitySpec::uniform(2, 0.5);
  const FunctionExpr g = FunctionExpr::parse("indicator_box(1)", 2, Side::frequency);
  for (auto _ : st) benchmark::DoNotOptimize(support_radius_spectral(s, g, static_cast<int>(st.range(0))));
}
BENCHMARK(BM_SpectralMoments)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
