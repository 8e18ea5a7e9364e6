#include <benchmark/benchmark.h>

#include "dunkl/hardy.hpp"
#include "dunkl/kernel.hpp"
#include "dunkl/transform.hpp"

using namespace dunkl;

namespace {

void BM_KernelImaginaryAxis(benchmark::State& state) {
  const ImaginaryKernel ik(1.3);
  double s = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ik.minus_i(s));
    s = s > 50.0 ? 0.1 : s + 0.37;
  }
}
BENCHMARK(BM_KernelImaginaryAxis);

void BM_KernelSeries(benchmark::State& state) {
  const KernelSeries series(0.7);
  for (auto _ : state) benchmark::DoNotOptimize(series.eval(Complex(-3.0, 2.0)));
}
BENCHMARK(BM_KernelSeries);

void BM_PlanBuild(benchmark::State& state) {
  const auto P = make_params(1, {0.5});
  const auto src = QuadratureGrid::symmetric_box(P, 12.0, {static_cast<int>(state.range(0)) / 64, 64, 0.0});
  const auto tgt = default_target_grid(P, *src);
  for (auto _ : state) {
    TransformPlan plan(P, src, tgt);
    benchmark::DoNotOptimize(plan.axis_matrices().data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PlanBuild)->Arg(512)->Arg(1024)->Arg(2048)->Unit(benchmark::kMillisecond);

void BM_Forward(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto P = make_params(d, std::vector<double>(d, 0.5));
  const PanelLayout layout = d == 1 ? PanelLayout{32, 64, 0.0} : PanelLayout{4, 24, 0.0};
  const auto src = QuadratureGrid::symmetric_box(P, 12.0, layout);
  const TransformPlan plan(P, src, default_target_grid(P, *src));
  const auto f = SampledFunction::sample(src, [](std::span<const double> x) {
    double r2 = 0.0;
    for (double v : x) r2 += v * v;
    return Complex(std::exp(-0.5 * r2));
  });
  for (auto _ : state) benchmark::DoNotOptimize(plan.forward(f).values().data());
}
BENCHMARK(BM_Forward)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_HardyAverageAtom(benchmark::State& state) {
  const auto P = make_params(1, {1.0});
  const Atom a = random_atom(P, 1);
  for (auto _ : state) benchmark::DoNotOptimize(hardy_avg_l1(P, a.eval, a.support(), {a.radius}).l1);
}
BENCHMARK(BM_HardyAverageAtom)->Unit(benchmark::kMillisecond);

void BM_RandomAtom(benchmark::State& state) {
  const auto P = make_params(1, {0.5});
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(random_atom(P, seed++).l2_norm);
}
BENCHMARK(BM_RandomAtom)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
