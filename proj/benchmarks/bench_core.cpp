#include <benchmark/benchmark.h>

#include "adisk/analytic_map.hpp"
#include "adisk/gluing.hpp"
#include "adisk/measure.hpp"
#include "adisk/potential.hpp"

namespace {

using namespace adisk;

void BM_PushforwardMoments(benchmark::State& state) {
  AnalyticMap f = AnalyticMap::polynomial(
      {{Cx(0, 0), Cx(1, 0)}, {Cx(0, 0), Cx(0, 0), Cx(0, 0), Cx(1, 0)}});
  BoundaryGrid grid(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    EmpiricalMeasure mu = pushforward(f, grid);
    benchmark::DoNotOptimize(moments(mu, 4));
  }
}
BENCHMARK(BM_PushforwardMoments)->Arg(4096)->Arg(32768);

void BM_StripExpEval(benchmark::State& state) {
  GlueConfig cfg;
  cfg.r = 1e-3;
  AnalyticMap p = glue(AnalyticMap::identity(),
                       AnalyticMap::polynomial({{Cx(0, 0), Cx(2, 0)}}), cfg);
  BoundaryGrid grid(4096);
  int k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(p.eval(grid.point(k)));
    k = (k + 1) % grid.n;
  }
}
BENCHMARK(BM_StripExpEval);

void BM_InteriorWalks(benchmark::State& state) {
  WalkConfig cfg;
  cfg.walks = static_cast<int>(state.range(0));
  cfg.seed = 99;
  auto hit = [](Cx z) { return std::abs(z - Cx(0.5, 0)) < 0.1; };
  for (auto _ : state)
    benchmark::DoNotOptimize(harmonic_measure_interior(Cx(0, 0), hit, cfg));
}
BENCHMARK(BM_InteriorWalks)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

void BM_SupNorm(benchmark::State& state) {
  AnalyticMap f = AnalyticMap::polynomial(
      {{Cx(0.1, 0.2), Cx(0.5, 0), Cx(0, 0.7), Cx(-0.3, 0.2)}});
  BoundaryGrid grid(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sup_norm(f, grid));
}
BENCHMARK(BM_SupNorm)->Arg(4096)->Arg(65536);

}  // namespace

BENCHMARK_MAIN();
