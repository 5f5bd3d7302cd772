#include <benchmark/benchmark.h>

#include "shockline/criteria.hpp"

namespace {

using namespace shockline;

void BM_Evaluate(benchmark::State& state) {
  const double gamma = state.range(1) == 0 ? 2.0 : 5.0;
  const GasModel gm(gamma, 1.0);
  const DampingLaw dl(1.0, 0.0);
  ProfileSpec p;
  p.preset = Preset::kGaussian;
  p.u_amp = -3.0;
  p.width = 0.3;
  p.center = 4.0;
  const FieldState f = init_field(p, Grid::periodic(static_cast<std::size_t>(state.range(0)), 8.0), gm);
  const InitialBound ib = invariant_region_bound(gm, certified_c0(f));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(f, gm, dl, ib));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Evaluate)->ArgsProduct({{1024, 16384}, {0, 1}});

void BM_ClassifyRegime(benchmark::State& state) {
  const GasModel gm(5.0, 1.0);
  double lambda = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(classify_regime(gm, DampingLaw(1.0, lambda)));
    lambda = lambda > 3.0 ? 0.0 : lambda + 0.01;
  }
}
BENCHMARK(BM_ClassifyRegime);

}  // namespace
