#include <benchmark/benchmark.h>

#include "shockline/solver.hpp"

namespace {

using namespace shockline;

FieldState sine_field(const GasModel& gm, std::size_t n) {
  ProfileSpec p;
  p.preset = Preset::kSine;
  p.tau_amp = 0.05;
  p.u_amp = 0.1;
  return init_field(p, Grid::periodic(n, 10.0), gm);
}

void BM_Step(benchmark::State& state) {
  const GasModel gm(2.0, 1.0);
  const DampingLaw dl(0.5, 0.0);
  const FieldState f = sine_field(gm, static_cast<std::size_t>(state.range(0)));
  const double dt = stable_dt(f, gm, 0.4);
  for (auto _ : state) benchmark::DoNotOptimize(step(f, gm, dl, dt));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Step)->RangeMultiplier(4)->Range(256, 16384);

void BM_RunWithAudits(benchmark::State& state) {
  const GasModel gm(2.0, 1.0);
  const DampingLaw dl(1.0, 0.0);
  const FieldState f = sine_field(gm, static_cast<std::size_t>(state.range(0)));
  RunOptions ro;
  ro.t_end = 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(run(f, gm, dl, ro));
}
BENCHMARK(BM_RunWithAudits)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

}  // namespace
