#include <cmath>

#include <benchmark/benchmark.h>

#include "shockline/riccati.hpp"

namespace {

using shockline::Coefficients;
using shockline::RiccatiProblem;

RiccatiProblem damped_problem(double y0) {
  RiccatiProblem p;
  p.coefficients = [](double t) {
    return Coefficients{-0.5 * std::exp(-t), 1.0 / std::sqrt(1.0 + t)};
  };
  p.y0 = y0;
  return p;
}

void BM_IntegrateGlobal(benchmark::State& state) {
  const RiccatiProblem p = damped_problem(0.5);
  const double tol = std::pow(10.0, -static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(shockline::integrate(p, 50.0, tol));
}
BENCHMARK(BM_IntegrateGlobal)->Arg(6)->Arg(9)->Arg(11);

void BM_IntegrateToPole(benchmark::State& state) {
  const RiccatiProblem p = damped_problem(-2.0);
  for (auto _ : state) benchmark::DoNotOptimize(shockline::integrate(p, 50.0));
}
BENCHMARK(BM_IntegrateToPole);

void BM_CaseOneBound(benchmark::State& state) {
  const RiccatiProblem p = damped_problem(-0.3);
  for (auto _ : state) {
    const auto integral = shockline::running_c2_integral(p, 50.0);
    benchmark::DoNotOptimize(shockline::blowup_time_upper_bound_case1(p, integral, 50.0));
  }
}
BENCHMARK(BM_CaseOneBound);

}  // namespace
