#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "shockline/errors.hpp"
#include "shockline/riccati.hpp"

namespace shockline {
namespace {

RiccatiProblem constant(double c0, double c2, double y0) {
  RiccatiProblem p;
  p.coefficients = [c0, c2](double) { return Coefficients{c0, c2}; };
  p.y0 = y0;
  return p;
}

TEST(ClosedForm, Examples) {
  EXPECT_NEAR(*closed_form_oracle(0.0, 1.0, -1.0, 0.5), -2.0, 1e-15);
  EXPECT_NEAR(*closed_form_oracle(1.0, 1.0, 0.0, 2.0), 0.9640275800758169, 1e-15);
  EXPECT_NEAR(*closed_form_oracle(-1.0, 1.0, 0.0, 1.0), -1.5574077246549023, 1e-15);
  EXPECT_FALSE(closed_form_oracle(0.0, 1.0, -1.0, 1.0).has_value());
  EXPECT_NEAR(*closed_form_pole(-1.0, 1.0, 0.0), std::numbers::pi / 2.0, 1e-15);
  EXPECT_NEAR(*closed_form_pole(1.0, 1.0, -2.0), 0.5493061443340548, 1e-15);
  EXPECT_FALSE(closed_form_pole(1.0, 1.0, -0.5).has_value());
  EXPECT_NEAR(*closed_form_oracle(1.0, 1.0, 3.0, 0.0), 3.0, 1e-15);  // coth branch at t = 0
  EXPECT_THROW(closed_form_oracle(1.0, 0.0, 0.0, 1.0), DomainError);
}

TEST(Integrate, TanhIsGlobal) {
  const RiccatiOutcome out = integrate(constant(1.0, 1.0, 0.0), 2.0);
  ASSERT_FALSE(out.blew_up());
  EXPECT_NEAR(out.y_end, 0.9640275800758169, 1e-8);
  EXPECT_DOUBLE_EQ(out.t_end, 2.0);
}

TEST(Integrate, SeparableBlowupIsBracketed) {
  const RiccatiOutcome out = integrate(constant(0.0, 1.0, -1.0), 5.0);
  ASSERT_TRUE(out.blew_up());
  EXPECT_LT(out.t_star_lo, 1.0);
  EXPECT_GE(out.t_star_hi, 1.0);
  EXPECT_LE(out.t_star_hi - out.t_star_lo, 1e-6);
}

TEST(Integrate, NegativeTangentBlowup) {
  const RiccatiOutcome out = integrate(constant(-1.0, 1.0, 0.0), 5.0);
  ASSERT_TRUE(out.blew_up());
  EXPECT_LE(out.t_star_lo, std::numbers::pi / 2.0);
  EXPECT_GE(out.t_star_hi, std::numbers::pi / 2.0);
}

TEST(Integrate, LandsOnOutputTimes) {
  IntegrateOptions opts;
  opts.output_times = {0.25, 0.5, 1.5, 3.0};
  const RiccatiOutcome out = integrate(constant(0.0, 1.0, -1.0), 5.0, opts);
  ASSERT_EQ(out.output_values.size(), 4u);
  EXPECT_NEAR(out.output_values[0], -1.0 / 0.75, 1e-8);
  EXPECT_NEAR(out.output_values[1], -2.0, 1e-8);
  EXPECT_TRUE(std::isnan(out.output_values[2]));
  EXPECT_TRUE(std::isnan(out.output_values[3]));
}

TEST(Integrate, Preconditions) {
  EXPECT_THROW(integrate(constant(0.0, 1.0, 0.0), 1.0, 1e-13), DomainError);
  EXPECT_THROW(integrate(constant(0.0, 1.0, 0.0), 1.0, 0.1), DomainError);
  EXPECT_THROW(integrate(constant(0.0, 1.0, 0.0), 0.0), DomainError);
  EXPECT_THROW(integrate(constant(0.0, -1.0, 0.0), 1.0), CoefficientError);
  RiccatiProblem p = constant(0.0, 1.0, 0.0);
  p.coefficients = [](double t) { return Coefficients{0.0, 1.0 - t}; };
  EXPECT_THROW(integrate(p, 2.0), CoefficientError);
  p.coefficients = [](double) { return Coefficients{std::nan(""), 1.0}; };
  EXPECT_THROW(integrate(p, 2.0), CoefficientError);
}

TEST(Integrate, RandomConstantProblemsMatchOracle) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> c0d(-2.0, 2.0), c2d(0.1, 3.0), y0d(-3.0, 3.0);
  const double tol = 1e-9;
  for (int i = 0; i < 200; ++i) {
    const double c0 = c0d(rng), c2 = c2d(rng), y0 = y0d(rng);
    const std::optional<double> pole = closed_form_pole(c0, c2, y0);
    const double horizon = pole ? *pole * 1.5 : 3.0;
    IntegrateOptions opts;
    opts.tol = tol;
    for (int k = 1; k <= 10; ++k) {
      const double t = (pole ? 0.95 * *pole : horizon) * k / 10.0;
      opts.output_times.push_back(t);
    }
    const RiccatiOutcome out = integrate(constant(c0, c2, y0), horizon, opts);
    EXPECT_EQ(out.blew_up(), pole.has_value());
    for (std::size_t k = 0; k < opts.output_times.size(); ++k) {
      const double exact = *closed_form_oracle(c0, c2, y0, opts.output_times[k]);
      EXPECT_LE(std::abs(out.output_values[k] - exact), 10.0 * tol * std::max(1.0, std::abs(exact)));
    }
    if (pole) {
      EXPECT_LE(out.t_star_lo, *pole);
      EXPECT_GE(out.t_star_hi, *pole);
    }
  }
}

TEST(Integrate, ComparisonPrinciple) {
  RiccatiProblem a, b;
  a.coefficients = [](double t) { return Coefficients{-1.0 - std::sin(t) * std::sin(t), 1.0 + t}; };
  b.coefficients = [](double t) { return Coefficients{-std::sin(t) * std::sin(t), 1.0 + t}; };
  a.y0 = b.y0 = 0.3;
  IntegrateOptions opts;
  for (int k = 1; k <= 20; ++k) opts.output_times.push_back(0.1 * k);
  const RiccatiOutcome ra = integrate(a, 2.0, opts);
  const RiccatiOutcome rb = integrate(b, 2.0, opts);
  for (std::size_t k = 0; k < opts.output_times.size(); ++k) {
    if (std::isnan(ra.output_values[k]) || std::isnan(rb.output_values[k])) break;
    EXPECT_LE(ra.output_values[k], rb.output_values[k] + 1e-8);
  }
}

TEST(Integrate, CeilingWithNonpositiveSource) {
  RiccatiProblem p;
  p.coefficients = [](double t) { return Coefficients{-0.5 * std::exp(-t), 2.0 + std::cos(t)}; };
  p.y0 = 0.7;
  const RiccatiOutcome out = integrate(p, 10.0);
  for (const TrajectoryPoint& tp : out.trajectory) EXPECT_LE(tp.y, 1.0);
}

TEST(BlowupBound, CaseOneExamples) {
  const RiccatiProblem p1 = constant(0.0, 1.0, -1.0);
  EXPECT_NEAR(blowup_time_upper_bound_case1(p1, running_c2_integral(p1, 3.0), 3.0), 1.0, 1e-9);
  const RiccatiProblem p2 = constant(0.0, 2.0, -1.0);
  EXPECT_NEAR(blowup_time_upper_bound_case1(p2, running_c2_integral(p2, 3.0), 3.0), 0.5, 1e-9);
}

TEST(BlowupBound, CaseOneWithoutEnoughIntegralIsNoBound) {
  // c2 = 5 e^-t integrates to 5 < -1/y0 = 10.
  RiccatiProblem p;
  p.coefficients = [](double t) { return Coefficients{0.0, 5.0 * std::exp(-t)}; };
  p.y0 = -0.1;
  EXPECT_THROW(blowup_time_upper_bound_case1(p, running_c2_integral(p, 30.0), 30.0), NoBoundError);
}

TEST(BlowupBound, CaseOneHypotheses) {
  const RiccatiProblem pos = constant(0.5, 1.0, -1.0);
  EXPECT_THROW(blowup_time_upper_bound_case1(pos, running_c2_integral(pos, 2.0), 2.0),
               HypothesisError);
  const RiccatiProblem up = constant(0.0, 1.0, 0.5);
  EXPECT_THROW(blowup_time_upper_bound_case1(up, running_c2_integral(up, 2.0), 2.0),
               HypothesisError);
}

TEST(BlowupBound, CaseTwoDeflation) {
  const RiccatiProblem p = constant(1.0, 1.0, -2.0);
  const C2Integral integral = running_c2_integral(p, 3.0);
  const double bound = blowup_time_upper_bound_case2(p, 0.5, integral, 3.0);
  EXPECT_NEAR(bound, 0.9, 1e-9);
  const RiccatiOutcome out = integrate(p, 3.0);
  ASSERT_TRUE(out.blew_up());
  EXPECT_LE(out.t_star_hi, bound);
  EXPECT_THROW(blowup_time_upper_bound_case2(p, 1.5, integral, 3.0), HypothesisError);
  // Large eps approaches the case-one bound 1/2.
  const RiccatiProblem q = constant(1e-8, 1.0, -2.0);
  EXPECT_NEAR(blowup_time_upper_bound_case2(q, 1e3, running_c2_integral(q, 3.0), 3.0), 0.5, 1e-5);
}

TEST(BlowupBound, IntegralContinuesPastThePole) {
  const RiccatiProblem p = constant(0.0, 1.0, -1.0);
  const C2Integral integral = running_c2_integral(p, 4.0);
  EXPECT_NEAR(integral(3.5), 3.5, 1e-9);
  EXPECT_THROW(integral(4.5), DomainError);
}

}  // namespace
}  // namespace shockline
