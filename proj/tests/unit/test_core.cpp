#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "shockline/core.hpp"
#include "shockline/errors.hpp"

namespace shockline {
namespace {

TEST(GasModel, ConstantsForGammaTwo) {
  const GasModel gm = derive_constants(2.0, 1.0);
  EXPECT_NEAR(gm.k_tau(), 8.0, 1e-14);
  EXPECT_NEAR(gm.k_p(), 0.015625, 1e-16);
  EXPECT_NEAR(gm.k_c(), 0.0625, 1e-16);
  EXPECT_DOUBLE_EQ(gm.theta(), 0.5);
}

TEST(GasModel, ConstantsForGammaFive) {
  const GasModel gm = derive_constants(5.0, 1.0);
  EXPECT_NEAR(gm.k_tau(), 1.057371263440564, 1e-14);
  EXPECT_NEAR(gm.k_c(), 1.891483218006352, 1e-14);
  EXPECT_NEAR(gm.k_tau() * gm.k_c(), 2.0, 1e-14);
}

TEST(GasModel, RejectsInvalidParameters) {
  EXPECT_THROW(GasModel(3.0, 1.0), DomainError);
  EXPECT_THROW(GasModel(1.0, 1.0), DomainError);
  EXPECT_THROW(GasModel(0.5, 1.0), DomainError);
  EXPECT_THROW(GasModel(2.0, 0.0), DomainError);
  EXPECT_THROW(GasModel(std::nan(""), 1.0), DomainError);
}

TEST(GasModel, IdentitiesHoldForRandomParameters) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> g(1.05, 6.0), k(0.1, 10.0);
  for (int i = 0; i < 500; ++i) {
    double gamma = g(rng);
    if (std::abs(gamma - 3.0) < 1e-3) gamma += 0.01;
    const GasModel gm(gamma, k(rng));
    EXPECT_NEAR(gm.k_p(), (gamma - 1.0) / (2.0 * gamma) * gm.k_c(), 1e-12 * gm.k_p());
    EXPECT_NEAR(gm.k_tau() * gm.k_c(), (gamma - 1.0) / 2.0, 1e-12 * (gamma - 1.0));
  }
}

TEST(Transforms, PhiRoundTripAndSoundSpeed) {
  for (double gamma : {1.4, 2.0, 5.0}) {
    const GasModel gm(gamma, 1.3);
    for (double tau : {0.2, 1.0, 3.7}) {
      const double phi = phi_of_tau(gm, tau);
      EXPECT_NEAR(tau_of_phi(gm, phi), tau, 1e-13 * tau);
      EXPECT_NEAR(sound_speed_of_phi(gm, phi), sound_speed(gm, tau),
                  1e-12 * sound_speed(gm, tau));
      // c^2 = -p'(tau) = gamma p / tau.
      EXPECT_NEAR(std::pow(sound_speed(gm, tau), 2), gamma * pressure(gm, tau) / tau,
                  1e-12 * gamma * pressure(gm, tau) / tau);
    }
  }
}

TEST(Transforms, PhiAtUnitVolumeForGammaTwo) {
  const GasModel gm(2.0, 1.0);
  EXPECT_NEAR(phi_of_tau(gm, 1.0), 2.0 * std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(sound_speed(gm, 1.0), std::sqrt(2.0), 1e-15);
}

TEST(Transforms, RiemannInvariantsAndGradients) {
  const GasModel gm(2.0, 1.0);
  const RiemannPair rp = riemann_invariants(gm, {1.0, 0.5, 0.0});
  EXPECT_NEAR(rp.w, 0.5 + 2.0 * std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(rp.z, 0.5 - 2.0 * std::sqrt(2.0), 1e-15);
  const GradientPoint gp = gradient_from_physical(gm, 1.0, -20.0, 0.0);
  EXPECT_DOUBLE_EQ(gp.a_w(), -20.0);
  EXPECT_DOUBLE_EQ(gp.b_z(), -20.0);
  const GradientPoint gq = gradient_from_physical(gm, 1.0, 0.0, 1.0);
  EXPECT_NEAR(gq.a_w(), -std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(gq.b_z(), std::sqrt(2.0), 1e-15);
  EXPECT_THROW(GradientPoint(std::nan(""), 0.0), DomainError);
}

TEST(GradientVariables, MatchOracleAtRest) {
  const GasModel gm(2.0, 1.0);
  const DampingLaw dl(1.0, 0.0);
  const double phi = 2.0 * std::sqrt(2.0);
  EXPECT_NEAR(y_variable(gm, dl, phi, 0.0, 0.0), 0.7809285151882321, 1e-14);
  EXPECT_NEAR(q_variable(gm, dl, phi, 0.0, 0.0), 0.7809285151882321, 1e-14);
  const RiccatiCoefficients rc = riccati_coefficients(gm, dl, phi, 0.0);
  EXPECT_NEAR(rc.c0, -0.7809285151882321, 1e-14);
  EXPECT_NEAR(rc.c2, 1.920790406326046, 1e-14);
}

TEST(GradientVariables, SignOfYTracksShiftedGradient) {
  const GasModel gm(2.0, 1.0);
  const DampingLaw dl(1.0, 0.0);
  const double phi = 2.0 * std::sqrt(2.0);
  // rhs = -alpha (gamma-1) / (K_c (3-gamma)) phi^(-2/(gamma-1)) = -2.
  EXPECT_LT(y_variable(gm, dl, phi, -2.001, 0.0), 0.0);
  EXPECT_GT(y_variable(gm, dl, phi, -1.999, 0.0), 0.0);
}

TEST(GradientVariables, UndampedReducesToPhiPowerTimesGradient) {
  const GasModel gm(2.0, 1.0);
  const DampingLaw dl(0.0, 0.0);
  const double phi = 3.0;
  EXPECT_NEAR(y_variable(gm, dl, phi, -2.0, 4.0), std::pow(phi, 1.5) * -2.0, 1e-12);
  const RiccatiCoefficients rc = riccati_coefficients(gm, dl, phi, 4.0);
  EXPECT_EQ(rc.c0, 0.0);
  EXPECT_GT(rc.c2, 0.0);
}

TEST(DampingLaw, BranchAndIntegral) {
  const DampingLaw generic(0.7, 0.5);
  EXPECT_EQ(generic.branch(), DampingBranch::kGeneric);
  const double exact = 0.7 * 2.0 * (std::sqrt(3.0) - 1.0);
  EXPECT_NEAR(generic.integral(0.0, 2.0), exact, 1e-14);
  const DampingLaw critical(0.7, 1.0);
  EXPECT_TRUE(critical.critical());
  EXPECT_NEAR(critical.integral(0.0, 2.0), 0.7 * std::log(3.0), 1e-14);
  EXPECT_NEAR(DampingLaw(0.7, 0.0).integral(1.0, 3.0), 1.4, 1e-14);
  EXPECT_THROW(DampingLaw(-1.0, 0.0), DomainError);
}

TEST(TimeFactor, CriticalBranchIsAPower) {
  const GasModel gm(2.0, 1.0);
  const DampingLaw dl(1.0, 1.0);
  // log mu_1 = alpha (3 gamma - 1) / (2 (gamma - 3)) log(1+t) = -2.5 log(1+t)
  EXPECT_NEAR(log_time_factor(gm, dl, 3.0), -2.5 * std::log(4.0), 1e-14);
}

TEST(TimeFactor, OverflowIsARangeError) {
  const GasModel gm(2.0, 1.0);
  const DampingLaw dl(100.0, 0.0);
  EXPECT_NO_THROW(log_time_factor(gm, dl, 1.0));
  EXPECT_THROW(log_time_factor(gm, dl, 10.0), RangeError);
  EXPECT_THROW(log_time_factor(gm, dl, -1.0), DomainError);
}

// y and q satisfy y' = c0 - c2 y^2 along characteristics. For spatially
// uniform data (A = B = 0, phi constant in time) this reduces to an ODE in t
// that can be checked by finite differences.
TEST(RiccatiCoefficients, UniformStateSatisfiesTheRiccatiEquation) {
  for (double lambda : {0.0, 0.4, 1.0, 2.0}) {
    const GasModel gm(2.0, 1.0);
    const DampingLaw dl(0.8, lambda);
    const double phi = 2.5;
    const double t = 0.7;
    const double h = 1e-5;
    const double dy = (y_variable(gm, dl, phi, 0.0, t + h) - y_variable(gm, dl, phi, 0.0, t - h)) /
                      (2.0 * h);
    const double y = y_variable(gm, dl, phi, 0.0, t);
    const RiccatiCoefficients rc = riccati_coefficients(gm, dl, phi, t);
    EXPECT_NEAR(dy, rc.c0 - rc.c2 * y * y, 1e-7 * (1.0 + std::abs(dy))) << "lambda " << lambda;
  }
}

}  // namespace
}  // namespace shockline
