#include "shockline/core.hpp"

#include <cmath>
#include <string>

#include "shockline/errors.hpp"

namespace shockline {
namespace {

constexpr double kMaxLogFactor = 700.0;

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError(std::string(what) + " must be positive and finite, got " +
                      std::to_string(value));
  }
}

double checked(double value, const char* what) {
  if (!std::isfinite(value)) {
    throw RangeError(std::string(what) + " overflowed double precision");
  }
  return value;
}

}  // namespace

GasModel::GasModel(double gamma, double big_k) : gamma_(gamma), big_k_(big_k) {
  if (!(gamma > 1.0) || !std::isfinite(gamma)) {
    throw DomainError("gamma must satisfy gamma > 1, got " + std::to_string(gamma));
  }
  if (gamma == 3.0) {
    throw DomainError("gamma = 3 is excluded: the Riccati coefficients divide by gamma - 3");
  }
  require_positive(big_k, "K");

  theta_ = 0.5 * (gamma - 1.0);
  phi_scale_ = 2.0 * std::sqrt(big_k * gamma) / (gamma - 1.0);
  k_tau_ = std::pow(phi_scale_, 2.0 / (gamma - 1.0));
  k_p_ = big_k * std::pow(k_tau_, -gamma);
  k_c_ = std::sqrt(big_k * gamma) * std::pow(k_tau_, -0.5 * (gamma + 1.0));
  grad_exp_ = (gamma + 1.0) / (2.0 * (gamma - 1.0));
  shift_exp_ = (gamma - 3.0) / (2.0 * (gamma - 1.0));
}

DampingLaw::DampingLaw(double alpha, double lambda)
    : alpha_(alpha),
      lambda_(lambda),
      branch_(lambda == 1.0 ? DampingBranch::kCritical : DampingBranch::kGeneric) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw DomainError("alpha must be >= 0, got " + std::to_string(alpha));
  }
  if (!std::isfinite(lambda)) throw DomainError("lambda must be finite");
}

double DampingLaw::rate(double t) const {
  if (alpha_ == 0.0) return 0.0;
  return alpha_ * std::pow(1.0 + t, -lambda_);
}

double DampingLaw::integral(double t0, double t1) const {
  if (alpha_ == 0.0) return 0.0;
  if (critical()) return alpha_ * std::log((1.0 + t1) / (1.0 + t0));
  const double e = 1.0 - lambda_;
  return alpha_ * (std::pow(1.0 + t1, e) - std::pow(1.0 + t0, e)) / e;
}

GradientPoint::GradientPoint(double a_w, double b_z) : a_w_(a_w), b_z_(b_z) {
  if (!std::isfinite(a_w) || !std::isfinite(b_z)) {
    throw DomainError("Riemann-invariant gradients must be finite");
  }
}

GasModel derive_constants(double gamma, double big_k) { return GasModel(gamma, big_k); }

double phi_of_tau(const GasModel& gm, double tau) {
  require_positive(tau, "tau");
  return gm.phi_scale() * std::pow(tau, -gm.theta());
}

double tau_of_phi(const GasModel& gm, double phi) {
  require_positive(phi, "phi");
  return gm.k_tau() * std::pow(phi, -2.0 / (gm.gamma() - 1.0));
}

double sound_speed(const GasModel& gm, double tau) {
  require_positive(tau, "tau");
  return std::sqrt(gm.big_k() * gm.gamma()) * std::pow(tau, -0.5 * (gm.gamma() + 1.0));
}

double sound_speed_of_phi(const GasModel& gm, double phi) {
  require_positive(phi, "phi");
  return gm.k_c() * std::pow(phi, (gm.gamma() + 1.0) / (gm.gamma() - 1.0));
}

double pressure(const GasModel& gm, double tau) {
  require_positive(tau, "tau");
  return gm.big_k() * std::pow(tau, -gm.gamma());
}

RiemannPair riemann_invariants(const GasModel& gm, const PointState& p) {
  const double phi = phi_of_tau(gm, p.tau);
  return {p.u + phi, p.u - phi};
}

GradientPoint gradient_from_physical(const GasModel& gm, double tau, double u_x,
                                     double tau_x) {
  const double c = sound_speed(gm, tau);
  return GradientPoint(u_x - c * tau_x, u_x + c * tau_x);
}

double log_time_factor(const GasModel& gm, const DampingLaw& dl, double t) {
  if (!(t >= 0.0)) throw DomainError("time must be >= 0");
  const double g = gm.gamma();
  const double a = dl.alpha();
  if (a == 0.0) return 0.0;
  double log_mu;
  if (dl.critical()) {
    log_mu = a * (3.0 * g - 1.0) / (2.0 * (g - 3.0)) * std::log1p(t);
  } else {
    const double l = dl.lambda();
    log_mu = a * (3.0 * g - 1.0) / (2.0 * (g - 3.0) * (1.0 - l)) * std::pow(1.0 + t, 1.0 - l);
  }
  if (!(std::abs(log_mu) <= kMaxLogFactor)) {
    throw RangeError("time factor exp(" + std::to_string(log_mu) +
                     ") exceeds double range at t = " + std::to_string(t));
  }
  return log_mu;
}

double damping_shift(const GasModel& gm, const DampingLaw& dl, double t) {
  const double g = gm.gamma();
  return dl.alpha() * (g - 1.0) / (gm.k_c() * (g - 3.0)) * std::pow(1.0 + t, -dl.lambda());
}

namespace {

double gradient_variable(const GasModel& gm, const DampingLaw& dl, double phi,
                         double grad, double t) {
  require_positive(phi, "phi");
  if (!std::isfinite(grad)) throw DomainError("gradient must be finite");
  const double log_mu = log_time_factor(gm, dl, t);
  const double shifted = std::pow(phi, gm.gradient_exponent()) * grad -
                         damping_shift(gm, dl, t) * std::pow(phi, gm.shift_exponent());
  return checked(shifted * std::exp(log_mu), "gradient variable");
}

}  // namespace

double y_variable(const GasModel& gm, const DampingLaw& dl, double phi, double grad_a,
                  double t) {
  return gradient_variable(gm, dl, phi, grad_a, t);
}

double q_variable(const GasModel& gm, const DampingLaw& dl, double phi, double grad_b,
                  double t) {
  return gradient_variable(gm, dl, phi, grad_b, t);
}

RiccatiCoefficients riccati_coefficients(const GasModel& gm, const DampingLaw& dl,
                                         double phi, double t) {
  require_positive(phi, "phi");
  const double g = gm.gamma();
  const double a = dl.alpha();
  const double kc = gm.k_c();
  const double log_mu = log_time_factor(gm, dl, t);
  const double phi_shift = std::pow(phi, gm.shift_exponent());

  double numerator;
  double denominator;
  if (dl.critical()) {
    numerator = a * (g - 1.0) * (g - 3.0) - a * a * (g - 1.0) * (g - 1.0);
    denominator = kc * (g - 3.0) * (g - 3.0) * (1.0 + t) * (1.0 + t);
  } else {
    const double l = dl.lambda();
    numerator = l * a * (g - 1.0) * (g - 3.0) * std::pow(1.0 + t, l - 1.0) -
                a * a * (g - 1.0) * (g - 1.0);
    denominator = kc * (g - 3.0) * (g - 3.0) * std::pow(1.0 + t, 2.0 * l);
  }
  const double c0 = checked(numerator / denominator * phi_shift * std::exp(log_mu), "c0");
  const double c2 = checked(kc * (g + 1.0) / (2.0 * (g - 1.0)) / phi_shift * std::exp(-log_mu),
                            "c2");
  return {c0, c2};
}

}  // namespace shockline
