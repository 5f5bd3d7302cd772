#include "shockline/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "shockline/errors.hpp"

namespace shockline {
namespace {

// Integrand of the lambda <= 0 K2 integral is truncated once it has decayed
// by this factor relative to its value at s = 0.
constexpr double kTruncationDecay = 1e-16;
constexpr double kOnsetTolerance = 1e-9;

void require_subcritical_floor_regime(const GasModel& gm, const DampingLaw& dl) {
  const double g = gm.gamma();
  if (!(g > 1.0 && g < 3.0)) {
    throw DomainError("the density floor needs 1 < gamma < 3, got gamma = " + std::to_string(g));
  }
  if (!dl.critical()) {
    const double bound = dl.alpha() * (g - 1.0) / (g - 3.0);
    if (!(dl.lambda() >= bound)) {
      throw DomainError("the density floor needs lambda >= alpha(gamma-1)/(gamma-3) = " +
                        std::to_string(bound));
    }
  }
}

void require_supercritical(const GasModel& gm, const char* what) {
  if (!(gm.gamma() > 3.0)) {
    throw RegimeError(std::string(what) + " is defined for gamma > 3 only");
  }
}

// log of exp(alpha(3g-1)(1+t)^(1-l) / (2(3-g)(1-l))) or, critical,
// (1+t)^(alpha(3g-1)/(2(3-g))): the growth factor bounding phi_t from below.
double log_growth_factor(const GasModel& gm, const DampingLaw& dl, double t) {
  const double g = gm.gamma();
  const double a = dl.alpha();
  if (a == 0.0) return 0.0;
  if (dl.critical()) return a * (3.0 * g - 1.0) / (2.0 * (3.0 - g)) * std::log1p(t);
  const double e = 1.0 - dl.lambda();
  return a * (3.0 * g - 1.0) * std::pow(1.0 + t, e) / (2.0 * (3.0 - g) * e);
}

double log_density_floor(const GasModel& gm, const DampingLaw& dl, double log_k0, double t) {
  const double g = gm.gamma();
  // The floor's time factor is the growth factor raised to -4/(3-gamma).
  return log_k0 - 4.0 / (3.0 - g) * (std::log(t) + log_growth_factor(gm, dl, t));
}

}  // namespace

InitialBound invariant_region_bound(const GasModel& gm, double c0) {
  if (!(c0 > 0.0) || !std::isfinite(c0)) {
    throw DomainError("C0 must be positive, got " + std::to_string(c0));
  }
  const double s = c0 + std::pow(c0, gm.theta());
  const double c0_tilde = std::max(s, std::pow(s, 1.0 / gm.theta()));
  if (!std::isfinite(c0_tilde)) throw RangeError("invariant-region bound overflows");
  return {c0, c0_tilde};
}

double certified_c0(const FieldState& field) {
  double c0 = 0.0;
  for (std::size_t i = 0; i < field.grid.n; ++i) {
    c0 = std::max({c0, std::abs(field.u[i]), 1.0 / field.tau[i]});
  }
  return c0;
}

RiccatiCeilings riccati_ceilings(std::span<const double> y0, std::span<const double> q0) {
  RiccatiCeilings out{1.0, 1.0};
  for (double y : y0) out.y_cap = std::max(out.y_cap, y);
  for (double q : q0) out.q_cap = std::max(out.q_cap, q);
  return out;
}

RiccatiCeilings riccati_ceilings(const FieldState& field, const GasModel& gm,
                                 const DampingLaw& dl) {
  if (field.t != 0.0) {
    throw DomainError("ceilings are defined from the initial data (t = 0), got t = " +
                      std::to_string(field.t));
  }
  field.validate();
  const FieldViews v = derive_views(field, gm, dl);
  return riccati_ceilings(v.y, v.q);
}

double initial_phi_power_sup(const FieldState& field, const GasModel& gm) {
  double sup = 0.0;
  for (double tau : field.tau) {
    sup = std::max(sup, std::pow(phi_of_tau(gm, tau), gm.shift_exponent()));
  }
  return sup;
}

double density_floor_amplitude(const GasModel& gm, const RiccatiCeilings& ceilings) {
  const double g = gm.gamma();
  if (!(g > 1.0 && g < 3.0)) throw DomainError("the density floor needs 1 < gamma < 3");
  const double base = std::pow(gm.phi_scale(), -gm.shift_exponent()) *
                      (ceilings.y_cap + ceilings.q_cap) * (3.0 - g) / (2.0 * (g - 1.0)) *
                      gm.k_c();
  return std::pow(base, -4.0 / (3.0 - g));
}

double density_floor(const GasModel& gm, const DampingLaw& dl, const RiccatiCeilings& ceilings,
                     double t) {
  require_subcritical_floor_regime(gm, dl);
  if (!(t > 0.0)) throw RangeError("the density floor is defined for t > 0");
  const double log_k0 = std::log(density_floor_amplitude(gm, ceilings));
  const double log_floor = log_density_floor(gm, dl, log_k0, t);
  if (log_floor > 700.0) throw RangeError("density floor overflows at t = " + std::to_string(t));
  return std::exp(log_floor);
}

double density_floor_onset(const GasModel& gm, const DampingLaw& dl,
                           const RiccatiCeilings& ceilings, double phi0_power_sup) {
  require_subcritical_floor_regime(gm, dl);
  if (!(phi0_power_sup > 0.0) || !std::isfinite(phi0_power_sup)) {
    throw DomainError("sup phi0^shift_exponent must be positive");
  }
  const double g = gm.gamma();
  const double log_coef = std::log((3.0 - g) / (4.0 * (g - 1.0)) * gm.k_c() *
                                   (ceilings.y_cap + ceilings.q_cap));
  const double target = std::log(phi0_power_sup);
  auto dominating = [&](double t) {
    return log_coef + std::log(t) + log_growth_factor(gm, dl, t);
  };

  double hi = 1.0;
  while (dominating(hi) < target) {
    hi *= 2.0;
    if (hi > 1e300) throw RangeError("density-floor onset is not finite");
  }
  double lo = 0.0;
  while (hi - lo > kOnsetTolerance) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (dominating(mid) >= target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

DensityFloor::DensityFloor(const GasModel& gm, const DampingLaw& dl,
                           const RiccatiCeilings& ceilings, double phi0_power_sup)
    : gm_(gm),
      dl_(dl),
      ceilings_(ceilings),
      k0_(density_floor_amplitude(gm, ceilings)),
      t_min_(density_floor_onset(gm, dl, ceilings, phi0_power_sup)) {}

double DensityFloor::at(double t) const {
  if (!(t > t_min_)) {
    throw RangeError("density floor queried at t = " + std::to_string(t) +
                     " before its onset t_min = " + std::to_string(t_min_));
  }
  return density_floor(gm_, dl_, ceilings_, t);
}

double k1_constant(const GasModel& gm, const InitialBound& ib) {
  const double g = gm.gamma();
  return gm.k_c() * (g + 1.0) / (2.0 * (g - 1.0)) *
         std::pow(gm.phi_scale(), -gm.shift_exponent()) *
         std::pow(ib.c0_tilde, (3.0 - g) / 4.0);
}

double k2_closed_form(const GasModel& gm, const DampingLaw& dl) {
  require_supercritical(gm, "K2");
  const double g = gm.gamma();
  const double a = dl.alpha();
  if (dl.critical()) throw RegimeError("K2 is defined for lambda != 1");
  if (a == 0.0) return std::numeric_limits<double>::infinity();
  const double kappa = a * (3.0 * g - 1.0) / (2.0 * (g - 3.0) * (1.0 - dl.lambda()));
  return 2.0 * (g - 3.0) / (a * (3.0 * g - 1.0)) * std::exp(-kappa);
}

double k2_quadrature(const GasModel& gm, const DampingLaw& dl) {
  require_supercritical(gm, "K2");
  const double l = dl.lambda();
  if (!(l < 1.0)) throw RegimeError("the K2 integral converges only for lambda < 1");
  const double g = gm.gamma();
  const double a = dl.alpha();
  if (a == 0.0) return std::numeric_limits<double>::infinity();
  const double kappa = a * (3.0 * g - 1.0) / (2.0 * (g - 3.0) * (1.0 - l));
  const double e = 1.0 - l;
  // Scaled so the integrand starts at 1; the e^{-kappa} factor is restored below.
  auto integrand = [&](double s) { return std::exp(-kappa * (std::pow(1.0 + s, e) - 1.0)); };
  const double s_max = std::pow(1.0 - std::log(kTruncationDecay) / kappa, 1.0 / e) - 1.0;
  double error = 0.0;
  const double scaled = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      integrand, 0.0, s_max, 20, 1e-12, &error);
  return scaled * std::exp(-kappa);
}

double k2_constant(const GasModel& gm, const DampingLaw& dl) {
  if (dl.lambda() >= 0.0) return k2_closed_form(gm, dl);
  return k2_quadrature(gm, dl);
}

double k3_constant(const GasModel& gm, const DampingLaw& dl) {
  const double g = gm.gamma();
  const double kc = gm.k_c();
  return 2.0 * dl.alpha() * (g - 1.0) * (g - 1.0) / (kc * kc * (g - 3.0) * (g - 3.0) * (g + 1.0)) *
         std::pow(gm.phi_scale(), (g - 3.0) / (g - 1.0));
}

double k4_constant(const GasModel& gm, const DampingLaw& dl, const InitialBound& ib) {
  const double g = gm.gamma();
  return std::sqrt(k3_constant(gm, dl) * std::pow(ib.c0_tilde, (g - 3.0) / 2.0) * dl.lambda() *
                   (g - 3.0));
}

double k5_constant(const GasModel& gm, const DampingLaw& dl) {
  const double g = gm.gamma();
  return 2.0 * (g - 3.0) / (dl.alpha() * (3.0 * g - 1.0) - 2.0 * (g - 3.0));
}

double threshold_N(const GasModel& gm, const DampingLaw& dl, const InitialBound& ib) {
  require_supercritical(gm, "threshold N");
  const double g = gm.gamma();
  const double bound = dl.alpha() * (g - 1.0) / (g - 3.0);
  const double lo = std::min(1.0, bound);
  const double hi = std::max(1.0, bound);
  const double l = dl.lambda();
  if (l < lo) {
    const double k2 = k2_constant(gm, dl);
    if (std::isinf(k2)) return 0.0;
    const double n = 1.0 / (k1_constant(gm, ib) * k2);
    if (!std::isfinite(n)) throw RangeError("threshold N overflows");
    return n;
  }
  if (l > hi) return k4_constant(gm, dl, ib);
  throw RegimeError("no blow-up threshold for lambda = " + std::to_string(l) + " in [" +
                    std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

double threshold_N1(const GasModel& gm, const DampingLaw& dl, const InitialBound& ib) {
  require_supercritical(gm, "threshold N1");
  if (!dl.critical()) throw RegimeError("threshold N1 is defined for lambda = 1 only");
  const double g = gm.gamma();
  const double a = dl.alpha();
  if (!(a >= (g - 3.0) / (g - 1.0))) {
    throw RegimeError("threshold N1 needs alpha >= (gamma-3)/(gamma-1)");
  }
  if (!(a * (3.0 * g - 1.0) > 2.0 * (g - 3.0))) {
    throw RegimeError("threshold N1 needs alpha(3 gamma - 1) > 2(gamma - 3)");
  }
  return 1.0 / (k1_constant(gm, ib) * k5_constant(gm, dl));
}

}  // namespace shockline
