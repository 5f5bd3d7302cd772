#pragma once

// A-priori bounds for classical solutions: the invariant-region constant,
// the ceilings Y, Q of the gradient variables, the time-dependent density
// floor for 1 < gamma < 3, and the blow-up thresholds N, N_1 for gamma > 3.

#include <span>

#include "shockline/core.hpp"
#include "shockline/field.hpp"

namespace shockline {

/// c0 bounds |u_0| and 1/tau_0; c0_tilde = max{c0 + c0^theta, (c0 + c0^theta)^(1/theta)}
/// then bounds |u| and rho for all later times.
struct InitialBound {
  double c0;
  double c0_tilde;
};

InitialBound invariant_region_bound(const GasModel& gm, double c0);

/// Smallest c0 certified by the sampled field: max over cells of |u| and 1/tau.
double certified_c0(const FieldState& field);

struct RiccatiCeilings {
  double y_cap;  // Y = max{1, sup_x y(x, 0)}
  double q_cap;  // Q = max{1, sup_x q(x, 0)}
};

RiccatiCeilings riccati_ceilings(std::span<const double> y0, std::span<const double> q0);
/// Field must be at t = 0 (DomainError otherwise); sup is taken over grid samples.
RiccatiCeilings riccati_ceilings(const FieldState& field, const GasModel& gm,
                                 const DampingLaw& dl);

/// sup_x phi(x,0)^((gamma-3)/(2(gamma-1))) over grid samples.
double initial_phi_power_sup(const FieldState& field, const GasModel& gm);

/// K_0, the amplitude of the density floor.
double density_floor_amplitude(const GasModel& gm, const RiccatiCeilings& ceilings);

/// rho_min(t) from the floor formula, for any t > 0. Checks the regime
/// (1 < gamma < 3, and lambda >= alpha(gamma-1)/(gamma-3) off the critical
/// branch) but not the onset; DensityFloor::at does both.
double density_floor(const GasModel& gm, const DampingLaw& dl,
                     const RiccatiCeilings& ceilings, double t);

/// First t at which the growing term of the phi-power estimate reaches the
/// initial term, so the doubled coefficient absorbs it. Bisection to 1e-9.
double density_floor_onset(const GasModel& gm, const DampingLaw& dl,
                           const RiccatiCeilings& ceilings, double phi0_power_sup);

class DensityFloor {
 public:
  DensityFloor(const GasModel& gm, const DampingLaw& dl, const RiccatiCeilings& ceilings,
               double phi0_power_sup);

  double k0() const noexcept { return k0_; }
  double t_min() const noexcept { return t_min_; }
  DampingBranch branch() const noexcept { return dl_.branch(); }

  /// Throws RangeError for t <= t_min.
  double at(double t) const;

 private:
  GasModel gm_;
  DampingLaw dl_;
  RiccatiCeilings ceilings_;
  double k0_;
  double t_min_;
};

// Constants of the gamma > 3 threshold. K1 depends on the invariant-region
// bound; K2 on the damping law (closed form for 0 <= lambda < 1, quadrature
// for lambda <= 0).
double k1_constant(const GasModel& gm, const InitialBound& ib);
double k2_closed_form(const GasModel& gm, const DampingLaw& dl);
double k2_quadrature(const GasModel& gm, const DampingLaw& dl);
double k2_constant(const GasModel& gm, const DampingLaw& dl);
double k3_constant(const GasModel& gm, const DampingLaw& dl);
double k4_constant(const GasModel& gm, const DampingLaw& dl, const InitialBound& ib);
double k5_constant(const GasModel& gm, const DampingLaw& dl);

/// N = 1/(K1 K2) below min{1, alpha(gamma-1)/(gamma-3)}, K4 above the max.
/// RegimeError for gamma < 3 and for lambda in the closed gap between them.
double threshold_N(const GasModel& gm, const DampingLaw& dl, const InitialBound& ib);

/// N_1 = 1/(K1 K5) on the critical branch with gamma > 3 and
/// alpha >= (gamma-3)/(gamma-1).
double threshold_N1(const GasModel& gm, const DampingLaw& dl, const InitialBound& ib);

}  // namespace shockline
