#pragma once

// Pointwise algebra of the damped p-system
//
//   tau_t - u_x = 0,   u_t + p(tau)_x = -alpha (1+t)^(-lambda) u,   p = K tau^(-gamma)
//
// in Lagrangian coordinates: the phi / sound-speed transforms, Riemann
// invariants, the gradient variables y, q that decouple the Riemann-invariant
// gradients, and the coefficients of the Riccati equations they satisfy along
// characteristics.

#include <cstdint>

namespace shockline {

/// Polytropic gas p = K tau^(-gamma) together with the derived constants of
/// the phi-parametrisation (tau = K_tau phi^(-2/(gamma-1)), p = K_p
/// phi^(2gamma/(gamma-1)), c = K_c phi^((gamma+1)/(gamma-1))).
///
/// Construction throws DomainError unless gamma > 1, gamma != 3 and K > 0:
/// every Riccati coefficient carries (gamma - 3) in a denominator.
class GasModel {
 public:
  GasModel(double gamma, double big_k);

  double gamma() const noexcept { return gamma_; }
  double big_k() const noexcept { return big_k_; }
  double theta() const noexcept { return theta_; }
  double k_tau() const noexcept { return k_tau_; }
  double k_p() const noexcept { return k_p_; }
  double k_c() const noexcept { return k_c_; }

  /// 2 sqrt(K gamma) / (gamma - 1), the prefactor of phi(tau).
  double phi_scale() const noexcept { return phi_scale_; }
  /// (gamma + 1) / (2 (gamma - 1)), the power of phi multiplying A in y.
  double gradient_exponent() const noexcept { return grad_exp_; }
  /// (gamma - 3) / (2 (gamma - 1)), the power of phi in the damping shift.
  double shift_exponent() const noexcept { return shift_exp_; }

  bool subcritical() const noexcept { return gamma_ < 3.0; }

 private:
  double gamma_;
  double big_k_;
  double theta_;
  double k_tau_;
  double k_p_;
  double k_c_;
  double phi_scale_;
  double grad_exp_;
  double shift_exp_;
};

enum class DampingBranch : std::uint8_t {
  kGeneric,   // lambda != 1
  kCritical,  // lambda == 1
};

/// Damping -alpha / (1+t)^lambda. The branch is decided by exact comparison
/// of lambda with 1; near-critical callers pass 1 +- eps explicitly.
class DampingLaw {
 public:
  DampingLaw(double alpha, double lambda);

  double alpha() const noexcept { return alpha_; }
  double lambda() const noexcept { return lambda_; }
  DampingBranch branch() const noexcept { return branch_; }
  bool critical() const noexcept { return branch_ == DampingBranch::kCritical; }

  /// alpha / (1+t)^lambda.
  double rate(double t) const;
  /// Integral of rate(s) over [t0, t1].
  double integral(double t0, double t1) const;

 private:
  double alpha_;
  double lambda_;
  DampingBranch branch_;
};

/// Forward characteristics dx/dt = +c carry w and y; backward ones dx/dt = -c
/// carry z and q.
enum class Characteristic : std::uint8_t { kForward, kBackward };

struct PointState {
  double tau;
  double u;
  double t;
};

/// Riemann-invariant gradients A = w_x, B = z_x. Non-finite input is rejected.
class GradientPoint {
 public:
  GradientPoint(double a_w, double b_z);

  double a_w() const noexcept { return a_w_; }
  double b_z() const noexcept { return b_z_; }

 private:
  double a_w_;
  double b_z_;
};

struct RiemannPair {
  double w;
  double z;
};

struct RiccatiCoefficients {
  double c0;  // a0 (generic) or b0 (critical)
  double c2;  // a2 or b2, always > 0
};

GasModel derive_constants(double gamma, double big_k);

double phi_of_tau(const GasModel& gm, double tau);
double tau_of_phi(const GasModel& gm, double phi);

/// Lagrangian sound speed sqrt(-p'(tau)).
double sound_speed(const GasModel& gm, double tau);
/// Same quantity through K_c phi^((gamma+1)/(gamma-1)).
double sound_speed_of_phi(const GasModel& gm, double phi);

double pressure(const GasModel& gm, double tau);

RiemannPair riemann_invariants(const GasModel& gm, const PointState& p);

/// A = u_x - c tau_x, B = u_x + c tau_x (phi_x = -c tau_x).
GradientPoint gradient_from_physical(const GasModel& gm, double tau, double u_x,
                                     double tau_x);

/// Natural log of the integrating factor that turns the shifted gradient into
/// y (or y_1 on the critical branch). Throws RangeError beyond |700|.
double log_time_factor(const GasModel& gm, const DampingLaw& dl, double t);

/// alpha (gamma-1) / (K_c (gamma-3) (1+t)^lambda), the coefficient of the
/// phi^shift_exponent term subtracted from phi^gradient_exponent * A.
double damping_shift(const GasModel& gm, const DampingLaw& dl, double t);

double y_variable(const GasModel& gm, const DampingLaw& dl, double phi,
                  double grad_a, double t);
double q_variable(const GasModel& gm, const DampingLaw& dl, double phi,
                  double grad_b, double t);

/// (a0, a2) for lambda != 1, (b0, b2) for lambda == 1.
RiccatiCoefficients riccati_coefficients(const GasModel& gm, const DampingLaw& dl,
                                         double phi, double t);

}  // namespace shockline
