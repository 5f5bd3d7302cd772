#pragma once

// Scalar Riccati equations y' = c0(t) - c2(t) y^2 with c2 > 0.
//
// Solutions either stay bounded or run off to -infinity in finite time. The
// integrator follows y until y < -1 and then switches to v = 1/y, which obeys
// the regular equation v' = c2 - c0 v^2; the pole of y is the time at which v
// crosses zero from below and is reported as a bracket.

#include <functional>
#include <optional>
#include <vector>

namespace shockline {

struct Coefficients {
  double c0;
  double c2;
};

/// Must be pure: the integrator may evaluate it at any time in any order.
using CoefficientSource = std::function<Coefficients(double t)>;

struct RiccatiProblem {
  CoefficientSource coefficients;
  double y0 = 0.0;
  double t0 = 0.0;
};

enum class OutcomeKind { kGlobal, kBlowup };

struct TrajectoryPoint {
  double t;
  double y;
  double c2_integral;  // running integral of c2 from t0, same partition
};

struct RiccatiOutcome {
  OutcomeKind kind = OutcomeKind::kGlobal;
  // kGlobal: the state at t_end.
  double t_end = 0.0;
  double y_end = 0.0;
  // kBlowup: the pole lies in [t_star_lo, t_star_hi].
  double t_star_lo = 0.0;
  double t_star_hi = 0.0;
  std::vector<TrajectoryPoint> trajectory;
  // y at each requested output time; NaN for times at or past the pole.
  std::vector<double> output_values;

  bool blew_up() const noexcept { return kind == OutcomeKind::kBlowup; }
};

struct IntegrateOptions {
  double tol = 1e-9;
  /// Times in (t0, t_end] the integrator lands on exactly.
  std::vector<double> output_times;
  std::size_t max_steps = 5'000'000;
};

/// Adaptive Dormand-Prince 5(4) with PI step control; tol must lie in
/// (1e-12, 1e-2) and bounds the local error per step (mixed absolute and
/// relative). Throws CoefficientError when c2 <= 0 is encountered and
/// ToleranceError when the step size underflows.
RiccatiOutcome integrate(const RiccatiProblem& prob, double t_end, double tol = 1e-9);
RiccatiOutcome integrate(const RiccatiProblem& prob, double t_end, const IntegrateOptions& opts);

/// Integral of c2 over [t0, t].
using C2Integral = std::function<double(double t)>;

/// Integral of c2 from the integrator's own partition (cubic Hermite between
/// accepted steps). Past a blow-up the quadrature continues alone to horizon.
C2Integral running_c2_integral(const RiccatiProblem& prob, double horizon, double tol = 1e-9);

/// First t with integral(t) >= -1/y0 (requires c0 <= 0 and y0 < 0): the pole
/// of y cannot lie beyond it. NoBoundError when the integral stays at or
/// below -1/y0 up to horizon.
double blowup_time_upper_bound_case1(const RiccatiProblem& prob, const C2Integral& integral,
                                     double horizon);

/// Same with the integral deflated by 1 - 1/(1+eps)^2; c0 may be positive but
/// y0 must lie below -(1+eps) sup sqrt(c0/c2) (HypothesisError otherwise).
double blowup_time_upper_bound_case2(const RiccatiProblem& prob, double eps,
                                     const C2Integral& integral, double horizon);

/// Exact solution of y' = c0 - c2 y^2 with constant coefficients and y(0) = y0.
/// std::nullopt at or past the pole.
std::optional<double> closed_form_oracle(double c0, double c2, double y0, double t);

/// Pole time of the constant-coefficient solution, if it has one.
std::optional<double> closed_form_pole(double c0, double c2, double y0);

}  // namespace shockline
