#include "shockline/riccati.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <numbers>
#include <string>

#include "shockline/errors.hpp"

namespace shockline {
namespace {

using State = std::array<double, 2>;  // {y or v, running integral of c2}

enum class Chart { kDirect, kInverse };

// Dormand-Prince 5(4) tableau.
constexpr double c2_ = 1.0 / 5.0, c3_ = 3.0 / 10.0, c4_ = 4.0 / 5.0, c5_ = 8.0 / 9.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                 b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

// PI controller (Hairer & Wanner, II.4).
constexpr double kBeta = 0.04;
constexpr double kExpo = 0.2 - 0.75 * kBeta;
constexpr double kSafety = 0.9;
constexpr double kFacMin = 0.2;
constexpr double kInverseFloor = 1e-3;
// Fraction of the caller's tolerance spent per step, so that the global
// error over a typical run stays within a small multiple of tol.
constexpr double kLocalShare = 0.05;
constexpr double kFacMax = 10.0;

constexpr double kSwitchToInverse = -1.0;  // y below this: follow v = 1/y
constexpr double kSwitchToDirect = -2.0;   // v below this (y > -1/2): back to y
constexpr double kBracketRelWidth = 1e-7;

Coefficients checked_coefficients(const CoefficientSource& src, double t) {
  const Coefficients c = src(t);
  if (!std::isfinite(c.c0) || !std::isfinite(c.c2)) {
    throw CoefficientError("non-finite Riccati coefficient at t = " + std::to_string(t));
  }
  if (!(c.c2 > 0.0)) {
    throw CoefficientError("c2 = " + std::to_string(c.c2) + " <= 0 at t = " + std::to_string(t));
  }
  return c;
}

class Stepper {
 public:
  Stepper(const CoefficientSource& src, double tol, bool quadrature_only)
      : src_(src), tol_(tol * kLocalShare), quadrature_only_(quadrature_only) {}

  State rhs(double t, const State& s, Chart chart) const {
    const Coefficients c = checked_coefficients(src_, t);
    if (quadrature_only_) return {0.0, c.c2};
    const double v = s[0];
    if (chart == Chart::kDirect) return {c.c0 - c.c2 * v * v, c.c2};
    return {c.c2 - c.c0 * v * v, c.c2};
  }

  // One step of size h from (t, s) with first stage k1 = rhs(t, s).
  // Returns the 5th-order solution and writes the scaled error norm.
  State step(double t, const State& s, const State& k1, double h, Chart chart,
             double& err) const {
    auto comb = [&](std::initializer_list<std::pair<double, const State*>> terms) {
      State out = s;
      for (const auto& [coef, k] : terms) {
        out[0] += h * coef * (*k)[0];
        out[1] += h * coef * (*k)[1];
      }
      return out;
    };
    const State k2 = rhs(t + c2_ * h, comb({{a21, &k1}}), chart);
    const State k3 = rhs(t + c3_ * h, comb({{a31, &k1}, {a32, &k2}}), chart);
    const State k4 = rhs(t + c4_ * h, comb({{a41, &k1}, {a42, &k2}, {a43, &k3}}), chart);
    const State k5 =
        rhs(t + c5_ * h, comb({{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}), chart);
    const State k6 = rhs(t + h, comb({{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}),
                         chart);
    const State next = comb({{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    const State k7 = rhs(t + h, next, chart);

    double sum = 0.0;
    for (int i = 0; i < 2; ++i) {
      const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                            e7 * k7[i]);
      const double mag = std::max(std::abs(s[i]), std::abs(next[i]));
      // An error in v = 1/y is an error in y amplified by |y|, so the inverse
      // chart is controlled relative to |v|, floored to keep the pole reachable.
      const double scale = (i == 0 && chart == Chart::kInverse)
                               ? tol_ * std::max(mag, kInverseFloor)
                               : tol_ * (1.0 + mag);
      sum += (e / scale) * (e / scale);
    }
    err = std::sqrt(0.5 * sum);
    if (!std::isfinite(err) || !std::isfinite(next[0]) || !std::isfinite(next[1])) {
      err = std::numeric_limits<double>::infinity();
    }
    last_k7_ = k7;
    return next;
  }

  const State& last_k7() const { return last_k7_; }

 private:
  const CoefficientSource& src_;
  double tol_;
  bool quadrature_only_;
  mutable State last_k7_{};
};

double chart_to_y(double value, Chart chart) {
  if (chart == Chart::kDirect) return value;
  return 1.0 / value;
}

void validate_tol(double tol) {
  if (!(tol > 1e-12 && tol < 1e-2)) {
    throw DomainError("tolerance must lie in (1e-12, 1e-2), got " + std::to_string(tol));
  }
}

struct Engine {
  const RiccatiProblem& prob;
  double t_end;
  const IntegrateOptions& opts;
  bool quadrature_only = false;
  // Continuation state for quadrature-only runs.
  double start_t = 0.0;
  double start_integral = 0.0;

  RiccatiOutcome run() const {
    validate_tol(opts.tol);
    if (!prob.coefficients) throw DomainError("Riccati problem has no coefficient source");
    const double t0 = quadrature_only ? start_t : prob.t0;
    if (!(t_end > t0)) throw DomainError("t_end must exceed t0");
    if (!std::isfinite(prob.y0)) throw DomainError("y0 must be finite");

    Stepper stepper(prob.coefficients, opts.tol, quadrature_only);
    std::vector<double> stops;
    for (double ts : opts.output_times) {
      if (ts > t0 && ts < t_end) stops.push_back(ts);
    }
    std::sort(stops.begin(), stops.end());
    stops.push_back(t_end);

    RiccatiOutcome out;
    out.output_values.assign(opts.output_times.size(), std::numeric_limits<double>::quiet_NaN());
    auto record_output = [&](double t, double y) {
      for (std::size_t i = 0; i < opts.output_times.size(); ++i) {
        if (opts.output_times[i] == t) out.output_values[i] = y;
      }
    };

    Chart chart = Chart::kDirect;
    State s{quadrature_only ? 0.0 : prob.y0, quadrature_only ? start_integral : 0.0};
    if (!quadrature_only && prob.y0 < kSwitchToInverse) {
      chart = Chart::kInverse;
      s[0] = 1.0 / prob.y0;
    }
    double t = t0;
    out.trajectory.push_back({t, quadrature_only ? 0.0 : prob.y0, s[1]});

    const double span = t_end - t0;
    double h = std::min(span, 1e-3 * std::max(span, 1e-3));
    double err_prev = 1e-4;
    std::size_t stop_idx = 0;
    State k1 = stepper.rhs(t, s, chart);

    for (std::size_t n = 0; n < opts.max_steps; ++n) {
      const double stop = stops[stop_idx];
      const double h_min = 1e-14 * std::max(1.0, std::abs(t));
      if (h < h_min) {
        throw ToleranceError("step size underflow at t = " + std::to_string(t));
      }
      const bool lands = t + h >= stop;
      const double h_try = lands ? stop - t : h;

      double err = 0.0;
      const State next = stepper.step(t, s, k1, h_try, chart, err);
      if (!(err <= 1.0)) {
        const double fac = std::isfinite(err) ? std::max(kFacMin, kSafety * std::pow(err, -0.2))
                                              : kFacMin;
        h = h_try * fac;
        continue;
      }

      if (!quadrature_only && chart == Chart::kInverse && s[0] < 0.0 && next[0] >= 0.0) {
        bracket_pole(stepper, t, s, k1, h_try, out);
        return out;
      }

      const double t_new = lands ? stop : t + h_try;
      s = next;
      k1 = stepper.last_k7();
      t = t_new;

      if (!quadrature_only) {
        if (chart == Chart::kDirect && s[0] < kSwitchToInverse) {
          chart = Chart::kInverse;
          s[0] = 1.0 / s[0];
          k1 = stepper.rhs(t, s, chart);
        } else if (chart == Chart::kInverse && s[0] < kSwitchToDirect) {
          chart = Chart::kDirect;
          s[0] = 1.0 / s[0];
          k1 = stepper.rhs(t, s, chart);
        }
      }
      const double y = quadrature_only ? 0.0 : chart_to_y(s[0], chart);
      out.trajectory.push_back({t, y, s[1]});

      double fac = kSafety * std::pow(std::max(err, 1e-10), -kExpo) * std::pow(err_prev, kBeta);
      fac = std::clamp(fac, kFacMin, kFacMax);
      err_prev = std::max(err, 1e-4);
      if (lands) {
        record_output(t, y);
        ++stop_idx;
        if (stop_idx == stops.size()) {
          out.kind = OutcomeKind::kGlobal;
          out.t_end = t;
          out.y_end = y;
          return out;
        }
        // Keep the step the controller would have taken; landing shortened it.
        h = std::max(h, h_try * fac);
      } else {
        h = h_try * fac;
      }
    }
    throw ToleranceError("maximum number of steps exceeded");
  }

  // v crossed zero inside (t, t + h): shrink the crossing step by bisection.
  void bracket_pole(const Stepper& stepper, double t, const State& s, const State& k1, double h,
                    RiccatiOutcome& out) const {
    double lo = 0.0;
    double hi = h;
    for (int it = 0; it < 200; ++it) {
      const double width_target = kBracketRelWidth * std::max(std::abs(t + lo), 1e-12);
      if (hi - lo <= width_target) break;
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      double err = 0.0;
      const State probe = stepper.step(t, s, k1, mid, Chart::kInverse, err);
      if (probe[0] >= 0.0) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    out.kind = OutcomeKind::kBlowup;
    out.t_star_lo = t + lo;
    out.t_star_hi = t + hi;
    out.t_end = t;
    out.y_end = 1.0 / s[0];
  }
};

}  // namespace

RiccatiOutcome integrate(const RiccatiProblem& prob, double t_end, double tol) {
  IntegrateOptions opts;
  opts.tol = tol;
  return integrate(prob, t_end, opts);
}

RiccatiOutcome integrate(const RiccatiProblem& prob, double t_end, const IntegrateOptions& opts) {
  return Engine{prob, t_end, opts}.run();
}

namespace {

struct HermiteIntegral {
  std::vector<double> t;
  std::vector<double> value;
  std::vector<double> slope;

  double operator()(double x) const {
    if (!(x >= t.front() - 1e-12 * std::max(1.0, std::abs(t.front())) &&
          x <= t.back() + 1e-12 * std::max(1.0, std::abs(t.back())))) {
      throw DomainError("c2 integral queried outside [" + std::to_string(t.front()) + ", " +
                        std::to_string(t.back()) + "]");
    }
    if (x <= t.front()) return value.front();
    if (x >= t.back()) return value.back();
    const auto it = std::upper_bound(t.begin(), t.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - t.begin()) - 1;
    const double h = t[i + 1] - t[i];
    const double s = (x - t[i]) / h;
    const double s2 = s * s;
    const double s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * value[i] + (s3 - 2 * s2 + s) * h * slope[i] +
           (-2 * s3 + 3 * s2) * value[i + 1] + (s3 - s2) * h * slope[i + 1];
  }
};

void append_knots(const RiccatiProblem& prob, const std::vector<TrajectoryPoint>& traj,
                  HermiteIntegral& hi, bool skip_first) {
  for (std::size_t k = skip_first ? 1 : 0; k < traj.size(); ++k) {
    hi.t.push_back(traj[k].t);
    hi.value.push_back(traj[k].c2_integral);
    hi.slope.push_back(checked_coefficients(prob.coefficients, traj[k].t).c2);
  }
}

constexpr std::size_t kBracketSamples = 4096;

// Smallest t in [t0, horizon] with integral(t) >= target, assuming a
// nondecreasing integral.
double first_crossing(const C2Integral& integral, double t0, double horizon, double target) {
  if (!(integral(horizon) > target)) {
    throw NoBoundError("integral of c2 stays at or below " + std::to_string(target) +
                       " up to t = " + std::to_string(horizon));
  }
  double lo = t0;
  double hi = horizon;
  for (std::size_t k = 1; k <= kBracketSamples; ++k) {
    const double tk = t0 + (horizon - t0) * static_cast<double>(k) / kBracketSamples;
    if (integral(tk) >= target) {
      hi = tk;
      break;
    }
    lo = tk;
  }
  for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (integral(mid) >= target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

void require_horizon(const RiccatiProblem& prob, double horizon) {
  if (!(horizon > prob.t0)) throw DomainError("horizon must exceed t0");
}

}  // namespace

C2Integral running_c2_integral(const RiccatiProblem& prob, double horizon, double tol) {
  require_horizon(prob, horizon);
  auto data = std::make_shared<HermiteIntegral>();
  IntegrateOptions opts;
  opts.tol = tol;
  const RiccatiOutcome outcome = integrate(prob, horizon, opts);
  append_knots(prob, outcome.trajectory, *data, false);

  if (outcome.blew_up()) {
    const TrajectoryPoint& last = outcome.trajectory.back();
    Engine tail{prob, horizon, opts, true, last.t, last.c2_integral};
    const RiccatiOutcome rest = tail.run();
    append_knots(prob, rest.trajectory, *data, true);
  }
  return [data](double t) { return (*data)(t); };
}

double blowup_time_upper_bound_case1(const RiccatiProblem& prob, const C2Integral& integral,
                                     double horizon) {
  require_horizon(prob, horizon);
  if (!(prob.y0 < 0.0)) throw HypothesisError("case 1 needs y0 < 0");
  for (std::size_t k = 0; k <= kBracketSamples; ++k) {
    const double tk = prob.t0 + (horizon - prob.t0) * static_cast<double>(k) / kBracketSamples;
    if (checked_coefficients(prob.coefficients, tk).c0 > 0.0) {
      throw HypothesisError("case 1 needs c0 <= 0; c0 > 0 at t = " + std::to_string(tk));
    }
  }
  return first_crossing(integral, prob.t0, horizon, -1.0 / prob.y0);
}

double blowup_time_upper_bound_case2(const RiccatiProblem& prob, double eps,
                                     const C2Integral& integral, double horizon) {
  require_horizon(prob, horizon);
  if (!(eps > 0.0)) throw DomainError("eps must be positive");
  double sup_ratio = 0.0;
  for (std::size_t k = 0; k <= kBracketSamples; ++k) {
    const double tk = prob.t0 + (horizon - prob.t0) * static_cast<double>(k) / kBracketSamples;
    const Coefficients c = checked_coefficients(prob.coefficients, tk);
    sup_ratio = std::max(sup_ratio, std::sqrt(std::max(c.c0, 0.0) / c.c2));
  }
  const double threshold = -(1.0 + eps) * sup_ratio;
  if (!(prob.y0 < threshold)) {
    throw HypothesisError("case 2 needs y0 < " + std::to_string(threshold) + ", got " +
                          std::to_string(prob.y0));
  }
  const double deflation = 1.0 - 1.0 / ((1.0 + eps) * (1.0 + eps));
  return first_crossing(integral, prob.t0, horizon, -1.0 / prob.y0 / deflation);
}

std::optional<double> closed_form_pole(double c0, double c2, double y0) {
  if (!(c2 > 0.0)) throw DomainError("closed form needs c2 > 0");
  if (c0 == 0.0) {
    if (y0 < 0.0) return 1.0 / (c2 * -y0);
    return std::nullopt;
  }
  if (c0 > 0.0) {
    const double k = std::sqrt(c0 / c2);
    const double omega = std::sqrt(c0 * c2);
    if (y0 < -k) return -std::atanh(k / y0) / omega;
    return std::nullopt;
  }
  const double k = std::sqrt(-c0 / c2);
  const double omega = std::sqrt(-c0 * c2);
  return (std::atan(y0 / k) + 0.5 * std::numbers::pi) / omega;
}

std::optional<double> closed_form_oracle(double c0, double c2, double y0, double t) {
  const std::optional<double> pole = closed_form_pole(c0, c2, y0);
  if (pole && t >= *pole) return std::nullopt;
  if (c0 == 0.0) return y0 / (1.0 + c2 * y0 * t);
  if (c0 > 0.0) {
    const double k = std::sqrt(c0 / c2);
    const double omega = std::sqrt(c0 * c2);
    const double r = y0 / k;
    if (std::abs(r) < 1.0) return k * std::tanh(omega * t + std::atanh(r));
    if (std::abs(r) == 1.0) return y0;
    return k / std::tanh(omega * t + std::atanh(1.0 / r));
  }
  const double k = std::sqrt(-c0 / c2);
  const double omega = std::sqrt(-c0 * c2);
  return k * std::tan(std::atan(y0 / k) - omega * t);
}

}  // namespace shockline
