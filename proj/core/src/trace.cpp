#include "shockline/trace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <string>

#include "shockline/errors.hpp"
#include "shockline/riccati.hpp"

namespace shockline {
namespace {

// Four-point Lagrange interpolation on the periodic grid.
double cubic_at(const std::vector<double>& f, const Grid& g, double x) {
  const double s = (g.wrap(x) - g.x0) / g.dx;
  const auto n = static_cast<long>(g.n);
  long i = static_cast<long>(std::floor(s));
  const double r = s - static_cast<double>(i);
  auto at = [&](long k) { return f[static_cast<std::size_t>(((k % n) + n) % n)]; };
  const double fm1 = at(i - 1);
  const double f0 = at(i);
  const double f1 = at(i + 1);
  const double f2 = at(i + 2);
  return -r * (r - 1.0) * (r - 2.0) / 6.0 * fm1 + (r + 1.0) * (r - 1.0) * (r - 2.0) / 2.0 * f0 -
         (r + 1.0) * r * (r - 2.0) / 2.0 * f1 + (r + 1.0) * r * (r - 1.0) / 6.0 * f2;
}

struct Layer {
  std::vector<double> c;
  std::vector<double> phi;
  std::vector<double> gv;  // y or q
};

}  // namespace

CharTrace trace_characteristic(const SnapshotStore& store, const GasModel& gm,
                               const DampingLaw& dl, double x_start, Characteristic direction,
                               double t_stop, std::size_t substeps) {
  if (store.size() < 2) throw TraceError("tracing needs at least two snapshots");
  if (substeps == 0) throw DomainError("substeps must be positive");
  const Grid& g = store.grid;
  if (t_stop < 0.0) t_stop = store.times.back();
  if (!(t_stop > store.times.front()) || t_stop > store.times.back()) {
    throw TraceError("t_stop = " + std::to_string(t_stop) + " outside the stored range [" +
                     std::to_string(store.times.front()) + ", " +
                     std::to_string(store.times.back()) + "]");
  }
  if (!std::isfinite(x_start)) throw DomainError("x_start must be finite");

  const double sign = direction == Characteristic::kForward ? 1.0 : -1.0;
  std::vector<Layer> layers(store.size());
  auto layer = [&](std::size_t k) -> const Layer& {
    Layer& l = layers[k];
    if (l.c.empty()) {
      const FieldViews v = derive_views(store.state(k), gm, dl);
      l.c = v.c;
      l.phi = v.phi;
      l.gv = direction == Characteristic::kForward ? v.y : v.q;
    }
    return l;
  };

  CharTrace tr;
  tr.direction = direction;
  auto sample = [&](std::size_t k, double x) {
    const Layer& l = layer(k);
    tr.t.push_back(store.times[k]);
    tr.x.push_back(g.wrap(x));
    tr.phi.push_back(cubic_at(l.phi, g, x));
    tr.y_or_q.push_back(cubic_at(l.gv, g, x));
  };

  double x = x_start;
  sample(0, x);
  for (std::size_t k = 0; k + 1 < store.size() && store.times[k] < t_stop; ++k) {
    const double ta = store.times[k];
    const double tb = store.times[k + 1];
    const Layer& la = layer(k);
    const Layer& lb = layer(k + 1);
    auto speed = [&](double t, double xx) {
      const double s = (t - ta) / (tb - ta);
      return sign * ((1.0 - s) * cubic_at(la.c, g, xx) + s * cubic_at(lb.c, g, xx));
    };
    const double t_end = std::min(tb, t_stop);
    const double h = (t_end - ta) / static_cast<double>(substeps);
    double t = ta;
    for (std::size_t j = 0; j < substeps; ++j) {
      const double k1 = speed(t, x);
      const double k2 = speed(t + 0.5 * h, x + 0.5 * h * k1);
      const double k3 = speed(t + 0.5 * h, x + 0.5 * h * k2);
      const double k4 = speed(t + h, x + h * k3);
      x += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      t = ta + h * static_cast<double>(j + 1);
    }
    if (t_end < tb) {
      // Partial interval: interpolate the samples linearly in t.
      const double s = (t_end - ta) / (tb - ta);
      tr.t.push_back(t_end);
      tr.x.push_back(g.wrap(x));
      tr.phi.push_back((1.0 - s) * cubic_at(la.phi, g, x) + s * cubic_at(lb.phi, g, x));
      tr.y_or_q.push_back((1.0 - s) * cubic_at(la.gv, g, x) + s * cubic_at(lb.gv, g, x));
      break;
    }
    sample(k + 1, x);
  }
  return tr;
}

namespace {

// Cubic Hermite through (t_i, f_i) with three-point slopes.
class SeriesInterpolant {
 public:
  SeriesInterpolant(std::vector<double> t, std::vector<double> f)
      : t_(std::move(t)), f_(std::move(f)), d_(t_.size()) {
    const std::size_t n = t_.size();
    if (n == 2) {
      d_[0] = d_[1] = (f_[1] - f_[0]) / (t_[1] - t_[0]);
      return;
    }
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t a = i == 0 ? 0 : (i == n - 1 ? n - 3 : i - 1);
      const double h1 = t_[a + 1] - t_[a];
      const double h2 = t_[a + 2] - t_[a + 1];
      const double s1 = (f_[a + 1] - f_[a]) / h1;
      const double s2 = (f_[a + 2] - f_[a + 1]) / h2;
      // Derivative at t_i of the parabola through the three points.
      const double c2 = (s2 - s1) / (h1 + h2);
      d_[i] = s1 + c2 * ((t_[i] - t_[a]) + (t_[i] - t_[a + 1]));
    }
  }

  double operator()(double t) const {
    if (t <= t_.front()) return f_.front();
    if (t >= t_.back()) return f_.back();
    const auto it = std::upper_bound(t_.begin(), t_.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - t_.begin()) - 1;
    const double h = t_[i + 1] - t_[i];
    const double s = (t - t_[i]) / h;
    const double s2 = s * s;
    const double s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * f_[i] + (s3 - 2 * s2 + s) * h * d_[i] +
           (-2 * s3 + 3 * s2) * f_[i + 1] + (s3 - s2) * h * d_[i + 1];
  }

 private:
  std::vector<double> t_;
  std::vector<double> f_;
  std::vector<double> d_;
};

}  // namespace

CrossValidation cross_validate_riccati(const CharTrace& trace, const GasModel& gm,
                                       const DampingLaw& dl, double tol) {
  const std::size_t n = trace.t.size();
  if (n < 2 || trace.phi.size() != n || trace.y_or_q.size() != n) {
    throw DomainError("trace needs at least two consistent samples");
  }
  const auto phi = std::make_shared<SeriesInterpolant>(trace.t, trace.phi);
  RiccatiProblem prob;
  prob.t0 = trace.t.front();
  prob.y0 = trace.y_or_q.front();
  prob.coefficients = [phi, &gm, &dl](double t) {
    const RiccatiCoefficients rc = riccati_coefficients(gm, dl, (*phi)(t), t);
    return Coefficients{rc.c0, rc.c2};
  };
  IntegrateOptions opts;
  opts.tol = tol;
  opts.output_times.assign(trace.t.begin() + 1, trace.t.end());
  const RiccatiOutcome out = integrate(prob, trace.t.back(), opts);

  CrossValidation cv;
  cv.blew_up = out.blew_up();
  cv.riccati_y.reserve(n);
  cv.riccati_y.push_back(prob.y0);
  cv.riccati_y.insert(cv.riccati_y.end(), out.output_values.begin(), out.output_values.end());

  double scale = 0.0;
  for (double v : trace.y_or_q) scale = std::max(scale, std::abs(v));
  scale = std::max(scale, std::numeric_limits<double>::min());
  cv.deviation.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (std::isnan(cv.riccati_y[i])) {
      cv.deviation[i] = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    cv.deviation[i] = std::abs(cv.riccati_y[i] - trace.y_or_q[i]) / scale;
    cv.max_deviation = std::max(cv.max_deviation, cv.deviation[i]);
  }
  return cv;
}

}  // namespace shockline
