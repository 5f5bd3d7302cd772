#include "shockline/criteria.hpp"

#include <cmath>
#include <string>

#include "shockline/errors.hpp"

namespace shockline {
namespace {

double lambda_pivot(const GasModel& gm, const DampingLaw& dl) {
  return dl.alpha() * (gm.gamma() - 1.0) / (gm.gamma() - 3.0);
}

void require_initial(const FieldState& field) {
  if (field.t != 0.0) throw DomainError("criteria need the field at t = 0");
  field.validate();
}

void require_certified(const FieldState& field, const GasModel& gm, const InitialBound& ib) {
  const double needed = certified_c0(field);
  if (!(ib.c0 >= needed)) {
    throw DomainError("C0 = " + std::to_string(ib.c0) + " does not bound the data (needs " +
                      std::to_string(needed) + ")");
  }
  const InitialBound expected = invariant_region_bound(gm, ib.c0);
  if (std::abs(expected.c0_tilde - ib.c0_tilde) > 1e-12 * expected.c0_tilde) {
    throw DomainError("C0_tilde is inconsistent with C0");
  }
}

// Scans lhs = A (forward) and B (backward) against rhs(phi) at every cell.
template <class Rhs>
Verdict scan(const FieldState& field, const FieldViews& views, Theorem theorem, double threshold,
             Rhs rhs_of_phi) {
  Verdict best;
  best.theorem = theorem;
  best.threshold = threshold;
  double best_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < field.grid.n; ++i) {
    const double rhs = rhs_of_phi(views.phi[i]);
    const std::pair<double, Characteristic> sides[] = {{views.a[i], Characteristic::kForward},
                                                       {views.b[i], Characteristic::kBackward}};
    for (const auto& [lhs, ch] : sides) {
      const double gap = lhs - rhs;
      if (gap < best_gap) {
        best_gap = gap;
        best.characteristic = ch;
        best.witness_x = field.grid.x(i);
        best.lhs = lhs;
        best.rhs = rhs;
      }
    }
  }
  best.fired = best.lhs < best.rhs - kStrictMargin * std::abs(best.rhs);
  return best;
}

// rhs of the gamma < 3 criteria is the damping shift at t = 0 times
// phi^(-2/(gamma-1)), which makes lhs <= rhs the same statement as y <= 0
// (resp. q <= 0). Check that identity cell by cell.
void assert_sign_form(const FieldState& field, const FieldViews& views, const GasModel& gm,
                      const DampingLaw& dl) {
  const double mu = std::exp(log_time_factor(gm, dl, 0.0));
  const double shift = damping_shift(gm, dl, 0.0);
  const double p = -2.0 / (gm.gamma() - 1.0);
  for (std::size_t i = 0; i < field.grid.n; ++i) {
    const double phi = views.phi[i];
    const double rhs = shift * std::pow(phi, p);
    const double scale = mu * std::pow(phi, gm.gradient_exponent());
    const double pairs[][2] = {{views.a[i], views.y[i]}, {views.b[i], views.q[i]}};
    for (const auto& [lhs, gv] : pairs) {
      const double via_ineq = scale * (lhs - rhs);
      const double mag = scale * (std::abs(lhs) + std::abs(rhs));
      if (std::abs(via_ineq - gv) > 1e-12 * std::max(mag, 1e-300)) {
        throw Error("inequality and sign form disagree at x = " +
                    std::to_string(field.grid.x(i)));
      }
    }
  }
}

Verdict check_sub(const FieldState& field, const GasModel& gm, const DampingLaw& dl,
                  Theorem theorem) {
  require_initial(field);
  const FieldViews views = derive_views(field, gm, dl);
  assert_sign_form(field, views, gm, dl);
  const double coef = -dl.alpha() * (gm.gamma() - 1.0) / (gm.k_c() * (3.0 - gm.gamma()));
  const double p = -2.0 / (gm.gamma() - 1.0);
  return scan(field, views, theorem, 0.0,
              [&](double phi) { return coef * std::pow(phi, p); });
}

Verdict check_super(const FieldState& field, const GasModel& gm, const DampingLaw& dl,
                    const InitialBound& ib, Theorem theorem, double threshold, double k2_tilde) {
  require_initial(field);
  require_certified(field, gm, ib);
  const FieldViews views = derive_views(field, gm, dl);
  const double g = gm.gamma();
  const double k1_tilde = dl.alpha() * (g - 1.0) / (gm.k_c() * (g - 3.0));
  const double p = -2.0 / (g - 1.0);
  const double e1 = gm.gradient_exponent();
  return scan(field, views, theorem, threshold, [&](double phi) {
    return k1_tilde * std::pow(phi, p) - k2_tilde * std::pow(phi, -e1);
  });
}

void require_regime(const GasModel& gm, const DampingLaw& dl, Theorem wanted) {
  const Regime r = classify_regime(gm, dl);
  if (r.theorem != wanted) {
    throw RegimeError(std::string(to_string(wanted)) + " does not apply to gamma = " +
                      std::to_string(gm.gamma()) + ", alpha = " + std::to_string(dl.alpha()) +
                      ", lambda = " + std::to_string(dl.lambda()) + " (regime " +
                      std::string(to_string(r.theorem)) + ")");
  }
}

}  // namespace

bool operator==(const Regime& a, const Regime& b) {
  return a.gamma_side == b.gamma_side && a.lambda_side == b.lambda_side && a.theorem == b.theorem;
}

bool operator==(const Verdict& a, const Verdict& b) {
  return a.theorem == b.theorem && a.fired == b.fired && a.characteristic == b.characteristic &&
         a.witness_x == b.witness_x && a.lhs == b.lhs && a.rhs == b.rhs &&
         a.threshold == b.threshold;
}

Regime classify_regime(const GasModel& gm, const DampingLaw& dl) {
  const double g = gm.gamma();
  const double l = dl.lambda();
  if (gm.subcritical()) {
    if (dl.critical()) return {GammaSide::kSub, LambdaSide::kCritical, Theorem::kT42};
    if (l >= lambda_pivot(gm, dl)) return {GammaSide::kSub, LambdaSide::kGenericHigh, Theorem::kT32};
    return {GammaSide::kSub, LambdaSide::kGenericGap, Theorem::kNone};
  }
  if (dl.critical()) {
    const bool ok = dl.alpha() >= (g - 3.0) / (g - 1.0);
    return {GammaSide::kSuper, LambdaSide::kCritical, ok ? Theorem::kT41 : Theorem::kNone};
  }
  const double pivot = lambda_pivot(gm, dl);
  const double lo = std::min(1.0, pivot);
  const double hi = std::max(1.0, pivot);
  if (l < lo) return {GammaSide::kSuper, LambdaSide::kGenericLow, Theorem::kT31};
  if (l > hi) return {GammaSide::kSuper, LambdaSide::kGenericHigh, Theorem::kT31};
  return {GammaSide::kSuper, LambdaSide::kGenericGap, Theorem::kNone};
}

bool source_nonpositive(const GasModel& gm, const DampingLaw& dl) {
  const double g = gm.gamma();
  const double a = dl.alpha();
  if (a == 0.0) return true;
  if (dl.critical()) return (g - 3.0) <= a * (g - 1.0);
  // Sign of lambda (gamma-3) (1+t)^(lambda-1) - alpha (gamma-1) over t >= 0.
  const double l = dl.lambda();
  const double lead = l * (g - 3.0);
  if (lead <= 0.0) return true;
  if (l > 1.0) return false;
  return lead <= a * (g - 1.0);
}

Verdict check_theorem_31(const FieldState& field, const GasModel& gm, const DampingLaw& dl,
                         const InitialBound& ib) {
  require_regime(gm, dl, Theorem::kT31);
  const double g = gm.gamma();
  const double n = threshold_N(gm, dl, ib);
  const double k2_tilde =
      n * std::exp(-dl.alpha() * (3.0 * g - 1.0) / (2.0 * (g - 3.0) * (1.0 - dl.lambda())));
  return check_super(field, gm, dl, ib, Theorem::kT31, n, k2_tilde);
}

Verdict check_theorem_32(const FieldState& field, const GasModel& gm, const DampingLaw& dl) {
  require_regime(gm, dl, Theorem::kT32);
  return check_sub(field, gm, dl, Theorem::kT32);
}

Verdict check_theorem_41(const FieldState& field, const GasModel& gm, const DampingLaw& dl,
                         const InitialBound& ib) {
  require_regime(gm, dl, Theorem::kT41);
  const double n1 = threshold_N1(gm, dl, ib);
  return check_super(field, gm, dl, ib, Theorem::kT41, n1, n1);
}

Verdict check_theorem_42(const FieldState& field, const GasModel& gm, const DampingLaw& dl) {
  require_regime(gm, dl, Theorem::kT42);
  return check_sub(field, gm, dl, Theorem::kT42);
}

Verdict evaluate(const FieldState& field, const GasModel& gm, const DampingLaw& dl,
                 const InitialBound& ib) {
  try {
    switch (classify_regime(gm, dl).theorem) {
      case Theorem::kT31:
        return check_theorem_31(field, gm, dl, ib);
      case Theorem::kT32:
        return check_theorem_32(field, gm, dl);
      case Theorem::kT41:
        return check_theorem_41(field, gm, dl, ib);
      case Theorem::kT42:
        return check_theorem_42(field, gm, dl);
      case Theorem::kNone:
        break;
    }
  } catch (const RegimeError&) {
    // A threshold undefined on a boundary curve: no theorem applies.
  }
  return Verdict{};
}

std::string_view to_string(GammaSide s) {
  return s == GammaSide::kSub ? "SUB" : "SUPER";
}

std::string_view to_string(LambdaSide s) {
  switch (s) {
    case LambdaSide::kGenericLow:
      return "GENERIC_LOW";
    case LambdaSide::kGenericHigh:
      return "GENERIC_HIGH";
    case LambdaSide::kGenericGap:
      return "GENERIC_GAP";
    case LambdaSide::kCritical:
      return "CRITICAL";
  }
  return "?";
}

std::string_view to_string(Theorem t) {
  switch (t) {
    case Theorem::kT31:
      return "T3_1";
    case Theorem::kT32:
      return "T3_2";
    case Theorem::kT41:
      return "T4_1";
    case Theorem::kT42:
      return "T4_2";
    case Theorem::kNone:
      return "NONE";
  }
  return "?";
}

std::string_view to_string(Characteristic c) {
  return c == Characteristic::kForward ? "FORWARD" : "BACKWARD";
}

Theorem theorem_from_string(std::string_view s) {
  for (Theorem t : {Theorem::kT31, Theorem::kT32, Theorem::kT41, Theorem::kT42, Theorem::kNone}) {
    if (to_string(t) == s) return t;
  }
  throw DomainError("unknown theorem '" + std::string(s) + "'");
}

Characteristic characteristic_from_string(std::string_view s) {
  if (s == "FORWARD") return Characteristic::kForward;
  if (s == "BACKWARD") return Characteristic::kBackward;
  throw DomainError("unknown characteristic '" + std::string(s) + "'");
}

}  // namespace shockline
