#pragma once

// Blow-up criteria for initial data: regime classification over (gamma,
// alpha, lambda) and pointwise checks of the sufficient conditions
//
//   u_x + phi_x < rhs(phi)   or   u_x - phi_x < rhs(phi)
//
// for some grid point at t = 0.

#include <cstdint>
#include <string_view>

#include "shockline/bounds.hpp"
#include "shockline/core.hpp"
#include "shockline/field.hpp"

namespace shockline {

enum class GammaSide : std::uint8_t { kSub, kSuper };

enum class LambdaSide : std::uint8_t { kGenericLow, kGenericHigh, kGenericGap, kCritical };

enum class Theorem : std::uint8_t { kT31, kT32, kT41, kT42, kNone };

struct Regime {
  GammaSide gamma_side;
  LambdaSide lambda_side;
  Theorem theorem;
};

bool operator==(const Regime& a, const Regime& b);

/// For gamma > 3: LOW below min{1, g}, HIGH above max{1, g}, GAP on the closed
/// interval between them, where g = alpha (gamma-1)/(gamma-3). For gamma < 3:
/// HIGH (T3_2 applies) when lambda >= g, GAP otherwise. lambda == 1 is
/// CRITICAL; with gamma > 3 it needs alpha >= (gamma-3)/(gamma-1).
Regime classify_regime(const GasModel& gm, const DampingLaw& dl);

/// True when the Riccati source term a0 (b0 on the critical branch) is
/// nonpositive for every t >= 0, which caps y and q by their initial maxima.
bool source_nonpositive(const GasModel& gm, const DampingLaw& dl);

struct Verdict {
  Theorem theorem = Theorem::kNone;
  bool fired = false;
  Characteristic characteristic = Characteristic::kForward;
  double witness_x = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double threshold = 0.0;
};

bool operator==(const Verdict& a, const Verdict& b);

/// Relative margin a strict inequality must clear to count.
inline constexpr double kStrictMargin = 1e-12;

// Each checker scans every grid point and both characteristic families and
// reports the argmin of lhs - rhs (ties go to the smaller x). The field must be
// at t = 0 and the regime must match (RegimeError otherwise). The gamma > 3
// checks also require ib.c0 to bound the sampled data (DomainError).
Verdict check_theorem_31(const FieldState& field, const GasModel& gm, const DampingLaw& dl,
                         const InitialBound& ib);
Verdict check_theorem_32(const FieldState& field, const GasModel& gm, const DampingLaw& dl);
Verdict check_theorem_41(const FieldState& field, const GasModel& gm, const DampingLaw& dl,
                         const InitialBound& ib);
Verdict check_theorem_42(const FieldState& field, const GasModel& gm, const DampingLaw& dl);

/// Dispatches on classify_regime; out-of-regime triples give a NONE verdict.
Verdict evaluate(const FieldState& field, const GasModel& gm, const DampingLaw& dl,
                 const InitialBound& ib);

std::string_view to_string(GammaSide s);
std::string_view to_string(LambdaSide s);
std::string_view to_string(Theorem t);
std::string_view to_string(Characteristic c);
Theorem theorem_from_string(std::string_view s);
Characteristic characteristic_from_string(std::string_view s);

}  // namespace shockline
