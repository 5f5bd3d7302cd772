#pragma once

#include <stdexcept>
#include <string>

namespace shockline {

// Base of every error raised by the library. Catch this to handle all of them.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A formula was asked for outside the set where it is defined (gamma = 3,
// tau <= 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A value would overflow double precision, or a time lies outside the window
// where a bound is valid.
class RangeError : public Error {
 public:
  using Error::Error;
};

// The (gamma, alpha, lambda) triple is outside the hypotheses of the requested
// blow-up result.
class RegimeError : public Error {
 public:
  using Error::Error;
};

// A Riccati coefficient source returned c2 <= 0 or a non-finite value.
class CoefficientError : public Error {
 public:
  using Error::Error;
};

// The adaptive integrator could not meet its tolerance.
class ToleranceError : public Error {
 public:
  using Error::Error;
};

// The integral criterion never reaches its target on the queried horizon.
class NoBoundError : public Error {
 public:
  using Error::Error;
};

// Initial value does not satisfy the hypothesis of a blow-up bound.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

// The specific volume became non-positive (or non-finite) during a step.
class VacuumError : public Error {
 public:
  using Error::Error;
};

// A characteristic left the stored space-time window.
class TraceError : public Error {
 public:
  using Error::Error;
};

// The gradient is no longer resolved by the grid; the smooth regime has ended.
class BreakdownError : public Error {
 public:
  BreakdownError(const std::string& what, double time, double max_abs_ux)
      : Error(what), time_(time), max_abs_ux_(max_abs_ux) {}

  double time() const noexcept { return time_; }
  double max_abs_ux() const noexcept { return max_abs_ux_; }

 private:
  double time_;
  double max_abs_ux_;
};

}  // namespace shockline
