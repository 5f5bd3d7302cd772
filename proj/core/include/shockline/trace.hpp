#pragma once

// Characteristic curves through stored snapshots, and the comparison of the
// gradient variable sampled along them with an independent Riccati solve.

#include <cstddef>
#include <vector>

#include "shockline/core.hpp"
#include "shockline/solver.hpp"

namespace shockline {

struct CharTrace {
  Characteristic direction = Characteristic::kForward;
  // One entry per snapshot time from the start of the store.
  std::vector<double> t;
  std::vector<double> x;  // wrapped into the domain
  std::vector<double> phi;
  std::vector<double> y_or_q;  // y forward, q backward
};

/// Integrates dx/dt = +-c with classical RK4, `substeps` steps per snapshot
/// interval, through fields interpolated cubically in x and linearly in t.
/// t_stop defaults to the last snapshot; TraceError when it lies outside the
/// stored range or fewer than two snapshots exist.
CharTrace trace_characteristic(const SnapshotStore& store, const GasModel& gm,
                               const DampingLaw& dl, double x_start, Characteristic direction,
                               double t_stop = -1.0, std::size_t substeps = 4);

struct CrossValidation {
  std::vector<double> riccati_y;  // NaN past a blow-up of the Riccati solve
  std::vector<double> deviation;  // |riccati - field| / max|field|
  double max_deviation = 0.0;
  bool blew_up = false;
};

/// Solves y' = c0 - c2 y^2 with coefficients evaluated at phi(t) along the
/// trace (cubic Hermite in t) from the traced initial value, and compares it
/// with the field-sampled series.
CrossValidation cross_validate_riccati(const CharTrace& trace, const GasModel& gm,
                                       const DampingLaw& dl, double tol = 1e-9);

}  // namespace shockline
