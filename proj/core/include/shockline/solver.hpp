#pragma once

// Finite-difference time stepping of the damped p-system on a periodic grid,
// with the breakdown detector and the a-priori-bound audits that run
// alongside it.
//
// The scheme is two-stage SSP Runge-Kutta over second-order central
// differences, with the linear damping term removed by its exact integrating
// factor and a fourth-difference stabilisation of size nu dx^3 f_xxxx.

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "shockline/core.hpp"
#include "shockline/field.hpp"

namespace shockline {

struct StepOptions {
  double hyperviscosity = 0.02;
  /// BreakdownError once max|u_x| dx exceeds this.
  double breakdown_threshold = 0.5;
  double max_cfl = 0.4;
};

/// cfl * dx / max c.
double stable_dt(const FieldState& field, const GasModel& gm, double cfl);

/// One step of size dt. Throws DomainError when dt breaks the CFL limit,
/// VacuumError when tau leaves (0, inf) and BreakdownError when the new
/// state's gradient is no longer resolved.
FieldState step(const FieldState& field, const GasModel& gm, const DampingLaw& dl, double dt,
                const StepOptions& opts = {});

/// Audit that starts out passing and latches the first failure.
class AuditFlag {
 public:
  AuditFlag() = default;
  explicit AuditFlag(bool enabled) : enabled_(enabled) {}

  void record(bool holds, double t);

  bool enabled() const noexcept { return enabled_; }
  bool ok() const noexcept { return ok_; }
  /// NaN until the first violation.
  double first_violation() const noexcept { return first_violation_; }
  /// Number of observations that failed.
  std::size_t violations() const noexcept { return violations_; }
  /// 'P' pass, 'F' fail, '-' not audited.
  char code() const noexcept;

 private:
  bool enabled_ = false;
  bool ok_ = true;
  double first_violation_ = std::numeric_limits<double>::quiet_NaN();
  std::size_t violations_ = 0;
};

struct Monitors {
  double max_abs_ux = 0.0;
  double max_abs_taux = 0.0;
  double min_rho = std::numeric_limits<double>::infinity();
  double y_max = -std::numeric_limits<double>::infinity();
  double q_max = -std::numeric_limits<double>::infinity();
  AuditFlag invariant_region;
  AuditFlag ceiling;
  AuditFlag floor;

  std::string flags() const;
};

/// Field-wide values at one instant, as written to the monitor CSV.
struct MonitorSample {
  double t;
  double max_abs_ux;
  double min_rho;
  double y_max;
  double q_max;
  std::string flags;
};

struct BreakdownReport {
  double t_lo;        // last accepted time
  double t_hi;        // time of the unresolved state
  double max_abs_ux;  // at t_hi
  double dx;
};

/// Snapshots of (tau, u) on one grid, in increasing time.
struct SnapshotStore {
  Grid grid;
  std::vector<double> times;
  std::vector<std::vector<double>> tau;
  std::vector<std::vector<double>> u;

  std::size_t size() const noexcept { return times.size(); }
  FieldState state(std::size_t k) const;
  void append(const FieldState& field);
};

struct RunOptions {
  double t_end = 1.0;
  double cfl = 0.4;
  StepOptions step;
  bool store_snapshots = true;
  /// Audits run only where the bound is a theorem; these can switch them off.
  bool audit_invariant_region = true;
  bool audit_ceiling = true;
  bool audit_floor = true;
  double invariant_slack = 0.02;
  double ceiling_slack = 0.02;
  double floor_slack = 0.05;
  std::size_t max_steps = 10'000'000;
};

struct RunResult {
  FieldState final_state;  // last resolved state
  std::optional<BreakdownReport> breakdown;
  Monitors monitors;
  std::vector<MonitorSample> history;
  SnapshotStore snapshots;
  std::size_t steps = 0;
  /// Audit constants, NaN where the audit does not apply.
  double c0_tilde = std::numeric_limits<double>::quiet_NaN();
  double y_cap = std::numeric_limits<double>::quiet_NaN();
  double q_cap = std::numeric_limits<double>::quiet_NaN();
  double floor_onset = std::numeric_limits<double>::quiet_NaN();
};

/// Steps from field.t to opts.t_end. Breakdown ends the run normally and is
/// reported in the result; VacuumError propagates. Snapshots and monitor rows
/// are kept every max(1, n/256) steps plus the first and last state.
RunResult run(const FieldState& field, const GasModel& gm, const DampingLaw& dl,
              const RunOptions& opts);

std::size_t snapshot_cadence(std::size_t n);

}  // namespace shockline
