#include "shockline/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "shockline/bounds.hpp"
#include "shockline/criteria.hpp"
#include "shockline/errors.hpp"

namespace shockline {
namespace {

struct Rates {
  std::vector<double> tau;
  std::vector<double> u;
};

// tau_t = u_x, u_t = -p_x, each minus nu dx^3 f_xxxx.
void flux_rates(const std::vector<double>& tau, const std::vector<double>& u, const GasModel& gm,
                double dx, double nu, std::vector<double>& p, Rates& out) {
  const std::size_t n = tau.size();
  for (std::size_t i = 0; i < n; ++i) p[i] = pressure(gm, tau[i]);
  const double inv2dx = 0.5 / dx;
  const double hv = nu / dx;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t im2 = (i + n - 2) % n;
    const std::size_t im1 = (i + n - 1) % n;
    const std::size_t ip1 = (i + 1) % n;
    const std::size_t ip2 = (i + 2) % n;
    const double d4t = tau[im2] - 4.0 * tau[im1] + 6.0 * tau[i] - 4.0 * tau[ip1] + tau[ip2];
    const double d4u = u[im2] - 4.0 * u[im1] + 6.0 * u[i] - 4.0 * u[ip1] + u[ip2];
    out.tau[i] = (u[ip1] - u[im1]) * inv2dx - hv * d4t;
    out.u[i] = -(p[ip1] - p[im1]) * inv2dx - hv * d4u;
  }
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

void check_positive(const std::vector<double>& tau, double t) {
  for (std::size_t i = 0; i < tau.size(); ++i) {
    if (!(tau[i] > 0.0) || !std::isfinite(tau[i])) {
      throw VacuumError("tau = " + std::to_string(tau[i]) + " at cell " + std::to_string(i) +
                        ", t = " + std::to_string(t));
    }
  }
}

}  // namespace

double stable_dt(const FieldState& field, const GasModel& gm, double cfl) {
  double c_max = 0.0;
  for (double tau : field.tau) c_max = std::max(c_max, sound_speed(gm, tau));
  return cfl * field.grid.dx / c_max;
}

FieldState step(const FieldState& field, const GasModel& gm, const DampingLaw& dl, double dt,
                const StepOptions& opts) {
  const std::size_t n = field.grid.n;
  const double dx = field.grid.dx;
  if (!(dt > 0.0)) throw DomainError("dt must be positive");
  if (dt > stable_dt(field, gm, opts.max_cfl) * (1.0 + 1e-12)) {
    throw DomainError("dt = " + std::to_string(dt) + " violates CFL " +
                      std::to_string(opts.max_cfl));
  }
  const double decay = std::exp(-dl.integral(field.t, field.t + dt));

  std::vector<double> p(n);
  Rates r{std::vector<double>(n), std::vector<double>(n)};
  flux_rates(field.tau, field.u, gm, dx, opts.hyperviscosity, p, r);

  FieldState out;
  out.grid = field.grid;
  out.t = field.t + dt;
  std::vector<double> tau1(n), u1(n);
  for (std::size_t i = 0; i < n; ++i) {
    tau1[i] = field.tau[i] + dt * r.tau[i];
    u1[i] = decay * (field.u[i] + dt * r.u[i]);
  }
  check_positive(tau1, out.t);

  flux_rates(tau1, u1, gm, dx, opts.hyperviscosity, p, r);
  out.tau.resize(n);
  out.u.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.tau[i] = 0.5 * field.tau[i] + 0.5 * (tau1[i] + dt * r.tau[i]);
    out.u[i] = 0.5 * decay * field.u[i] + 0.5 * (u1[i] + dt * r.u[i]);
  }
  check_positive(out.tau, out.t);

  const double ux = max_abs(gradient4(out.u, dx));
  if (!(ux * dx <= opts.breakdown_threshold)) {
    throw BreakdownError("max|u_x| dx = " + std::to_string(ux * dx) + " at t = " +
                             std::to_string(out.t),
                         out.t, ux);
  }
  return out;
}

void AuditFlag::record(bool holds, double t) {
  if (!enabled_ || holds) return;
  ++violations_;
  if (!ok_) return;
  ok_ = false;
  first_violation_ = t;
}

char AuditFlag::code() const noexcept {
  if (!enabled_) return '-';
  return ok_ ? 'P' : 'F';
}

std::string Monitors::flags() const {
  return {invariant_region.code(), ceiling.code(), floor.code()};
}

FieldState SnapshotStore::state(std::size_t k) const {
  FieldState f;
  f.grid = grid;
  f.t = times.at(k);
  f.tau = tau.at(k);
  f.u = u.at(k);
  return f;
}

void SnapshotStore::append(const FieldState& field) {
  if (times.empty()) {
    grid = field.grid;
  } else if (!(field.t > times.back())) {
    throw DomainError("snapshots must be appended in increasing time");
  }
  times.push_back(field.t);
  tau.push_back(field.tau);
  u.push_back(field.u);
}

std::size_t snapshot_cadence(std::size_t n) {
  return std::max<std::size_t>(1, n / 256);
}

namespace {

class Auditor {
 public:
  Auditor(const FieldState& init, const GasModel& gm, const DampingLaw& dl,
          const RunOptions& opts, RunResult& result)
      : gm_(gm), dl_(dl), opts_(opts) {
    const bool initial = init.t == 0.0;
    Monitors& m = result.monitors;
    m.invariant_region = AuditFlag(opts.audit_invariant_region && initial);
    m.ceiling = AuditFlag(opts.audit_ceiling && initial && source_nonpositive(gm, dl));
    const Theorem th = classify_regime(gm, dl).theorem;
    m.floor = AuditFlag(opts.audit_floor && initial && gm.subcritical() &&
                        (th == Theorem::kT32 || th == Theorem::kT42));
    if (m.invariant_region.enabled()) {
      result.c0_tilde = invariant_region_bound(gm, certified_c0(init)).c0_tilde;
    }
    if (m.ceiling.enabled() || m.floor.enabled()) {
      const RiccatiCeilings caps = riccati_ceilings(init, gm, dl);
      result.y_cap = caps.y_cap;
      result.q_cap = caps.q_cap;
      if (m.floor.enabled()) {
        floor_.emplace(gm, dl, caps, initial_phi_power_sup(init, gm));
        result.floor_onset = floor_->t_min();
      }
    }
  }

  // Updates running maxima and audits; returns the instantaneous sample.
  MonitorSample observe(const FieldState& f, RunResult& result) const {
    const FieldViews v = derive_views(f, gm_, dl_);
    MonitorSample s{f.t, 0.0, std::numeric_limits<double>::infinity(),
                    -std::numeric_limits<double>::infinity(),
                    -std::numeric_limits<double>::infinity(), {}};
    double u_max = 0.0;
    for (std::size_t i = 0; i < f.grid.n; ++i) {
      s.max_abs_ux = std::max(s.max_abs_ux, std::abs(v.u_x[i]));
      s.min_rho = std::min(s.min_rho, 1.0 / f.tau[i]);
      s.y_max = std::max(s.y_max, v.y[i]);
      s.q_max = std::max(s.q_max, v.q[i]);
      u_max = std::max(u_max, std::abs(f.u[i]));
    }
    Monitors& m = result.monitors;
    m.max_abs_ux = std::max(m.max_abs_ux, s.max_abs_ux);
    m.max_abs_taux = std::max(m.max_abs_taux, max_abs(v.tau_x));
    m.min_rho = std::min(m.min_rho, s.min_rho);
    m.y_max = std::max(m.y_max, s.y_max);
    m.q_max = std::max(m.q_max, s.q_max);

    if (m.invariant_region.enabled()) {
      const double cap = result.c0_tilde * (1.0 + opts_.invariant_slack);
      const double rho_max = 1.0 / *std::min_element(f.tau.begin(), f.tau.end());
      m.invariant_region.record(rho_max <= cap && u_max <= cap, f.t);
    }
    if (m.ceiling.enabled()) {
      const bool y_ok = s.y_max <= result.y_cap + opts_.ceiling_slack * std::abs(result.y_cap);
      const bool q_ok = s.q_max <= result.q_cap + opts_.ceiling_slack * std::abs(result.q_cap);
      m.ceiling.record(y_ok && q_ok, f.t);
    }
    if (m.floor.enabled() && f.t > floor_->t_min()) {
      m.floor.record(s.min_rho >= (1.0 - opts_.floor_slack) * floor_->at(f.t), f.t);
    }
    s.flags = m.flags();
    return s;
  }

 private:
  const GasModel& gm_;
  const DampingLaw& dl_;
  const RunOptions& opts_;
  std::optional<DensityFloor> floor_;
};

}  // namespace

RunResult run(const FieldState& field, const GasModel& gm, const DampingLaw& dl,
              const RunOptions& opts) {
  field.validate();
  if (!(opts.t_end > field.t)) throw DomainError("t_end must exceed the field time");
  if (!(opts.cfl > 0.0 && opts.cfl <= opts.step.max_cfl)) {
    throw DomainError("cfl must lie in (0, " + std::to_string(opts.step.max_cfl) + "]");
  }

  RunResult result;
  const Auditor auditor(field, gm, dl, opts, result);
  const std::size_t cadence = snapshot_cadence(field.grid.n);

  FieldState cur = field;
  result.history.push_back(auditor.observe(cur, result));
  if (opts.store_snapshots) result.snapshots.append(cur);

  bool last_kept = true;
  MonitorSample last = result.history.back();
  while (cur.t < opts.t_end) {
    if (result.steps >= opts.max_steps) throw ToleranceError("maximum number of steps exceeded");
    double dt = stable_dt(cur, gm, opts.cfl);
    const bool final_step = cur.t + dt >= opts.t_end;
    if (final_step) dt = opts.t_end - cur.t;
    try {
      cur = step(cur, gm, dl, dt, opts.step);
    } catch (const BreakdownError& e) {
      result.breakdown = BreakdownReport{cur.t, e.time(), e.max_abs_ux(), cur.grid.dx};
      break;
    }
    if (final_step) cur.t = opts.t_end;
    ++result.steps;
    last_kept = result.steps % cadence == 0;
    last = auditor.observe(cur, result);
    if (last_kept) {
      result.history.push_back(last);
      if (opts.store_snapshots) result.snapshots.append(cur);
    }
  }
  if (!last_kept) {
    result.history.push_back(last);
    if (opts.store_snapshots) result.snapshots.append(cur);
  }
  result.final_state = std::move(cur);
  return result;
}

}  // namespace shockline
