#include "app.hpp"

#include <atomic>
#include <fstream>
#include <thread>
#include <typeinfo>

#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "shockline/errors.hpp"

namespace shockline::cli {
namespace {

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const VacuumError*>(&e)) return "VacuumError";
  if (dynamic_cast<const ToleranceError*>(&e)) return "ToleranceError";
  if (dynamic_cast<const CoefficientError*>(&e)) return "CoefficientError";
  if (dynamic_cast<const RangeError*>(&e)) return "RangeError";
  if (dynamic_cast<const DomainError*>(&e)) return "DomainError";
  if (dynamic_cast<const TraceError*>(&e)) return "TraceError";
  if (dynamic_cast<const RegimeError*>(&e)) return "RegimeError";
  return "Error";
}

void report_error(std::ostream& err, const char* category, const std::string& kind,
                  const std::string& message) {
  nlohmann::json j;
  j["error"] = category;
  j["kind"] = kind;
  j["message"] = message;
  err << j.dump() << '\n';
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c == '\n' ? ' ' : c;
  }
  return q + '"';
}

SweepRow run_cell(const SweepSpec& spec, std::size_t cell) {
  SweepRow row;
  row.coords = spec.coordinates(cell);
  Scenario s = spec.cell_scenario(cell);
  try {
    validate(s);
  } catch (const ConfigError& e) {
    row.status = "invalid";
    row.message = e.what();
    return row;
  }
  s.outputs.trace = false;
  s.outputs.snapshots = false;
  try {
    const ScenarioReport r = evaluate_scenario(s, spec.simulate);
    row.gamma_side = to_string(r.regime.gamma_side);
    row.regime = to_string(r.regime.lambda_side);
    row.theorem = to_string(r.regime.theorem);
    row.fired = r.verdict.fired;
    if (r.run) {
      row.breakdown = r.run->breakdown.has_value();
      if (r.run->breakdown) {
        row.breakdown_t_lo = r.run->breakdown->t_lo;
        row.breakdown_t_hi = r.run->breakdown->t_hi;
      }
      row.floor_violations = r.run->monitors.floor.violations();
    }
  } catch (const Error& e) {
    row.status = error_kind(e);
    row.message = e.what();
  }
  return row;
}

}  // namespace

ScenarioReport evaluate_scenario(const Scenario& s, bool simulate) {
  const GasModel gm = s.gas();
  const DampingLaw dl = s.damping();
  const FieldState field = init_field(s.profile, s.grid(), gm);

  ScenarioReport r{s, classify_regime(gm, dl), {}, {}, {}, {}, {}};
  r.bound = invariant_region_bound(gm, s.c0.value_or(certified_c0(field)));
  r.verdict = evaluate(field, gm, dl, r.bound);
  spdlog::debug("regime {} / {}, verdict {} fired={}", to_string(r.regime.gamma_side),
                to_string(r.regime.lambda_side), to_string(r.verdict.theorem), r.verdict.fired);
  if (!simulate) return r;

  RunOptions ro;
  ro.t_end = s.t_end;
  ro.cfl = s.cfl;
  ro.store_snapshots = s.outputs.trace || s.outputs.snapshots;
  r.run = run(field, gm, dl, ro);
  spdlog::debug("run finished at t = {} after {} steps{}", r.run->final_state.t, r.run->steps,
               r.run->breakdown ? " (breakdown)" : "");

  if (s.outputs.trace && r.run->snapshots.size() >= 2) {
    double x = s.profile.center;
    if (s.outputs.trace_x) {
      x = *s.outputs.trace_x;
    } else if (r.verdict.theorem != Theorem::kNone) {
      x = r.verdict.witness_x;
    }
    r.trace = trace_characteristic(r.run->snapshots, gm, dl, x, r.verdict.characteristic);
    r.cross = cross_validate_riccati(*r.trace, gm, dl, s.riccati_tol);
  }
  return r;
}

std::vector<SweepRow> run_sweep_cells(const SweepSpec& spec, unsigned jobs) {
  const std::size_t cells = spec.cells();
  std::vector<SweepRow> rows(cells);
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, cells));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t c = next++; c < cells; c = next++) rows[c] = run_cell(spec, c);
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned k = 1; k < jobs; ++k) pool.emplace_back(worker);
    worker();
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const SweepSpec& spec, const std::vector<SweepRow>& rows) {
  for (const AxisSpec& a : spec.axes) out << axis_name(a.axis) << ',';
  out << "status,gamma_side,regime,theorem,fired,breakdown_observed,breakdown_t_lo,"
         "breakdown_t_hi,floor_violations,message\n";
  for (const SweepRow& r : rows) {
    for (double c : r.coords) out << format_double(c) << ',';
    out << r.status << ',' << r.gamma_side << ',' << r.regime << ',' << r.theorem << ','
        << (r.fired ? 1 : 0) << ',' << (r.breakdown ? 1 : 0) << ','
        << format_double(r.breakdown_t_lo) << ',' << format_double(r.breakdown_t_hi) << ','
        << r.floor_violations << ',' << csv_field(r.message) << '\n';
  }
}

int run_app(const AppOptions& opts, std::ostream& log, std::ostream& err) {
  try {
    switch (opts.verb) {
      case Verb::kValidate: {
        // Either file kind lints; a sweep is recognised by its "axes" key.
        std::ifstream in(opts.config);
        if (!in) throw ConfigError("cannot read config " + opts.config.string());
        nlohmann::json j;
        try {
          j = nlohmann::json::parse(in);
        } catch (const nlohmann::json::parse_error& e) {
          throw ConfigError(std::string("config is not valid JSON: ") + e.what());
        }
        if (j.is_object() && j.contains("axes")) {
          const SweepSpec sw = parse_sweep(j);
          log << "ok: sweep with " << sw.cells() << " cells\n";
        } else {
          parse_scenario(j);
          log << "ok: scenario\n";
        }
        return kExitOk;
      }
      case Verb::kCheck:
      case Verb::kSimulate: {
        Scenario s = load_scenario(opts.config);
        const bool simulate = opts.verb == Verb::kSimulate;
        if (!simulate) s.outputs.monitors = s.outputs.trace = s.outputs.snapshots = false;
        const ScenarioReport r = evaluate_scenario(s, simulate);
        emit_report(opts.out, r);
        write_summary(log, r);
        return kExitOk;
      }
      case Verb::kSweep: {
        const SweepSpec sw = load_sweep(opts.config);
        const std::vector<SweepRow> rows = run_sweep_cells(sw, opts.jobs);
        std::error_code ec;
        std::filesystem::create_directories(opts.out, ec);
        if (ec) throw Error("cannot create " + opts.out.string() + ": " + ec.message());
        const auto path = opts.out / "sweep.csv";
        std::ofstream out(path, std::ios::binary);
        if (!out) throw Error("cannot write " + path.string());
        write_sweep_csv(out, sw, rows);
        out.flush();
        if (!out) throw Error("write to " + path.string() + " failed");
        log << "wrote " << rows.size() << " rows to " << path.string() << '\n';
        return kExitOk;
      }
    }
  } catch (const ConfigError& e) {
    report_error(err, "validation", "ConfigError", e.what());
    return kExitValidation;
  } catch (const Error& e) {
    report_error(err, "runtime", error_kind(e), e.what());
    return kExitRuntime;
  } catch (const std::exception& e) {
    report_error(err, "runtime", "Error", e.what());
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace shockline::cli
