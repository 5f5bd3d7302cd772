#include "report.hpp"

#include <cmath>
#include <fstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "shockline/errors.hpp"
#include "shockline/snapshot_io.hpp"

namespace shockline::cli {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", v);
}

std::string verdict_json(const Verdict& v) {
  return fmt::format(
      "{{\"theorem\": \"{}\", \"fired\": {}, \"characteristic\": \"{}\", \"witness_x\": {}, "
      "\"lhs\": {}, \"rhs\": {}, \"threshold\": {}}}\n",
      to_string(v.theorem), v.fired ? "true" : "false", to_string(v.characteristic),
      format_double(v.witness_x), format_double(v.lhs), format_double(v.rhs),
      format_double(v.threshold));
}

Verdict parse_verdict_json(std::string_view text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  Verdict v;
  v.theorem = theorem_from_string(j.at("theorem").get<std::string>());
  v.fired = j.at("fired").get<bool>();
  v.characteristic = characteristic_from_string(j.at("characteristic").get<std::string>());
  v.witness_x = j.at("witness_x").get<double>();
  v.lhs = j.at("lhs").get<double>();
  v.rhs = j.at("rhs").get<double>();
  v.threshold = j.at("threshold").get<double>();
  return v;
}

void write_monitor_csv(std::ostream& out, const RunResult& run) {
  out << kMonitorHeader << '\n';
  for (const MonitorSample& s : run.history) {
    out << format_double(s.t) << ',' << format_double(s.max_abs_ux) << ','
        << format_double(s.min_rho) << ',' << format_double(s.y_max) << ','
        << format_double(s.q_max) << ',' << s.flags << '\n';
  }
}

void write_trace_csv(std::ostream& out, const CharTrace& trace, const CrossValidation& cv) {
  out << kTraceHeader << '\n';
  for (std::size_t i = 0; i < trace.t.size(); ++i) {
    out << format_double(trace.t[i]) << ',' << format_double(trace.x[i]) << ','
        << format_double(trace.phi[i]) << ',' << format_double(trace.y_or_q[i]) << ','
        << format_double(cv.riccati_y[i]) << ',' << format_double(cv.deviation[i]) << '\n';
  }
}

namespace {

std::string audit_line(const char* name, const AuditFlag& f) {
  if (!f.enabled()) return fmt::format("  {:<17} not applicable\n", name);
  if (f.ok()) return fmt::format("  {:<17} ok\n", name);
  return fmt::format("  {:<17} VIOLATED first at t = {} ({} samples)\n", name,
                     format_double(f.first_violation()), f.violations());
}

}  // namespace

void write_summary(std::ostream& out, const ScenarioReport& r) {
  const Scenario& s = r.scenario;
  out << fmt::format("gamma = {}, K = {}, alpha = {}, lambda = {}\n", format_double(s.gamma),
                     format_double(s.big_k), format_double(s.alpha), format_double(s.lambda));
  out << fmt::format("profile {} on n = {}, L = {}\n", to_string(s.profile.preset), s.n,
                     format_double(s.length));
  out << fmt::format("regime: {} / {}, theorem {}\n", to_string(r.regime.gamma_side),
                     to_string(r.regime.lambda_side), to_string(r.regime.theorem));
  out << fmt::format("C0 = {}, C0_tilde = {}\n", format_double(r.bound.c0),
                     format_double(r.bound.c0_tilde));
  const Verdict& v = r.verdict;
  if (v.theorem == Theorem::kNone) {
    out << "verdict: no criterion applies\n";
  } else {
    out << fmt::format("verdict: {} {} ({} characteristic at x = {}: {} vs {})\n",
                       to_string(v.theorem), v.fired ? "FIRED" : "not fired",
                       to_string(v.characteristic), format_double(v.witness_x),
                       format_double(v.lhs), format_double(v.rhs));
  }
  if (!r.run) return;
  const RunResult& run = *r.run;
  if (run.breakdown) {
    out << fmt::format("breakdown in [{}, {}], max|u_x| = {}\n",
                       format_double(run.breakdown->t_lo), format_double(run.breakdown->t_hi),
                       format_double(run.breakdown->max_abs_ux));
  } else {
    out << fmt::format("reached t = {} in {} steps without breakdown\n",
                       format_double(run.final_state.t), run.steps);
  }
  out << "audits:\n";
  out << audit_line("invariant region", run.monitors.invariant_region);
  out << audit_line("ceiling", run.monitors.ceiling);
  if (s.gamma < 3.0) {
    out << audit_line("density floor", run.monitors.floor);
    if (run.monitors.floor.enabled()) {
      out << fmt::format("  floor onset t_min = {}\n", format_double(run.floor_onset));
    }
  }
  if (r.cross) {
    out << fmt::format("riccati cross-check: max deviation {}{}\n",
                       format_double(r.cross->max_deviation),
                       r.cross->blew_up ? " (riccati solution blew up inside the window)" : "");
  }
}

namespace {

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error("cannot write " + p.string());
  return out;
}

void close_out(std::ofstream& out, const std::filesystem::path& p) {
  out.flush();
  if (!out) throw Error("write to " + p.string() + " failed");
}

}  // namespace

void emit_report(const std::filesystem::path& dir, const ScenarioReport& r) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create " + dir.string() + ": " + ec.message());
  const Outputs& o = r.scenario.outputs;
  if (o.verdict) {
    const auto p = dir / "verdict.json";
    auto out = open_out(p);
    out << verdict_json(r.verdict);
    close_out(out, p);
  }
  if (o.monitors && r.run) {
    const auto p = dir / "monitors.csv";
    auto out = open_out(p);
    write_monitor_csv(out, *r.run);
    close_out(out, p);
  }
  if (o.trace && r.trace && r.cross) {
    const auto p = dir / "trace.csv";
    auto out = open_out(p);
    write_trace_csv(out, *r.trace, *r.cross);
    close_out(out, p);
  }
  if (o.summary) {
    const auto p = dir / "summary.txt";
    auto out = open_out(p);
    write_summary(out, r);
    close_out(out, p);
  }
  if (o.snapshots && r.run) {
    write_snapshots(dir / "snapshots.bin", r.run->snapshots, r.scenario.gas(),
                    r.scenario.damping());
  }
}

}  // namespace shockline::cli
