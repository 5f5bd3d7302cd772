#pragma once

// Text artifacts of a run. Floats are written with 17 significant digits so
// identical runs produce identical bytes.

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "scenario.hpp"
#include "shockline/criteria.hpp"
#include "shockline/solver.hpp"
#include "shockline/trace.hpp"

namespace shockline::cli {

inline constexpr std::string_view kMonitorHeader = "t,max_abs_ux,min_rho,y_max,q_max,flags";
inline constexpr std::string_view kTraceHeader = "t,x,phi,y_or_q,riccati_y,deviation";

std::string format_double(double v);

std::string verdict_json(const Verdict& v);
Verdict parse_verdict_json(std::string_view text);

void write_monitor_csv(std::ostream& out, const RunResult& run);
void write_trace_csv(std::ostream& out, const CharTrace& trace, const CrossValidation& cv);

struct ScenarioReport {
  Scenario scenario;
  Regime regime;
  InitialBound bound;
  Verdict verdict;
  std::optional<RunResult> run;
  std::optional<CharTrace> trace;
  std::optional<CrossValidation> cross;
};

void write_summary(std::ostream& out, const ScenarioReport& r);

/// Writes the requested files into dir (created if missing); throws Error on
/// I/O failure.
void emit_report(const std::filesystem::path& dir, const ScenarioReport& r);

}  // namespace shockline::cli
