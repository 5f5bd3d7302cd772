#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "report.hpp"
#include "scenario.hpp"

namespace shockline::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 2,
  kExitRuntime = 3,
};

enum class Verb { kCheck, kSimulate, kSweep, kValidate };

struct AppOptions {
  Verb verb = Verb::kCheck;
  std::filesystem::path config;
  std::filesystem::path out = ".";
  unsigned jobs = 0;       // 0: available parallelism
  std::uint64_t seed = 0;  // reserved; every preset is deterministic
};

/// Derive constants, classify, evaluate the criterion and, when simulate is
/// set, run the solver and cross-check the Riccati equation along one
/// characteristic. Throws shockline::Error on runtime failures.
ScenarioReport evaluate_scenario(const Scenario& s, bool simulate);

struct SweepRow {
  std::vector<double> coords;
  std::string status = "ok";  // ok, invalid, or the error type
  std::string message;
  std::string gamma_side;
  std::string regime;
  std::string theorem;
  bool fired = false;
  bool breakdown = false;
  double breakdown_t_lo = std::numeric_limits<double>::quiet_NaN();
  double breakdown_t_hi = std::numeric_limits<double>::quiet_NaN();
  std::size_t floor_violations = 0;
};

/// One row per cell in cell order; failures stay inside their row.
std::vector<SweepRow> run_sweep_cells(const SweepSpec& spec, unsigned jobs);
void write_sweep_csv(std::ostream& out, const SweepSpec& spec, const std::vector<SweepRow>& rows);

/// Runs a verb and maps failures to exit codes, writing a JSON error object to err.
int run_app(const AppOptions& opts, std::ostream& log, std::ostream& err);

}  // namespace shockline::cli
