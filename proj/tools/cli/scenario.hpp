#pragma once

// Scenario and sweep configuration files (JSON). Every key is optional except
// where noted; unknown keys are rejected so typos surface at validation time.
//
//   {
//     "gas":     {"gamma": 2.0, "big_k": 1.0},                         required
//     "damping": {"alpha": 1.0, "lambda": 0.0},                        required
//     "profile": {"preset": "gaussian", "tau0": 1.0, "u0": 0.0,
//                 "tau_amp": 0.0, "u_amp": -3.0, "center": 4.0,
//                 "width": 0.3, "wavenumber": 1},
//     "grid":    {"n": 256, "length": 8.0},
//     "run":     {"t_end": 5.0, "cfl": 0.4, "riccati_tol": 1e-9, "c0": 3.0},
//     "outputs": {"verdict": true, "monitors": true, "trace": true,
//                 "summary": true, "snapshots": false, "trace_x": 3.5}
//   }
//
// A sweep file holds a "template" scenario, up to two "axes" entries
// {"name": "alpha" | "lambda" | "gamma" | "steepness", "min", "max", "count"},
// an optional cell "budget" (default 4096) and "simulate" (default true).

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "shockline/core.hpp"
#include "shockline/field.hpp"

namespace shockline::cli {

/// Invalid or unreadable configuration (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Outputs {
  bool verdict = true;
  bool monitors = true;
  bool trace = true;
  bool summary = true;
  bool snapshots = false;
  std::optional<double> trace_x;
};

struct Scenario {
  double gamma = 2.0;
  double big_k = 1.0;
  double alpha = 0.0;
  double lambda = 0.0;
  ProfileSpec profile;
  std::size_t n = 256;
  double length = 1.0;
  double t_end = 1.0;
  double cfl = 0.4;
  double riccati_tol = 1e-9;
  std::optional<double> c0;  // defaults to the certified bound of the data
  Outputs outputs;

  GasModel gas() const { return GasModel(gamma, big_k); }
  DampingLaw damping() const { return DampingLaw(alpha, lambda); }
  Grid grid() const { return Grid::periodic(n, length); }
};

/// Parses and validates; ConfigError names the offending key or invariant.
Scenario parse_scenario(const nlohmann::json& j);
Scenario load_scenario(const std::filesystem::path& path);

/// Checks every downstream precondition without running anything heavy
/// (samples the initial field once).
void validate(const Scenario& s);

enum class Axis { kAlpha, kLambda, kGamma, kSteepness };

struct AxisSpec {
  Axis axis;
  double min;
  double max;
  std::size_t count;

  double value(std::size_t i) const;
};

struct SweepSpec {
  Scenario base;
  std::vector<AxisSpec> axes;
  std::size_t budget = 4096;
  bool simulate = true;

  std::size_t cells() const;
  /// Row-major over the axes (the last axis varies fastest).
  std::vector<double> coordinates(std::size_t cell) const;
  /// Base scenario with the cell's axis values applied (unvalidated).
  Scenario cell_scenario(std::size_t cell) const;
};

SweepSpec parse_sweep(const nlohmann::json& j);
SweepSpec load_sweep(const std::filesystem::path& path);

std::string axis_name(Axis a);

/// Peak |u_x| of the velocity perturbation; set_steepness rescales u_amp
/// (keeping its sign, negative when zero) to reach the given peak.
double steepness(const ProfileSpec& p, double length);
void set_steepness(ProfileSpec& p, double length, double s);

}  // namespace shockline::cli
