#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "shockline/core.hpp"

namespace shockline {

/// Uniform periodic mesh: x_i = x0 + i * dx for i in [0, n), period n * dx.
struct Grid {
  double x0 = 0.0;
  double dx = 0.0;
  std::size_t n = 0;

  static constexpr std::size_t kMinCells = 16;

  static Grid periodic(std::size_t n, double length, double x0 = 0.0);

  double length() const noexcept { return dx * static_cast<double>(n); }
  double x(std::size_t i) const noexcept { return x0 + dx * static_cast<double>(i); }
  /// Maps any x into [x0, x0 + length).
  double wrap(double x) const noexcept;

  void validate() const;
};

/// Sampled (tau, u) at time t.
struct FieldState {
  Grid grid;
  double t = 0.0;
  std::vector<double> tau;
  std::vector<double> u;

  /// Throws DomainError on size mismatch, n < 16, dx <= 0, and VacuumError
  /// when some tau is not positive.
  void validate() const;
};

enum class Preset {
  kConstant,
  kGaussian,    // gaussian bump (summed over periodic images) on a constant
  kSine,
  kSimpleWave,  // z = u - phi constant, w = w0 + u_amp * sin
};

std::string_view to_string(Preset p);
Preset preset_from_string(std::string_view name);

struct ProfileSpec {
  Preset preset = Preset::kConstant;
  double tau0 = 1.0;
  double u0 = 0.0;
  double tau_amp = 0.0;
  double u_amp = 0.0;
  double center = 0.0;  // gaussian only, absolute position
  double width = 1.0;   // gaussian sigma
  int wavenumber = 1;   // sine / simple wave: periods per domain
};

/// Samples the preset at t = 0. The simple-wave preset needs the gas model to
/// convert phi to tau, the other presets ignore it.
FieldState init_field(const ProfileSpec& profile, const Grid& grid, const GasModel& gm);

/// Fourth-order periodic central difference.
std::vector<double> gradient4(std::span<const double> f, double dx);
void gradient4(std::span<const double> f, double dx, std::span<double> out);

/// Per-cell derived quantities of a field. y and q hold the branch-appropriate
/// gradient variables (y_1, q_1 on the critical branch).
struct FieldViews {
  std::vector<double> phi;
  std::vector<double> c;
  std::vector<double> w;
  std::vector<double> z;
  std::vector<double> u_x;
  std::vector<double> tau_x;
  std::vector<double> a;
  std::vector<double> b;
  std::vector<double> y;
  std::vector<double> q;
};

FieldViews derive_views(const FieldState& field, const GasModel& gm, const DampingLaw& dl);

}  // namespace shockline
