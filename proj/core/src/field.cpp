#include "shockline/field.hpp"

#include <cmath>
#include <numbers>

#include "shockline/errors.hpp"

namespace shockline {

Grid Grid::periodic(std::size_t n, double length, double x0) {
  Grid g{x0, length / static_cast<double>(n), n};
  g.validate();
  return g;
}

double Grid::wrap(double x) const noexcept {
  const double len = length();
  double r = std::fmod(x - x0, len);
  if (r < 0.0) r += len;
  if (r >= len) r = 0.0;
  return x0 + r;
}

void Grid::validate() const {
  if (n < kMinCells) {
    throw DomainError("grid needs at least " + std::to_string(kMinCells) + " cells, got " +
                      std::to_string(n));
  }
  if (!(dx > 0.0) || !std::isfinite(dx)) throw DomainError("grid spacing must be positive");
  if (!std::isfinite(x0)) throw DomainError("grid origin must be finite");
}

void FieldState::validate() const {
  grid.validate();
  if (tau.size() != grid.n || u.size() != grid.n) {
    throw DomainError("field arrays do not match the grid size");
  }
  if (!(t >= 0.0)) throw DomainError("field time must be >= 0");
  for (std::size_t i = 0; i < grid.n; ++i) {
    if (!(tau[i] > 0.0) || !std::isfinite(tau[i])) {
      throw VacuumError("tau <= 0 at x = " + std::to_string(grid.x(i)));
    }
    if (!std::isfinite(u[i])) throw DomainError("non-finite velocity");
  }
}

std::string_view to_string(Preset p) {
  switch (p) {
    case Preset::kConstant: return "constant";
    case Preset::kGaussian: return "gaussian";
    case Preset::kSine: return "sine";
    case Preset::kSimpleWave: return "simple_wave";
  }
  return "unknown";
}

Preset preset_from_string(std::string_view name) {
  if (name == "constant") return Preset::kConstant;
  if (name == "gaussian") return Preset::kGaussian;
  if (name == "sine") return Preset::kSine;
  if (name == "simple_wave") return Preset::kSimpleWave;
  throw DomainError("unknown profile preset '" + std::string(name) + "'");
}

FieldState init_field(const ProfileSpec& profile, const Grid& grid, const GasModel& gm) {
  grid.validate();
  FieldState f;
  f.grid = grid;
  f.t = 0.0;
  f.tau.resize(grid.n);
  f.u.resize(grid.n);
  const double len = grid.length();
  const double k = 2.0 * std::numbers::pi * profile.wavenumber / len;

  if ((profile.preset == Preset::kSine || profile.preset == Preset::kSimpleWave) &&
      profile.wavenumber < 1) {
    throw DomainError("wavenumber must be a positive integer");
  }
  if (profile.preset == Preset::kGaussian && !(profile.width > 0.0)) {
    throw DomainError("gaussian width must be positive");
  }

  for (std::size_t i = 0; i < grid.n; ++i) {
    const double x = grid.x(i);
    double shape = 0.0;
    switch (profile.preset) {
      case Preset::kConstant:
        break;
      case Preset::kGaussian:
        for (int image = -2; image <= 2; ++image) {
          const double d = (x - profile.center - image * len) / profile.width;
          shape += std::exp(-0.5 * d * d);
        }
        break;
      case Preset::kSine:
      case Preset::kSimpleWave:
        shape = std::sin(k * (x - grid.x0));
        break;
    }
    if (profile.preset == Preset::kSimpleWave) {
      const double phi0 = phi_of_tau(gm, profile.tau0);
      const double half = 0.5 * profile.u_amp * shape;
      const double phi = phi0 + half;
      if (!(phi > 0.0)) throw DomainError("simple-wave amplitude drives phi to zero");
      f.tau[i] = tau_of_phi(gm, phi);
      f.u[i] = profile.u0 + half;
    } else {
      f.tau[i] = profile.tau0 + profile.tau_amp * shape;
      f.u[i] = profile.u0 + profile.u_amp * shape;
    }
    if (!(f.tau[i] > 0.0)) {
      throw DomainError("initial specific volume is not positive at x = " + std::to_string(x));
    }
  }
  return f;
}

void gradient4(std::span<const double> f, double dx, std::span<double> out) {
  const std::size_t n = f.size();
  const double inv = 1.0 / (12.0 * dx);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t ip1 = (i + 1) % n;
    const std::size_t ip2 = (i + 2) % n;
    const std::size_t im1 = (i + n - 1) % n;
    const std::size_t im2 = (i + n - 2) % n;
    out[i] = (-f[ip2] + 8.0 * f[ip1] - 8.0 * f[im1] + f[im2]) * inv;
  }
}

std::vector<double> gradient4(std::span<const double> f, double dx) {
  std::vector<double> out(f.size());
  gradient4(f, dx, out);
  return out;
}

FieldViews derive_views(const FieldState& field, const GasModel& gm, const DampingLaw& dl) {
  const std::size_t n = field.grid.n;
  FieldViews v;
  v.phi.resize(n);
  v.c.resize(n);
  v.w.resize(n);
  v.z.resize(n);
  v.a.resize(n);
  v.b.resize(n);
  v.y.resize(n);
  v.q.resize(n);
  v.u_x = gradient4(field.u, field.grid.dx);
  v.tau_x = gradient4(field.tau, field.grid.dx);
  for (std::size_t i = 0; i < n; ++i) {
    v.phi[i] = phi_of_tau(gm, field.tau[i]);
    v.c[i] = sound_speed(gm, field.tau[i]);
    v.w[i] = field.u[i] + v.phi[i];
    v.z[i] = field.u[i] - v.phi[i];
    v.a[i] = v.u_x[i] - v.c[i] * v.tau_x[i];
    v.b[i] = v.u_x[i] + v.c[i] * v.tau_x[i];
    v.y[i] = y_variable(gm, dl, v.phi[i], v.a[i], field.t);
    v.q[i] = q_variable(gm, dl, v.phi[i], v.b[i], field.t);
  }
  return v;
}

}  // namespace shockline
