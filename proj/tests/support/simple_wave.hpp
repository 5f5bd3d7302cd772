#pragma once

// Exact undamped simple wave for the sine simple-wave preset with u0 = 0:
// z is constant, phi is carried along dx/dt = c(phi), and u = phi - phi0.

#include <cmath>
#include <numbers>

#include "shockline/core.hpp"
#include "shockline/field.hpp"

namespace shockline::testing {

struct SimpleWave {
  GasModel gm;
  double tau0;
  double amp;
  double length;

  double phi_initial(double xi) const {
    return phi_of_tau(gm, tau0) + 0.5 * amp * std::sin(2.0 * std::numbers::pi * xi / length);
  }

  // Velocity at (x, t); valid before the characteristics cross.
  double u(double x, double t) const {
    const double k = 2.0 * std::numbers::pi / length;
    double xi = x;
    for (int it = 0; it < 60; ++it) {
      const double ph = phi_initial(xi);
      const double h = 1e-7;
      const double dc = (sound_speed_of_phi(gm, ph + h) - sound_speed_of_phi(gm, ph - h)) /
                        (2.0 * h) * 0.5 * amp * k * std::cos(k * xi);
      const double step = (xi + sound_speed_of_phi(gm, ph) * t - x) / (1.0 + dc * t);
      xi -= step;
      if (std::abs(step) < 1e-15 * length) break;
    }
    return phi_initial(xi) - phi_of_tau(gm, tau0);
  }

  ProfileSpec profile() const {
    ProfileSpec p;
    p.preset = Preset::kSimpleWave;
    p.tau0 = tau0;
    p.u_amp = amp;
    return p;
  }

  double max_error(const FieldState& f) const {
    double err = 0.0;
    for (std::size_t i = 0; i < f.grid.n; ++i) {
      err = std::max(err, std::abs(f.u[i] - u(f.grid.x(i), f.t)));
    }
    return err;
  }
};

}  // namespace shockline::testing
