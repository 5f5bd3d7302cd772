#include "scenario.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>

#include "shockline/errors.hpp"

namespace shockline::cli {
namespace {

using nlohmann::json;

constexpr std::size_t kMaxCells = std::size_t{1} << 22;

void reject_unknown(const json& obj, const std::string& where, std::set<std::string> allowed) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) throw ConfigError("unknown key '" + where + "." + key + "'");
  }
}

double number(const json& obj, const std::string& where, const char* key, double fallback,
              bool required = false) {
  if (!obj.contains(key)) {
    if (required) throw ConfigError("missing key '" + where + "." + key + "'");
    return fallback;
  }
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError("'" + where + "." + key + "' must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError("'" + where + "." + key + "' must be finite");
  return d;
}

std::size_t count(const json& obj, const std::string& where, const char* key,
                  std::size_t fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ConfigError("'" + where + "." + key + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

bool flag(const json& obj, const std::string& where, const char* key, bool fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_boolean()) throw ConfigError("'" + where + "." + key + "' must be a boolean");
  return obj.at(key).get<bool>();
}

json section(const json& j, const char* key, bool required) {
  if (!j.contains(key)) {
    if (required) throw ConfigError(std::string("missing section '") + key + "'");
    return json::object();
  }
  return j.at(key);
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
  }
}

}  // namespace

Scenario parse_scenario(const json& j) {
  reject_unknown(j, "scenario", {"gas", "damping", "profile", "grid", "run", "outputs"});
  Scenario s;

  const json gas = section(j, "gas", true);
  reject_unknown(gas, "gas", {"gamma", "big_k"});
  s.gamma = number(gas, "gas", "gamma", 0.0, true);
  s.big_k = number(gas, "gas", "big_k", 1.0);

  const json damp = section(j, "damping", true);
  reject_unknown(damp, "damping", {"alpha", "lambda"});
  s.alpha = number(damp, "damping", "alpha", 0.0, true);
  s.lambda = number(damp, "damping", "lambda", 0.0, true);

  const json prof = section(j, "profile", false);
  reject_unknown(prof, "profile",
                 {"preset", "tau0", "u0", "tau_amp", "u_amp", "center", "width", "wavenumber"});
  if (prof.contains("preset")) {
    if (!prof.at("preset").is_string()) throw ConfigError("'profile.preset' must be a string");
    try {
      s.profile.preset = preset_from_string(prof.at("preset").get<std::string>());
    } catch (const DomainError& e) {
      throw ConfigError(e.what());
    }
  }
  s.profile.tau0 = number(prof, "profile", "tau0", 1.0);
  s.profile.u0 = number(prof, "profile", "u0", 0.0);
  s.profile.tau_amp = number(prof, "profile", "tau_amp", 0.0);
  s.profile.u_amp = number(prof, "profile", "u_amp", 0.0);
  s.profile.width = number(prof, "profile", "width", 1.0);
  const std::size_t wn = count(prof, "profile", "wavenumber", 1);
  if (wn > 1'000'000) throw ConfigError("'profile.wavenumber' is too large");
  s.profile.wavenumber = static_cast<int>(wn);

  const json grid = section(j, "grid", false);
  reject_unknown(grid, "grid", {"n", "length"});
  s.n = count(grid, "grid", "n", 256);
  s.length = number(grid, "grid", "length", 1.0);
  s.profile.center = number(prof, "profile", "center", 0.5 * s.length);

  const json run = section(j, "run", false);
  reject_unknown(run, "run", {"t_end", "cfl", "riccati_tol", "c0"});
  s.t_end = number(run, "run", "t_end", 1.0);
  s.cfl = number(run, "run", "cfl", 0.4);
  s.riccati_tol = number(run, "run", "riccati_tol", 1e-9);
  if (run.contains("c0")) s.c0 = number(run, "run", "c0", 0.0);

  const json out = section(j, "outputs", false);
  reject_unknown(out, "outputs", {"verdict", "monitors", "trace", "summary", "snapshots", "trace_x"});
  s.outputs.verdict = flag(out, "outputs", "verdict", true);
  s.outputs.monitors = flag(out, "outputs", "monitors", true);
  s.outputs.trace = flag(out, "outputs", "trace", true);
  s.outputs.summary = flag(out, "outputs", "summary", true);
  s.outputs.snapshots = flag(out, "outputs", "snapshots", false);
  if (out.contains("trace_x")) s.outputs.trace_x = number(out, "outputs", "trace_x", 0.0);

  validate(s);
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  return parse_scenario(read_json(path));
}

void validate(const Scenario& s) {
  auto fail = [](const std::string& what) { throw ConfigError(what); };
  if (!(s.gamma > 1.0)) fail("gas.gamma must exceed 1");
  if (s.gamma == 3.0) fail("gas.gamma must differ from 3");
  if (!(s.big_k > 0.0)) fail("gas.big_k must be positive");
  if (!(s.alpha >= 0.0)) fail("damping.alpha must be >= 0");
  if (s.n < Grid::kMinCells) fail("grid.n must be at least 16");
  if (s.n > kMaxCells) fail("grid.n is too large");
  if (!(s.length > 0.0)) fail("grid.length must be positive");
  if (!(s.profile.tau0 > 0.0)) fail("profile.tau0 must be positive");
  if (s.profile.preset == Preset::kGaussian && !(s.profile.width > 0.0)) {
    fail("profile.width must be positive");
  }
  if (s.profile.wavenumber < 1) fail("profile.wavenumber must be at least 1");
  if (!(s.t_end > 0.0)) fail("run.t_end must be positive");
  if (!(s.cfl > 0.0 && s.cfl <= 0.4)) fail("run.cfl must lie in (0, 0.4]");
  if (!(s.riccati_tol > 1e-12 && s.riccati_tol < 1e-2)) {
    fail("run.riccati_tol must lie in (1e-12, 1e-2)");
  }
  if (s.outputs.trace_x && !std::isfinite(*s.outputs.trace_x)) fail("outputs.trace_x must be finite");

  try {
    const GasModel gm = s.gas();
    const DampingLaw dl = s.damping();
    // The time factor is monotone in t, so both ends bound it.
    log_time_factor(gm, dl, 0.0);
    log_time_factor(gm, dl, s.t_end);
    const FieldState f = init_field(s.profile, s.grid(), gm);
    f.validate();
    if (s.c0) {
      double needed = 0.0;
      for (std::size_t i = 0; i < f.grid.n; ++i) {
        needed = std::max({needed, std::abs(f.u[i]), 1.0 / f.tau[i]});
      }
      if (!(*s.c0 >= needed)) {
        fail("run.c0 = " + std::to_string(*s.c0) + " does not bound the data (needs >= " +
             std::to_string(needed) + ")");
      }
    }
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

std::string axis_name(Axis a) {
  switch (a) {
    case Axis::kAlpha:
      return "alpha";
    case Axis::kLambda:
      return "lambda";
    case Axis::kGamma:
      return "gamma";
    case Axis::kSteepness:
      return "steepness";
  }
  return "?";
}

double AxisSpec::value(std::size_t i) const {
  if (count == 1) return min;
  return min + (max - min) * static_cast<double>(i) / static_cast<double>(count - 1);
}

std::size_t SweepSpec::cells() const {
  std::size_t c = 1;
  for (const AxisSpec& a : axes) c *= a.count;
  return c;
}

std::vector<double> SweepSpec::coordinates(std::size_t cell) const {
  std::vector<double> out(axes.size());
  for (std::size_t k = axes.size(); k-- > 0;) {
    out[k] = axes[k].value(cell % axes[k].count);
    cell /= axes[k].count;
  }
  return out;
}

Scenario SweepSpec::cell_scenario(std::size_t cell) const {
  Scenario s = base;
  const std::vector<double> at = coordinates(cell);
  for (std::size_t k = 0; k < axes.size(); ++k) {
    switch (axes[k].axis) {
      case Axis::kAlpha:
        s.alpha = at[k];
        break;
      case Axis::kLambda:
        s.lambda = at[k];
        break;
      case Axis::kGamma:
        s.gamma = at[k];
        break;
      case Axis::kSteepness:
        set_steepness(s.profile, s.length, at[k]);
        break;
    }
  }
  return s;
}

SweepSpec parse_sweep(const json& j) {
  reject_unknown(j, "sweep", {"template", "axes", "budget", "simulate"});
  SweepSpec sw;
  sw.base = parse_scenario(section(j, "template", true));
  sw.budget = count(j, "sweep", "budget", 4096);
  sw.simulate = flag(j, "sweep", "simulate", true);
  const json axes = section(j, "axes", true);
  if (!axes.is_array() || axes.empty() || axes.size() > 2) {
    throw ConfigError("sweep.axes must list one or two axes");
  }
  std::set<std::string> seen;
  for (const json& a : axes) {
    reject_unknown(a, "axes[]", {"name", "min", "max", "count"});
    if (!a.contains("name") || !a.at("name").is_string()) {
      throw ConfigError("every axis needs a string 'name'");
    }
    const std::string name = a.at("name").get<std::string>();
    if (!seen.insert(name).second) throw ConfigError("axis '" + name + "' listed twice");
    AxisSpec spec{};
    if (name == "alpha") {
      spec.axis = Axis::kAlpha;
    } else if (name == "lambda") {
      spec.axis = Axis::kLambda;
    } else if (name == "gamma") {
      spec.axis = Axis::kGamma;
    } else if (name == "steepness") {
      spec.axis = Axis::kSteepness;
      if (sw.base.profile.preset == Preset::kConstant) {
        throw ConfigError("a steepness axis needs a non-constant profile");
      }
    } else {
      throw ConfigError("unknown axis '" + name + "'");
    }
    spec.min = number(a, "axes." + name, "min", 0.0, true);
    spec.max = number(a, "axes." + name, "max", 0.0, true);
    spec.count = count(a, "axes." + name, "count", 0);
    if (spec.count == 0) throw ConfigError("axes." + name + ".count must be at least 1");
    if (spec.max < spec.min) throw ConfigError("axes." + name + ".max is below min");
    sw.axes.push_back(spec);
  }
  std::size_t cells = 1;
  for (const AxisSpec& a : sw.axes) {
    if (a.count > sw.budget || cells > sw.budget / a.count) {
      throw ConfigError("sweep exceeds the cell budget of " + std::to_string(sw.budget));
    }
    cells *= a.count;
  }
  return sw;
}

SweepSpec load_sweep(const std::filesystem::path& path) {
  return parse_sweep(read_json(path));
}

namespace {

// Peak |d shape / dx| of the unit-amplitude velocity shape.
double shape_slope(const ProfileSpec& p, double length) {
  const double k = 2.0 * std::numbers::pi * p.wavenumber / length;
  switch (p.preset) {
    case Preset::kConstant:
      return 0.0;
    case Preset::kGaussian:
      return 1.0 / (p.width * std::sqrt(std::numbers::e));
    case Preset::kSine:
      return k;
    case Preset::kSimpleWave:
      return 0.5 * k;
  }
  return 0.0;
}

}  // namespace

double steepness(const ProfileSpec& p, double length) {
  return std::abs(p.u_amp) * shape_slope(p, length);
}

void set_steepness(ProfileSpec& p, double length, double s) {
  const double slope = shape_slope(p, length);
  if (!(slope > 0.0)) throw ConfigError("profile has no steepness to set");
  const double sign = p.u_amp > 0.0 ? 1.0 : -1.0;
  p.u_amp = sign * s / slope;
}

}  // namespace shockline::cli
