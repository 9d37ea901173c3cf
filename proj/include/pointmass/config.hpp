// Run configuration: flat `key = value` lines grouped by `[section]`.
// Unknown keys are errors; every error carries its line number.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "pointmass/initial_data.hpp"
#include "pointmass/solver.hpp"

namespace pointmass {

struct ConfigError : std::runtime_error {
  std::vector<std::string> errors;
  explicit ConfigError(std::vector<std::string> errs);
};

struct RunConfig {
  // [pressure]
  std::string pressure_family = "gamma";
  double gamma = 1.4;
  // [physics]
  double nu = 1.0;
  double mass = 1.0;
  Mode mode = Mode::Nonlinear;
  // [grid]
  double L = 100.0;
  long N = 2000;
  double t_final = 10.0;
  double dt = 0.0;  // 0: largest 1/k below the CFL limit
  double cfl = 0.4;
  double truncation_sigma = 10.0;
  // [initial]
  InitialFamily family = InitialFamily::GaussianBump;
  InitialParams initial;
  std::string samples;  // custom_samples: CSV with columns x,tau,u
  // [output]
  std::string out_dir = "run";
  std::vector<double> snapshot_times;
  bool geometric_snapshots = true;
  long stride = 10;
  // [run]
  std::uint64_t seed = 0;

  PressureLaw law() const;
  GridSpec grid() const;
  /// Resolves the initial data (reads the samples file if needed).
  InitialData initial_data() const;
  RunSpec run_spec() const;
};

/// Parses and validates. `origin` names the source in error messages.
RunConfig parse_config(const std::string& text, const std::string& origin = "config");
RunConfig load_config(const std::string& path);

/// Canonical text form; parse_config(to_text(c)) reproduces c.
std::string to_text(const RunConfig& c);

std::string to_string(Mode m);
Mode mode_from_string(const std::string& s);

}  // namespace pointmass
