// Initial data families satisfying the interface compatibility conditions.
#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "pointmass/greenfn.hpp"
#include "pointmass/model.hpp"

namespace pointmass {

enum class InitialFamily { GaussianBump, Dipole, SymmetricNull, CustomSamples };

InitialFamily initial_family_from_string(const std::string& s);
std::string to_string(InitialFamily f);

struct InitialParams {
  double amplitude = 0.01;  // tau amplitude
  double center = 3.0;
  double width = 0.5;
  double u_amplitude = 0.0;  // velocity bump (symmetric_null: odd part)
  double V0 = 0.0;
  double cutoff = 1.0;       // radius of the blend/correction zone around x = 0
  // custom_samples: values on x = j*h, j = 0..n-1, per half-line (index 0 is the +-0 limit)
  double sample_h = 0.0;
  std::vector<double> tau_right, tau_left, u_right, u_left;
};

/// Value and first two x-derivatives at a point of R*.
using Jet = std::array<double, 3>;

struct InitialData {
  InitialProfile profile;
  std::function<Jet(double)> tau_jet;
  std::function<Jet(double)> u_jet;
  double beta_right = 0.0;  // slope corrections applied to tau near x = +-0
  double beta_left = 0.0;
};

/// Builds data with u0(+-0) = V0 (C^4 blend) and the second compatibility
/// condition enforced by a local slope correction of tau0 on each side.
InitialData make_initial_data(InitialFamily family, const InitialParams& params, const PressureLaw& law, double nu,
                              double mass = 1.0);

/// Residuals at side +1 / -1 of u0(+-0) = V0 and of
/// [-p(1+tau0)_x + nu (u0_x/(1+tau0))_x](+-0) = [[-p(1+tau0) + nu u0_x/(1+tau0)]](0) / m.
std::array<double, 2> compatibility_residuals(const InitialData& data, const PressureLaw& law, double nu, double mass,
                                              int side);

/// Node samples (index 0 holds the +-0 limits) on x = j h, j = 0..n-1.
std::pair<Field, Field> sample_profile(const InitialProfile& init, double h, Eigen::Index n);

/// C^4 cutoff: 1 at r = 0, 0 for r >= 1, first four derivatives vanish at both ends.
double smooth_cutoff(double r);

}  // namespace pointmass
