// Self-similar diffusion waves theta_i of the Burgers equations
//   Theta_t + lambda Theta_x + (Theta^2/2)_x = (nu/2) Theta_xx,
// evaluated in shifted time: theta(x,t) = Theta(x,t+1).
#pragma once

#include <array>
#include <vector>

#include "pointmass/model.hpp"

namespace pointmass {

struct DiffusionWave {
  int branch = 1;  // 1 or 2
  double lambda = 0.0;
  double nu = 1.0;
  double mass = 0.0;  // m_i + m_V

  /// Throws if mass/nu would overflow exp().
  DiffusionWave(int branch, double lambda, double nu, double mass);
};

/// The pair (theta_1, theta_2) selected by the initial data.
std::array<DiffusionWave, 2> diffusion_waves(const CharSystemd& cs, const Masses& m);

double theta(const DiffusionWave& w, double x, double t);
double theta_dx(const DiffusionWave& w, double x, double t);

/// Quadrature of theta(., t) over |x - lambda(t+1)| <= 40 sqrt(nu(t+1)).
double mass_integral(const DiffusionWave& w, double t);

struct XTPoint {
  double x;
  double t;
};

/// Max over the points of the centred-difference residual
/// theta_t + lambda theta_x + theta theta_x - D theta_xx with step h in x
/// and t. D defaults to nu/2; any other value is a negative control.
double burgers_residual(const DiffusionWave& w, const std::vector<XTPoint>& points, double h, double D = -1.0);

}  // namespace pointmass
