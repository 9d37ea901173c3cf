// Globally adaptive 15-point Gauss-Kronrod quadrature.
#pragma once

#include <functional>
#include <vector>

namespace pointmass {

struct QuadOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_intervals = 4000;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
  bool converged = false;
};

using Integrand = std::function<double(double)>;

/// Integral of f over [a, b]. Either end may be infinite; infinite ranges are
/// mapped onto finite ones by x = a + (1-s)/s style substitutions.
QuadResult integrate(const Integrand& f, double a, double b, const QuadOptions& opt = {});

/// Same, with forced interval breaks (kinks, jumps) at the interior points.
QuadResult integrate(const Integrand& f, std::vector<double> points, const QuadOptions& opt = {});

}  // namespace pointmass
