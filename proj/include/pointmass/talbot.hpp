// Fixed-Talbot numerical Laplace inversion and the Laplace-domain kernels.
#pragma once

#include <complex>
#include <functional>

#include <Eigen/Dense>

#include "pointmass/model.hpp"

namespace pointmass {

using Matrix2c = Eigen::Matrix2cd;
using LaplaceFn = std::function<Matrix2c(std::complex<double>)>;

/// f(t) from F(s) on the fixed Talbot contour with M nodes. A negative shift
/// inverts F(s + shift) and rescales, which keeps exponentially small values
/// accurate; all singularities of F must lie left of shift.
Eigen::Matrix2d talbot_invert(const LaplaceFn& F, double t, int M = 24, double shift = 0.0);

/// Regular part (x != 0) of the Laplace transform of G:
/// 1/(nu s + c^2) [[c^2/(2q) e, -sgn/2 e], [-c^2 sgn/2 e, s/(2 lambda) e]],
/// q = sqrt(nu s + c^2), lambda = s/q, e = exp(-lambda |x|).
Matrix2c laplace_g(double x, std::complex<double> s, const CharSystemd& cs);

enum class TalbotKernel { G, GT, GT_dx, GR };

/// Inversion of G~, 2/(lambda+2) G~, its x-derivative, or the reflected kernel.
Eigen::Matrix2d talbot_kernel(TalbotKernel kind, double x, double t, const CharSystemd& cs, int M = 24,
                              double shift = 0.0);

}  // namespace pointmass
