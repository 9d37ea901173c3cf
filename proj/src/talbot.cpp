#include "pointmass/talbot.hpp"

#include <cmath>
#include <stdexcept>

namespace pointmass {

Eigen::Matrix2d talbot_invert(const LaplaceFn& F, double t, int M, double shift) {
  if (!(t > 0.0)) throw std::invalid_argument("talbot_invert: t must be positive");
  if (M < 4) throw std::invalid_argument("talbot_invert: too few nodes");
  using C = std::complex<double>;
  if (shift != 0.0) {
    // f(t) = e^{shift t} L^-1[F(s + shift)](t)
    const LaplaceFn G = [&](C s) { return F(s + shift); };
    return std::exp(shift * t) * talbot_invert(G, t, M, 0.0);
  }
  const double r = 2.0 * M / (5.0 * t);
  Eigen::Matrix2d acc = 0.5 * (F(C(r)) * std::exp(r * t)).real();
  for (int k = 1; k < M; ++k) {
    const double th = k * M_PI / M;
    const double cot = std::cos(th) / std::sin(th);
    const C S = r * th * C(cot, 1.0);
    const double sigma = th + (th * cot - 1.0) * cot;
    acc += (F(S) * (std::exp(t * S) * C(1.0, sigma))).real();
  }
  return (r / M) * acc;
}

Matrix2c laplace_g(double x, std::complex<double> s, const CharSystemd& cs) {
  if (x == 0.0) throw std::invalid_argument("laplace_g: x must be nonzero");
  using C = std::complex<double>;
  const double c2 = cs.c * cs.c;
  const C q = std::sqrt(cs.nu * s + c2);
  const C lam = s / q;
  const C e = std::exp(-lam * std::abs(x));
  const double sg = x > 0.0 ? 1.0 : -1.0;
  const C pre = 1.0 / (cs.nu * s + c2);
  Matrix2c m;
  m << pre * c2 / (2.0 * q) * e, -pre * sg / 2.0 * e, -pre * c2 * sg / 2.0 * e, pre * s / (2.0 * lam) * e;
  return m;
}

Eigen::Matrix2d talbot_kernel(TalbotKernel kind, double x, double t, const CharSystemd& cs, int M, double shift) {
  using C = std::complex<double>;
  const Eigen::Matrix2cd S = (Eigen::Matrix2cd() << 1.0, 0.0, 0.0, -1.0).finished();
  const double sg = x > 0.0 ? 1.0 : -1.0;
  LaplaceFn F;
  auto lambda = [&cs](C s) { return s / std::sqrt(cs.nu * s + cs.c * cs.c); };
  // Transforms below are written for x > 0; x < 0 follows from G_T(-x) = S G_T(x) S.
  const double ax = std::abs(x);
  switch (kind) {
    case TalbotKernel::G:
      F = [&](C s) -> Matrix2c { return laplace_g(x, s, cs); };
      return talbot_invert(F, t, M, shift);
    case TalbotKernel::GT:
      F = [&](C s) -> Matrix2c { return 2.0 / (lambda(s) + 2.0) * laplace_g(ax, s, cs); };
      break;
    case TalbotKernel::GT_dx:
      F = [&](C s) -> Matrix2c {
        const C l = lambda(s);
        return -l * 2.0 / (l + 2.0) * laplace_g(ax, s, cs);
      };
      break;
    case TalbotKernel::GR:
      F = [&](C s) -> Matrix2c {
        const C l = lambda(s);
        return l / (l + 2.0) * laplace_g(ax, s, cs) * S;
      };
      break;
  }
  const Eigen::Matrix2d Sr = S.real();
  Eigen::Matrix2d v = talbot_invert(F, t, M, shift);
  if (sg > 0.0) return v;
  // G_R(x) = S (G - G_T)(|x|) S S also reduces to S v S.
  return kind == TalbotKernel::GT_dx ? Eigen::Matrix2d(-Sr * v * Sr) : Eigen::Matrix2d(Sr * v * Sr);
}

}  // namespace pointmass
