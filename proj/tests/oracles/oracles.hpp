// Slow reference computations, independent of the library code paths.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

namespace oracle {

using HP = boost::multiprecision::cpp_bin_float_50;

// For |x| < 2 the Maclaurin series of erf. Otherwise
// erfc(x) = (1/pi) int_0^pi exp(-x^2 / sin^2 th) d th, whose integrand is flat
// to all orders at both ends, so the trapezoid rule converges faster than any
// power once x is not small.
inline HP erfc_hp(HP x, int n = 1024) {
  if (x < 0) return HP(2) - erfc_hp(-x, n);
  const HP pi = boost::multiprecision::atan(HP(1)) * 4;
  if (x < 2) {
    HP term = x, sum = x;
    for (int k = 1; k < 200; ++k) {
      term *= -x * x / k;
      const HP add = term / (2 * k + 1);
      sum += add;
      if (boost::multiprecision::abs(add) < HP(1e-45)) break;
    }
    return HP(1) - 2 / boost::multiprecision::sqrt(pi) * sum;
  }
  HP sum = 0;
  for (int k = 1; k < n; ++k) {
    const HP s = boost::multiprecision::sin(pi * k / n);
    sum += boost::multiprecision::exp(-x * x / (s * s));
  }
  return sum / n;
}

// Composite 20-point Gauss-Legendre in long double on n equal panels.
inline long double gauss_legendre(const std::function<long double(long double)>& f, long double a, long double b,
                                  int n) {
  constexpr int P = 20;
  static const auto rule = [] {
    std::array<std::pair<long double, long double>, P> r{};
    const long double pi = 3.141592653589793238462643383279502884L;
    for (int i = 0; i < P; ++i) {
      long double x = std::cos(pi * (i + 0.75L) / (P + 0.5L)), dp = 0;
      for (int it = 0; it < 100; ++it) {
        long double p0 = 1, p1 = x;
        for (int k = 2; k <= P; ++k) {
          const long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = P * (x * p1 - p0) / (x * x - 1);
        const long double dx = p1 / dp;
        x -= dx;
        if (std::fabs(dx) < 1e-19L) break;
      }
      r[i] = {x, 2 / ((1 - x * x) * dp * dp)};
    }
    return r;
  }();
  const long double w = (b - a) / n;
  long double total = 0;
  for (int k = 0; k < n; ++k) {
    const long double mid = a + (k + 0.5L) * w;
    long double panel = 0;
    for (const auto& [x, wt] : rule) panel += wt * f(mid + 0.5L * w * x);
    total += 0.5L * w * panel;
  }
  return total;
}

// int_{-inf}^0 e^{2z} exp(-(x - z - lambda t)^2/(mu t)) dz by direct quadrature.
inline double e_kernel_quad(double x, double t, double lambda, double mu) {
  const long double s = std::sqrt(static_cast<long double>(mu) * t);
  const long double zc = std::min<long double>(0.0L, x - lambda * t + mu * t);  // peak of the integrand
  const long double lo = std::min<long double>(zc - 40 * s, -40.0L);
  auto f = [&](long double z) {
    const long double d = x - z - lambda * t;
    return std::exp(2 * z - d * d / (mu * t));
  };
  // panels no wider than a quarter of the narrower scale
  const long double width = std::min<long double>(s, 0.5L) / 4;
  const int panels = static_cast<int>(std::ceil(-lo / width));
  return static_cast<double>(gauss_legendre(f, lo, 0.0L, panels));
}

// Diffusion wave via Cole-Hopf: in the frame y = x - lambda T the wave solves
// Theta_T + Theta Theta_y = (nu/2) Theta_yy with Theta(.,0) = M delta. Then
// Theta = -nu phi_y / phi with phi the heat solution (diffusivity nu/2) from
// phi0 = 1 (y < 0), e^{-M/nu} (y > 0). phi and its y-derivatives are integrated
// numerically against the heat kernel. Returns (theta, d theta/dx) at
// shifted time T = t + 1.
struct ThetaRef {
  double theta;
  double dtheta;
};

inline ThetaRef cole_hopf_theta(double lambda, double nu, double M, double x, double t) {
  const long double T = t + 1.0L;
  const long double y = x - lambda * T;
  const long double var = nu * T;  // kernel variance
  const long double sd = std::sqrt(var);
  const long double pi = 3.141592653589793238462643383279502884L;
  const long double norm = 1 / std::sqrt(2 * pi * var);
  const long double right = std::exp(-static_cast<long double>(M) / nu);
  auto phi0 = [&](long double z) { return z < 0 ? 1.0L : right; };
  auto K = [&](long double d) { return norm * std::exp(-d * d / (2 * var)); };
  long double phi = 0, phi_y = 0, phi_yy = 0;
  for (int side = 0; side < 2; ++side) {
    const long double a = side == 0 ? y - 40 * sd : 0.0L;
    const long double b = side == 0 ? 0.0L : y + 40 * sd;
    if (b <= a) continue;
    const int n = static_cast<int>(std::ceil((b - a) / (sd / 4)));
    const long double w = phi0(side == 0 ? -1.0L : 1.0L);
    phi += w * gauss_legendre([&](long double z) { return K(y - z); }, a, b, n);
    phi_y += w * gauss_legendre([&](long double z) { return -(y - z) / var * K(y - z); }, a, b, n);
    phi_yy += w * gauss_legendre(
                      [&](long double z) {
                        const long double d = y - z;
                        return (d * d / (var * var) - 1 / var) * K(d);
                      },
                      a, b, n);
  }
  const long double th = -nu * phi_y / phi;
  const long double dth = -nu * (phi_yy / phi - phi_y * phi_y / (phi * phi));
  return {static_cast<double>(th), static_cast<double>(dth)};
}

// G* by inverse FFT of its symbol exp(t(-i xi A - (nu/2) xi^2 I)),
// A = [[0,-1],[-c^2,0]]. Returns the table on x_j = (j - n/2) dx.
struct GstarTable {
  double dx;
  int n;
  std::array<Eigen::VectorXd, 4> entry;
  Eigen::Matrix2d at(double x) const {
    const double s = x / dx + n / 2;
    const int j = static_cast<int>(std::lround(s));
    Eigen::Matrix2d m;
    for (int e = 0; e < 4; ++e) m(e / 2, e % 2) = entry[e](j);
    return m;
  }
};

inline GstarTable gstar_fft(double c, double nu, double t, double dx, int n) {
  using C = std::complex<double>;
  GstarTable out{dx, n, {}};
  const double pi = 3.14159265358979323846;
  const double dxi = 2 * pi / (n * dx);
  std::array<std::vector<C>, 4> spec;
  for (auto& s : spec) s.assign(n, C(0));
  for (int k = 0; k < n; ++k) {
    const int kk = k <= n / 2 ? k : k - n;
    const double xi = kk * dxi;
    const double damp = std::exp(-0.5 * nu * xi * xi * t);
    // exp(-i xi t A) = cos(c xi t) I - i sin(c xi t) A / c, since A^2 = c^2 I
    const double cs = std::cos(c * xi * t), sn = std::sin(c * xi * t);
    const C I(0, 1);
    // phase e^{i xi x_0}, x_0 = -n/2 dx, moves the table origin
    const C shift = std::exp(-I * xi * (0.5 * n * dx));
    spec[0][k] = damp * cs * shift;
    spec[3][k] = damp * cs * shift;
    spec[1][k] = -I * sn / c * (-1.0) * damp * shift;
    spec[2][k] = -I * sn / c * (-c * c) * damp * shift;
  }
  Eigen::FFT<double> fft;
  for (int e = 0; e < 4; ++e) {
    std::vector<C> x;
    fft.inv(x, spec[e]);
    out.entry[e].resize(n);
    for (int j = 0; j < n; ++j) out.entry[e](j) = x[j].real() / dx;
  }
  return out;
}

}  // namespace oracle
