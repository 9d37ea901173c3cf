// Fundamental solution G of the linearized system, the explicit modified
// solution G*, and the transmission/reflection kernels G_T, G_R.
#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pointmass/model.hpp"

namespace pointmass {

enum class KernelKind { G, Gstar, GT, GR };

std::string to_string(KernelKind k);
KernelKind kernel_kind_from_string(const std::string& s);

struct KernelEval {
  KernelKind kind = KernelKind::G;
  double x = 0.0;
  double t = 0.0;
  Eigen::Matrix2d regular = Eigen::Matrix2d::Zero();
  /// Coefficient w of w*delta(x)*Q0 (G only).
  double singular_weight = 0.0;
};

/// exp(t(-i xi A - xi^2 B)) for the Fourier convention f^(xi) = int f e^{-i x xi} dx.
template <typename Scalar>
Eigen::Matrix<std::complex<Scalar>, 2, 2> symbol(Scalar xi, Scalar t, const CharSystem<Scalar>& cs) {
  using C = std::complex<Scalar>;
  using std::abs;
  using std::exp;
  using std::sqrt;
  Eigen::Matrix<C, 2, 2> M;
  const C I(0, 1);
  M << C(0), I * xi, I * xi * cs.c * cs.c, C(-cs.nu * xi * xi);
  if (xi == Scalar(0)) return Eigen::Matrix<C, 2, 2>::Identity();
  // mu^2 + nu xi^2 mu + c^2 xi^2 = 0. mu_m is the larger root in modulus,
  // mu_p = det / mu_m avoids cancellation.
  const C D = sqrt(C(cs.nu * cs.nu * xi * xi * xi * xi / Scalar(4) - cs.c * cs.c * xi * xi));
  const C mu_m = C(-cs.nu * xi * xi / Scalar(2)) - D;
  const C mu_p = C(cs.c * cs.c * xi * xi) / mu_m;
  const C delta = mu_p - mu_m;
  const C z = t * delta;
  C f1;
  if (abs(z) < Scalar(0.1)) {
    // e^{t mu_m} (e^z - 1)/delta by its series
    C term = C(t), sum = C(t);
    for (int k = 2; k < 14; ++k) {
      term *= z / Scalar(k);
      sum += term;
    }
    f1 = exp(t * mu_m) * sum;
  } else {
    f1 = (exp(t * mu_p) - exp(t * mu_m)) / delta;
  }
  const C em = exp(t * mu_m);
  Eigen::Matrix<C, 2, 2> out;
  out(0, 0) = em - mu_m * f1;
  out(1, 1) = em + mu_p * f1;  // f0 - nu xi^2 f1, using mu_m + nu xi^2 = -mu_p
  out(0, 1) = f1 * M(0, 1);
  out(1, 0) = f1 * M(1, 0);
  return out;
}

/// Two-Gaussian closed form of G*.
template <typename Scalar>
Eigen::Matrix<Scalar, 2, 2> g_star(Scalar x, Scalar t, const CharSystem<Scalar>& cs) {
  using std::exp;
  using std::sqrt;
  if (!(t > Scalar(0))) throw std::invalid_argument("g_star: t must be positive");
  const Scalar pi = Scalar(4) * std::atan(Scalar(1));
  const Scalar norm = Scalar(1) / (Scalar(2) * sqrt(Scalar(2) * pi * cs.nu * t));
  const Scalar gp = norm * exp(-(x - cs.c * t) * (x - cs.c * t) / (Scalar(2) * cs.nu * t));
  const Scalar gm = norm * exp(-(x + cs.c * t) * (x + cs.c * t) / (Scalar(2) * cs.nu * t));
  Eigen::Matrix<Scalar, 2, 2> out;
  out << gp + gm, (gm - gp) / cs.c, cs.c * (gm - gp), gp + gm;
  return out;
}

struct GreenOptions {
  /// Frequency cutoff; grid spacing is pi / xi_max.
  double xi_max = 400.0;
  /// Half width of the x table; 0 picks max(80, c t + 15 sqrt(nu t) + 20).
  double half_width = 0.0;
  /// Below this time the smooth part of G is replaced by G*.
  double small_t = 1e-3;
};

/// Tabulated G, d/dx G, G_T and d/dx G_T at one time t.
///
/// The symbol's high-frequency expansion (through xi^-4 on the diagonal and
/// xi^-5 off it) is subtracted in frequency space with exactly invertible
/// rational terms; the smooth remainder goes through one inverse FFT and the
/// subtracted pieces are added back in closed form. The constant
/// e^{-c^2 t/nu} Q0 in the (1,1) entry is the delta part and is reported
/// separately.
class KernelTable {
 public:
  KernelTable(const CharSystemd& cs, double t, const GreenOptions& opt = {});

  double t() const { return t_; }
  double dx() const { return dx_; }
  double half_width() const { return reach_; }
  double singular_weight() const { return E_; }
  const CharSystemd& system() const { return cs_; }
  bool uses_gstar() const { return use_gstar_; }

  /// Smooth part of G. x = 0 is rejected; x = +0 / -0 limits via side.
  Eigen::Matrix2d g(double x) const;
  Eigen::Matrix2d g_limit(int side) const;
  /// Smooth part of d/dx G (delta terms at x = 0 dropped).
  Eigen::Matrix2d g_dx(double x) const;

  Eigen::Matrix2d transmitted(double x) const;
  Eigen::Matrix2d transmitted_dx(double x) const;
  /// (G - G_T) diag(1,-1).
  Eigen::Matrix2d reflected(double x) const;
  /// -sgn(x)/2 d/dx G_T diag(1,-1).
  Eigen::Matrix2d reflected_from_derivative(double x) const;

 private:
  Eigen::Matrix2d analytic(double x, int side, bool derivative) const;
  Eigen::Matrix2d interp_remainder(const std::array<Eigen::VectorXd, 4>& tab, double x) const;
  Eigen::Matrix2d interp_halfline(const std::array<Eigen::VectorXd, 4>& tab, double x) const;
  Eigen::Matrix2d smooth(double x, int side, bool derivative) const;
  void check_x(double x) const;

  CharSystemd cs_;
  double t_;
  double E_;
  double dx_ = 0.0;
  double reach_ = 0.0;
  bool use_gstar_ = false;
  Eigen::Index n_ = 0;
  // subtraction coefficients
  double A2_ = 0, A4_ = 0, B2_ = 0, B4_ = 0, k1_ = 0, k3_ = 0, k5_ = 0;
  std::array<Eigen::VectorXd, 4> rem_, rem_dx_;  // entries 11, 12, 21, 22
  std::array<Eigen::VectorXd, 4> gt_, gt_dx_;    // on x = j dx, j >= 0
};

/// One-off evaluations; each builds a table at t.
KernelEval g_fundamental(double x, double t, const CharSystemd& cs, const GreenOptions& opt = {});
Eigen::Matrix2d g_transmitted(double x, double t, const CharSystemd& cs, const GreenOptions& opt = {});
enum class ReflectRoute { Difference, Derivative };
Eigen::Matrix2d g_reflected(double x, double t, const CharSystemd& cs, ReflectRoute route = ReflectRoute::Difference,
                            const GreenOptions& opt = {});

/// Initial data as functions on R*, x = 0 excluded.
struct InitialProfile {
  std::function<double(double)> tau0;
  std::function<double(double)> u0;
  double V0 = 0.0;
  /// Data vanish (to round-off) for |x| > reach.
  double reach = 0.0;
  /// Points where the data are not smooth (cutoff edges and so on).
  std::vector<double> kinks;
};

/// Initial-data terms of the Green representation for the linearized
/// interface problem (particle mass 1) at x != 0.
Eigen::Vector2d linear_green_solution(const InitialProfile& init, double x, const KernelTable& table);

}  // namespace pointmass
