// Continuous model of a point mass in a 1D viscous barotropic fluid,
// written in Lagrangian mass coordinates around the rest state v = 1.
#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace pointmass {

/// Barotropic pressure as a function of specific volume, p(v).
///
/// Two families are supported: the gamma law p(v) = v^(-gamma), and a
/// user-supplied law given by p, p' and p''. Both must satisfy p'(1) < 0 and
/// p''(1) != 0, which the constructors enforce.
class PressureLaw {
 public:
  using Fn = std::function<double(double)>;

  static PressureLaw gamma_law(double gamma);
  static PressureLaw custom(Fn p, Fn dp, Fn d2p, std::string name = "custom");

  double operator()(double v) const { return p_(v); }
  double derivative(double v) const { return dp_(v); }
  double second_derivative(double v) const { return d2p_(v); }

  /// p'(1)
  double d1() const { return d1_; }
  /// p''(1)
  double d2() const { return d2_; }

  bool is_gamma_law() const { return gamma_ > 0.0; }
  double gamma() const { return gamma_; }
  const std::string& name() const { return name_; }

  /// p(1+tau) - p(1), computed without cancellation for the gamma law.
  double excess(double tau) const;

  /// Potential energy density P(tau) = -int_0^tau (p(1+s) - p(1)) ds.
  double potential(double tau) const;

 private:
  PressureLaw(Fn p, Fn dp, Fn d2p, std::string name, double gamma);

  Fn p_, dp_, d2p_;
  std::string name_;
  double gamma_ = -1.0;
  double d1_ = 0.0;
  double d2_ = 0.0;
};

/// c = sqrt(-p'(1)).
double sound_speed(const PressureLaw& law);

/// Characteristic structure of the linearized system u_t + A u_x = B u_xx,
/// with A = [[0,-1],[-c^2,0]] and B = diag(0, nu).
template <typename Scalar>
struct CharSystem {
  using Vec2 = Eigen::Matrix<Scalar, 2, 1>;
  using Row2 = Eigen::Matrix<Scalar, 1, 2>;
  using Mat2 = Eigen::Matrix<Scalar, 2, 2>;

  Scalar c;
  Scalar p2;  // p''(1)
  Scalar nu;
  std::array<Scalar, 2> lambda;
  std::array<Vec2, 2> r;
  std::array<Row2, 2> l;

  /// Builds the eigensystem directly from p'(1), p''(1) and nu.
  static CharSystem from_derivatives(Scalar p1, Scalar p2, Scalar nu) {
    if (!(p1 < Scalar(0))) throw std::invalid_argument("pressure law needs p'(1) < 0");
    if (p2 == Scalar(0)) throw std::invalid_argument("pressure law needs p''(1) != 0");
    if (!(nu > Scalar(0))) throw std::invalid_argument("viscosity must be positive");
    using std::sqrt;
    CharSystem cs;
    cs.c = sqrt(-p1);
    cs.p2 = p2;
    cs.nu = nu;
    cs.lambda = {cs.c, -cs.c};
    const Scalar rs = Scalar(2) * cs.c / p2;
    const Scalar ls = p2 / (Scalar(4) * cs.c);
    cs.r[0] << -rs, rs * cs.c;
    cs.r[1] << rs, rs * cs.c;
    cs.l[0] << -ls, ls / cs.c;
    cs.l[1] << ls, ls / cs.c;
    return cs;
  }

  Mat2 A() const {
    Mat2 a;
    a << Scalar(0), Scalar(-1), -c * c, Scalar(0);
    return a;
  }
  Mat2 B() const {
    Mat2 b;
    b << Scalar(0), Scalar(0), Scalar(0), nu;
    return b;
  }
  /// Columns r_1, r_2.
  Mat2 right_matrix() const {
    Mat2 m;
    m << r[0], r[1];
    return m;
  }
  /// Rows l_1, l_2.
  Mat2 left_matrix() const {
    Mat2 m;
    m << l[0], l[1];
    return m;
  }
};

using CharSystemd = CharSystem<double>;

CharSystemd eigensystem(const PressureLaw& law, double nu);

/// Samples on the two half-lines of R*: right(j) at x = j*h and left(j) at
/// x = -j*h, j = 0..N. Index 0 holds the one-sided limits at x = +0 / -0.
struct Field {
  double h = 0.0;
  Eigen::VectorXd right;
  Eigen::VectorXd left;

  Field() = default;
  Field(double spacing, Eigen::Index n);

  Eigen::Index nodes() const { return right.size(); }
  bool same_grid(const Field& other) const;
};

/// Projections u_i = l_i (tau, u)^T, pointwise on both half-lines.
std::pair<Field, Field> diagonal_components(const Field& tau, const Field& u, const CharSystemd& cs);

/// Inverse of diagonal_components: (tau, u) = u_1 r_1 + u_2 r_2.
std::pair<Field, Field> reconstruct(const Field& u1, const Field& u2, const CharSystemd& cs);

/// Masses that select the leading diffusion waves.
struct Masses {
  std::array<double, 2> m{};       // int l_i (tau0, u0)^T dx
  std::array<double, 2> mV{};      // l_i (0, V0)^T
  std::array<double, 2> total{};   // m_i + mV_i
  std::vector<std::string> warnings;
};

/// Composite Simpson over nodes 0..N (3/8 rule closes an odd count).
double simpson(const Eigen::Ref<const Eigen::VectorXd>& f, double h);

Masses masses(const Field& tau0, const Field& u0, double V0, const CharSystemd& cs);

}  // namespace pointmass
