#include "pointmass/greenfn.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <unsupported/Eigen/FFT>

#include "pointmass/quadrature.hpp"

namespace pointmass {

namespace {

constexpr double kGL8x[8] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
                             0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
constexpr double kGL8w[8] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
                             0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

const Eigen::Matrix2d kS = (Eigen::Matrix2d() << 1, 0, 0, -1).finished();

// Lagrange weights for nodes 0..5 at fractional position s (uniform spacing).
std::array<double, 6> lagrange6(double s) {
  std::array<double, 6> w{};
  for (int k = 0; k < 6; ++k) {
    double num = 1.0, den = 1.0;
    for (int m = 0; m < 6; ++m) {
      if (m == k) continue;
      num *= s - m;
      den *= k - m;
    }
    w[k] = num / den;
  }
  return w;
}

Eigen::Matrix2d pack(double a11, double a12, double a21, double a22) {
  Eigen::Matrix2d m;
  m << a11, a12, a21, a22;
  return m;
}

Eigen::Matrix2d g_star_dx(double x, double t, const CharSystemd& cs) {
  const double norm = 1.0 / (2.0 * std::sqrt(2.0 * M_PI * cs.nu * t));
  const double gp = norm * std::exp(-(x - cs.c * t) * (x - cs.c * t) / (2.0 * cs.nu * t)) * (-(x - cs.c * t) / (cs.nu * t));
  const double gm = norm * std::exp(-(x + cs.c * t) * (x + cs.c * t) / (2.0 * cs.nu * t)) * (-(x + cs.c * t) / (cs.nu * t));
  return pack(gp + gm, (gm - gp) / cs.c, cs.c * (gm - gp), gp + gm);
}

}  // namespace

std::string to_string(KernelKind k) {
  switch (k) {
    case KernelKind::G: return "G";
    case KernelKind::Gstar: return "Gstar";
    case KernelKind::GT: return "GT";
    case KernelKind::GR: return "GR";
  }
  return "?";
}

KernelKind kernel_kind_from_string(const std::string& s) {
  if (s == "G") return KernelKind::G;
  if (s == "Gstar") return KernelKind::Gstar;
  if (s == "GT") return KernelKind::GT;
  if (s == "GR") return KernelKind::GR;
  throw std::invalid_argument("unknown kernel kind '" + s + "' (expected G, Gstar, GT or GR)");
}

KernelTable::KernelTable(const CharSystemd& cs, double t, const GreenOptions& opt) : cs_(cs), t_(t) {
  if (!(t > 0.0)) throw std::invalid_argument("kernel table: t must be positive");
  if (!(opt.xi_max > 0.0)) throw std::invalid_argument("kernel table: xi_max must be positive");
  const double c2 = cs.c * cs.c, nu = cs.nu;
  E_ = std::exp(-c2 * t / nu);
  dx_ = M_PI / opt.xi_max;
  double X = opt.half_width > 0.0 ? opt.half_width : std::max(80.0, cs.c * t + 15.0 * std::sqrt(nu * t) + 20.0);
  n_ = 1;
  while (n_ * dx_ < 2.0 * X) n_ *= 2;
  X = 0.5 * n_ * dx_;
  reach_ = X - 16.0 * dx_;
  use_gstar_ = t < opt.small_t;

  // The fast branch must be resolved by the cutoff.
  if (!use_gstar_ && std::exp(-0.5 * nu * opt.xi_max * opt.xi_max * t) > 1e-16) {
    std::ostringstream os;
    os << "kernel table: xi_max = " << opt.xi_max << " does not resolve t = " << t;
    throw std::domain_error(os.str());
  }

  const double c4 = c2 * c2, c6 = c4 * c2, c8 = c4 * c4;
  A2_ = c2 / (nu * nu) - c4 * t / (nu * nu * nu);
  A4_ = (0.5 * c8 * t * t - 3.0 * c6 * nu * t + 3.0 * c4 * nu * nu) / std::pow(nu, 6);
  B2_ = -c2 / (nu * nu);
  B4_ = (c6 * t - 3.0 * c4 * nu) / std::pow(nu, 5);
  const double C1 = 1.0 / nu;
  const double C3 = (2.0 * c2 / (nu * nu) - c4 * t / (nu * nu * nu)) / nu;
  const double C5 = (c8 * t * t - 8.0 * c6 * nu * t + 12.0 * c4 * nu * nu) / (2.0 * std::pow(nu, 7));
  k1_ = C1;
  k3_ = C3 + C1;
  k5_ = C5 - C1 + 2.0 * k3_;

  for (auto* tab : {&rem_, &rem_dx_})
    for (auto& v : *tab) v = Eigen::VectorXd::Zero(n_);

  if (!use_gstar_) {
    using C = std::complex<double>;
    std::array<Eigen::VectorXcd, 4> spec, spec_dx;
    for (auto& v : spec) v.resize(n_);
    for (auto& v : spec_dx) v.resize(n_);
    const double dxi = 2.0 * M_PI / (n_ * dx_);
    const C I(0.0, 1.0);
    for (Eigen::Index k = 0; k < n_; ++k) {
      const Eigen::Index kk = k < n_ / 2 ? k : k - n_;
      const double xi = kk * dxi;
      const double sgn = (kk % 2 == 0) ? 1.0 : -1.0;
      const auto S = symbol(xi, t, cs);
      const double p2 = 1.0 / (xi * xi + 1.0);
      const double p4 = p2 * p2;
      const C s11 = E_ * (1.0 + A2_ * p2 + (A4_ + A2_) * p4);
      const C s22 = E_ * (B2_ * p2 + (B4_ + B2_) * p4);
      const C s12 = E_ * I * xi * (k1_ * p2 + k3_ * p4 + k5_ * p4 * p2);
      const C r[4] = {S(0, 0) - s11, S(0, 1) - s12, S(1, 0) - c2 * s12, S(1, 1) - s22};
      for (int e = 0; e < 4; ++e) {
        spec[e](k) = sgn * r[e];
        spec_dx[e](k) = sgn * I * xi * r[e];
      }
    }
    Eigen::FFT<double> fft;
    Eigen::VectorXcd out;
    for (int e = 0; e < 4; ++e) {
      fft.inv(out, spec[e]);
      rem_[e] = out.real() / dx_;
      fft.inv(out, spec_dx[e]);
      rem_dx_[e] = out.real() / dx_;
    }
  }

  // G_T(x) = 2 int_0^inf e^{-2w} G(x+w) dw on x = j dx, by the backward recursion
  // T_j = e^{-2dx} T_{j+1} + 2 int_0^dx e^{-2w} G(x_j + w) dw.
  const Eigen::Index J = static_cast<Eigen::Index>(std::floor(reach_ / dx_));
  for (auto* tab : {&gt_, &gt_dx_})
    for (auto& v : *tab) v = Eigen::VectorXd::Zero(J + 1);
  const double decay = std::exp(-2.0 * dx_);
  Eigen::Matrix2d T = Eigen::Matrix2d::Zero(), Td = Eigen::Matrix2d::Zero();
  for (Eigen::Index j = J - 1; j >= 0; --j) {
    Eigen::Matrix2d loc = Eigen::Matrix2d::Zero(), loc_d = Eigen::Matrix2d::Zero();
    for (int q = 0; q < 8; ++q) {
      const double w = 0.5 * dx_ * (kGL8x[q] + 1.0);
      const double wt = 0.5 * dx_ * kGL8w[q] * 2.0 * std::exp(-2.0 * w);
      loc += wt * smooth(j * dx_ + w, +1, false);
      loc_d += wt * smooth(j * dx_ + w, +1, true);
    }
    T = decay * T + loc;
    Td = decay * Td + loc_d;
    gt_[0](j) = T(0, 0);
    gt_[1](j) = T(0, 1);
    gt_[2](j) = T(1, 0);
    gt_[3](j) = T(1, 1);
    gt_dx_[0](j) = Td(0, 0);
    gt_dx_[1](j) = Td(0, 1);
    gt_dx_[2](j) = Td(1, 0);
    gt_dx_[3](j) = Td(1, 1);
  }
}

void KernelTable::check_x(double x) const {
  if (x == 0.0) throw std::invalid_argument("kernel evaluation at x = 0; probe x = +-eps instead");
  if (!(std::abs(x) <= reach_ - 6.0 * dx_)) {
    std::ostringstream os;
    os << "kernel evaluation at x = " << x << " is outside the table (|x| <= " << reach_ - 6.0 * dx_ << ")";
    throw std::out_of_range(os.str());
  }
}

Eigen::Matrix2d KernelTable::analytic(double x, int side, bool derivative) const {
  const double ax = std::abs(x);
  const double s = x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : static_cast<double>(side));
  const double e = std::exp(-ax);
  double g11, g12, g22;
  if (!derivative) {
    g11 = A2_ * e / 2.0 + (A4_ + A2_) * (1.0 + ax) * e / 4.0;
    g22 = B2_ * e / 2.0 + (B4_ + B2_) * (1.0 + ax) * e / 4.0;
    g12 = -k1_ * s * e / 2.0 - k3_ * x * e / 4.0 - k5_ * x * (1.0 + ax) * e / 16.0;
  } else {
    g11 = -A2_ * s * e / 2.0 - (A4_ + A2_) * x * e / 4.0;
    g22 = -B2_ * s * e / 2.0 - (B4_ + B2_) * x * e / 4.0;
    g12 = (k1_ - k3_) * e / 2.0 + (k3_ - k5_) * (1.0 + ax) * e / 4.0 + k5_ * (3.0 + 3.0 * ax + x * x) * e / 16.0;
  }
  return E_ * pack(g11, g12, cs_.c * cs_.c * g12, g22);
}

Eigen::Matrix2d KernelTable::interp_remainder(const std::array<Eigen::VectorXd, 4>& tab, double x) const {
  const double pos = x / dx_ + 0.5 * n_;
  Eigen::Index j = static_cast<Eigen::Index>(std::floor(pos));
  j = std::clamp<Eigen::Index>(j, 2, n_ - 4);
  const auto w = lagrange6(pos - (j - 2));
  Eigen::Matrix2d m = Eigen::Matrix2d::Zero();
  for (int k = 0; k < 6; ++k) {
    m(0, 0) += w[k] * tab[0](j - 2 + k);
    m(0, 1) += w[k] * tab[1](j - 2 + k);
    m(1, 0) += w[k] * tab[2](j - 2 + k);
    m(1, 1) += w[k] * tab[3](j - 2 + k);
  }
  return m;
}

Eigen::Matrix2d KernelTable::interp_halfline(const std::array<Eigen::VectorXd, 4>& tab, double x) const {
  const Eigen::Index n = tab[0].size();
  const double pos = x / dx_;
  Eigen::Index j = static_cast<Eigen::Index>(std::floor(pos));
  Eigen::Index start = std::clamp<Eigen::Index>(j - 2, 0, n - 6);
  const auto w = lagrange6(pos - start);
  Eigen::Matrix2d m = Eigen::Matrix2d::Zero();
  for (int k = 0; k < 6; ++k) {
    m(0, 0) += w[k] * tab[0](start + k);
    m(0, 1) += w[k] * tab[1](start + k);
    m(1, 0) += w[k] * tab[2](start + k);
    m(1, 1) += w[k] * tab[3](start + k);
  }
  return m;
}

Eigen::Matrix2d KernelTable::smooth(double x, int side, bool derivative) const {
  if (use_gstar_) return derivative ? g_star_dx(x, t_, cs_) : g_star(x, t_, cs_);
  return interp_remainder(derivative ? rem_dx_ : rem_, x) + analytic(x, side, derivative);
}

Eigen::Matrix2d KernelTable::g(double x) const {
  check_x(x);
  return smooth(x, 0, false);
}

Eigen::Matrix2d KernelTable::g_limit(int side) const {
  if (side != 1 && side != -1) throw std::invalid_argument("g_limit: side must be +1 or -1");
  return smooth(0.0, side, false);
}

Eigen::Matrix2d KernelTable::g_dx(double x) const {
  check_x(x);
  return smooth(x, 0, true);
}

Eigen::Matrix2d KernelTable::transmitted(double x) const {
  check_x(x);
  if (x > 0.0) return interp_halfline(gt_, x);
  return kS * interp_halfline(gt_, -x) * kS;
}

Eigen::Matrix2d KernelTable::transmitted_dx(double x) const {
  check_x(x);
  if (x > 0.0) return interp_halfline(gt_dx_, x);
  return -kS * interp_halfline(gt_dx_, -x) * kS;
}

Eigen::Matrix2d KernelTable::reflected(double x) const { return (g(x) - transmitted(x)) * kS; }

Eigen::Matrix2d KernelTable::reflected_from_derivative(double x) const {
  const double s = x > 0.0 ? 1.0 : -1.0;
  return -0.5 * s * transmitted_dx(x) * kS;
}

KernelEval g_fundamental(double x, double t, const CharSystemd& cs, const GreenOptions& opt) {
  const KernelTable table(cs, t, opt);
  KernelEval ev;
  ev.kind = KernelKind::G;
  ev.x = x;
  ev.t = t;
  ev.regular = table.g(x);
  ev.singular_weight = table.singular_weight();
  return ev;
}

Eigen::Matrix2d g_transmitted(double x, double t, const CharSystemd& cs, const GreenOptions& opt) {
  return KernelTable(cs, t, opt).transmitted(x);
}

Eigen::Matrix2d g_reflected(double x, double t, const CharSystemd& cs, ReflectRoute route, const GreenOptions& opt) {
  const KernelTable table(cs, t, opt);
  return route == ReflectRoute::Difference ? table.reflected(x) : table.reflected_from_derivative(x);
}

namespace {

// x > 0 form of the representation.
Eigen::Vector2d green_right(const InitialProfile& init, double x, const KernelTable& K) {
  auto f = [&](double y) { return Eigen::Vector2d(init.tau0(y), init.u0(y)); };
  QuadOptions opt;
  opt.abs_tol = 1e-13;
  opt.rel_tol = 1e-10;
  const double R = init.reach;

  auto breaks = [&](double lo, double hi, std::vector<double> extra) {
    std::vector<double> pts{lo, hi};
    for (double k : init.kinks)
      if (k > lo && k < hi) pts.push_back(k);
    for (double k : extra)
      if (k > lo && k < hi) pts.push_back(k);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
  };

  Eigen::Vector2d out = Eigen::Vector2d::Zero();
  for (int r = 0; r < 2; ++r) {
    // same side, direct G term, split at y = x
    out(r) += integrate(
                  [&](double y) {
                    if (y == x) return 0.0;
                    return (K.g(x - y) * f(y))(r);
                  },
                  breaks(0.0, R, {x}), opt)
                  .value;
    // reflected term
    out(r) += integrate([&](double y) { return (K.reflected(x + y) * f(y))(r); }, breaks(0.0, R, {}), opt).value;
    // transmitted term from the other side
    out(r) += integrate([&](double y) { return (K.transmitted(x - y) * f(y))(r); }, breaks(-R, 0.0, {}), opt).value;
  }
  // delta part of G acting at y = x
  out(0) += K.singular_weight() * init.tau0(x);
  out += K.transmitted(x) * Eigen::Vector2d(0.0, init.V0);
  return out;
}

}  // namespace

Eigen::Vector2d linear_green_solution(const InitialProfile& init, double x, const KernelTable& table) {
  if (x == 0.0) throw std::invalid_argument("linear_green_solution: x = 0 is not in the domain; probe x = +-eps");
  if (!init.tau0 || !init.u0) throw std::invalid_argument("linear_green_solution: missing initial data");
  if (x > 0.0) return green_right(init, x, table);
  // Mirror: (tau, u)(x) -> (tau, -u)(-x) maps solutions to solutions with V -> -V.
  InitialProfile mirrored;
  mirrored.tau0 = [&](double y) { return init.tau0(-y); };
  mirrored.u0 = [&](double y) { return -init.u0(-y); };
  mirrored.V0 = -init.V0;
  mirrored.reach = init.reach;
  for (double k : init.kinks) mirrored.kinks.push_back(-k);
  const Eigen::Vector2d r = green_right(mirrored, -x, table);
  return Eigen::Vector2d(r(0), -r(1));
}

}  // namespace pointmass
