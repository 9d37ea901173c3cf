#include "pointmass/model.hpp"

#include <sstream>

namespace pointmass {

namespace {

// 8-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 8> kGLNodes = {
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
    0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, 8> kGLWeights = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
    0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

}  // namespace

PressureLaw::PressureLaw(Fn p, Fn dp, Fn d2p, std::string name, double gamma)
    : p_(std::move(p)), dp_(std::move(dp)), d2p_(std::move(d2p)), name_(std::move(name)), gamma_(gamma) {
  d1_ = dp_(1.0);
  d2_ = d2p_(1.0);
  if (!std::isfinite(d1_) || !(d1_ < 0.0)) {
    throw std::invalid_argument("pressure law '" + name_ + "' violates p'(1) < 0");
  }
  if (!std::isfinite(d2_) || d2_ == 0.0) {
    throw std::invalid_argument("pressure law '" + name_ + "' violates p''(1) != 0");
  }
}

PressureLaw PressureLaw::gamma_law(double gamma) {
  if (!(gamma > 1.0) || !std::isfinite(gamma)) {
    std::ostringstream os;
    os << "gamma law requires gamma > 1 (got " << gamma << ")";
    throw std::invalid_argument(os.str());
  }
  std::ostringstream name;
  name << "gamma_law(" << gamma << ")";
  return PressureLaw([gamma](double v) { return std::pow(v, -gamma); },
                     [gamma](double v) { return -gamma * std::pow(v, -gamma - 1.0); },
                     [gamma](double v) { return gamma * (gamma + 1.0) * std::pow(v, -gamma - 2.0); },
                     name.str(), gamma);
}

PressureLaw PressureLaw::custom(Fn p, Fn dp, Fn d2p, std::string name) {
  if (!p || !dp || !d2p) throw std::invalid_argument("custom pressure law needs p, p' and p''");
  return PressureLaw(std::move(p), std::move(dp), std::move(d2p), std::move(name), -1.0);
}

double PressureLaw::excess(double tau) const {
  if (is_gamma_law()) return std::expm1(-gamma_ * std::log1p(tau));
  return p_(1.0 + tau) - p_(1.0);
}

double PressureLaw::potential(double tau) const {
  if (is_gamma_law()) {
    if (std::abs(tau) < 1e-3) {
      // -sum_n binom(-gamma, n) tau^(n+1) / (n+1)
      double coeff = 1.0;
      double power = tau;
      double sum = 0.0;
      for (int n = 1; n <= 14; ++n) {
        coeff *= (-gamma_ - (n - 1)) / n;
        power *= tau;
        sum -= coeff * power / (n + 1);
      }
      return sum;
    }
    const double a = 1.0 - gamma_;
    return tau - std::expm1(a * std::log1p(tau)) / a;
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < kGLNodes.size(); ++k) {
    const double s = 0.5 * tau * (kGLNodes[k] + 1.0);
    sum += kGLWeights[k] * excess(s);
  }
  return -0.5 * tau * sum;
}

double sound_speed(const PressureLaw& law) {
  if (!(law.d1() < 0.0)) throw std::invalid_argument("sound speed needs p'(1) < 0");
  return std::sqrt(-law.d1());
}

CharSystemd eigensystem(const PressureLaw& law, double nu) {
  return CharSystemd::from_derivatives(law.d1(), law.d2(), nu);
}

Field::Field(double spacing, Eigen::Index n)
    : h(spacing), right(Eigen::VectorXd::Zero(n)), left(Eigen::VectorXd::Zero(n)) {}

bool Field::same_grid(const Field& other) const {
  return h == other.h && right.size() == other.right.size() && left.size() == other.left.size();
}

std::pair<Field, Field> diagonal_components(const Field& tau, const Field& u, const CharSystemd& cs) {
  if (!tau.same_grid(u)) throw std::invalid_argument("diagonal_components: tau and u live on different grids");
  Field u1 = tau, u2 = tau;
  u1.right = cs.l[0](0) * tau.right + cs.l[0](1) * u.right;
  u1.left = cs.l[0](0) * tau.left + cs.l[0](1) * u.left;
  u2.right = cs.l[1](0) * tau.right + cs.l[1](1) * u.right;
  u2.left = cs.l[1](0) * tau.left + cs.l[1](1) * u.left;
  return {std::move(u1), std::move(u2)};
}

std::pair<Field, Field> reconstruct(const Field& u1, const Field& u2, const CharSystemd& cs) {
  if (!u1.same_grid(u2)) throw std::invalid_argument("reconstruct: components live on different grids");
  Field tau = u1, u = u1;
  tau.right = cs.r[0](0) * u1.right + cs.r[1](0) * u2.right;
  tau.left = cs.r[0](0) * u1.left + cs.r[1](0) * u2.left;
  u.right = cs.r[0](1) * u1.right + cs.r[1](1) * u2.right;
  u.left = cs.r[0](1) * u1.left + cs.r[1](1) * u2.left;
  return {std::move(tau), std::move(u)};
}

double simpson(const Eigen::Ref<const Eigen::VectorXd>& f, double h) {
  const Eigen::Index n = f.size() - 1;  // intervals
  if (n < 1) return 0.0;
  if (n == 1) return 0.5 * h * (f(0) + f(1));
  auto simpson_even = [&](Eigen::Index last) {
    double s = f(0) + f(last);
    for (Eigen::Index j = 1; j < last; ++j) s += (j % 2 ? 4.0 : 2.0) * f(j);
    return s * h / 3.0;
  };
  if (n % 2 == 0) return simpson_even(n);
  if (n == 3) return 3.0 * h / 8.0 * (f(0) + 3.0 * f(1) + 3.0 * f(2) + f(3));
  return simpson_even(n - 3) + 3.0 * h / 8.0 * (f(n - 3) + 3.0 * f(n - 2) + 3.0 * f(n - 1) + f(n));
}

Masses masses(const Field& tau0, const Field& u0, double V0, const CharSystemd& cs) {
  if (!tau0.same_grid(u0)) throw std::invalid_argument("masses: tau0 and u0 live on different grids");
  auto finite = [](const Eigen::VectorXd& v) { return v.allFinite(); };
  if (!finite(tau0.right) || !finite(tau0.left) || !finite(u0.right) || !finite(u0.left) || !std::isfinite(V0)) {
    throw std::invalid_argument("masses: non-finite initial data");
  }
  Masses out;
  const Eigen::Index last = tau0.nodes() - 1;
  const double tail = std::max({std::abs(tau0.right(last)), std::abs(tau0.left(last)), std::abs(u0.right(last)),
                                std::abs(u0.left(last))});
  if (tail > 1e-8) {
    std::ostringstream os;
    os << "initial data does not decay at the domain ends (|value| = " << tail << ")";
    out.warnings.push_back(os.str());
  }
  for (int i = 0; i < 2; ++i) {
    const Eigen::VectorXd fr = cs.l[i](0) * tau0.right + cs.l[i](1) * u0.right;
    const Eigen::VectorXd fl = cs.l[i](0) * tau0.left + cs.l[i](1) * u0.left;
    out.m[i] = simpson(fr, tau0.h) + simpson(fl, tau0.h);
    out.mV[i] = cs.l[i](1) * V0;
    out.total[i] = out.m[i] + out.mV[i];
  }
  return out;
}

}  // namespace pointmass
