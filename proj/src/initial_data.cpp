#include "pointmass/initial_data.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace pointmass {

namespace {

// 1 - cutoff, with derivatives in r.
Jet smoothstep(double s) {
  if (s <= 0.0) return {0.0, 0.0, 0.0};
  if (s >= 1.0) return {1.0, 0.0, 0.0};
  const double s2 = s * s, s4 = s2 * s2, t = 1.0 - s, t3 = t * t * t;
  const double v = s4 * s * (126.0 - 420.0 * s + 540.0 * s2 - 315.0 * s2 * s + 70.0 * s4);
  return {v, 630.0 * s4 * t3 * t, 2520.0 * s2 * s * t3 * (1.0 - 2.0 * s)};
}

Jet gaussian(double x, double xc, double w) {
  const double d = x - xc;
  const double g = std::exp(-d * d / (2.0 * w * w));
  return {g, -d / (w * w) * g, (d * d / (w * w * w * w) - 1.0 / (w * w)) * g};
}

Jet scale(const Jet& a, double k) { return {k * a[0], k * a[1], k * a[2]}; }
Jet add(const Jet& a, const Jet& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }

// Catmull-Rom interpolant of samples f(j h), j = 0..n-1, for r >= 0; zero beyond.
Jet spline(const std::vector<double>& f, double h, double r) {
  const auto n = static_cast<std::ptrdiff_t>(f.size());
  const double pos = r / h;
  const auto j = static_cast<std::ptrdiff_t>(std::floor(pos));
  if (j >= n - 1) return {0.0, 0.0, 0.0};
  auto at = [&](std::ptrdiff_t k) {
    if (k < 0) return 2.0 * f[0] - f[1];  // linear extrapolation past +-0
    if (k >= n) return 0.0;
    return f[k];
  };
  const double p0 = at(j - 1), p1 = at(j), p2 = at(j + 1), p3 = at(j + 2);
  const double s = pos - j;
  const double a = -0.5 * p0 + 1.5 * p1 - 1.5 * p2 + 0.5 * p3;
  const double b = p0 - 2.5 * p1 + 2.0 * p2 - 0.5 * p3;
  const double c = -0.5 * p0 + 0.5 * p2;
  const double v = ((a * s + b) * s + c) * s + p1;
  const double d1 = (3.0 * a * s + 2.0 * b) * s + c;
  const double d2 = 6.0 * a * s + 2.0 * b;
  return {v, d1 / h, d2 / (h * h)};
}

}  // namespace

double smooth_cutoff(double r) { return 1.0 - smoothstep(r)[0]; }

InitialFamily initial_family_from_string(const std::string& s) {
  if (s == "gaussian_bump") return InitialFamily::GaussianBump;
  if (s == "dipole") return InitialFamily::Dipole;
  if (s == "symmetric_null") return InitialFamily::SymmetricNull;
  if (s == "custom_samples") return InitialFamily::CustomSamples;
  throw std::invalid_argument("unknown initial family '" + s +
                              "' (expected gaussian_bump, dipole, symmetric_null or custom_samples)");
}

std::string to_string(InitialFamily f) {
  switch (f) {
    case InitialFamily::GaussianBump: return "gaussian_bump";
    case InitialFamily::Dipole: return "dipole";
    case InitialFamily::SymmetricNull: return "symmetric_null";
    case InitialFamily::CustomSamples: return "custom_samples";
  }
  return "?";
}

InitialData make_initial_data(InitialFamily family, const InitialParams& P, const PressureLaw& law, double nu,
                              double mass) {
  if (!(P.cutoff > 0.0)) throw std::invalid_argument("initial data: cutoff radius must be positive");
  if (!(mass > 0.0)) throw std::invalid_argument("initial data: particle mass must be positive");
  if (!(nu > 0.0)) throw std::invalid_argument("initial data: viscosity must be positive");
  if (family != InitialFamily::CustomSamples && !(P.width > 0.0))
    throw std::invalid_argument("initial data: width must be positive");

  // Base (uncorrected) jets of tau and u.
  std::function<Jet(double)> tau_base, u_base;
  double V0 = P.V0;
  double reach = 0.0;
  const double A = P.amplitude, B = P.u_amplitude, xc = P.center, w = P.width;
  switch (family) {
    case InitialFamily::GaussianBump:
      tau_base = [=](double x) { return scale(gaussian(x, xc, w), A); };
      u_base = [=](double x) { return scale(gaussian(x, xc, w), B); };
      reach = std::abs(xc) + 14.0 * w;
      break;
    case InitialFamily::Dipole:
      tau_base = [=](double x) {
        const Jet g = gaussian(x, xc, w);
        const double d = (x - xc) / w;
        return scale(Jet{d * g[0], g[0] / w + d * g[1], 2.0 * g[1] / w + d * g[2]}, A);
      };
      u_base = [=](double x) { return scale(gaussian(x, xc, w), B); };
      reach = std::abs(xc) + 14.0 * w;
      break;
    case InitialFamily::SymmetricNull:
      if (V0 != 0.0) throw std::invalid_argument("symmetric_null data require V0 = 0");
      tau_base = [=](double x) { return scale(add(gaussian(x, xc, w), gaussian(x, -xc, w)), A); };
      u_base = [=](double x) { return scale(add(gaussian(x, xc, w), scale(gaussian(x, -xc, w), -1.0)), B); };
      reach = std::abs(xc) + 14.0 * w;
      break;
    case InitialFamily::CustomSamples: {
      const auto n = P.tau_right.size();
      if (!(P.sample_h > 0.0) || n < 4 || P.tau_left.size() != n || P.u_right.size() != n || P.u_left.size() != n)
        throw std::invalid_argument("custom_samples: need sample_h > 0 and four equal sample lists of length >= 4");
      for (const auto* v : {&P.tau_right, &P.tau_left, &P.u_right, &P.u_left})
        for (double s : *v)
          if (!std::isfinite(s)) throw std::invalid_argument("custom_samples: non-finite sample");
      const double h = P.sample_h;
      const auto tr = P.tau_right, tl = P.tau_left, ur = P.u_right, ul = P.u_left;
      auto side_jet = [h](const std::vector<double>& f, double x) {
        Jet j = spline(f, h, std::abs(x));
        if (x < 0.0) j[1] = -j[1];
        return j;
      };
      tau_base = [=](double x) { return x > 0.0 ? side_jet(tr, x) : side_jet(tl, x); };
      u_base = [=](double x) { return x > 0.0 ? side_jet(ur, x) : side_jet(ul, x); };
      reach = h * static_cast<double>(n);
      break;
    }
  }
  reach = std::max(reach, P.cutoff);

  const double rc = P.cutoff;
  // u0 = V0 chi + u_base (1 - chi), chi = 1 - S(|x|/rc)
  auto u_jet = [=](double x) {
    const double s = x > 0.0 ? 1.0 : -1.0;
    const Jet S = smoothstep(std::abs(x) / rc);
    const Jet om = {S[0], s * S[1] / rc, S[2] / (rc * rc)};  // 1 - chi in x
    const Jet ub = u_base(x);
    return Jet{V0 + (ub[0] - V0) * om[0], (ub[0] - V0) * om[1] + ub[1] * om[0],
               (ub[0] - V0) * om[2] + 2.0 * ub[1] * om[1] + ub[2] * om[0]};
  };

  // Slope correction phi(|x|) = |x| chi(|x|/rc).
  auto phi = [rc](double x) {
    const double s = x > 0.0 ? 1.0 : -1.0, r = std::abs(x);
    const Jet S = smoothstep(r / rc);
    const double chi = 1.0 - S[0], chi1 = -S[1] / rc, chi2 = -S[2] / (rc * rc);
    return Jet{r * chi, s * (chi + r * chi1), 2.0 * chi1 + r * chi2};
  };

  const Jet tp = tau_base(1e-300), tm = tau_base(-1e-300);  // one-sided limits
  if (!(1.0 + tp[0] > 0.0) || !(1.0 + tm[0] > 0.0)) throw std::invalid_argument("initial data violate 1 + tau0 > 0");
  const double J = -law.excess(tp[0]) + law.excess(tm[0]);  // [[-p(1+tau0)]], u0_x vanishes at +-0
  const double beta_r = J / (mass * -law.derivative(1.0 + tp[0])) - tp[1];
  const double beta_l = tm[1] - J / (mass * -law.derivative(1.0 + tm[0]));

  auto tau_jet = [=](double x) { return add(tau_base(x), scale(phi(x), x > 0.0 ? beta_r : beta_l)); };

  InitialData out;
  out.tau_jet = tau_jet;
  out.u_jet = u_jet;
  out.beta_right = beta_r;
  out.beta_left = beta_l;
  out.profile.tau0 = [tau_jet](double x) { return tau_jet(x)[0]; };
  out.profile.u0 = [u_jet](double x) { return u_jet(x)[0]; };
  out.profile.V0 = V0;
  out.profile.reach = reach;
  out.profile.kinks = {-rc, rc};
  if (family == InitialFamily::CustomSamples) {
    for (std::size_t k = 1; k < P.tau_right.size(); ++k) {
      out.profile.kinks.push_back(k * P.sample_h);
      out.profile.kinks.push_back(-static_cast<double>(k) * P.sample_h);
    }
  }
  std::sort(out.profile.kinks.begin(), out.profile.kinks.end());

  // Positivity on a fine sweep of the support.
  const int n = 4000;
  for (int k = 1; k <= n; ++k) {
    const double x = reach * k / n;
    for (double xs : {x, -x}) {
      if (!(1.0 + tau_jet(xs)[0] > 0.0)) {
        std::ostringstream os;
        os << "initial data violate 1 + tau0 > 0 near x = " << xs;
        throw std::invalid_argument(os.str());
      }
    }
  }
  return out;
}

std::array<double, 2> compatibility_residuals(const InitialData& d, const PressureLaw& law, double nu, double mass,
                                              int side) {
  if (side != 1 && side != -1) throw std::invalid_argument("compatibility_residuals: side must be +1 or -1");
  auto stress_parts = [&](double x) {
    const Jet t = d.tau_jet(x), u = d.u_jet(x);
    const double v = 1.0 + t[0];
    const double stress = -law.excess(t[0]) + nu * u[1] / v;
    const double dstress = -law.derivative(v) * t[1] + nu * (u[2] / v - u[1] * t[1] / (v * v));
    return std::pair<double, double>(stress, dstress);
  };
  const double eps = 1e-300;
  const auto [sp, dsp] = stress_parts(eps);
  const auto [sm, dsm] = stress_parts(-eps);
  const double jump = (sp - sm) / mass;
  const double u0 = d.u_jet(side * eps)[0];
  return {u0 - d.profile.V0, (side > 0 ? dsp : dsm) - jump};
}

std::pair<Field, Field> sample_profile(const InitialProfile& init, double h, Eigen::Index n) {
  Field tau(h, n), u(h, n);
  const double eps = 1e-300;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double x = j == 0 ? eps : j * h;
    tau.right(j) = init.tau0(x);
    tau.left(j) = init.tau0(-x);
    u.right(j) = init.u0(x);
    u.left(j) = init.u0(-x);
  }
  return {std::move(tau), std::move(u)};
}

}  // namespace pointmass
