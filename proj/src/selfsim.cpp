#include "pointmass/selfsim.hpp"

#include <sstream>

#include "pointmass/quadrature.hpp"
#include "pointmass/specialfns.hpp"

namespace pointmass {

DiffusionWave::DiffusionWave(int b, double lam, double viscosity, double m)
    : branch(b), lambda(lam), nu(viscosity), mass(m) {
  if (branch != 1 && branch != 2) throw std::invalid_argument("diffusion wave branch must be 1 or 2");
  if (!(nu > 0.0)) throw std::invalid_argument("diffusion wave needs nu > 0");
  if (!std::isfinite(mass) || mass / nu > 700.0) {
    std::ostringstream os;
    os << "diffusion wave mass " << mass << " with nu " << nu << " overflows exp(M/nu)";
    throw std::invalid_argument(os.str());
  }
}

std::array<DiffusionWave, 2> diffusion_waves(const CharSystemd& cs, const Masses& m) {
  return {DiffusionWave(1, cs.lambda[0], cs.nu, m.total[0]), DiffusionWave(2, cs.lambda[1], cs.nu, m.total[1])};
}

namespace {

struct ThetaParts {
  double theta;
  double w;
  double spread;  // sqrt(2 nu (t+1))
};

ThetaParts theta_parts(const DiffusionWave& wave, double x, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("theta: t must be non-negative");
  const double T = t + 1.0;
  const double q = std::expm1(wave.mass / wave.nu);
  const double spread = std::sqrt(2.0 * wave.nu * T);
  const double w = (x - wave.lambda * T) / spread;
  if (q == 0.0) return {0.0, w, spread};
  const double denom = 1.0 + 0.5 * q * erfc(w);
  if (!(denom > 0.0)) throw std::logic_error("theta: non-positive Cole-Hopf denominator");
  const double K = std::sqrt(wave.nu / (2.0 * T));
  return {K * q * std::exp(-w * w) / (std::sqrt(M_PI) * denom), w, spread};
}

}  // namespace

double theta(const DiffusionWave& w, double x, double t) { return theta_parts(w, x, t).theta; }

double theta_dx(const DiffusionWave& wave, double x, double t) {
  const ThetaParts p = theta_parts(wave, x, t);
  return -2.0 * p.w * p.theta / p.spread + p.theta * p.theta / wave.nu;
}

double mass_integral(const DiffusionWave& w, double t) {
  if (w.mass == 0.0) return 0.0;
  const double centre = w.lambda * (t + 1.0);
  const double half = 40.0 * std::sqrt(w.nu * (t + 1.0));
  QuadOptions opt;
  opt.abs_tol = 1e-13;
  opt.rel_tol = 1e-12;
  return integrate([&](double x) { return theta(w, x, t); }, {centre - half, centre, centre + half}, opt).value;
}

double burgers_residual(const DiffusionWave& w, const std::vector<XTPoint>& points, double h, double D) {
  if (points.empty() || !(h > 0.0)) throw std::invalid_argument("burgers_residual: degenerate grid");
  if (D < 0.0) D = 0.5 * w.nu;
  double worst = 0.0;
  for (const auto& p : points) {
    if (p.t < h) throw std::invalid_argument("burgers_residual: sample needs t >= h");
    const double f0 = theta(w, p.x, p.t);
    const double fe = theta(w, p.x + h, p.t), fw = theta(w, p.x - h, p.t);
    const double fn = theta(w, p.x, p.t + h), fs = theta(w, p.x, p.t - h);
    const double ft = (fn - fs) / (2.0 * h);
    const double fx = (fe - fw) / (2.0 * h);
    const double fxx = (fe - 2.0 * f0 + fw) / (h * h);
    worst = std::max(worst, std::abs(ft + w.lambda * fx + f0 * fx - D * fxx));
  }
  return worst;
}

}  // namespace pointmass
