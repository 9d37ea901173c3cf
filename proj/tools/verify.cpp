#include "verify.hpp"

#include <cmath>

#include "pointmass/analysis.hpp"
#include "pointmass/greenfn.hpp"
#include "pointmass/initial_data.hpp"
#include "pointmass/quadrature.hpp"
#include "pointmass/selfsim.hpp"
#include "pointmass/solver.hpp"
#include "pointmass/specialfns.hpp"
#include "pointmass/talbot.hpp"

namespace pointmass::cli {

bool SuiteResult::passed() const {
  if (!error.empty()) return false;
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

namespace {

Check at_most(std::string name, double v, double lim) { return {std::move(name), v, lim, v <= lim}; }

Check inside(std::string name, double v, double lo, double hi) {
  return {std::move(name) + " in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]", v, hi, v >= lo && v <= hi};
}

const CharSystemd& standard_system() {
  static const CharSystemd cs = eigensystem(PressureLaw::gamma_law(1.4), 1.0);
  return cs;
}

std::vector<Check> suite_model() {
  const auto& cs = standard_system();
  std::vector<Check> out;
  const Eigen::Matrix2d LR = cs.left_matrix() * cs.right_matrix();
  out.push_back(at_most("biorthogonality |L R - I|", (LR - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff(), 1e-14));
  double eig = 0.0;
  for (int i = 0; i < 2; ++i) eig = std::max(eig, (cs.A() * cs.r[i] - cs.lambda[i] * cs.r[i]).norm());
  out.push_back(at_most("eigenvectors |A r - lambda r|", eig, 1e-14));
  out.push_back(at_most("sound speed^2 + p'(1)", std::abs(cs.c * cs.c - 1.4), 1e-14));

  const double h = 0.01;
  const Eigen::Index n = 3001;
  Field tau(h, n), u(h, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double x = j * h;
    tau.right(j) = std::exp(-(x - 3) * (x - 3));
    tau.left(j) = 0.5 * std::exp(-(x - 2) * (x - 2));
    u.right(j) = 0.0;
    u.left(j) = 0.0;
  }
  const auto [u1, u2] = diagonal_components(tau, u, cs);
  const auto [t2, v2] = reconstruct(u1, u2, cs);
  out.push_back(at_most("reconstruct(diagonal) round trip", (t2.right - tau.right).cwiseAbs().maxCoeff(), 1e-14));
  const Masses M = masses(tau, u, 0.0, cs);
  const double exact =
      0.5 * std::sqrt(M_PI) * ((2.0 - std::erfc(3.0)) + 0.5 * (2.0 - std::erfc(2.0))) * cs.l[0](0);
  out.push_back(at_most("mass m_1 of Gaussian data", std::abs(M.m[0] - exact), 1e-9));
  return out;
}

std::vector<Check> suite_specialfns() {
  std::vector<Check> out;
  const double ref[][2] = {{0.5, 0.47950012218695346}, {1.0, 0.15729920705028513}, {3.0, 2.209049699858544e-05},
                           {-1.5, 1.9661051464753108}, {6.0, 2.1519736712498913e-17}};
  double worst = 0.0;
  for (const auto& r : ref) worst = std::max(worst, std::abs(erfc(r[0]) / r[1] - 1.0));
  out.push_back(at_most("erfc tabulated values (relative)", worst, 1e-13));
  out.push_back(at_most("erfcx(30) (relative)", std::abs(erfcx(30.0) / 0.018795888861416751497 - 1.0), 1e-13));
  double ek = 0.0;
  for (double x : {-2.0, 0.5, 3.0})
    for (double t : {0.5, 2.0, 10.0}) {
      const double lambda = 1.2, mu = 1.0;
      QuadOptions o;
      o.abs_tol = 1e-16;
      o.rel_tol = 1e-13;
      const double q = integrate(
                           [&](double z) {
                             const double d = x - z - lambda * t;
                             return std::exp(2.0 * z - d * d / (mu * t));
                           },
                           -INFINITY, 0.0, o)
                           .value;
      ek = std::max(ek, std::abs(e_kernel(x, t, lambda, mu) / q - 1.0));
    }
  out.push_back(at_most("e_kernel closed form vs quadrature", ek, 1e-10));
  return out;
}

std::vector<Check> suite_selfsim() {
  std::vector<Check> out;
  const auto& cs = standard_system();
  double worst = 0.0;
  for (double M : {-0.5, 0.05, 1.0}) {
    const DiffusionWave w(1, cs.c, 1.0, M);
    for (double t : {0.0, 10.0, 100.0}) worst = std::max(worst, std::abs(mass_integral(w, t) - M));
  }
  out.push_back(at_most("mass_integral - M", worst, 1e-8));
  const DiffusionWave w(1, cs.c, 1.0, 0.3);
  std::vector<XTPoint> pts;
  for (double t : {1.0, 4.0})
    for (double d : {-2.0, 0.0, 1.5}) pts.push_back({cs.c * (t + 1) + d, t});
  const double r1 = burgers_residual(w, pts, 0.02), r2 = burgers_residual(w, pts, 0.01);
  out.push_back(inside("burgers residual ratio under h-halving", r1 / r2, 3.5, 4.5));
  return out;
}

std::vector<Check> suite_greenfn() {
  std::vector<Check> out;
  const auto& cs = standard_system();
  QuadOptions o;
  o.abs_tol = 1e-14;
  o.rel_tol = 1e-12;
  double gs = 0.0;
  for (double t : {0.1, 1.0, 10.0})
    for (int e = 0; e < 4; ++e) {
      const double v = integrate([&](double x) { return g_star(x, t, cs)(e / 2, e % 2); }, -INFINITY, INFINITY, o).value;
      gs = std::max(gs, std::abs(v - (e % 3 == 0 ? 1.0 : 0.0)));
    }
  out.push_back(at_most("int G* dx - I", gs, 1e-12));

  double gi = 0.0, dual = 0.0, trans = 0.0;
  for (double t : {1.0, 3.0}) {
    const KernelTable tab(cs, t);
    const double R = tab.half_width() - 10.0 * tab.dx();
    Eigen::Matrix2d I;
    for (int e = 0; e < 4; ++e) {
      auto f = [&](double x) { return tab.g(x)(e / 2, e % 2); };
      I(e / 2, e % 2) = integrate(f, {-R, 0.0, R}, o).value;
    }
    I(0, 0) += tab.singular_weight();
    gi = std::max(gi, (I - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff());
    for (double x : {1.0, 5.0, -2.0}) {
      dual = std::max(dual, (tab.transmitted(x) - talbot_kernel(TalbotKernel::GT, x, t, cs)).cwiseAbs().maxCoeff());
      trans = std::max(trans,
                       (tab.transmitted_dx(x) + 2.0 * std::copysign(1.0, x) * (tab.g(x) - tab.transmitted(x))).cwiseAbs().maxCoeff());
    }
  }
  out.push_back(at_most("int G dx - I (with singular part)", gi, 1e-6));
  out.push_back(at_most("G_T convolution vs Talbot", dual, 1e-5));
  out.push_back(at_most("transmission identity residual", trans, 1e-6));
  return out;
}

std::vector<Check> suite_solver() {
  std::vector<Check> out;
  const PressureLaw law = PressureLaw::gamma_law(1.4);
  auto go = [&](InitialFamily fam, double ua) {
    InitialParams ip;
    ip.u_amplitude = ua;
    RunSpec rs;
    rs.solver.law = law;
    rs.grid = GridSpec::make(60.0, 600, 10.0, std::sqrt(1.4));
    rs.init = make_initial_data(fam, ip, law, 1.0).profile;
    rs.keep_snapshots = false;
    return run(rs);
  };
  const RunResult a = go(InitialFamily::GaussianBump, 0.0);
  const double scale = a.initial.energy_plus_dissipation();
  out.push_back(at_most("mass drift", std::abs(a.final.mass - a.initial.mass), 1e-12));
  out.push_back(at_most("momentum drift", std::abs(a.final.momentum - a.initial.momentum), 1e-12));
  out.push_back(at_most("relative energy+dissipation drift",
                        std::abs(a.final.energy_plus_dissipation() - scale) / scale, 1e-10));
  const RunResult b = go(InitialFamily::SymmetricNull, 0.01);
  double vmax = 0.0;
  for (const auto& r : b.series) vmax = std::max(vmax, std::abs(r.V));
  out.push_back(at_most("symmetric data: max |V|", vmax, 1e-12));
  return out;
}

std::vector<Check> suite_analysis() {
  std::vector<Check> out;
  std::vector<double> t, y;
  for (double s = 1.0; s <= 1e4; s *= 1.1) {
    t.push_back(s);
    y.push_back(std::pow(s + 1.0, -1.5));
  }
  FitOptions fo;
  fo.t_lo = 1.0;
  out.push_back(at_most("fit_decay on exact power law", std::abs(fit_decay(t, y, fo).alpha - 1.5), 1e-10));
  const auto& cs = standard_system();
  double lo = 1e300, hi = 0.0;
  for (double s = 100.0; s <= 1e6; s *= 3.0) {
    const double r = std::pow(s + 1.0, 1.5) * psi32(0.0, s, cs.c) * std::pow(cs.c, 1.5);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  out.push_back(inside("(t+1)^{3/2} psi32(0,t) c^{3/2}, min", lo, 0.9, 1.1));
  out.push_back(inside("(t+1)^{3/2} psi32(0,t) c^{3/2}, max", hi, 0.9, 1.1));
  return out;
}

std::vector<Check> suite_lemmas(int threads) {
  std::vector<Check> out;
  const double c = standard_system().c;
  LemmaParams p;
  p.lambda = c;
  p.mu = 2.0;
  SampleGrid g;
  g.t_max = 1e4;
  const LemmaStability st = lemma_stability(Lemma::B2, p, g, threads);
  out.push_back(at_most("B2 constant change under sample doubling", st.change, 0.1));
  p.beta = 3.0;
  const LemmaStability corr = lemma_stability(Lemma::B2, p, g, threads);
  p.log_factor = false;
  const LemmaResult raw = sample_lemma(Lemma::B2, p, g, threads);
  out.push_back(at_most("B2 beta=3 corrected: change under doubling", corr.change, 0.1));
  out.push_back(inside("B2 beta=3 corrected: growth", lemma_growth(corr.fine), 0.8, 1.2));
  out.push_back({"B2 beta=3 uncorrected: growth above 1.2", lemma_growth(raw), 1.2, lemma_growth(raw) > 1.2});
  LemmaParams q;
  q.lambda = c;
  q.mu = 1.0;
  const LemmaStability b7 = lemma_stability(Lemma::B7, q, g, threads);
  out.push_back(at_most("B7 constant change under doubling", b7.change, 0.1));
  return out;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"model", "specialfns", "selfsim", "greenfn",
                                                 "solver", "analysis", "lemmas"};
  return names;
}

SuiteResult run_suite(const std::string& name, int threads) {
  SuiteResult r;
  r.suite = name;
  try {
    if (name == "model") r.checks = suite_model();
    else if (name == "specialfns") r.checks = suite_specialfns();
    else if (name == "selfsim") r.checks = suite_selfsim();
    else if (name == "greenfn") r.checks = suite_greenfn();
    else if (name == "solver") r.checks = suite_solver();
    else if (name == "analysis") r.checks = suite_analysis();
    else if (name == "lemmas") r.checks = suite_lemmas(threads);
    else throw std::invalid_argument("unknown suite '" + name + "'");
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  return r;
}

}  // namespace pointmass::cli
