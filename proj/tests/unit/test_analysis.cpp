#include "doctest.h"
#include "pointmass/analysis.hpp"
#include "pointmass/initial_data.hpp"

using namespace pointmass;

namespace {

const CharSystemd& system14() {
  static const CharSystemd cs = eigensystem(PressureLaw::gamma_law(1.4), 1.0);
  return cs;
}

std::vector<double> geometric_times(double lo, double hi, double q) {
  std::vector<double> t;
  for (double s = lo; s <= hi; s *= q) t.push_back(s);
  return t;
}

}  // namespace

TEST_CASE("weights") {
  const double c = system14().c;
  SUBCASE("both weights are of order t^(-3/2) at the particle") {
    double lo = 1e300, hi = 0.0;
    for (double t = 1.0; t <= 1e6; t *= 1.5)
      for (double v : {psi32(0.0, t, c), psi_tilde(0.0, t, -c)}) {
        lo = std::min(lo, v * std::pow(t + 1, 1.5));
        hi = std::max(hi, v * std::pow(t + 1, 1.5));
      }
    CHECK(lo > 0.1);
    CHECK(hi < 2.0);
  }
  SUBCASE("psi32 at the particle for large t") {
    for (double t = 100.0; t <= 1e6; t *= 3.0) {
      const double r = std::pow(t + 1, 1.5) * psi32(0.0, t, c) * std::pow(c, 1.5);
      CHECK(r >= 0.9);
      CHECK(r <= 1.1);
    }
  }
  SUBCASE("sup of Psi_i is of order t^(-3/4)") {
    double lo = 1e300, hi = 0.0;
    for (double t = 1.0; t <= 1e5; t *= 2.0) {
      double s = 0.0;
      for (double x = -2 * c * (t + 1); x <= 2 * c * (t + 1); x += (t + 1) / 2000.0)
        s = std::max({s, Psi(1, x, t, system14()), Psi(2, x, t, system14())});
      lo = std::min(lo, s * std::pow(t + 1, 0.75));
      hi = std::max(hi, s * std::pow(t + 1, 0.75));
    }
    CHECK(lo > 0.5);
    CHECK(hi < 2.5);
  }
  SUBCASE("closed forms") {
    CHECK(psi32(1.0, 3.0, 0.5) == doctest::Approx(std::pow(1.0 + 4.0, -0.75)));
    CHECK(psi_tilde(1.0, 3.0, 0.5) == doctest::Approx(std::pow(1.0 + 16.0, -0.5)));
    CHECK(theta_alpha(1.0, 3.0, 0.5, 2.0, 3.0) == doctest::Approx(std::pow(4.0, -1.5) * std::exp(-1.0 / 8.0)));
    const WeightEval w = weights(1, 1.0, 3.0, system14(), 2.0, 2.0);
    CHECK(w.Psi == doctest::Approx(Psi(1, 1.0, 3.0, system14())));
    CHECK(w.Psi == doctest::Approx(w.psi32 + w.psitilde));
    CHECK_THROWS_AS(Psi(0, 1.0, 1.0, system14()), std::invalid_argument);
  }
  SUBCASE("products of waves on different characteristics decay exponentially") {
    double hi = 0.0;
    for (double t = 1.0; t <= 400.0; t *= 1.3) {
      double s = 0.0;
      for (double x = -3 * c * (t + 1); x <= 3 * c * (t + 1); x += 0.05 * (t + 1))
        s = std::max(s, theta_alpha(x, t, c, 2.0, 1.0) * theta_alpha(x, t, -c, 2.0, 1.0));
      hi = std::max(hi, s * std::exp(t / 2.0));
    }
    CHECK(std::isfinite(hi));
    CHECK(hi < 10.0);
  }
}

TEST_CASE("decay fits") {
  SUBCASE("exact power law") {
    const auto t = geometric_times(1.0, 1e4, 1.05);
    std::vector<double> y;
    for (double s : t) y.push_back(std::pow(s + 1, -1.5));
    FitOptions o;
    o.t_lo = 1.0;
    const DecayFit f = fit_decay(t, y, o);
    CHECK(std::abs(f.alpha - 1.5) <= 1e-10);
    CHECK(f.claimed());
  }
  SUBCASE("oscillating perturbation") {
    const auto t = geometric_times(1.0, 1e4, 1.02);
    std::vector<double> y;
    for (double s : t) y.push_back(std::pow(s + 1, -0.5) * (1 + 0.1 * std::sin(std::log(s + 1))));
    FitOptions o;
    o.t_lo = 1.0;
    const DecayFit f = fit_decay(t, y, o);
    CHECK(f.alpha >= 0.45);
    CHECK(f.alpha <= 0.55);
  }
  SUBCASE("zero series is a null signal") {
    const auto t = geometric_times(1.0, 1e3, 1.1);
    const DecayFit f = fit_decay(t, std::vector<double>(t.size(), 0.0));
    CHECK(f.verdict == FitVerdict::NullSignal);
    CHECK_FALSE(f.claimed());
    CHECK(to_string(f.verdict) == "null signal");
  }
  SUBCASE("too few samples") {
    const DecayFit f = fit_decay({60.0, 70.0, 80.0}, {1.0, 0.5, 0.25});
    CHECK(f.verdict == FitVerdict::TooFewSamples);
  }
  SUBCASE("noisy data is not claimed") {
    const auto t = geometric_times(50.0, 1e3, 1.01);
    std::vector<double> y;
    for (size_t k = 0; k < t.size(); ++k) y.push_back(k % 2 ? 1.0 : 1e-3);
    CHECK(fit_decay(t, y).verdict == FitVerdict::PoorFit);
  }
  SUBCASE("length mismatch") { CHECK_THROWS_AS(fit_decay({1.0, 2.0}, {1.0}), std::invalid_argument); }
}

TEST_CASE("interface decay check on synthetic series") {
  auto series = [](double aV, double au) {
    std::vector<SeriesRow> rows;
    for (double t = 0.0; t <= 1000.0; t += 0.5)
      rows.push_back({t, aV < 0 ? 0.0 : 0.01 * std::pow(t + 1, -aV), 0.01 * std::pow(t + 1, -au), 0.0, 0.0, 0.0});
    return rows;
  };
  const InterfaceReport ok = interface_decay_check(series(1.5, 0.5));
  CHECK(ok.verdict == "pass");
  CHECK(ok.fit_V.alpha == doctest::Approx(1.5).epsilon(1e-6));
  CHECK(ok.fit_uinf.alpha == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(ok.travel_converges);
  CHECK(ok.increment_ratio == doctest::Approx(std::pow(2.0, -0.5)).epsilon(0.02));

  const InterfaceReport slow = interface_decay_check(series(0.5, 0.5));
  CHECK(slow.verdict == "fail");
  CHECK_FALSE(slow.travel_converges);

  const InterfaceReport fast = interface_decay_check(series(2.5, 0.5));
  CHECK(fast.verdict == "fail");
  CHECK(fast.travel_converges);
  CHECK_FALSE(fast.exponent_ok);

  CHECK(interface_decay_check(series(-1.0, 0.5)).verdict == "null signal");
  CHECK_THROWS_AS(interface_decay_check({}), std::invalid_argument);
}

TEST_CASE("discrete norms") {
  const double h = 0.01;
  const Eigen::Index n = 3001;
  Eigen::VectorXd f(n);
  for (Eigen::Index j = 0; j < n; ++j) f(j) = std::exp(-j * h);
  // every derivative of e^{-x} has squared L2 norm 1/2 on the half-line
  for (int k = 0; k <= 4; ++k) CHECK(sobolev_norm(f, h, k) == doctest::Approx(std::sqrt(0.5 * (k + 1))).epsilon(1e-6));
  CHECK_THROWS_AS(sobolev_norm(f, h, 5), std::invalid_argument);
  CHECK_THROWS_AS(sobolev_norm(Eigen::VectorXd::Zero(5), h), std::invalid_argument);

  const CharSystemd& cs = system14();
  Field z(h, 101);
  const DeltaParts d0 = delta_norm(z, z, cs);
  CHECK(d0.delta == 0.0);

  Field tau(h, n), u(h, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double x = j * h;
    tau.right(j) = std::exp(-(x - 3) * (x - 3));
    tau.left(j) = 0.0;
    u.right(j) = 0.0;
    u.left(j) = 0.0;
  }
  const DeltaParts d1 = delta_norm(tau, u, cs);
  tau.right *= 0.5;
  const DeltaParts d2 = delta_norm(tau, u, cs);
  CHECK(d2.delta == doctest::Approx(0.5 * d1.delta).epsilon(1e-12));
  CHECK(d1.eps > 0.0);
  CHECK(d1.l1 > 0.0);
  double sw = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) sw = std::max(sw, std::pow(j * h + 1, 1.5) * std::exp(-(j * h - 3) * (j * h - 3)));
  CHECK(d1.sup_weighted == doctest::Approx(2 * std::abs(cs.l[0](0)) * sw).epsilon(1e-12));
}

TEST_CASE("bound ratio") {
  const CharSystemd& cs = system14();
  const PressureLaw law = PressureLaw::gamma_law(1.4);
  SUBCASE("zero data") {
    Snapshot s;
    s.t = 1.0;
    s.x = Eigen::VectorXd::LinSpaced(11, -5.0, 5.0);
    s.tau = Eigen::VectorXd::Zero(11);
    s.u = Eigen::VectorXd::Zero(11);
    Masses M;
    const BoundRatio br = bound_ratio({s}, diffusion_waves(cs, M), cs, 0.0);
    CHECK(br.ratio == 0.0);
  }
  SUBCASE("nonzero data with delta = 0") {
    Snapshot s;
    s.t = 1.0;
    s.x = Eigen::VectorXd::LinSpaced(11, -5.0, 5.0);
    s.tau = Eigen::VectorXd::Constant(11, 1e-3);
    s.u = Eigen::VectorXd::Zero(11);
    Masses M;
    CHECK_THROWS_AS(bound_ratio({s}, diffusion_waves(cs, M), cs, 0.0), std::invalid_argument);
  }
  SUBCASE("amplitude scaling on a small run") {
    auto ratio = [&](double amplitude) {
      InitialParams p;
      p.amplitude = amplitude;
      const InitialData d = make_initial_data(InitialFamily::GaussianBump, p, law, 1.0);
      RunSpec rs;
      rs.solver.law = law;
      rs.grid = GridSpec::make(160.0, 1600, 50.0, cs.c);
      rs.grid.validate(cs.c, 1.0);
      rs.init = d.profile;
      rs.stride = 100;
      const RunResult r = run(rs);
      const auto [tau0, u0] = sample_profile(d.profile, rs.grid.h(), rs.grid.N + 1);
      const auto waves = diffusion_waves(cs, masses(tau0, u0, 0.0, cs));
      return bound_ratio(r.snapshots, waves, cs, delta_norm(tau0, u0, cs).delta);
    };
    const BoundRatio a = ratio(0.01), b = ratio(0.005);
    CHECK(std::isfinite(a.ratio));
    CHECK(a.ratio > 0.0);
    CHECK(a.ratio / b.ratio >= 0.65);
    CHECK(a.ratio / b.ratio <= 1.35);
    // the supremum is attained away from the particle
    CHECK(std::abs(a.x) > 1.0);
    CHECK(a.per_snapshot.size() == a.times.size());
  }
}
