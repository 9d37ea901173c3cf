#include "../oracles/oracles.hpp"
#include "doctest.h"
#include "pointmass/specialfns.hpp"

using namespace pointmass;

TEST_CASE("erfc basic values") {
  CHECK(erfc(0.0) == 1.0);
  for (double x : {0.5, 1.0, 3.0}) CHECK(erfc(x) + erfc(-x) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(std::isnan(erfc(std::nan(""))));
}

TEST_CASE("erfc against the high-precision oracle") {
  double worst = 0.0;
  for (double x = -5.0; x <= 26.0; x += 0.37) {
    const double ref = static_cast<double>(oracle::erfc_hp(oracle::HP(x)));
    worst = std::max(worst, std::abs(erfc(x) / ref - 1.0));
  }
  CHECK(worst <= 1e-13);
  const double one = static_cast<double>(oracle::erfc_hp(oracle::HP(1)));
  CHECK(one == doctest::Approx(0.157299207050285).epsilon(1e-14));
  CHECK(std::abs(erfc(1.0) / one - 1.0) <= 1e-13);
}

TEST_CASE("erfcx is consistent with erfc and does not overflow") {
  double worst = 0.0;
  for (double x = -5.0; x <= 25.0; x += 0.25) worst = std::max(worst, std::abs(erfcx(x) * std::exp(-x * x) / erfc(x) - 1.0));
  CHECK(worst <= 1e-13);
  for (double x : {1e3, 1e5, 1e6}) {
    const double v = erfcx(x);
    CHECK(std::isfinite(v));
    CHECK(v * x * std::sqrt(M_PI) == doctest::Approx(1.0).epsilon(1e-6));
  }
  // high-precision reference for a point where erfc itself underflows in double
  const oracle::HP x = 30;
  const double ref = static_cast<double>(boost::multiprecision::exp(x * x) * oracle::erfc_hp(x));
  CHECK(std::abs(erfcx(30.0) / ref - 1.0) <= 1e-13);
}

TEST_CASE("e_kernel") {
  SUBCASE("far left underflows to zero") { CHECK(e_kernel(-1e3, 1.0, 1.0, 1.0) < 1e-300); }
  SUBCASE("matches direct quadrature at (0,1,1,1)") {
    const double ref = oracle::e_kernel_quad(0.0, 1.0, 1.0, 1.0);
    CHECK(std::abs(e_kernel(0.0, 1.0, 1.0, 1.0) / ref - 1.0) <= 1e-10);
  }
  SUBCASE("matches direct quadrature on a log-spaced grid") {
    double worst = 0.0;
    for (double t = 1e-2; t <= 1e3; t *= std::sqrt(10.0))
      for (double x : {-30.0, -3.0, -0.5, 0.0, 0.7, 4.0, 40.0}) {
        const double ref = oracle::e_kernel_quad(x, t, 1.2, 2.0);
        if (ref < 1e-280) continue;
        worst = std::max(worst, std::abs(e_kernel(x, t, 1.2, 2.0) / ref - 1.0));
      }
    CHECK(worst <= 1e-10);
  }
  SUBCASE("positive and finite on a 100 x 100 grid") {
    bool ok = true;
    for (int i = 0; i < 100; ++i)
      for (int j = 0; j < 100; ++j) {
        const double x = -50.0 + i * 100.0 / 99.0;
        const double t = 0.01 * std::pow(1e4, j / 99.0);
        const double v = e_kernel(x, t, 1.0, 1.0);
        ok = ok && std::isfinite(v) && v >= 0.0;
        // log of the integrand at its peak within z <= 0
        const double d = x - t;
        const double peak = d + t <= 0.0 ? 2.0 * d + t : -d * d / t;
        if (peak > -600.0) ok = ok && v > 0.0;
      }
    CHECK(ok);
  }
  SUBCASE("no overflow at large t") {
    const double v = e_kernel(1000.0, 1000.0, 1.0, 2.0);
    CHECK(std::isfinite(v));
    CHECK(v > 0.0);
  }
  SUBCASE("monotone in |x - lambda t| on the right of the peak") {
    const double t = 5.0, lambda = 1.0, mu = 1.0;
    double prev = e_kernel(lambda * t, t, lambda, mu);
    bool mono = true;
    for (double d = 0.1; d < 20.0; d += 0.1) {
      const double v = e_kernel(lambda * t + d, t, lambda, mu);
      mono = mono && v <= prev;
      prev = v;
    }
    CHECK(mono);
  }
  SUBCASE("invalid arguments") {
    CHECK_THROWS_AS(e_kernel(0.0, 0.0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(e_kernel(0.0, 1.0, 1.0, -1.0), std::invalid_argument);
  }
}

TEST_CASE("Lemma A.1 sampler") {
  const double c = std::sqrt(1.4);
  auto grid = [&](int nt, int nx) {
    std::vector<XT> s;
    for (int i = 0; i < nt; ++i)
      for (int j = 0; j < nx; ++j)
        s.push_back({-200.0 + 400.0 * j / (nx - 1), 1.0 * std::pow(100.0, i / double(nt - 1))});
    return s;
  };
  const LemmaA1Report coarse = check_lemma_A1(grid(40, 81), c, 2.0, 20.0);
  const LemmaA1Report fine = check_lemma_A1(grid(79, 161), c, 2.0, 20.0);
  CHECK(std::isfinite(coarse.sup_ratio));
  CHECK(std::abs(fine.sup_ratio / coarse.sup_ratio - 1.0) <= 0.05);

  const LemmaA1Sample one = lemma_A1_ratio(1.0, 1.0, 1.0, 1.0, 20.0);
  CHECK(std::isfinite(one.ratio));
  CHECK(one.ratio > 0.0);

  const LemmaA1Sample far = lemma_A1_ratio(-40.0, 4.0, 1.0, 1.0, 20.0);
  CHECK_FALSE(far.gaussian_dominated);

  CHECK_THROWS_AS(check_lemma_A1({}, 1.0, 1.0, 20.0), std::invalid_argument);
  CHECK_THROWS_AS(check_lemma_A1({{0.0, 0.0}}, 1.0, 1.0, 20.0), std::invalid_argument);
}
