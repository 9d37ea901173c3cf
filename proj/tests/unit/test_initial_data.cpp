#include "doctest.h"
#include "pointmass/initial_data.hpp"

using namespace pointmass;

namespace {
const PressureLaw kLaw = PressureLaw::gamma_law(1.4);
}

TEST_CASE("family names") {
  for (InitialFamily f : {InitialFamily::GaussianBump, InitialFamily::Dipole, InitialFamily::SymmetricNull,
                          InitialFamily::CustomSamples})
    CHECK(initial_family_from_string(to_string(f)) == f);
  CHECK_THROWS_AS(initial_family_from_string("tophat"), std::invalid_argument);
}

TEST_CASE("smooth cutoff") {
  CHECK(smooth_cutoff(0.0) == 1.0);
  CHECK(smooth_cutoff(1.0) == 0.0);
  CHECK(smooth_cutoff(2.0) == 0.0);
  // first four derivatives vanish at both ends: f(r) - f(end) = O(r^5)
  const double a = 1.0 - smooth_cutoff(1e-2), b = 1.0 - smooth_cutoff(5e-3);
  CHECK(a / b == doctest::Approx(32.0).epsilon(0.05));
  const double c = smooth_cutoff(1.0 - 1e-2), d = smooth_cutoff(1.0 - 5e-3);
  CHECK(c / d == doctest::Approx(32.0).epsilon(0.05));
}

TEST_CASE("gaussian bump at rest") {
  InitialParams p;
  p.amplitude = 0.01;
  p.center = 3.0;
  p.width = 1.0;
  const InitialData d = make_initial_data(InitialFamily::GaussianBump, p, kLaw, 1.0);
  CHECK(d.profile.u0(1e-300) == 0.0);
  CHECK(d.profile.u0(-1e-300) == 0.0);
  CHECK(d.profile.V0 == 0.0);
  CHECK(d.profile.tau0(3.0) == doctest::Approx(0.01).epsilon(1e-12));
  for (int side : {1, -1}) {
    const auto r = compatibility_residuals(d, kLaw, 1.0, 1.0, side);
    CHECK(std::abs(r[0]) == 0.0);
    CHECK(std::abs(r[1]) < 1e-12);
  }
}

TEST_CASE("dipole with a moving particle satisfies both compatibility conditions") {
  InitialParams p;
  p.amplitude = 0.01;
  p.u_amplitude = 0.02;
  p.V0 = 0.01;
  p.center = 1.5;
  p.width = 0.7;
  const InitialData d = make_initial_data(InitialFamily::Dipole, p, kLaw, 1.0);
  for (int side : {1, -1}) {
    const auto r = compatibility_residuals(d, kLaw, 1.0, 1.0, side);
    CHECK(std::abs(r[0]) < 1e-12);
    CHECK(std::abs(r[1]) < 1e-12);
  }
}

TEST_CASE("symmetric null data") {
  InitialParams p;
  p.u_amplitude = 0.01;
  const InitialData d = make_initial_data(InitialFamily::SymmetricNull, p, kLaw, 1.0);
  CHECK(d.profile.V0 == 0.0);
  for (double x : {0.1, 0.9, 2.0, 3.3, 6.0}) {
    CHECK(d.profile.tau0(x) == d.profile.tau0(-x));
    CHECK(d.profile.u0(x) == -d.profile.u0(-x));
  }
  for (int side : {1, -1}) {
    const auto r = compatibility_residuals(d, kLaw, 1.0, 1.0, side);
    CHECK(std::abs(r[0]) < 1e-15);
    CHECK(std::abs(r[1]) < 1e-12);
  }
}

TEST_CASE("custom samples") {
  InitialParams p;
  p.sample_h = 0.1;
  for (int j = 0; j < 101; ++j) {
    const double x = j * 0.1;
    p.tau_right.push_back(0.01 * std::exp(-(x - 4) * (x - 4)));
    p.tau_left.push_back(0.005 * std::exp(-(x - 3) * (x - 3)));
    p.u_right.push_back(0.0);
    p.u_left.push_back(0.0);
  }
  const InitialData d = make_initial_data(InitialFamily::CustomSamples, p, kLaw, 1.0);
  CHECK(d.profile.tau0(4.0) == doctest::Approx(0.01).epsilon(1e-6));
  CHECK(d.profile.tau0(-3.0) == doctest::Approx(0.005).epsilon(1e-6));
  for (int side : {1, -1}) CHECK(std::abs(compatibility_residuals(d, kLaw, 1.0, 1.0, side)[1]) < 1e-10);
}

TEST_CASE("invalid parameters") {
  InitialParams p;
  p.amplitude = -2.0;
  CHECK_THROWS(make_initial_data(InitialFamily::GaussianBump, p, kLaw, 1.0));
  InitialParams q;
  q.width = 0.0;
  CHECK_THROWS_AS(make_initial_data(InitialFamily::GaussianBump, q, kLaw, 1.0), std::invalid_argument);
  InitialParams r;
  r.cutoff = 0.0;
  CHECK_THROWS_AS(make_initial_data(InitialFamily::Dipole, r, kLaw, 1.0), std::invalid_argument);
}

TEST_CASE("profile sampling") {
  InitialParams p;
  const InitialData d = make_initial_data(InitialFamily::GaussianBump, p, kLaw, 1.0);
  const auto [tau, u] = sample_profile(d.profile, 0.5, 21);
  CHECK(tau.nodes() == 21);
  CHECK(tau.right(6) == d.profile.tau0(3.0));
  CHECK(tau.left(6) == d.profile.tau0(-3.0));
}
