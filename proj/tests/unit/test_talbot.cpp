#include "doctest.h"
#include "pointmass/talbot.hpp"

using namespace pointmass;

TEST_CASE("inverts elementary transforms") {
  for (double t : {0.1, 1.0, 5.0}) {
    const Eigen::Matrix2d m = talbot_invert(
        [](std::complex<double> s) {
          Matrix2c r;
          r << 1.0 / (s + 1.0), 1.0 / (s * s), 1.0 / s, 2.0 / ((s + 1.0) * (s + 1.0) + 4.0);
          return r;
        },
        t);
    CHECK(m(0, 0) == doctest::Approx(std::exp(-t)).epsilon(1e-10));
    CHECK(m(0, 1) == doctest::Approx(t).epsilon(1e-10));
    CHECK(m(1, 0) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(m(1, 1) == doctest::Approx(std::exp(-t) * std::sin(2 * t)).epsilon(1e-8));
  }
}

TEST_CASE("shifted contour keeps tiny values relative") {
  const LaplaceFn F = [](std::complex<double> s) {
    Matrix2c r;
    r << 1.0 / (s + 30.0), 0.0, 0.0, 1.0 / ((s + 25.0) * (s + 25.0));
    return r;
  };
  const double t = 2.0;
  const Eigen::Matrix2d m = talbot_invert(F, t, 24, -20.0);
  CHECK(m(0, 0) == doctest::Approx(std::exp(-30.0 * t)).epsilon(1e-10));
  CHECK(m(1, 1) == doctest::Approx(t * std::exp(-25.0 * t)).epsilon(1e-10));
  // unshifted, the same values are lost in round-off
  CHECK(std::abs(talbot_invert(F, t, 24)(0, 0) / std::exp(-30.0 * t) - 1.0) > 1e-3);
}

TEST_CASE("Laplace transform of G has the branch with positive real part") {
  const CharSystemd cs = eigensystem(PressureLaw::gamma_law(1.4), 1.0);
  // the transform decays in |x| for Re s > 0
  const std::complex<double> s(0.5, 3.0);
  CHECK(std::abs(laplace_g(10.0, s, cs)(0, 0)) < std::abs(laplace_g(1.0, s, cs)(0, 0)));
  // off-diagonal entries are odd in x
  CHECK(std::abs(laplace_g(2.0, s, cs)(0, 1) + laplace_g(-2.0, s, cs)(0, 1)) < 1e-15);
}
