#include <cmath>

#include "doctest.h"
#include "pointmass/quadrature.hpp"

using namespace pointmass;

TEST_CASE("finite intervals") {
  const QuadResult r = integrate([](double x) { return std::sin(x); }, 0.0, M_PI);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(r.converged);
  CHECK(integrate([](double x) { return x * x; }, 1.0, 1.0).value == 0.0);
  CHECK(integrate([](double x) { return x; }, 1.0, 0.0).value == doctest::Approx(-0.5));
}

TEST_CASE("infinite intervals") {
  CHECK(integrate([](double x) { return std::exp(-x * x); }, -INFINITY, INFINITY).value ==
        doctest::Approx(std::sqrt(M_PI)).epsilon(1e-12));
  CHECK(integrate([](double x) { return std::exp(2 * x); }, -INFINITY, 0.0).value == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(integrate([](double x) { return 1 / (1 + x * x); }, 0.0, INFINITY).value ==
        doctest::Approx(M_PI / 2).epsilon(1e-10));
}

TEST_CASE("breakpoints") {
  auto f = [](double x) { return std::abs(x - 0.3); };
  const QuadResult r = integrate(f, {-1.0, 0.3, 1.0});
  CHECK(r.value == doctest::Approx(0.5 * 1.3 * 1.3 + 0.5 * 0.7 * 0.7).epsilon(1e-14));
  CHECK(r.converged);
}

TEST_CASE("non-convergence is reported") {
  QuadOptions o;
  o.max_intervals = 3;
  o.abs_tol = 1e-15;
  o.rel_tol = 1e-15;
  const QuadResult r = integrate([](double x) { return std::sin(1.0 / x); }, 1e-3, 1.0, o);
  CHECK_FALSE(r.converged);
}
