// Complementary error function, its scaled form, and the kernel
// E(x,t;lambda,mu) = int_{-inf}^0 e^{2z} exp(-(x-z-lambda t)^2/(mu t)) dz.
#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace pointmass {

namespace detail {

template <typename T>
T inv_sqrt_pi() {
  using std::sqrt;
  using std::atan;
  return T(1) / sqrt(T(4) * atan(T(1)));
}

// erf by its Maclaurin series; used for |x| < 1 only.
template <typename T>
T erf_series(T x) {
  using std::abs;
  const T x2 = x * x;
  T term = x;  // (-1)^n x^(2n+1) / n!
  T sum = x;
  for (int n = 1; n < 200; ++n) {
    term *= -x2 / T(n);
    const T add = term / T(2 * n + 1);
    sum += add;
    if (abs(add) <= std::numeric_limits<T>::epsilon() * abs(sum)) break;
  }
  return T(2) * inv_sqrt_pi<T>() * sum;
}

// e^{x^2} erfc(x) for x >= 1 by the continued fraction
// sqrt(pi) erfcx(x) = 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))), modified Lentz.
template <typename T>
T erfcx_cf(T x) {
  using std::abs;
  const T tiny = std::numeric_limits<T>::min() * T(1e10);
  const T eps = std::numeric_limits<T>::epsilon();
  T f = x;
  T C = f;
  T D = T(0);
  for (int k = 1; k < 5000; ++k) {
    const T a = T(k) / T(2);
    D = x + a * D;
    if (abs(D) < tiny) D = tiny;
    C = x + a / C;
    if (abs(C) < tiny) C = tiny;
    D = T(1) / D;
    const T delta = C * D;
    f *= delta;
    if (abs(delta - T(1)) <= eps) break;
  }
  return inv_sqrt_pi<T>() / f;
}

}  // namespace detail

/// Complementary error function.
template <typename T>
T erfc(T x) {
  using std::abs;
  using std::exp;
  if (x != x) return x;
  if (abs(x) < T(1)) return T(1) - detail::erf_series(x);
  if (x >= T(1)) {
    return detail::erfcx_cf(x) * exp(-x * x);
  }
  return T(2) - erfc(-x);
}

/// Scaled complementary error function e^{x^2} erfc(x); finite for all x
/// above about -26.6, and ~1/(x sqrt(pi)) for large x.
template <typename T>
T erfcx(T x) {
  using std::abs;
  using std::exp;
  if (x != x) return x;
  if (x >= T(1)) return detail::erfcx_cf(x);
  if (abs(x) < T(1)) return exp(x * x) * (T(1) - detail::erf_series(x));
  return T(2) * exp(x * x) - detail::erfcx_cf(-x);
}

/// Closed form of E(x,t;lambda,mu). Exponents are combined before
/// exponentiating, so large t and |x| neither overflow nor produce inf*0.
double e_kernel(double x, double t, double lambda, double mu);

/// Upper envelope used in the Lemma A.1 check:
/// (t+1)^{-1/2} exp(-(x-lambda t)^2/(C0 t)) + exp(-(|x|+t)/C0).
struct LemmaA1Sample {
  double x = 0.0;
  double t = 0.0;
  double ratio = 0.0;       // t^{-1/2} E / envelope
  bool gaussian_dominated = false;  // which envelope term is larger
};

struct LemmaA1Report {
  double sup_ratio = 0.0;
  LemmaA1Sample argmax;
  std::vector<LemmaA1Sample> samples;
};

struct XT {
  double x;
  double t;
};

LemmaA1Sample lemma_A1_ratio(double x, double t, double lambda, double mu, double C0);

/// Sup of the ratio over the samples. Throws on an empty set or t <= 0.
LemmaA1Report check_lemma_A1(const std::vector<XT>& samples, double lambda, double mu, double C0);

}  // namespace pointmass
