#include "pointmass/specialfns.hpp"

#include <algorithm>

namespace pointmass {

double e_kernel(double x, double t, double lambda, double mu) {
  if (!(t > 0.0)) throw std::invalid_argument("e_kernel: t must be positive");
  if (!(mu > 0.0)) throw std::invalid_argument("e_kernel: mu must be positive");
  const double a = x - lambda * t;
  const double s = std::sqrt(mu * t);
  const double w = (a + mu * t) / s;
  const double pre = 0.5 * std::sqrt(M_PI) * s;
  if (w >= 0.0) return pre * erfcx(w) * std::exp(-a * a / (mu * t));
  // erfc(w) in [1, 2] here; the exponent 2a + mu t is the small one.
  return pre * erfc(w) * std::exp(2.0 * a + mu * t);
}

LemmaA1Sample lemma_A1_ratio(double x, double t, double lambda, double mu, double C0) {
  if (!(t > 0.0)) throw std::invalid_argument("lemma A.1 sample needs t > 0");
  if (!(C0 > 0.0)) throw std::invalid_argument("lemma A.1 needs C0 > 0");
  const double a = x - lambda * t;
  const double gauss = std::exp(-a * a / (C0 * t)) / std::sqrt(t + 1.0);
  const double expo = std::exp(-(std::abs(x) + t) / C0);
  LemmaA1Sample s;
  s.x = x;
  s.t = t;
  s.gaussian_dominated = gauss >= expo;
  s.ratio = e_kernel(x, t, lambda, mu) / std::sqrt(t) / (gauss + expo);
  return s;
}

LemmaA1Report check_lemma_A1(const std::vector<XT>& samples, double lambda, double mu, double C0) {
  if (samples.empty()) throw std::invalid_argument("check_lemma_A1: empty sample set");
  LemmaA1Report rep;
  rep.samples.reserve(samples.size());
  for (const auto& p : samples) {
    rep.samples.push_back(lemma_A1_ratio(p.x, p.t, lambda, mu, C0));
    if (rep.samples.back().ratio > rep.sup_ratio) {
      rep.sup_ratio = rep.samples.back().ratio;
      rep.argmax = rep.samples.back();
    }
  }
  return rep;
}

}  // namespace pointmass
