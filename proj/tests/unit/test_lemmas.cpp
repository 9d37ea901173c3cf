#include "doctest.h"
#include "pointmass/analysis.hpp"

using namespace pointmass;

namespace {
const double kC = std::sqrt(1.4);
}

TEST_CASE("lemma names") {
  for (Lemma id : {Lemma::B2, Lemma::B3, Lemma::B4, Lemma::B5, Lemma::B6, Lemma::B7})
    CHECK(lemma_from_string(to_string(id)) == id);
  CHECK_THROWS_AS(lemma_from_string("B9"), std::invalid_argument);
}

TEST_CASE("sample grid doubling") {
  SampleGrid g;
  const SampleGrid d = g.doubled();
  CHECK(d.nt == 2 * g.nt);
  CHECK(d.nx == 2 * g.nx);
  CHECK(d.t_min == g.t_min);
  CHECK(d.t_max == g.t_max);
}

TEST_CASE("inner integral: closed form equals quadrature") {
  LemmaParams p;
  p.lambda = kC;
  p.mu = 2.0;
  for (double x : {-3.0, 0.5, 5.0})
    for (double t : {0.5, 3.0, 40.0}) {
      const LemmaSample a = lemma_sample(Lemma::B2, p, x, t);
      LemmaParams q = p;
      q.closed_form_inner = true;
      const LemmaSample b = lemma_sample(Lemma::B2, q, x, t);
      CHECK(a.lhs == doctest::Approx(b.lhs).epsilon(1e-9));
      CHECK(a.converged);
    }
}

TEST_CASE("B2 constant is stable under sample doubling") {
  LemmaParams p;
  p.alpha = 0.0;
  p.beta = 2.0;
  p.lambda = kC;
  p.mu = 2.0;
  SampleGrid g;
  g.t_max = 1e4;
  const LemmaStability st = lemma_stability(Lemma::B2, p, g, 4);
  CHECK(std::isfinite(st.coarse.constant));
  CHECK(st.coarse.constant > 0.0);
  CHECK(st.change <= 0.1);
  CHECK(st.stable);
  CHECK(st.fine.failures == 0);
}

TEST_CASE("B2 log factor positive control") {
  LemmaParams p;
  p.beta = 3.0;
  p.lambda = kC;
  p.mu = 2.0;
  SampleGrid g;
  g.t_max = 1e4;
  const LemmaStability corrected = lemma_stability(Lemma::B2, p, g, 4);
  CHECK(corrected.change <= 0.1);
  CHECK(lemma_growth(corrected.fine) < 1.2);
  p.log_factor = false;
  const LemmaResult raw = sample_lemma(Lemma::B2, p, g, 4);
  CHECK(lemma_growth(raw) > 1.2);
}

TEST_CASE("B7 constant is stable") {
  LemmaParams p;
  p.lambda = kC;
  p.mu = 1.0;
  SampleGrid g;
  g.t_max = 1e4;
  const LemmaStability st = lemma_stability(Lemma::B7, p, g, 4);
  CHECK(std::isfinite(st.coarse.constant));
  CHECK(st.change <= 0.1);
}

TEST_CASE("B5 constant is finite and stable") {
  LemmaParams p;
  p.lambda = kC;
  p.lambda2 = -kC;
  p.beta = 1.0;
  SampleGrid g;
  g.nt = 10;
  g.nx = 10;
  const LemmaStability st = lemma_stability(Lemma::B5, p, g, 4);
  CHECK(std::isfinite(st.fine.constant));
  CHECK(st.change <= 0.1);
}

TEST_CASE("B3 and B6 constants are finite") {
  for (Lemma id : {Lemma::B3, Lemma::B6}) {
    LemmaParams p;
    p.lambda = kC;
    p.lambda2 = -kC;
    p.beta = id == Lemma::B3 ? 2.0 : 1.0;
    SampleGrid g;
    g.nt = 8;
    g.nx = 8;
    g.t_max = 200.0;
    const LemmaResult r = sample_lemma(id, p, g, 4);
    CHECK(std::isfinite(r.constant));
    CHECK(r.constant > 0.0);
    CHECK(r.samples.size() == 64);
  }
}

TEST_CASE("B4 hypotheses and sampler") {
  LemmaParams p;
  p.lambda = kC;
  p.lambda2 = -kC;
  p.mu = 2.0;
  SampleGrid g;
  g.nt = 8;
  g.nx = 8;
  g.t_max = 200.0;
  const HypothesisCheck hc = lemma_b4_hypotheses(p, g);
  CHECK(std::isfinite(hc.h_ratio));
  CHECK(std::isfinite(hc.residual_ratio));
  const LemmaResult r = sample_lemma(Lemma::B4, p, g, 4);
  CHECK(std::isfinite(r.constant));
}
