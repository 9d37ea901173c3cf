// Numeric sampling of the heat-kernel convolution estimates: the left side
// is a double integral done by nested adaptive quadrature, the right side
// is the bound without its constant.
#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "pointmass/analysis.hpp"
#include "pointmass/quadrature.hpp"

namespace pointmass {

std::string to_string(Lemma id) {
  static const char* names[] = {"B2", "B3", "B4", "B5", "B6", "B7"};
  return names[static_cast<int>(id)];
}

Lemma lemma_from_string(const std::string& s) {
  for (Lemma id : {Lemma::B2, Lemma::B3, Lemma::B4, Lemma::B5, Lemma::B6, Lemma::B7})
    if (to_string(id) == s) return id;
  throw std::invalid_argument("unknown lemma '" + s + "' (expected B2..B7)");
}

SampleGrid SampleGrid::doubled() const {
  SampleGrid g = *this;
  g.nt *= 2;
  g.nx *= 2;
  return g;
}

namespace {

bool two_speeds(Lemma id) { return id == Lemma::B3 || id == Lemma::B4 || id == Lemma::B6; }

void check_params(Lemma id, const LemmaParams& p) {
  if (!(p.mu > 0.0)) throw std::invalid_argument("lemma: mu must be positive");
  if (two_speeds(id) && p.lambda == p.lambda2) throw std::invalid_argument("lemma: needs lambda != lambda'");
  switch (id) {
    case Lemma::B2:
      if (!(p.alpha >= 0.0) || !(p.beta > 0.0)) throw std::invalid_argument("B2: needs alpha >= 0, beta > 0");
      break;
    case Lemma::B3:
      if (!(p.alpha >= 0.0) || !(p.beta >= 1.0)) throw std::invalid_argument("B3: needs alpha >= 0, beta >= 1");
      if (!(p.eps > 0.0)) throw std::invalid_argument("B3: needs eps > 0");
      break;
    case Lemma::B4:
      if (p.lambda == 0.0 || p.lambda2 == 0.0) throw std::invalid_argument("B4: needs nonzero speeds");
      if (!(p.nu > 0.0)) throw std::invalid_argument("B4: needs nu > 0");
      break;
    case Lemma::B5:
    case Lemma::B6:
      if (!(p.alpha >= 0.0) || !(p.beta >= 0.0)) throw std::invalid_argument("B5/B6: needs alpha, beta >= 0");
      break;
    case Lemma::B7:
      break;
  }
}

double default_K(Lemma id, const LemmaParams& p) {
  if (p.K > 0.0) return p.K;
  const double gap = std::abs(p.lambda - p.lambda2);
  switch (id) {
    case Lemma::B6: return 2.5 * gap;
    case Lemma::B4: return 4.0 * std::abs(p.lambda);
    default: return gap;
  }
}

double chi_K(double x, double t, double l1, double l2, double K) {
  const double T = t + 1.0, s = K * std::sqrt(T);
  return (x >= std::min(l1, l2) * T + s && x <= std::max(l1, l2) * T - s) ? 1.0 : 0.0;
}

double between(double x, double t, const LemmaParams& p, double a, double b, double K) {
  const double T = t + 1.0;
  if (chi_K(x, t, p.lambda, p.lambda2, K) == 0.0) return 0.0;
  return std::pow(std::abs(x - p.lambda * T), -a) * std::pow(std::abs(x - p.lambda2 * T), -b);
}

double rhs(Lemma id, const LemmaParams& p, double x, double t) {
  const double a = p.alpha, b = p.beta;
  const double lg2 = p.log_factor ? std::log(t + 2.0) : 1.0;
  const double lg1 = std::log(t + 1.0);
  const double K = default_K(id, p);
  switch (id) {
    case Lemma::B2: {
      const double g1 = a + std::min(b, 3.0) - 1.0, g2 = std::min(a, 1.0) + b - 1.0;
      const double e = theta_alpha(x, t, p.lambda, p.mu, g1) * (b == 3.0 ? lg2 : 1.0);
      const double l = theta_alpha(x, t, p.lambda, p.mu, g2) * (a == 1.0 ? lg2 : 1.0);
      if (p.range == TimeRange::Early) return e;
      if (p.range == TimeRange::Late) return l;
      return e + l;
    }
    case Lemma::B3: {
      const double g = std::min(a, 1.0) + std::min(b, 3.0) - 1.0;
      const double m = p.mu + p.eps;
      const double t1 = theta_alpha(x, t, p.lambda, m, g), t2 = theta_alpha(x, t, p.lambda2, m, g);
      double r = t1 + t2 + between(x, t, p, 0.5 * (b - 1.0), 0.5 * (a + 1.0), K);
      if (p.log_factor) {
        if (b == 3.0 && p.range != TimeRange::Late) r += t1 * lg1;
        if (a == 1.0 && p.range != TimeRange::Early) r += t2 * lg1;
      }
      return r;
    }
    case Lemma::B4: {
      const double ns = p.nu_star > 0.0 ? p.nu_star : 8.0 * p.nu;
      const double al = 2.0;  // h = theta^2
      return psi_alpha(x, t, p.lambda, 0.5 * (al + 1.0)) + theta_alpha(x, t, p.lambda2, ns, std::min(al, 2.0)) +
             between(x, t, p, 0.5 * al, 0.5, K);
    }
    case Lemma::B5: {
      const double g = std::min(a, 1.0) + std::min(b, 1.5) - 1.0;
      const bool lg = p.log_factor && (a == 1.0 || b == 1.5);
      return std::pow(t + 1.0, -0.5 * g) * psi32(x, t, p.lambda) * (lg ? lg2 : 1.0);
    }
    case Lemma::B6: {
      const double g = std::min(a, 1.0) + std::min(b, 1.5) - 1.0;
      const double pg = std::pow(t + 1.0, -0.5 * g);
      const double p1 = psi32(x, t, p.lambda), p2 = psi32(x, t, p.lambda2);
      double r = pg * (p1 + p2) + between(x, t, p, 0.5 * std::min(b, 2.5) + 0.25, 0.5 * std::min(a, 1.0) + 0.5, K);
      if (p.log_factor) {
        if (a == 1.0) r += pg * lg1 * (p1 + p2);
        else if (b == 1.5) r += pg * lg1 * p1;
      }
      return r;
    }
    case Lemma::B7:
      return std::pow(t + 1.0, -0.25) * psi32(x, t, p.lambda);
  }
  return 0.0;
}

QuadOptions inner_opts() {
  QuadOptions o;
  o.abs_tol = 1e-300;
  o.rel_tol = 1e-9;
  o.max_intervals = 400;
  return o;
}

QuadOptions outer_opts() {
  QuadOptions o;
  o.abs_tol = 1e-300;
  o.rel_tol = 1e-7;
  o.max_intervals = 1000;
  return o;
}

// Integral over y of a Gaussian factor exp(-(y-a)^2/A) times f, where f is
// negligible outside [b - 10 sqrt(B), b + 10 sqrt(B)] (B <= 0: f is smooth
// and not localised).
double inner_integral(const std::function<double(double)>& f, double a, double A, double b, double B, bool& ok) {
  double lo = a - 10.0 * std::sqrt(A), hi = a + 10.0 * std::sqrt(A);
  std::vector<double> pts;
  if (B > 0.0) {
    lo = std::max(lo, b - 10.0 * std::sqrt(B));
    hi = std::min(hi, b + 10.0 * std::sqrt(B));
    if (!(lo < hi)) return 0.0;
    const double c = (a * B + b * A) / (A + B);
    pts = {lo, std::clamp(c, lo, hi), hi};
  } else {
    pts = {lo, a, hi};
    if (b > lo && b < hi) pts.push_back(b);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const QuadResult r = integrate([&](double y) { return std::exp(-(y - a) * (y - a) / A) * f(y); }, pts, inner_opts());
  ok = ok && r.converged;
  return r.value;
}

// int over s in the chosen range of g(s), with s = t - sigma^2 on [t/2, t]
// to lift the (t-s)^(-1/2) endpoint behaviour. s0 (if inside) is a break.
double outer_integral(const std::function<double(double)>& g, double t, TimeRange range, double s0, bool& ok) {
  double total = 0.0;
  const QuadOptions o = outer_opts();
  if (range != TimeRange::Late) {
    std::vector<double> pts{0.0, 0.5 * t};
    if (s0 > 0.0 && s0 < 0.5 * t) pts.insert(pts.begin() + 1, s0);
    const QuadResult r = integrate(g, pts, o);
    ok = ok && r.converged;
    total += r.value;
  }
  if (range != TimeRange::Early) {
    const double smax = std::sqrt(0.5 * t);
    std::vector<double> pts{0.0, smax};
    if (s0 > 0.5 * t && s0 < t) pts.insert(pts.begin() + 1, std::sqrt(t - s0));
    const QuadResult r = integrate([&](double sg) { return sg == 0.0 ? 0.0 : 2.0 * sg * g(t - sg * sg); }, pts, o);
    ok = ok && r.converged;
    total += r.value;
  }
  return total;
}

double lhs(Lemma id, const LemmaParams& p, double x, double t, bool& ok) {
  const double lam = p.lambda, mu = p.mu;
  const double lam2 = two_speeds(id) ? p.lambda2 : lam;
  // s where the kernel centre x - lam (t-s) meets the second speed's centre lam2 (s+1)
  const double s0 = lam != lam2 ? (lam * t + lam2 - x) / (lam - lam2) : -1.0;
  const double a = p.alpha, b = p.beta;
  auto weight = [&](double s) { return std::pow(t - s, -1.0) * std::pow(t + 1.0 - s, -0.5 * a); };

  switch (id) {
    case Lemma::B2:
    case Lemma::B3: {
      auto g = [&](double s) -> double {
        const double tau = t - s;
        if (!(tau > 0.0)) return 0.0;
        double inner;
        if (p.closed_form_inner) {
          const double d = x - lam * tau - lam2 * (s + 1.0);
          inner = std::sqrt(M_PI * mu * tau * (s + 1.0) / (t + 1.0)) * std::exp(-d * d / (mu * (t + 1.0)));
        } else {
          const double c2 = lam2 * (s + 1.0), B = mu * (s + 1.0);
          inner = inner_integral([&](double y) { return std::exp(-(y - c2) * (y - c2) / B); }, x - lam * tau,
                                 mu * tau, c2, B, ok);
        }
        return weight(s) * std::pow(s + 1.0, -0.5 * b) * inner;
      };
      return outer_integral(g, t, p.range, s0, ok);
    }
    case Lemma::B4: {
      const DiffusionWave w(1, lam2, p.nu, p.wave_mass);
      auto g = [&](double s) -> double {
        const double tau = t - s;
        if (!(tau > 0.0)) return 0.0;
        auto hy = [&](double y) { return 2.0 * theta(w, y, s) * theta_dx(w, y, s); };
        const double inner = inner_integral(hy, x - lam * tau, mu * tau, lam2 * (s + 1.0), p.nu * (s + 1.0), ok);
        return std::pow(tau, -0.5) * inner;
      };
      return std::abs(outer_integral(g, t, p.range, s0, ok));
    }
    case Lemma::B5:
    case Lemma::B6: {
      auto g = [&](double s) -> double {
        const double tau = t - s;
        if (!(tau > 0.0)) return 0.0;
        auto ps = [&](double y) { return psi32(y, s, lam2); };
        const double inner = inner_integral(ps, x - lam * tau, mu * tau, lam2 * (s + 1.0), 0.0, ok);
        return weight(s) * std::pow(s + 1.0, -0.5 * b) * inner;
      };
      return outer_integral(g, t, p.range, s0, ok);
    }
    case Lemma::B7: {
      std::vector<double> pts{0.0, t};
      const double sc = lam != 0.0 ? x / lam - 1.0 : -1.0;
      if (sc > 0.0 && sc < t) pts.push_back(sc);
      const double sl = t - 40.0 * mu;
      if (sl > 0.0) pts.push_back(sl);
      std::sort(pts.begin(), pts.end());
      const QuadResult r = integrate(
          [&](double s) { return std::exp(-(t - s) / mu) * std::pow(s + 1.0, -0.25) * psi32(x, s, lam); }, pts,
          outer_opts());
      ok = ok && r.converged;
      return r.value;
    }
  }
  return 0.0;
}

std::vector<double> x_range(Lemma id, const LemmaParams& p, const SampleGrid& g, double t) {
  const double T = t + 1.0, lam2 = two_speeds(id) ? p.lambda2 : p.lambda;
  const double w = g.spread * std::sqrt(p.mu * T);
  const double lo = std::min(p.lambda, lam2) * T - w, hi = std::max(p.lambda, lam2) * T + w;
  std::vector<double> xs(g.nx);
  for (int k = 0; k < g.nx; ++k) xs[k] = g.nx == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * k / (g.nx - 1);
  return xs;
}

std::vector<double> t_range(const SampleGrid& g) {
  if (!(g.t_min > 0.0) || !(g.t_max >= g.t_min) || g.nt < 1 || g.nx < 1)
    throw std::invalid_argument("lemma sample grid: need 0 < t_min <= t_max and nt, nx >= 1");
  std::vector<double> ts(g.nt);
  for (int k = 0; k < g.nt; ++k)
    ts[k] = g.nt == 1 ? g.t_min : g.t_min * std::pow(g.t_max / g.t_min, double(k) / (g.nt - 1));
  return ts;
}

}  // namespace

LemmaSample lemma_sample(Lemma id, const LemmaParams& p, double x, double t) {
  check_params(id, p);
  if (!(t > 0.0)) throw std::invalid_argument("lemma: t must be positive");
  LemmaSample s;
  s.x = x;
  s.t = t;
  s.lhs = lhs(id, p, x, t, s.converged);
  s.rhs = rhs(id, p, x, t);
  return s;
}

LemmaResult sample_lemma(Lemma id, const LemmaParams& p, const SampleGrid& g, int threads) {
  check_params(id, p);
  const std::vector<double> ts = t_range(g);
  std::vector<LemmaSample> out(ts.size() * g.nx);
  for (size_t i = 0; i < ts.size(); ++i) {
    const auto xs = x_range(id, p, g, ts[i]);
    for (int k = 0; k < g.nx; ++k) out[i * g.nx + k] = LemmaSample{xs[k], ts[i], 0.0, 0.0, true};
  }
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (size_t k; (k = next.fetch_add(1)) < out.size();) out[k] = lemma_sample(id, p, out[k].x, out[k].t);
  };
  const int nth = std::max(1, threads);
  std::vector<std::thread> pool;
  for (int k = 1; k < nth; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  LemmaResult r;
  r.id = id;
  r.t_values = ts;
  r.per_t.assign(ts.size(), 0.0);
  for (size_t k = 0; k < out.size(); ++k) {
    const LemmaSample& s = out[k];
    if (!s.converged) ++r.failures;
    if (!(s.rhs > 0.0)) continue;
    const double q = s.lhs / s.rhs;
    const size_t i = k / g.nx;
    r.per_t[i] = std::max(r.per_t[i], q);
    if (q > r.constant) {
      r.constant = q;
      r.x = s.x;
      r.t = s.t;
    }
  }
  r.samples = std::move(out);
  return r;
}

LemmaStability lemma_stability(Lemma id, const LemmaParams& p, const SampleGrid& g, int threads, double tol) {
  LemmaStability st;
  st.coarse = sample_lemma(id, p, g, threads);
  st.fine = sample_lemma(id, p, g.doubled(), threads);
  st.change = st.coarse.constant > 0.0 ? std::abs(st.fine.constant / st.coarse.constant - 1.0) : 0.0;
  st.stable = st.coarse.constant > 0.0 && std::isfinite(st.fine.constant) && st.change <= tol &&
              st.coarse.failures == 0 && st.fine.failures == 0;
  return st;
}

double lemma_growth(const LemmaResult& r) {
  if (r.per_t.size() < 2) return 1.0;
  const double mid = r.per_t[r.per_t.size() / 2];
  return mid > 0.0 ? r.per_t.back() / mid : 0.0;
}

HypothesisCheck lemma_b4_hypotheses(const LemmaParams& p, const SampleGrid& g) {
  check_params(Lemma::B4, p);
  const DiffusionWave w(1, p.lambda2, p.nu, p.wave_mass);
  HypothesisCheck hc;
  auto h = [&](double x, double t) {
    const double v = theta(w, x, t);
    return v * v;
  };
  for (double t : t_range(g)) {
    const double T = t + 1.0, d = 1e-3 * std::sqrt(T);
    const double wdt = 4.0 * std::sqrt(p.nu * T);
    for (int k = 0; k < g.nx; ++k) {
      const double x = p.lambda2 * T - g.spread * wdt + 2.0 * g.spread * wdt * k / std::max(1, g.nx - 1);
      const double h0 = h(x, t);
      const double ht = (h(x, t + d) - h(x, t - d)) / (2.0 * d);
      const double hx = (h(x + d, t) - h(x - d, t)) / (2.0 * d);
      const double hxx = (h(x + d, t) - 2.0 * h0 + h(x - d, t)) / (d * d);
      const double Lh = ht + p.lambda2 * hx - 0.25 * p.mu * hxx;
      const double th = theta(w, x, t);
      const double dF = -2.0 * th * th * theta_dx(w, x, t);
      hc.h_ratio = std::max(hc.h_ratio, h0 / theta_alpha(x, t, p.lambda2, p.nu, 2.0));
      hc.residual_ratio = std::max(hc.residual_ratio, std::abs(Lh - dF) / theta_alpha(x, t, p.lambda2, p.nu, 4.0));
    }
  }
  return hc;
}

}  // namespace pointmass
