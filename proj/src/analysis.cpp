#include "pointmass/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace pointmass {

double psi_alpha(double x, double t, double lambda, double alpha) {
  const double T = t + 1.0, d = x - lambda * T;
  return std::pow(d * d + T, -0.5 * alpha);
}

double psi32(double x, double t, double lambda) { return psi_alpha(x, t, lambda, 1.5); }

double psi_tilde(double x, double t, double lambda) {
  const double T = t + 1.0, d = std::abs(x - lambda * T);
  return 1.0 / std::sqrt(d * d * d + T * T);
}

double Psi(int branch, double x, double t, const CharSystemd& cs) {
  if (branch != 1 && branch != 2) throw std::invalid_argument("Psi: branch must be 1 or 2");
  const double li = cs.lambda[branch - 1], lo = cs.lambda[2 - branch];
  return psi32(x, t, li) + psi_tilde(x, t, lo);
}

double theta_alpha(double x, double t, double lambda, double mu, double alpha) {
  const double T = t + 1.0, d = x - lambda * T;
  return std::pow(T, -0.5 * alpha) * std::exp(-d * d / (mu * T));
}

WeightEval weights(int branch, double x, double t, const CharSystemd& cs, double alpha, double mu) {
  const double li = cs.lambda[branch - 1], lo = cs.lambda[2 - branch];
  WeightEval w;
  w.psi32 = psi32(x, t, li);
  w.psitilde = psi_tilde(x, t, lo);
  w.Psi = w.psi32 + w.psitilde;
  w.theta_alpha = theta_alpha(x, t, li, mu, alpha);
  return w;
}

std::string to_string(FitVerdict v) {
  switch (v) {
    case FitVerdict::Ok: return "ok";
    case FitVerdict::PoorFit: return "poor fit";
    case FitVerdict::NullSignal: return "null signal";
    case FitVerdict::TooFewSamples: return "too few samples";
  }
  return "?";
}

DecayFit fit_decay(const std::vector<double>& t, const std::vector<double>& y, const FitOptions& opt) {
  if (t.size() != y.size()) throw std::invalid_argument("fit_decay: t and y differ in length");
  DecayFit fit;
  fit.t_lo = opt.t_lo;
  fit.t_hi = opt.t_hi > 0.0 ? opt.t_hi : (t.empty() ? 0.0 : t.back());
  std::vector<size_t> live;
  bool any_in_window = false;
  for (size_t k = 0; k < t.size(); ++k) {
    if (t[k] < fit.t_lo || t[k] > fit.t_hi) continue;
    any_in_window = true;
    if (std::abs(y[k]) > opt.null_level && std::isfinite(y[k])) live.push_back(k);
  }
  if (any_in_window && live.empty()) {
    fit.verdict = FitVerdict::NullSignal;
    return fit;
  }
  if (live.empty()) return fit;

  // Nearest live sample to each geometric target, without repeats.
  const double a = std::log(fit.t_lo + 1.0), b = std::log(fit.t_hi + 1.0);
  std::vector<size_t> pick;
  for (int k = 0; k < opt.targets; ++k) {
    const double target = std::exp(a + (b - a) * k / std::max(1, opt.targets - 1)) - 1.0;
    auto it = std::lower_bound(live.begin(), live.end(), target, [&](size_t i, double v) { return t[i] < v; });
    size_t best;
    if (it == live.end()) best = live.back();
    else if (it == live.begin()) best = *it;
    else best = (t[*it] - target < target - t[*(it - 1)]) ? *it : *(it - 1);
    if (pick.empty() || pick.back() != best) pick.push_back(best);
  }
  std::sort(pick.begin(), pick.end());
  pick.erase(std::unique(pick.begin(), pick.end()), pick.end());
  fit.samples = static_cast<int>(pick.size());
  if (fit.samples < opt.min_samples) return fit;

  const int n = fit.samples;
  Eigen::MatrixXd X(n, 2);
  Eigen::VectorXd Y(n);
  for (int k = 0; k < n; ++k) {
    X(k, 0) = 1.0;
    X(k, 1) = std::log(t[pick[k]] + 1.0);
    Y(k) = std::log(std::abs(y[pick[k]]));
  }
  const Eigen::Vector2d beta = X.colPivHouseholderQr().solve(Y);
  const Eigen::VectorXd res = Y - X * beta;
  const double ss_res = res.squaredNorm();
  const double ss_tot = (Y.array() - Y.mean()).square().sum();
  fit.alpha = -beta(1);
  fit.intercept = beta(0);
  fit.rms = std::sqrt(ss_res / n);
  fit.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : (ss_res == 0.0 ? 1.0 : 0.0);
  fit.verdict = fit.r2 >= opt.min_r2 ? FitVerdict::Ok : FitVerdict::PoorFit;
  return fit;
}

namespace {

// Fornberg weights for derivatives 0..m at z on nodes x.
Eigen::MatrixXd fornberg(double z, const Eigen::VectorXd& x, int m) {
  const int n = static_cast<int>(x.size());
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, m + 1);
  double c1 = 1.0, c4 = x(0) - z;
  c(0, 0) = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x(i) - z;
    for (int j = 0; j < i; ++j) {
      const double c3 = x(i) - x(j);
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c(i, k) = c1 * (k * c(i - 1, k - 1) - c5 * c(i - 1, k)) / c2;
        c(i, 0) = -c1 * c5 * c(i - 1, 0) / c2;
      }
      for (int k = mn; k >= 1; --k) c(j, k) = (c4 * c(j, k) - k * c(j, k - 1)) / c3;
      c(j, 0) = c4 * c(j, 0) / c3;
    }
    c1 = c2;
  }
  return c;
}

// Cumulative trapezoid from the far end: out(j) = int_{j h}^{N h} f.
Eigen::VectorXd tail_integral(const Eigen::VectorXd& f, double h) {
  const Eigen::Index n = f.size();
  Eigen::VectorXd out(n);
  out(n - 1) = 0.0;
  for (Eigen::Index j = n - 2; j >= 0; --j) out(j) = out(j + 1) + 0.5 * h * (f(j) + f(j + 1));
  return out;
}

}  // namespace

double sobolev_norm(const Eigen::VectorXd& f, double h, int k) {
  constexpr int S = 9;
  if (k < 0 || k > 4) throw std::invalid_argument("sobolev_norm: order must be in 0..4");
  const Eigen::Index n = f.size();
  if (n < S) throw std::invalid_argument("sobolev_norm: need at least 9 samples");
  Eigen::VectorXd nodes(S);
  for (int i = 0; i < S; ++i) nodes(i) = i * h;
  std::array<Eigen::MatrixXd, S> w;
  for (int p = 0; p < S; ++p) w[p] = fornberg(p * h, nodes, k);
  Eigen::MatrixXd sq = Eigen::MatrixXd::Zero(n, k + 1);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::Index start = std::clamp<Eigen::Index>(j - S / 2, 0, n - S);
    const int p = static_cast<int>(j - start);
    for (int d = 0; d <= k; ++d) {
      const double v = w[p].col(d).dot(f.segment(start, S));
      sq(j, d) = v * v;
    }
  }
  double total = 0.0;
  for (int d = 0; d <= k; ++d) total += simpson(sq.col(d), h);
  return std::sqrt(total);
}

DeltaParts delta_norm(const Field& tau0, const Field& u0, const CharSystemd& cs) {
  if (!tau0.same_grid(u0)) throw std::invalid_argument("delta_norm: tau0 and u0 on different grids");
  const double h = tau0.h;
  DeltaParts d;
  auto h4 = [h](const Field& f) {
    const double r = sobolev_norm(f.right, h), l = sobolev_norm(f.left, h);
    return std::sqrt(r * r + l * l);
  };
  d.eps = h4(tau0) + h4(u0);
  const auto [u1, u2] = diagonal_components(tau0, u0, cs);
  for (const Field* ui : {&u1, &u2}) {
    // left(j) sits at x = -j h, so the tail from -inf is a tail integral in j.
    const Eigen::VectorXd um = tail_integral(ui->left, h);
    const Eigen::VectorXd up = tail_integral(ui->right, h);
    d.l1 += simpson(um.cwiseAbs(), h) + simpson(up.cwiseAbs(), h);
    double sw = 0.0, st = 0.0;
    for (Eigen::Index j = 0; j < ui->nodes(); ++j) {
      const double r = j * h + 1.0;
      sw = std::max({sw, std::pow(r, 1.5) * std::abs(ui->right(j)), std::pow(r, 1.5) * std::abs(ui->left(j))});
      st = std::max(st, r * (std::abs(um(j)) + std::abs(up(j))));
    }
    d.sup_weighted += sw;
    d.sup_tails += st;
  }
  d.delta = d.eps + d.l1 + d.sup_weighted + d.sup_tails;
  return d;
}

BoundRatio bound_ratio(const std::vector<Snapshot>& snaps, const std::array<DiffusionWave, 2>& waves,
                       const CharSystemd& cs, double delta) {
  BoundRatio br;
  for (const Snapshot& s : snaps) {
    if (s.x.size() != s.tau.size() || s.x.size() != s.u.size())
      throw std::invalid_argument("bound_ratio: snapshot arrays differ in length");
    if (!snaps.empty() && s.x.size() != snaps.front().x.size())
      throw std::invalid_argument("bound_ratio: snapshots on different grids");
    if (!(s.t > 0.0)) continue;
    double best = 0.0;
    for (Eigen::Index k = 0; k < s.x.size(); ++k) {
      const double x = s.x(k);
      const Eigen::Vector2d w(s.tau(k), s.u(k));
      for (int i = 1; i <= 2; ++i) {
        const double v = cs.l[i - 1].dot(w) - theta(waves[i - 1], x, s.t);
        if (v == 0.0) continue;
        if (delta <= 0.0) throw std::invalid_argument("bound_ratio: delta = 0 with nonzero data");
        const double r = std::abs(v) / (delta * Psi(i, x, s.t, cs));
        if (r > best) best = r;
        if (r > br.ratio) {
          br.ratio = r;
          br.x = x;
          br.t = s.t;
          br.branch = i;
        }
      }
    }
    br.times.push_back(s.t);
    br.per_snapshot.push_back(best);
  }
  return br;
}

InterfaceReport interface_decay_check(const std::vector<SeriesRow>& series, const InterfaceOptions& opt) {
  InterfaceReport rep;
  if (series.size() < 2) throw std::invalid_argument("interface_decay_check: series too short");
  std::vector<double> t, V, U;
  for (const auto& r : series) {
    t.push_back(r.t);
    V.push_back(r.V);
    U.push_back(r.u_inf);
  }
  FitOptions fo;
  fo.t_lo = opt.t_lo;
  rep.fit_V = fit_decay(t, V, fo);
  rep.fit_uinf = fit_decay(t, U, fo);
  if (rep.fit_V.verdict == FitVerdict::NullSignal) {
    rep.verdict = "null signal";
    return rep;
  }
  rep.exponent_ok = rep.fit_V.claimed() && rep.fit_V.alpha >= opt.alpha_lo && rep.fit_V.alpha <= opt.alpha_hi;

  // Running integral of |V| by trapezoids, read off at dyadic times.
  const double tf = t.back();
  std::vector<double> T;
  for (double s = tf; s >= 1.0; s *= 0.5) T.push_back(s);
  std::reverse(T.begin(), T.end());
  double acc = 0.0;
  size_t k = 1, q = 0;
  for (; q < T.size() && T[q] <= t.front(); ++q) rep.partial_int.push_back(0.0);
  for (; k < t.size() && q < T.size(); ++k) {
    const double seg = 0.5 * (t[k] - t[k - 1]) * (std::abs(V[k]) + std::abs(V[k - 1]));
    while (q < T.size() && T[q] <= t[k]) {
      const double frac = (T[q] - t[k - 1]) / (t[k] - t[k - 1]);
      rep.partial_int.push_back(acc + seg * frac);
      ++q;
    }
    acc += seg;
  }
  while (rep.partial_int.size() < T.size()) rep.partial_int.push_back(acc);
  rep.dyadic_times = T;
  const size_t n = T.size();
  if (n >= 3) {
    const double last = rep.partial_int[n - 1] - rep.partial_int[n - 2];
    const double prev = rep.partial_int[n - 2] - rep.partial_int[n - 3];
    rep.increment_ratio = prev > 0.0 ? last / prev : 0.0;
    rep.travel_converges = rep.increment_ratio <= opt.max_increment_ratio;
  }
  rep.verdict = rep.exponent_ok && rep.travel_converges ? "pass" : "fail";
  return rep;
}

}  // namespace pointmass
