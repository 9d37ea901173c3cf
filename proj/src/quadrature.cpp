#include "pointmass/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace pointmass {

namespace {

constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  int piece;
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

// QUADPACK qk15 on [a, b].
void qk15(const Integrand& f, double a, double b, double& value, double& error) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double rk = fc * kWgk[7];
  double rg = fc * kWg[3];
  double fv1[7], fv2[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    fv1[j] = f(c - dx);
    fv2[j] = f(c + dx);
    rk += kWgk[j] * (fv1[j] + fv2[j]);
    if (j % 2 == 1) rg += kWg[j / 2] * (fv1[j] + fv2[j]);
  }
  const double mean = 0.5 * rk;
  double asc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) asc += kWgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));
  asc *= std::abs(h);
  value = rk * h;
  error = std::abs((rk - rg) * h);
  if (asc != 0.0 && error != 0.0) error = asc * std::min(1.0, std::pow(200.0 * error / asc, 1.5));
  if (!std::isfinite(value)) error = std::numeric_limits<double>::infinity();
}

}  // namespace

QuadResult integrate(const Integrand& f, double a, double b, const QuadOptions& opt) {
  return integrate(f, std::vector<double>{a, b}, opt);
}

QuadResult integrate(const Integrand& f, std::vector<double> points, const QuadOptions& opt) {
  if (points.size() < 2) throw std::invalid_argument("integrate: need at least two points");
  double sign = 1.0;
  if (points.front() > points.back()) {
    std::reverse(points.begin(), points.end());
    sign = -1.0;
  }
  if (!std::is_sorted(points.begin(), points.end())) throw std::invalid_argument("integrate: unsorted breakpoints");
  if (std::isinf(points.front()) && std::isinf(points.back()) && points.size() == 2) points.insert(points.begin() + 1, 0.0);

  // Each piece becomes a function on a finite interval.
  std::vector<Integrand> pieces;
  std::vector<std::pair<double, double>> spans;
  for (std::size_t k = 0; k + 1 < points.size(); ++k) {
    const double lo = points[k], hi = points[k + 1];
    if (lo == hi) continue;
    if (std::isinf(lo) && std::isinf(hi)) throw std::invalid_argument("integrate: bad breakpoints");
    if (std::isinf(hi)) {
      pieces.emplace_back([&f, lo](double s) { return f(lo + (1.0 - s) / s) / (s * s); });
      spans.emplace_back(0.0, 1.0);
    } else if (std::isinf(lo)) {
      pieces.emplace_back([&f, hi](double s) { return f(hi - (1.0 - s) / s) / (s * s); });
      spans.emplace_back(0.0, 1.0);
    } else {
      pieces.emplace_back([&f](double x) { return f(x); });
      spans.emplace_back(lo, hi);
    }
  }

  QuadResult res;
  std::priority_queue<Segment> queue;
  double total = 0.0, total_err = 0.0;
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    Segment s{static_cast<int>(k), spans[k].first, spans[k].second, 0.0, 0.0};
    qk15(pieces[k], s.a, s.b, s.value, s.error);
    total += s.value;
    total_err += s.error;
    queue.push(s);
  }
  res.intervals = static_cast<int>(queue.size());
  while (total_err > std::max(opt.abs_tol, opt.rel_tol * std::abs(total)) && res.intervals < opt.max_intervals) {
    Segment s = queue.top();
    queue.pop();
    const double mid = 0.5 * (s.a + s.b);
    if (!(mid > s.a && mid < s.b)) {  // interval exhausted at machine resolution
      queue.push(s);
      break;
    }
    Segment l{s.piece, s.a, mid, 0.0, 0.0}, r{s.piece, mid, s.b, 0.0, 0.0};
    qk15(pieces[s.piece], l.a, l.b, l.value, l.error);
    qk15(pieces[s.piece], r.a, r.b, r.value, r.error);
    total += l.value + r.value - s.value;
    total_err += l.error + r.error - s.error;
    queue.push(l);
    queue.push(r);
    ++res.intervals;
  }
  // Re-sum to shed accumulated update round-off.
  total = 0.0;
  total_err = 0.0;
  while (!queue.empty()) {
    total += queue.top().value;
    total_err += queue.top().error;
    queue.pop();
  }
  res.value = sign * total;
  res.error = total_err;
  res.converged = std::isfinite(total) && total_err <= std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
  return res;
}

}  // namespace pointmass
