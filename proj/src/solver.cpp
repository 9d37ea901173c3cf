#include "pointmass/solver.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "pointmass/series_io.hpp"

namespace pointmass {

GridSpec GridSpec::make(double L, Eigen::Index N, double t_final, double c, double cfl) {
  if (!(L > 0.0) || N < 4) throw std::invalid_argument("grid: need L > 0 and N >= 4");
  if (!(c > 0.0) || !(cfl > 0.0)) throw std::invalid_argument("grid: need c > 0 and cfl > 0");
  GridSpec g;
  g.L = L;
  g.N = N;
  g.t_final = t_final;
  const double dt_cfl = cfl * g.h() / c;
  g.dt = 1.0 / std::ceil(1.0 / dt_cfl);
  return g;
}

void GridSpec::validate(double c, double nu, double truncation_sigma, double cfl) const {
  std::ostringstream os;
  if (!(L > 0.0)) os << "grid: L must be positive; ";
  if (N < 4) os << "grid: N must be at least 4; ";
  if (!(t_final > 0.0)) os << "grid: t_final must be positive; ";
  if (!(dt > 0.0)) os << "grid: dt must be positive; ";
  if (os.str().empty()) {
    const double need = c * t_final + truncation_sigma * std::sqrt(nu * t_final);
    if (L < need)
      os << "grid: truncation inequality L >= c t_final + " << truncation_sigma << " sqrt(nu t_final) violated (L = "
         << L << ", need " << need << "); ";
    if (dt > cfl * h() / c * (1.0 + 1e-12))
      os << "grid: CFL condition dt <= " << cfl << " h / c violated (dt = " << dt << ", limit " << cfl * h() / c
         << "); ";
  }
  if (!os.str().empty()) {
    std::string msg = os.str();
    msg.resize(msg.size() - 2);
    throw std::invalid_argument(msg);
  }
}

Field FluidState::tau_nodes() const {
  const Eigen::Index N = cells();
  Field f(h, N + 1);
  auto fill = [N](const Eigen::VectorXd& tc, Eigen::VectorXd& out) {
    out(0) = 1.5 * tc(0) - 0.5 * tc(1);
    for (Eigen::Index j = 1; j < N; ++j) out(j) = 0.5 * (tc(j - 1) + tc(j));
    out(N) = 1.5 * tc(N - 1) - 0.5 * tc(N - 2);
  };
  fill(tau_r, f.right);
  fill(tau_l, f.left);
  return f;
}

Field FluidState::u_nodes() const {
  Field f(h, cells() + 1);
  f.right = u_r;
  f.left = -w_l;
  return f;
}

Solver::Solver(SolverParams params, double L, Eigen::Index N) : p_(std::move(params)), N_(N) {
  if (!(L > 0.0) || N < 4) throw std::invalid_argument("solver: need L > 0 and N >= 4");
  if (!(p_.nu > 0.0)) throw std::invalid_argument("solver: viscosity must be positive");
  if (!(p_.mass > 0.0)) throw std::invalid_argument("solver: particle mass must be positive");
  h_ = L / static_cast<double>(N);
  c2_ = -p_.law.d1();
}

double Solver::pressure_excess(double tau) const {
  return p_.mode == Mode::Linear ? -c2_ * tau : p_.law.excess(tau);
}

double Solver::potential(double tau) const {
  return p_.mode == Mode::Linear ? 0.5 * c2_ * tau * tau : p_.law.potential(tau);
}

FluidState Solver::initial_state(const InitialProfile& init, double h0) const {
  FluidState s;
  s.h = h_;
  s.tau_r.resize(N_);
  s.tau_l.resize(N_);
  s.u_r.resize(N_ + 1);
  s.w_l.resize(N_ + 1);
  for (Eigen::Index j = 0; j < N_; ++j) {
    const double x = (j + 0.5) * h_;
    s.tau_r(j) = init.tau0(x);
    s.tau_l(j) = init.tau0(-x);
  }
  for (Eigen::Index j = 1; j < N_; ++j) {
    s.u_r(j) = init.u0(j * h_);
    s.w_l(j) = -init.u0(-(j * h_));
  }
  s.V = init.V0;
  s.u_r(0) = init.V0;
  s.w_l(0) = -init.V0;
  s.u_r(N_) = 0.0;
  s.w_l(N_) = 0.0;
  s.h_disp = h0;
  for (Eigen::Index j = 0; j < N_; ++j) {
    if (!(1.0 + s.tau_r(j) > 0.0) || !(1.0 + s.tau_l(j) > 0.0))
      throw std::invalid_argument("initial state violates 1 + tau > 0");
  }
  return s;
}

namespace {

const double kGLa = 0.5 - 0.5 / std::sqrt(3.0);
const double kGLb = 0.5 + 0.5 / std::sqrt(3.0);

// One half-line during a step.
struct Side {
  const Eigen::VectorXd* tau = nullptr;  // old cells
  const Eigen::VectorXd* u = nullptr;    // old nodes
  Eigen::VectorXd un;                    // candidate nodes
  Eigen::VectorXd a;                     // frozen d sigma_c / d ubar_{c+1}
  Eigen::VectorXd cp, dinv;              // Thomas factors for nodes 1..N-1
  Eigen::VectorXd z;                     // response to a unit boundary increment
  Eigen::VectorXd du, tau_new, kappa, sigma;
  Eigen::VectorXd F, y;
};

}  // namespace

StepInfo Solver::step(FluidState& s, double dt) const {
  if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
  const Eigen::Index N = N_;
  const double h = h_, nu = p_.nu, m = p_.mass;
  const bool linear = p_.mode == Mode::Linear;
  const double r = dt / (2.0 * h);

  Side R, L;
  R.tau = &s.tau_r;
  R.u = &s.u_r;
  L.tau = &s.tau_l;
  L.u = &s.w_l;

  for (Side* sd : {&R, &L}) {
    Side& S = *sd;
    S.un = *S.u;
    S.a.resize(N);
    for (Eigen::Index c = 0; c < N; ++c) {
      const double t = (*S.tau)(c);
      const double dp = linear ? -c2_ : p_.law.derivative(1.0 + t);
      const double kap = linear ? 1.0 : 1.0 / (1.0 + t);
      S.a(c) = (-0.5 * dp * dt + nu * kap) / h;
    }
    // Tridiagonal matrix on nodes 1..N-1: sub -r a_{j-1}, diag 1 + r (a_j + a_{j-1}), super -r a_j.
    const Eigen::Index n = N - 1;
    S.cp.resize(n);
    S.dinv.resize(n);
    for (Eigen::Index k = 0; k < n; ++k) {
      const Eigen::Index j = k + 1;
      const double diag = 1.0 + r * (S.a(j) + S.a(j - 1));
      const double sub = k > 0 ? -r * S.a(j - 1) : 0.0;
      const double den = diag - (k > 0 ? sub * S.cp(k - 1) : 0.0);
      S.dinv(k) = 1.0 / den;
      S.cp(k) = k + 1 < n ? -r * S.a(j) * S.dinv(k) : 0.0;
    }
    S.du.resize(N);
    S.tau_new.resize(N);
    S.kappa.resize(N);
    S.sigma.resize(N);
    S.F.resize(n);
    S.y.resize(n);
  }

  auto solve = [&](const Side& S, const Eigen::VectorXd& rhs, Eigen::VectorXd& out) {
    const Eigen::Index n = N - 1;
    out.resize(n);
    for (Eigen::Index k = 0; k < n; ++k) {
      const double sub = k > 0 ? -r * S.a(k) : 0.0;
      out(k) = (rhs(k) - (k > 0 ? sub * out(k - 1) : 0.0)) * S.dinv(k);
    }
    for (Eigen::Index k = n - 2; k >= 0; --k) out(k) -= S.cp(k) * out(k + 1);
  };

  for (Side* sd : {&R, &L}) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(N - 1);
    e(0) = r * sd->a(0);
    solve(*sd, e, sd->z);
  }

  // Stresses for the current candidate; returns false on positivity loss.
  auto stresses = [&](Side& S, const char* name) {
    for (Eigen::Index c = 0; c < N; ++c) {
      const double ub1 = 0.5 * ((*S.u)(c + 1) + S.un(c + 1));
      const double ub0 = 0.5 * ((*S.u)(c) + S.un(c));
      S.du(c) = (ub1 - ub0) / h;
      const double t0 = (*S.tau)(c);
      const double t1 = t0 + dt * S.du(c);
      if (!(1.0 + t1 > 0.0)) {
        std::ostringstream os;
        os << "positivity lost: 1 + tau <= 0 in " << name << " cell " << c << " at t = " << s.t + dt;
        throw std::runtime_error(os.str());
      }
      S.tau_new(c) = t1;
      double pbar, kap;
      if (linear) {
        pbar = -c2_ * 0.5 * (t0 + t1);
        kap = 1.0;
      } else {
        pbar = 0.5 * (p_.law.excess(t0 + kGLa * (t1 - t0)) + p_.law.excess(t0 + kGLb * (t1 - t0)));
        kap = 1.0 / (1.0 + 0.5 * (t0 + t1));
      }
      S.kappa(c) = kap;
      S.sigma(c) = -pbar + nu * kap * S.du(c);
    }
  };

  double V1 = s.V;
  StepInfo info;
  double scale = std::max({s.u_r.cwiseAbs().maxCoeff(), s.w_l.cwiseAbs().maxCoeff(), std::abs(s.V)});
  for (int it = 1; it <= p_.max_iterations; ++it) {
    R.un(0) = V1;
    L.un(0) = -V1;
    stresses(R, "right");
    stresses(L, "left");
    for (Side* sd : {&R, &L}) {
      Side& S = *sd;
      for (Eigen::Index j = 1; j < N; ++j)
        S.F(j - 1) = S.un(j) - (*S.u)(j) - (dt / h) * (S.sigma(j) - S.sigma(j - 1));
      solve(S, -S.F, S.y);
    }
    const double GV = (m + h) * (V1 - s.V) - dt * (R.sigma(0) - L.sigma(0));
    const double num = -GV + 0.5 * dt * (R.a(0) * R.y(0) - L.a(0) * L.y(0));
    const double den = (m + h) + 0.5 * dt * (R.a(0) * (1.0 - R.z(0)) + L.a(0) * (1.0 - L.z(0)));
    const double dV = num / den;
    double inc = std::abs(dV);
    for (Eigen::Index k = 0; k < N - 1; ++k) {
      const double dr = R.y(k) + dV * R.z(k);
      const double dl = L.y(k) - dV * L.z(k);
      R.un(k + 1) += dr;
      L.un(k + 1) += dl;
      inc = std::max({inc, std::abs(dr), std::abs(dl)});
    }
    V1 += dV;
    if (!std::isfinite(inc)) throw std::runtime_error("step: non-finite Newton increment");
    info.iterations = it;
    info.last_increment = inc;
    scale = std::max({scale, R.un.cwiseAbs().maxCoeff(), L.un.cwiseAbs().maxCoeff()});
    if (inc <= p_.newton_tol * scale) break;
  }
  if (info.last_increment > 1e3 * p_.newton_tol * scale) {
    std::ostringstream os;
    os << "step: Newton iteration did not converge at t = " << s.t << " (increment " << info.last_increment << ")";
    throw std::runtime_error(os.str());
  }

  // Final stresses and the conservative update.
  R.un(0) = V1;
  L.un(0) = -V1;
  stresses(R, "right");
  stresses(L, "left");
  double diss = 0.0;
  for (Side* sd : {&R, &L}) {
    Side& S = *sd;
    for (Eigen::Index j = 1; j < N; ++j) S.un(j) = (*S.u)(j) + (dt / h) * (S.sigma(j) - S.sigma(j - 1));
    for (Eigen::Index c = 0; c < N; ++c) diss += S.kappa(c) * S.du(c) * S.du(c);
  }
  const double Vn = s.V + dt / (m + h) * (R.sigma(0) - L.sigma(0));
  if (!std::isfinite(Vn)) throw std::runtime_error("step: particle velocity became non-finite");
  R.un(0) = Vn;
  L.un(0) = -Vn;
  R.un(N) = 0.0;
  L.un(N) = 0.0;

  s.h_disp += 0.5 * dt * (s.V + Vn);
  s.tau_r = R.tau_new;
  s.tau_l = L.tau_new;
  s.u_r = R.un;
  s.w_l = L.un;
  s.V = Vn;
  s.dissipation += 2.0 * nu * dt * h * diss;
  s.t += dt;
  return info;
}

ConservationLedger Solver::ledger(const FluidState& s) const {
  ConservationLedger L;
  const double h = h_;
  const Eigen::Index N = N_;
  L.mass = h * (s.tau_r.sum() + s.tau_l.sum());
  const double ur = s.u_r.segment(1, N - 1).sum(), wl = s.w_l.segment(1, N - 1).sum();
  L.momentum = h * (ur - wl) + (p_.mass + h) * s.V;
  double pot = 0.0;
  for (Eigen::Index c = 0; c < N; ++c) pot += potential(s.tau_r(c)) + potential(s.tau_l(c));
  L.energy = 2.0 * h * pot + h * (s.u_r.segment(1, N - 1).squaredNorm() + s.w_l.segment(1, N - 1).squaredNorm()) +
             (p_.mass + h) * s.V * s.V;
  L.dissipation = s.dissipation;
  return L;
}

Snapshot make_snapshot(const FluidState& s) {
  const Eigen::Index N = s.cells();
  const Field tau = s.tau_nodes(), u = s.u_nodes();
  Snapshot snap;
  snap.t = s.t;
  snap.x.resize(2 * (N + 1));
  snap.tau.resize(2 * (N + 1));
  snap.u.resize(2 * (N + 1));
  Eigen::Index k = 0;
  for (Eigen::Index j = N; j >= 0; --j, ++k) {
    snap.x(k) = -(static_cast<double>(j) * s.h);
    snap.tau(k) = tau.left(j);
    snap.u(k) = u.left(j);
  }
  for (Eigen::Index j = 0; j <= N; ++j, ++k) {
    snap.x(k) = static_cast<double>(j) * s.h;
    snap.tau(k) = tau.right(j);
    snap.u(k) = u.right(j);
  }
  return snap;
}

EulerianProfile lagrangian_to_eulerian(const FluidState& s) {
  const Eigen::Index N = s.cells();
  const Field tau = s.tau_nodes(), u = s.u_nodes();
  Eigen::VectorXd Xr(N + 1), Xl(N + 1);
  Xr(0) = s.h_disp;
  Xl(0) = s.h_disp;
  for (Eigen::Index c = 0; c < N; ++c) {
    if (!(1.0 + s.tau_r(c) > 0.0) || !(1.0 + s.tau_l(c) > 0.0))
      throw std::invalid_argument("lagrangian_to_eulerian: 1 + tau <= 0");
    Xr(c + 1) = Xr(c) + s.h * (1.0 + s.tau_r(c));
    Xl(c + 1) = Xl(c) - s.h * (1.0 + s.tau_l(c));
  }
  EulerianProfile e;
  e.h = s.h_disp;
  e.X.resize(2 * (N + 1));
  e.rho.resize(2 * (N + 1));
  e.U.resize(2 * (N + 1));
  Eigen::Index k = 0;
  for (Eigen::Index j = N; j >= 0; --j, ++k) {
    e.X(k) = Xl(j);
    e.rho(k) = 1.0 / (1.0 + tau.left(j));
    e.U(k) = u.left(j);
  }
  for (Eigen::Index j = 0; j <= N; ++j, ++k) {
    e.X(k) = Xr(j);
    e.rho(k) = 1.0 / (1.0 + tau.right(j));
    e.U(k) = u.right(j);
  }
  return e;
}

RunResult run(const RunSpec& spec) {
  const GridSpec& g = spec.grid;
  if (!(g.dt > 0.0) || !(g.t_final > 0.0)) throw std::invalid_argument("run: need dt > 0 and t_final > 0");
  if (spec.stride < 1) throw std::invalid_argument("run: stride must be at least 1");
  const Solver solver(spec.solver, g.L, g.N);
  FluidState s = solver.initial_state(spec.init);

  std::set<double> events;
  events.insert(0.0);
  if (spec.geometric_snapshots)
    for (double t = 1.0; t <= g.t_final; t *= 2.0) events.insert(t);
  for (double t : spec.snapshot_times) {
    if (!(t >= 0.0) || t > g.t_final) throw std::invalid_argument("run: snapshot time outside [0, t_final]");
    events.insert(t);
  }
  events.insert(g.t_final);

  const bool to_disk = !spec.out_dir.empty();
  std::ofstream series_out;
  if (to_disk) {
    std::error_code ec;
    std::filesystem::create_directories(spec.out_dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory '" + spec.out_dir + "': " + ec.message());
    const std::string path = (std::filesystem::path(spec.out_dir) / "series.csv").string();
    series_out.open(path);
    if (!series_out) throw std::runtime_error("cannot open '" + path + "' for writing");
    series_out << kSeriesHeader << '\n';
  }

  RunResult res;
  res.initial = solver.ledger(s);
  auto record = [&]() {
    const ConservationLedger L = solver.ledger(s);
    const double uinf = std::max(s.u_r.cwiseAbs().maxCoeff(), s.w_l.cwiseAbs().maxCoeff());
    const SeriesRow row{s.t, s.V, uinf, L.mass, L.momentum, L.energy_plus_dissipation()};
    res.series.push_back(row);
    if (to_disk) {
      write_series_row(series_out, row);
      if (!series_out) throw std::runtime_error("write failed for series.csv");
    }
  };
  auto snapshot = [&]() {
    const Snapshot snap = make_snapshot(s);
    if (to_disk) write_snapshot((std::filesystem::path(spec.out_dir) / snapshot_filename(s.t)).string(), snap);
    if (spec.keep_snapshots) res.snapshots.push_back(snap);
  };

  record();
  snapshot();
  auto next = events.upper_bound(s.t);
  long since = 0;
  while (next != events.end()) {
    const double target = *next;
    const double remaining = target - s.t;
    const bool hits = remaining <= g.dt * (1.0 + 1e-9);
    const StepInfo info = solver.step(s, hits ? remaining : g.dt);
    res.max_iterations = std::max(res.max_iterations, info.iterations);
    ++res.steps;
    ++since;
    if (hits) s.t = target;
    if (hits || since >= spec.stride) {
      record();
      since = 0;
    }
    if (hits) {
      snapshot();
      ++next;
    }
  }
  res.final = solver.ledger(s);
  res.final_state = std::move(s);
  return res;
}

}  // namespace pointmass
