// Finite-difference solver for the nonlinear perturbation system with the
// point-mass interface, on a truncated domain [-L, L].
//
// Each half-line is stored in the outward coordinate s = |x|; on the left the
// velocity is mirrored (w = -u) so both halves obey the same equations
//   tau_t = w_s,  w_t = sigma_s,  sigma = -(p(1+tau) - p(1)) + nu w_s/(1+tau),
// with w(0) = +V on the right and -V on the left. tau lives at cell centres,
// velocities at nodes. The particle carries the two adjacent half cells:
//   (m + h) V' = sigma_R(h/2) - sigma_L(h/2).
// Time stepping is the implicit midpoint rule with a discrete-gradient
// pressure, solved by a frozen-Jacobian Newton iteration.
#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pointmass/greenfn.hpp"
#include "pointmass/model.hpp"

namespace pointmass {

enum class Mode { Nonlinear, Linear };

struct GridSpec {
  double L = 0.0;
  Eigen::Index N = 0;
  double dt = 0.0;
  double t_final = 0.0;

  double h() const { return L / static_cast<double>(N); }

  /// dt = 1/ceil(1/dt_cfl) with dt_cfl = cfl h / c, so integer times are hit exactly.
  static GridSpec make(double L, Eigen::Index N, double t_final, double c, double cfl = 0.4);

  /// Throws std::invalid_argument naming the violated condition.
  /// The truncation test is L >= c t_final + sigma sqrt(nu t_final).
  void validate(double c, double nu, double truncation_sigma = 10.0, double cfl = 0.4) const;
};

struct SolverParams {
  PressureLaw law = PressureLaw::gamma_law(1.4);
  double nu = 1.0;
  double mass = 1.0;
  Mode mode = Mode::Nonlinear;
  double newton_tol = 1e-13;
  int max_iterations = 30;
};

struct FluidState {
  double h = 0.0;
  Eigen::VectorXd tau_r, tau_l;  // cells 0..N-1, centre (j + 1/2) h
  Eigen::VectorXd u_r, w_l;      // nodes 0..N; u_r(0) = V, w_l(0) = -V, ends 0
  double V = 0.0;
  double h_disp = 0.0;           // particle displacement
  double t = 0.0;
  double dissipation = 0.0;      // accumulated 2 nu int int u_x^2/(1+tau)

  Eigen::Index cells() const { return tau_r.size(); }
  /// Node values on both half-lines in physical variables; tau is averaged
  /// to nodes and extrapolated at the ends.
  Field tau_nodes() const;
  Field u_nodes() const;
};

struct ConservationLedger {
  double mass = 0.0;
  double momentum = 0.0;
  double energy = 0.0;
  double dissipation = 0.0;
  double energy_plus_dissipation() const { return energy + dissipation; }
};

struct StepInfo {
  int iterations = 0;
  double last_increment = 0.0;
};

class Solver {
 public:
  Solver(SolverParams params, double L, Eigen::Index N);

  const SolverParams& params() const { return p_; }
  double h() const { return h_; }
  Eigen::Index cells() const { return N_; }

  /// tau sampled at cell centres, u at nodes with u(+-0) = V0.
  FluidState initial_state(const InitialProfile& init, double h0 = 0.0) const;

  /// Advances by dt. Throws std::runtime_error on positivity loss, NaN or
  /// Newton failure; the state is left unchanged in that case.
  StepInfo step(FluidState& s, double dt) const;

  ConservationLedger ledger(const FluidState& s) const;

  /// Stress -(p(1+tau)-p(1)) in the active mode.
  double pressure_excess(double tau) const;
  double potential(double tau) const;

 private:
  SolverParams p_;
  double h_;
  Eigen::Index N_;
  double c2_;
};

struct Snapshot {
  double t = 0.0;
  Eigen::VectorXd x, tau, u;  // nodes from -L to L; both -0 and +0 present
};

Snapshot make_snapshot(const FluidState& s);

struct SeriesRow {
  double t, V, u_inf, mass, momentum, energy_plus_dissipation;
};

struct RunSpec {
  SolverParams solver;
  GridSpec grid;
  InitialProfile init;
  std::vector<double> snapshot_times;  // added to the geometric schedule 1, 2, 4, ...
  bool geometric_snapshots = true;
  int stride = 1;
  std::string out_dir;                 // empty: keep everything in memory only
  bool keep_snapshots = true;
};

struct RunResult {
  std::vector<SeriesRow> series;
  std::vector<Snapshot> snapshots;
  FluidState final_state;
  ConservationLedger initial, final;
  long steps = 0;
  int max_iterations = 0;
};

RunResult run(const RunSpec& spec);

struct EulerianProfile {
  Eigen::VectorXd X, rho, U;  // at the snapshot nodes, left to right
  double h = 0.0;
};

/// X(x) = h + int_0^x (1 + tau) on each side; rho = 1/(1 + tau); U(X(x)) = u(x).
EulerianProfile lagrangian_to_eulerian(const FluidState& s);

}  // namespace pointmass
