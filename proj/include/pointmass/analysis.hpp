// Post-processing of runs: weight functions, decay fits, the pointwise
// bound ratio and numeric checks of the convolution estimates.
#pragma once

#include <array>
#include <string>
#include <vector>

#include "pointmass/model.hpp"
#include "pointmass/selfsim.hpp"
#include "pointmass/solver.hpp"

namespace pointmass {

// Weights. All take shifted time t+1.
double psi_alpha(double x, double t, double lambda, double alpha);
double psi32(double x, double t, double lambda);
double psi_tilde(double x, double t, double lambda);
/// Psi_i = psi32(.; lambda_i) + psi_tilde(.; lambda_{3-i}), branch i in {1, 2}.
double Psi(int branch, double x, double t, const CharSystemd& cs);
double theta_alpha(double x, double t, double lambda, double mu, double alpha);

struct WeightEval {
  double psi32 = 0.0;
  double psitilde = 0.0;
  double Psi = 0.0;
  double theta_alpha = 0.0;
};

/// psitilde is taken on the opposite characteristic, as inside Psi.
WeightEval weights(int branch, double x, double t, const CharSystemd& cs, double alpha, double mu);

enum class FitVerdict { Ok, PoorFit, NullSignal, TooFewSamples };
std::string to_string(FitVerdict v);

struct FitOptions {
  double t_lo = 50.0;
  double t_hi = -1.0;        // <= 0: end of the series
  int targets = 64;          // geometric resampling targets in the window
  int min_samples = 10;
  double min_r2 = 0.95;
  double null_level = 1e-14;  // |y| at or below this counts as zero
};

struct DecayFit {
  double alpha = 0.0;  // y ~ (t+1)^(-alpha)
  double intercept = 0.0;
  double r2 = 0.0;
  double rms = 0.0;
  int samples = 0;
  double t_lo = 0.0, t_hi = 0.0;
  FitVerdict verdict = FitVerdict::TooFewSamples;
  bool claimed() const { return verdict == FitVerdict::Ok; }
};

/// Least-squares slope of log|y| against log(t+1) on geometrically
/// resampled points of the window.
DecayFit fit_decay(const std::vector<double>& t, const std::vector<double>& y, const FitOptions& opt = {});

/// Size of the initial data in the sense of the pointwise theorem, with
/// discrete surrogates for each piece.
struct DeltaParts {
  double eps = 0.0;          // H^4 norms of tau0 and u0 on both half-lines
  double l1 = 0.0;           // sum_i |u0i^-|_{L1(-inf,0)} + |u0i^+|_{L1(0,inf)}
  double sup_weighted = 0.0; // sum_i sup (|x|+1)^{3/2} |u0i|
  double sup_tails = 0.0;    // sum_i sup_{x>0} (|x|+1)(|u0i^-(-x)| + |u0i^+(x)|)
  double delta = 0.0;
};

/// Discrete H^k norm on one half-line, k <= 4, from 9-point stencils.
double sobolev_norm(const Eigen::VectorXd& f, double h, int k = 4);

DeltaParts delta_norm(const Field& tau0, const Field& u0, const CharSystemd& cs);

struct BoundRatio {
  double ratio = 0.0;
  double x = 0.0, t = 0.0;
  int branch = 0;
  std::vector<double> per_snapshot;  // sup over x and i at each snapshot time
  std::vector<double> times;
};

/// sup over snapshots (t > 0), x and i of |u_i - theta_i| / (delta Psi_i).
BoundRatio bound_ratio(const std::vector<Snapshot>& snaps, const std::array<DiffusionWave, 2>& waves,
                       const CharSystemd& cs, double delta);

struct InterfaceReport {
  DecayFit fit_V;
  DecayFit fit_uinf;
  bool exponent_ok = false;
  std::vector<double> dyadic_times;  // T_k, doubling up to t_final
  std::vector<double> partial_int;   // int_0^{T_k} |V|
  double increment_ratio = 0.0;      // last dyadic increment over the previous one
  bool travel_converges = false;
  std::string verdict;               // "pass", "fail" or "null signal"
};

struct InterfaceOptions {
  double t_lo = 50.0;
  double alpha_lo = 1.3, alpha_hi = 1.7;
  double max_increment_ratio = 0.9;
};

InterfaceReport interface_decay_check(const std::vector<SeriesRow>& series, const InterfaceOptions& opt = {});

// Convolution estimates.

enum class Lemma { B2, B3, B4, B5, B6, B7 };
std::string to_string(Lemma id);
Lemma lemma_from_string(const std::string& s);

enum class TimeRange { Early, Late, Full };  // [0, t/2], [t/2, t], [0, t]

struct LemmaParams {
  double alpha = 0.0;
  double beta = 2.0;
  double lambda = 1.0;
  double lambda2 = -1.0;  // lambda' where the lemma uses one
  double mu = 2.0;
  double eps = 0.5;
  double K = 0.0;         // <= 0: lemma default
  TimeRange range = TimeRange::Full;
  bool log_factor = true; // include the log corrections of the bound
  // B4 only: diffusion wave feeding h = theta^2 and the bound's nu*
  double wave_mass = 0.1;
  double nu = 1.0;
  double nu_star = 0.0;   // <= 0: 8 nu
  // inner y-integral by closed form when the lemma allows it
  bool closed_form_inner = false;
};

struct SampleGrid {
  double t_min = 1.0, t_max = 1000.0;
  int nt = 20;
  int nx = 20;
  double spread = 4.0;  // x range half-width beyond the characteristics, in sqrt(mu(t+1))
  SampleGrid doubled() const;
};

struct LemmaSample {
  double x = 0.0, t = 0.0;
  double lhs = 0.0, rhs = 0.0;
  bool converged = true;
};

struct LemmaResult {
  Lemma id = Lemma::B2;
  double constant = 0.0;  // sup lhs/rhs
  double x = 0.0, t = 0.0;
  std::vector<double> t_values;
  std::vector<double> per_t;  // sup over x at each t
  int failures = 0;           // samples with unconverged quadrature
  std::vector<LemmaSample> samples;
};

/// Left side of the lemma at one point.
LemmaSample lemma_sample(Lemma id, const LemmaParams& p, double x, double t);

LemmaResult sample_lemma(Lemma id, const LemmaParams& p, const SampleGrid& g, int threads = 1);

struct LemmaStability {
  LemmaResult coarse, fine;
  double change = 0.0;  // |fine/coarse - 1|
  bool stable = false;
};

LemmaStability lemma_stability(Lemma id, const LemmaParams& p, const SampleGrid& g, int threads = 1,
                               double tol = 0.1);

/// per_t at the last time over per_t at the geometric middle time.
double lemma_growth(const LemmaResult& r);

/// Hypotheses of the derivative-kernel estimate for h = theta^2: sups of
/// |h| / Theta_2 and |Lh - dF/dx| / Theta_4 with F = -(2/3) theta^3.
struct HypothesisCheck {
  double h_ratio = 0.0;
  double residual_ratio = 0.0;
};
HypothesisCheck lemma_b4_hypotheses(const LemmaParams& p, const SampleGrid& g);

}  // namespace pointmass
