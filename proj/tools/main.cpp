// pointmass: simulate, tabulate kernels and waves, analyze runs, verify.
#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "pointmass/analysis.hpp"
#include "pointmass/config.hpp"
#include "pointmass/greenfn.hpp"
#include "pointmass/selfsim.hpp"
#include "pointmass/series_io.hpp"
#include "pointmass/talbot.hpp"
#include "verify.hpp"

namespace fs = std::filesystem;
using namespace pointmass;

namespace {

constexpr int kOk = 0, kFailed = 1, kUsage = 2;
constexpr const char* kOutEnv = "POINTMASS_OUT_DIR";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// "a:b:n" or a comma list.
std::vector<double> parse_points(const std::string& spec) {
  std::vector<double> out;
  if (spec.find(':') != std::string::npos) {
    std::stringstream ss(spec);
    std::string a, b, n;
    std::getline(ss, a, ':');
    std::getline(ss, b, ':');
    std::getline(ss, n, ':');
    const double lo = parse_number(a), hi = parse_number(b);
    const int count = static_cast<int>(parse_number(n));
    if (count < 1) throw UsageError("range '" + spec + "' needs a positive count");
    for (int k = 0; k < count; ++k) out.push_back(count == 1 ? lo : lo + (hi - lo) * k / (count - 1));
    return out;
  }
  std::stringstream ss(spec);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(parse_number(item));
  if (out.empty()) throw UsageError("empty point list");
  return out;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open '" + path + "' for writing");
    }
  }
  std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

int cmd_simulate(const std::string& config_path, std::string out_override) {
  RunConfig cfg = load_config(config_path);
  if (out_override.empty())
    if (const char* env = std::getenv(kOutEnv)) out_override = env;
  if (!out_override.empty()) cfg.out_dir = out_override;
  fs::create_directories(cfg.out_dir);
  {
    std::ofstream cf(fs::path(cfg.out_dir) / "config.ini");
    cf << to_text(cfg);
    if (!cf) throw std::runtime_error("cannot write config.ini in '" + cfg.out_dir + "'");
  }
  const RunResult r = run(cfg.run_spec());
  const auto& a = r.initial;
  const auto& b = r.final;
  std::cout << "out_dir: " << cfg.out_dir << "\n"
            << "steps: " << r.steps << "\n"
            << "max_newton_iterations: " << r.max_iterations << "\n"
            << "t_final: " << format_number(r.final_state.t) << "\n"
            << "V_final: " << format_number(r.final_state.V) << "\n"
            << "displacement: " << format_number(r.final_state.h_disp) << "\n"
            << "mass_drift: " << format_number(b.mass - a.mass) << "\n"
            << "momentum_drift: " << format_number(b.momentum - a.momentum) << "\n"
            << "energy_plus_dissipation_drift: "
            << format_number(b.energy_plus_dissipation() - a.energy_plus_dissipation()) << "\n";
  return kOk;
}

int cmd_green(const std::string& kind_s, const std::string& xs_s, const std::string& ts_s, double gamma, double nu,
              const std::string& route, const std::string& out_path) {
  const KernelKind kind = kernel_kind_from_string(kind_s);
  if (route != "convolution" && route != "talbot") throw UsageError("route must be convolution or talbot");
  const auto xs = parse_points(xs_s), ts = parse_points(ts_s);
  const CharSystemd cs = eigensystem(PressureLaw::gamma_law(gamma), nu);
  Output out(out_path);
  std::ostream& os = out.os();
  os << "x,t,kind,entry_11,entry_12,entry_21,entry_22,singular_weight\n";
  for (double t : ts) {
    if (!(t > 0.0)) throw UsageError("t must be positive");
    std::unique_ptr<KernelTable> table;
    if (kind != KernelKind::Gstar && route == "convolution") table = std::make_unique<KernelTable>(cs, t);
    const double E = std::exp(-cs.c * cs.c * t / nu);
    for (double x : xs) {
      Eigen::Matrix2d m = Eigen::Matrix2d::Zero();
      double w = 0.0;
      switch (kind) {
        case KernelKind::Gstar: m = g_star(x, t, cs); break;
        case KernelKind::G:
          m = table ? table->g(x) : talbot_kernel(TalbotKernel::G, x, t, cs);
          w = E;
          break;
        case KernelKind::GT: m = table ? table->transmitted(x) : talbot_kernel(TalbotKernel::GT, x, t, cs); break;
        case KernelKind::GR: m = table ? table->reflected(x) : talbot_kernel(TalbotKernel::GR, x, t, cs); break;
      }
      os << format_number(x) << ',' << format_number(t) << ',' << to_string(kind) << ',' << format_number(m(0, 0))
         << ',' << format_number(m(0, 1)) << ',' << format_number(m(1, 0)) << ',' << format_number(m(1, 1)) << ','
         << format_number(w) << '\n';
    }
  }
  return kOk;
}

int cmd_selfsim(int branch, double mass, const std::string& xs_s, const std::string& ts_s, double gamma, double nu,
                const std::string& out_path) {
  if (branch != 1 && branch != 2) throw UsageError("branch must be 1 or 2");
  const CharSystemd cs = eigensystem(PressureLaw::gamma_law(gamma), nu);
  const DiffusionWave w(branch, cs.lambda[branch - 1], nu, mass);
  const auto ts = parse_points(ts_s);
  Output out(out_path);
  std::ostream& os = out.os();
  os << "x,t,theta,dtheta_dx\n";
  for (double t : ts) {
    if (!(t >= 0.0)) throw UsageError("t must be non-negative");
    // default x range follows the wave
    const auto xs = xs_s.empty() ? parse_points(format_number(w.lambda * (t + 1) - 8 * std::sqrt(nu * (t + 1))) + ":" +
                                                format_number(w.lambda * (t + 1) + 8 * std::sqrt(nu * (t + 1))) + ":201")
                                 : parse_points(xs_s);
    for (double x : xs)
      os << format_number(x) << ',' << format_number(t) << ',' << format_number(theta(w, x, t)) << ','
         << format_number(theta_dx(w, x, t)) << '\n';
  }
  return kOk;
}

int cmd_analyze(const std::string& dir, double t_lo) {
  const fs::path root(dir);
  const RunConfig cfg = load_config((root / "config.ini").string());
  const auto series = read_series((root / "series.csv").string());
  std::vector<Snapshot> snaps;
  for (const auto& e : fs::directory_iterator(root)) {
    const std::string name = e.path().filename().string();
    if (name.rfind("snap_t", 0) == 0 && e.path().extension() == ".csv") snaps.push_back(read_snapshot(e.path().string()));
  }
  std::sort(snaps.begin(), snaps.end(), [](const Snapshot& a, const Snapshot& b) { return a.t < b.t; });

  const PressureLaw law = cfg.law();
  const CharSystemd cs = eigensystem(law, cfg.nu);
  const InitialData data = cfg.initial_data();
  const double h = cfg.L / static_cast<double>(cfg.N);
  const auto [tau0, u0] = sample_profile(data.profile, h, cfg.N + 1);
  const Masses M = masses(tau0, u0, data.profile.V0, cs);
  const auto waves = diffusion_waves(cs, M);
  const DeltaParts D = delta_norm(tau0, u0, cs);

  InterfaceOptions io;
  io.t_lo = t_lo;
  const InterfaceReport ir = interface_decay_check(series, io);
  const BoundRatio br = bound_ratio(snaps, waves, cs, D.delta);

  std::ostringstream rep;
  auto n = [](double v) { return format_number(v); };
  rep << "run_dir: " << dir << "\n"
      << "family: " << to_string(cfg.family) << "\n"
      << "mode: " << to_string(cfg.mode) << "\n"
      << "t_final: " << n(series.back().t) << "\n"
      << "snapshots: " << snaps.size() << "\n"
      << "mass_1: " << n(M.total[0]) << "\n"
      << "mass_2: " << n(M.total[1]) << "\n"
      << "delta: " << n(D.delta) << "\n"
      << "delta_eps: " << n(D.eps) << "\n"
      << "delta_l1: " << n(D.l1) << "\n"
      << "delta_sup_weighted: " << n(D.sup_weighted) << "\n"
      << "delta_sup_tails: " << n(D.sup_tails) << "\n"
      << "fit_window: [" << n(ir.fit_V.t_lo) << ", " << n(ir.fit_V.t_hi) << "]\n"
      << "alpha_V: " << n(ir.fit_V.alpha) << "\n"
      << "alpha_V_r2: " << n(ir.fit_V.r2) << "\n"
      << "alpha_V_verdict: " << to_string(ir.fit_V.verdict) << "\n"
      << "alpha_uinf: " << n(ir.fit_uinf.alpha) << "\n"
      << "alpha_uinf_r2: " << n(ir.fit_uinf.r2) << "\n"
      << "alpha_uinf_verdict: " << to_string(ir.fit_uinf.verdict) << "\n"
      << "travel_increment_ratio: " << n(ir.increment_ratio) << "\n"
      << "travel_converges: " << (ir.travel_converges ? "yes" : "no") << "\n"
      << "interface_verdict: " << ir.verdict << "\n"
      << "bound_constant: " << n(br.ratio) << "\n"
      << "bound_location_x: " << n(br.x) << "\n"
      << "bound_location_t: " << n(br.t) << "\n"
      << "bound_branch: " << br.branch << "\n";
  std::cout << rep.str();
  std::ofstream(root / "report.txt") << rep.str();
  std::ofstream fits(root / "fits.csv");
  fits << "quantity,value,r2,verdict\n"
       << "alpha_V," << n(ir.fit_V.alpha) << ',' << n(ir.fit_V.r2) << ',' << to_string(ir.fit_V.verdict) << '\n'
       << "alpha_uinf," << n(ir.fit_uinf.alpha) << ',' << n(ir.fit_uinf.r2) << ',' << to_string(ir.fit_uinf.verdict)
       << '\n'
       << "bound_constant," << n(br.ratio) << ",,\n"
       << "delta," << n(D.delta) << ",,\n";
  if (!fits) throw std::runtime_error("cannot write fits.csv in '" + dir + "'");
  return kOk;
}

int cmd_verify(const std::string& suite, int threads) {
  std::vector<std::string> names;
  if (suite == "all") names = cli::suite_names();
  else if (std::find(cli::suite_names().begin(), cli::suite_names().end(), suite) != cli::suite_names().end())
    names = {suite};
  else throw UsageError("unknown suite '" + suite + "'");

  std::vector<cli::SuiteResult> results(names.size());
  if (threads > 1 && names.size() > 1) {
    std::vector<std::future<cli::SuiteResult>> fut;
    for (const auto& s : names) fut.push_back(std::async(std::launch::async, cli::run_suite, s, 1));
    for (size_t k = 0; k < fut.size(); ++k) results[k] = fut[k].get();
  } else {
    for (size_t k = 0; k < names.size(); ++k) results[k] = cli::run_suite(names[k], threads);
  }
  bool ok = true;
  for (const auto& r : results) {
    if (!r.error.empty()) std::cout << "FAIL " << r.suite << ": " << r.error << "\n";
    for (const auto& c : r.checks)
      std::cout << (c.pass ? "PASS " : "FAIL ") << r.suite << ": " << c.name << " = " << format_number(c.value)
                << " (limit " << format_number(c.limit) << ")\n";
    ok = ok && r.passed();
  }
  return ok ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Point mass in a 1D viscous compressible fluid: simulation and verification"};
  app.require_subcommand(1);
  int threads = 1;
  app.add_option("--threads", threads, "Worker threads for sweeps and suites")->check(CLI::PositiveNumber);

  std::string config, out_dir;
  auto* sim = app.add_subcommand("simulate", "Run the solver from a config file");
  sim->add_option("config", config, "Config file")->required();
  sim->add_option("--out", out_dir, std::string("Output directory (overrides ") + kOutEnv + " and the config)");

  std::string kind = "G", xs, ts = "1", route = "convolution", out_path;
  double gamma = 1.4, nu = 1.0;
  auto* green = app.add_subcommand("green", "Tabulate G, G*, G_T or G_R as CSV");
  green->add_option("--kind", kind, "G, Gstar, GT or GR")->capture_default_str();
  green->add_option("--x", xs, "Points: comma list or a:b:n")->required();
  green->add_option("--t", ts, "Times: comma list or a:b:n")->capture_default_str();
  green->add_option("--gamma", gamma)->capture_default_str();
  green->add_option("--nu", nu)->capture_default_str();
  green->add_option("--route", route, "convolution or talbot")->capture_default_str();
  green->add_option("-o,--out", out_path, "CSV file (default stdout)");

  int branch = 1;
  double wave_mass = 0.1;
  std::string sxs;
  auto* ss = app.add_subcommand("selfsim", "Tabulate a diffusion wave as CSV");
  ss->add_option("--branch", branch)->capture_default_str();
  ss->add_option("--mass", wave_mass)->capture_default_str();
  ss->add_option("--t", ts, "Times: comma list or a:b:n")->capture_default_str();
  ss->add_option("--x", sxs, "Points (default: 201 across the wave)");
  ss->add_option("--gamma", gamma)->capture_default_str();
  ss->add_option("--nu", nu)->capture_default_str();
  ss->add_option("-o,--out", out_path, "CSV file (default stdout)");

  std::string run_dir;
  double t_lo = 50.0;
  auto* an = app.add_subcommand("analyze", "Report decay fits and bound ratios for a run directory");
  an->add_option("run_dir", run_dir)->required();
  an->add_option("--t-lo", t_lo, "Start of the fit window")->capture_default_str();

  std::string suite = "all";
  auto* ver = app.add_subcommand("verify", "Run a property suite");
  ver->add_option("suite", suite, "model, specialfns, selfsim, greenfn, solver, analysis, lemmas or all")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*sim) return cmd_simulate(config, out_dir);
    if (*green) return cmd_green(kind, xs, ts, gamma, nu, route, out_path);
    if (*ss) return cmd_selfsim(branch, wave_mass, sxs, ts, gamma, nu, out_path);
    if (*an) return cmd_analyze(run_dir, t_lo);
    if (*ver) return cmd_verify(suite, threads);
  } catch (const ConfigError& e) {
    std::cerr << "config errors:\n" << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kUsage;
}
