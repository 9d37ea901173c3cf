#include "pointmass/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "pointmass/series_io.hpp"

namespace pointmass {

namespace {

std::string join_errors(const std::vector<std::string>& errs) {
  std::string s;
  for (const auto& e : errs) s += (s.empty() ? "" : "\n") + e;
  return s;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double to_double(const std::string& v) {
  const double d = parse_number(v);
  if (!std::isfinite(d)) throw std::invalid_argument("not a finite number: '" + v + "'");
  return d;
}

long to_long(const std::string& v) {
  long x = 0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size()) throw std::invalid_argument("not an integer: '" + v + "'");
  return x;
}

bool to_bool(const std::string& v) {
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  throw std::invalid_argument("not a boolean: '" + v + "'");
}

std::vector<double> to_list(const std::string& v) {
  std::vector<double> out;
  if (trim(v).empty()) return out;
  std::stringstream ss(v);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(to_double(trim(item)));
  return out;
}

std::string unquote(const std::string& v) {
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') return v.substr(1, v.size() - 2);
  return v;
}

using Setter = std::function<void(RunConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"pressure.family",
       [](RunConfig& c, const std::string& v) {
         if (v != "gamma") throw std::invalid_argument("unknown pressure family '" + v + "' (expected gamma)");
         c.pressure_family = v;
       }},
      {"pressure.gamma", [](RunConfig& c, const std::string& v) { c.gamma = to_double(v); }},
      {"physics.nu", [](RunConfig& c, const std::string& v) { c.nu = to_double(v); }},
      {"physics.m", [](RunConfig& c, const std::string& v) { c.mass = to_double(v); }},
      {"physics.mode", [](RunConfig& c, const std::string& v) { c.mode = mode_from_string(v); }},
      {"grid.L", [](RunConfig& c, const std::string& v) { c.L = to_double(v); }},
      {"grid.N", [](RunConfig& c, const std::string& v) { c.N = to_long(v); }},
      {"grid.t_final", [](RunConfig& c, const std::string& v) { c.t_final = to_double(v); }},
      {"grid.dt", [](RunConfig& c, const std::string& v) { c.dt = to_double(v); }},
      {"grid.cfl", [](RunConfig& c, const std::string& v) { c.cfl = to_double(v); }},
      {"grid.truncation_sigma", [](RunConfig& c, const std::string& v) { c.truncation_sigma = to_double(v); }},
      {"initial.family", [](RunConfig& c, const std::string& v) { c.family = initial_family_from_string(v); }},
      {"initial.amplitude", [](RunConfig& c, const std::string& v) { c.initial.amplitude = to_double(v); }},
      {"initial.center", [](RunConfig& c, const std::string& v) { c.initial.center = to_double(v); }},
      {"initial.width", [](RunConfig& c, const std::string& v) { c.initial.width = to_double(v); }},
      {"initial.u_amplitude", [](RunConfig& c, const std::string& v) { c.initial.u_amplitude = to_double(v); }},
      {"initial.V0", [](RunConfig& c, const std::string& v) { c.initial.V0 = to_double(v); }},
      {"initial.cutoff", [](RunConfig& c, const std::string& v) { c.initial.cutoff = to_double(v); }},
      {"initial.samples", [](RunConfig& c, const std::string& v) { c.samples = unquote(v); }},
      {"output.dir", [](RunConfig& c, const std::string& v) { c.out_dir = unquote(v); }},
      {"output.snapshot_times", [](RunConfig& c, const std::string& v) { c.snapshot_times = to_list(v); }},
      {"output.geometric_snapshots", [](RunConfig& c, const std::string& v) { c.geometric_snapshots = to_bool(v); }},
      {"output.stride", [](RunConfig& c, const std::string& v) { c.stride = to_long(v); }},
      {"run.seed",
       [](RunConfig& c, const std::string& v) {
         const long s = to_long(v);
         if (s < 0) throw std::invalid_argument("seed must be non-negative");
         c.seed = static_cast<std::uint64_t>(s);
       }},
  };
  return table;
}

// Splits a snapshot-style table into the two half-lines.
void load_samples(const std::string& path, InitialParams& P) {
  const Snapshot s = read_snapshot(path);
  std::vector<double> xr, xl;
  P.tau_right.clear();
  P.tau_left.clear();
  P.u_right.clear();
  P.u_left.clear();
  for (Eigen::Index k = 0; k < s.x.size(); ++k) {
    if (std::signbit(s.x(k))) {
      xl.push_back(-s.x(k));
      P.tau_left.push_back(s.tau(k));
      P.u_left.push_back(s.u(k));
    } else {
      xr.push_back(s.x(k));
      P.tau_right.push_back(s.tau(k));
      P.u_right.push_back(s.u(k));
    }
  }
  std::reverse(xl.begin(), xl.end());
  std::reverse(P.tau_left.begin(), P.tau_left.end());
  std::reverse(P.u_left.begin(), P.u_left.end());
  if (xr.size() < 4 || xr.size() != xl.size())
    throw std::invalid_argument("samples file '" + path + "': need equal half-lines (with -0 and +0) of >= 4 rows");
  const double h = xr[1] - xr[0];
  for (size_t k = 0; k < xr.size(); ++k)
    if (std::abs(xr[k] - k * h) > 1e-9 * (1.0 + k * h) || std::abs(xl[k] - k * h) > 1e-9 * (1.0 + k * h))
      throw std::invalid_argument("samples file '" + path + "': nodes must be x = +-j h starting at +-0");
  P.sample_h = h;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> errs) : std::runtime_error(join_errors(errs)), errors(std::move(errs)) {}

std::string to_string(Mode m) { return m == Mode::Linear ? "linear" : "nonlinear"; }

Mode mode_from_string(const std::string& s) {
  if (s == "nonlinear") return Mode::Nonlinear;
  if (s == "linear") return Mode::Linear;
  throw std::invalid_argument("unknown mode '" + s + "' (expected nonlinear or linear)");
}

PressureLaw RunConfig::law() const { return PressureLaw::gamma_law(gamma); }

GridSpec RunConfig::grid() const {
  GridSpec g = GridSpec::make(L, N, t_final, std::sqrt(gamma), cfl);
  if (dt > 0.0) g.dt = dt;
  return g;
}

InitialData RunConfig::initial_data() const {
  InitialParams P = initial;
  if (family == InitialFamily::CustomSamples) {
    if (samples.empty()) throw std::invalid_argument("custom_samples needs initial.samples = <csv path>");
    load_samples(samples, P);
  }
  return make_initial_data(family, P, law(), nu, mass);
}

RunSpec RunConfig::run_spec() const {
  RunSpec rs;
  rs.solver.law = law();
  rs.solver.nu = nu;
  rs.solver.mass = mass;
  rs.solver.mode = mode;
  rs.grid = grid();
  rs.init = initial_data().profile;
  rs.snapshot_times = snapshot_times;
  rs.geometric_snapshots = geometric_snapshots;
  rs.stride = static_cast<int>(stride);
  rs.out_dir = out_dir;
  rs.keep_snapshots = false;
  return rs;
}

RunConfig parse_config(const std::string& text, const std::string& origin) {
  RunConfig c;
  std::vector<std::string> errs;
  std::map<std::string, int> seen;
  std::string section;
  std::istringstream in(text);
  int lineno = 0;
  auto where = [&](int l) { return origin + ":" + std::to_string(l) + ": "; };
  for (std::string raw; std::getline(in, raw);) {
    ++lineno;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        errs.push_back(where(lineno) + "malformed section header '" + line + "'");
        continue;
      }
      section = trim(line.substr(1, line.size() - 2));
      static const char* known[] = {"pressure", "physics", "grid", "initial", "output", "run"};
      if (std::find(std::begin(known), std::end(known), section) == std::end(known))
        errs.push_back(where(lineno) + "unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      errs.push_back(where(lineno) + "expected 'key = value', got '" + line + "'");
      continue;
    }
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    const std::string full = (section.empty() ? "run" : section) + "." + key;
    const auto it = setters().find(full);
    if (it == setters().end()) {
      errs.push_back(where(lineno) + "unknown key '" + key + "' in [" + (section.empty() ? "run" : section) + "]");
      continue;
    }
    if (auto s = seen.find(full); s != seen.end()) {
      errs.push_back(where(lineno) + "duplicate key '" + full + "' (first set on line " + std::to_string(s->second) +
                     ", again on line " + std::to_string(lineno) + ")");
      continue;
    }
    seen[full] = lineno;
    try {
      it->second(c, value);
    } catch (const std::exception& e) {
      errs.push_back(where(lineno) + full + ": " + e.what());
    }
  }

  auto at = [&](const std::string& key) {
    const auto s = seen.find(key);
    return s == seen.end() ? origin + ": " : where(s->second);
  };
  auto check = [&](bool ok, const std::string& key, const std::string& msg) {
    if (!ok) errs.push_back(at(key) + msg);
  };
  check(c.gamma > 1.0, "pressure.gamma", "gamma must exceed 1");
  check(c.nu > 0.0, "physics.nu", "nu must be positive");
  check(c.mass > 0.0, "physics.m", "m must be positive");
  check(c.L > 0.0, "grid.L", "L must be positive");
  check(c.N >= 4, "grid.N", "N must be at least 4");
  check(c.t_final > 0.0, "grid.t_final", "t_final must be positive");
  check(c.cfl > 0.0, "grid.cfl", "cfl must be positive");
  check(c.truncation_sigma >= 0.0, "grid.truncation_sigma", "truncation_sigma must be non-negative");
  check(c.dt >= 0.0, "grid.dt", "dt must be non-negative (0 selects it from the CFL limit)");
  check(c.stride >= 1, "output.stride", "stride must be at least 1");
  for (double t : c.snapshot_times) check(t >= 0.0 && t <= c.t_final, "output.snapshot_times",
                                          "snapshot time " + format_number(t) + " outside [0, t_final]");
  if (errs.empty()) {
    try {
      c.grid().validate(std::sqrt(c.gamma), c.nu, c.truncation_sigma, c.cfl);
    } catch (const std::exception& e) {
      errs.push_back(at(seen.count("grid.L") ? "grid.L" : "grid.t_final") + e.what());
    }
    try {
      (void)c.initial_data();
    } catch (const std::exception& e) {
      errs.push_back(at("initial.family") + "initial data: " + e.what());
    }
  }
  if (!errs.empty()) throw ConfigError(errs);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

std::string to_text(const RunConfig& c) {
  std::ostringstream os;
  auto n = [](double v) { return format_number(v); };
  os << "[pressure]\nfamily = " << c.pressure_family << "\ngamma = " << n(c.gamma) << "\n\n";
  os << "[physics]\nnu = " << n(c.nu) << "\nm = " << n(c.mass) << "\nmode = " << to_string(c.mode) << "\n\n";
  os << "[grid]\nL = " << n(c.L) << "\nN = " << c.N << "\nt_final = " << n(c.t_final) << "\ndt = " << n(c.dt)
     << "\ncfl = " << n(c.cfl) << "\ntruncation_sigma = " << n(c.truncation_sigma) << "\n\n";
  const InitialParams& P = c.initial;
  os << "[initial]\nfamily = " << to_string(c.family) << "\namplitude = " << n(P.amplitude)
     << "\ncenter = " << n(P.center) << "\nwidth = " << n(P.width) << "\nu_amplitude = " << n(P.u_amplitude)
     << "\nV0 = " << n(P.V0) << "\ncutoff = " << n(P.cutoff) << "\n";
  if (!c.samples.empty()) os << "samples = " << c.samples << "\n";
  os << "\n[output]\ndir = " << c.out_dir << "\nsnapshot_times = ";
  for (size_t k = 0; k < c.snapshot_times.size(); ++k) os << (k ? ", " : "") << n(c.snapshot_times[k]);
  os << "\ngeometric_snapshots = " << (c.geometric_snapshots ? "true" : "false") << "\nstride = " << c.stride
     << "\n\n[run]\nseed = " << c.seed << "\n";
  return os.str();
}

}  // namespace pointmass
