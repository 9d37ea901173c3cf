#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "pointmass/config.hpp"
#include "pointmass/series_io.hpp"

using namespace pointmass;

namespace {

const char* kMinimal =
    "[pressure]\n"
    "gamma = 1.4\n"
    "[physics]\n"
    "nu = 1\n"
    "[initial]\n"
    "family = gaussian_bump\n";

std::vector<std::string> errors_of(const std::string& text) {
  try {
    parse_config(text, "test.ini");
  } catch (const ConfigError& e) {
    return e.errors;
  }
  return {};
}

bool any_contains(const std::vector<std::string>& v, const std::string& needle) {
  for (const auto& s : v)
    if (s.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("minimal config fills defaults") {
  const RunConfig c = parse_config(kMinimal);
  CHECK(c.gamma == 1.4);
  CHECK(c.nu == 1.0);
  CHECK(c.mass == 1.0);
  CHECK(c.mode == Mode::Nonlinear);
  CHECK(c.family == InitialFamily::GaussianBump);
  CHECK(c.L == 100.0);
  CHECK(c.N == 2000);
  const GridSpec g = c.grid();
  CHECK(g.dt <= 0.4 * g.h() / std::sqrt(1.4));
  CHECK(c.law().gamma() == 1.4);
}

TEST_CASE("truncation inequality is enforced") {
  const auto errs = errors_of(std::string(kMinimal) + "[grid]\nL = 20\nt_final = 100\n");
  REQUIRE(errs.size() == 1);
  CHECK(any_contains(errs, "test.ini:8:"));
  CHECK(any_contains(errs, "truncation inequality L >= c t_final + "));
}

TEST_CASE("duplicate keys name both lines") {
  const auto errs = errors_of("[physics]\nnu = 1\nm = 1\nnu = 2\n");
  REQUIRE(errs.size() == 1);
  CHECK(any_contains(errs, "test.ini:4:"));
  CHECK(any_contains(errs, "line 2"));
  CHECK(any_contains(errs, "line 4"));
}

TEST_CASE("strict parsing") {
  CHECK(any_contains(errors_of("[physics]\nnu = 1\nviscosity = 2\n"), "test.ini:3: unknown key 'viscosity'"));
  CHECK(any_contains(errors_of("[physic]\n"), "unknown section"));
  CHECK(any_contains(errors_of("[physics]\nnu = fast\n"), "test.ini:2:"));
  CHECK(any_contains(errors_of("[physics]\nnu\n"), "expected 'key = value'"));
  CHECK(any_contains(errors_of("[physics]\nnu = -1\n"), "nu must be positive"));
  CHECK(any_contains(errors_of("[pressure]\ngamma = 1\n"), "gamma must exceed 1"));
  CHECK(any_contains(errors_of("[physics]\nmode = quadratic\n"), "unknown mode"));
  CHECK(any_contains(errors_of("[initial]\nfamily = tophat\n"), "unknown initial family"));
  CHECK(any_contains(errors_of("[output]\nsnapshot_times = 1, 50\n"), "outside [0, t_final]"));
  // several problems are all reported
  CHECK(errors_of("[physics]\nnu = -1\nm = -1\n").size() == 2);
}

TEST_CASE("keys before any section belong to [run]") {
  const RunConfig c = parse_config("seed = 42\n# comment\n[physics]\nnu = 0.5  # trailing comment\n");
  CHECK(c.seed == 42);
  CHECK(c.nu == 0.5);
}

TEST_CASE("canonical text round trip") {
  RunConfig c = parse_config(
      "[physics]\nnu = 0.75\nm = 2\nmode = linear\n[grid]\nL = 120\nN = 1200\nt_final = 20\n"
      "[initial]\nfamily = dipole\nV0 = 0.01\nu_amplitude = 0.02\n[output]\nsnapshot_times = 3, 7.5\nstride = 5\n");
  const RunConfig d = parse_config(to_text(c));
  CHECK(to_text(d) == to_text(c));
  CHECK(d.mode == Mode::Linear);
  CHECK(d.snapshot_times == std::vector<double>{3.0, 7.5});
  CHECK(d.initial.V0 == 0.01);
  CHECK(d.mass == 2.0);
}

TEST_CASE("custom samples file") {
  const auto dir = std::filesystem::temp_directory_path() / "pointmass_config_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "init.csv";
  {
    std::ofstream out(path);
    out << "x,tau,u\n";
    for (int j = 100; j >= 0; --j) {
      const double x = -0.1 * j;
      out << format_number(j == 0 ? -0.0 : x) << ',' << format_number(0.004 * std::exp(-(x + 3) * (x + 3))) << ",0\n";
    }
    for (int j = 0; j <= 100; ++j) {
      const double x = 0.1 * j;
      out << format_number(x) << ',' << format_number(0.01 * std::exp(-(x - 4) * (x - 4))) << ",0\n";
    }
  }
  const RunConfig c = parse_config("[initial]\nfamily = custom_samples\nsamples = " + path.string() + "\n");
  const InitialData d = c.initial_data();
  CHECK(d.profile.tau0(4.0) == doctest::Approx(0.01).epsilon(1e-6));
  CHECK(d.profile.tau0(-3.0) == doctest::Approx(0.004).epsilon(1e-6));
  CHECK(any_contains(errors_of("[initial]\nfamily = custom_samples\nsamples = /nonexistent/file.csv\n"), "initial data"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("load_config reports the file name") {
  CHECK_THROWS_AS(load_config("/nonexistent/run.ini"), std::runtime_error);
  const auto path = std::filesystem::temp_directory_path() / "pointmass_bad.ini";
  {
    std::ofstream(path) << "[physics]\nnu = 1\nnu = 2\n";
  }
  try {
    load_config(path.string());
    FAIL("expected an error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find(path.string() + ":3:") != std::string::npos);
  }
  std::filesystem::remove(path);
}
