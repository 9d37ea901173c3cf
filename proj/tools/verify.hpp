// Property suites behind `pointmass verify`.
#pragma once

#include <functional>
#include <string>
#include <vector>

namespace pointmass::cli {

struct Check {
  std::string name;
  double value = 0.0;
  double limit = 0.0;
  bool pass = false;
};

struct SuiteResult {
  std::string suite;
  std::vector<Check> checks;
  std::string error;  // set when the suite threw
  bool passed() const;
};

const std::vector<std::string>& suite_names();
SuiteResult run_suite(const std::string& name, int threads);

}  // namespace pointmass::cli
