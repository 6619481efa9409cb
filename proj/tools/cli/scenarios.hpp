#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cli/config.hpp"

namespace spinlab::cli {

enum class Verdict { Pass, Fail, ReportOnly };
const char* verdict_name(Verdict v);

struct Check {
  std::string claim;
  Verdict verdict = Verdict::ReportOnly;
  double value = 0.0;
  double threshold = 0.0;
  std::string note;
};

struct RunResult {
  std::string scenario;
  std::vector<Check> checks;
  std::vector<std::string> files;  // relative to output_dir, manifest excluded
  bool any_fail() const;
  int exit_code() const { return any_fail() ? 1 : 0; }
};

// Runs one scenario, writes its artifacts, summary.csv and manifest.txt.
// Module errors are rethrown as ScenarioError naming the scenario.
RunResult run_scenario(const ScenarioConfig& config, std::ostream* log = nullptr);

class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace spinlab::cli
