#pragma once

#include <optional>
#include <string>
#include <vector>

namespace alphasun {

// One measured inequality inside a suite. threshold is what the value
// was compared against after any override; for structural checks
// (signs, monotonicity) measured is 0/1 and threshold is 0.5.
struct CheckLine {
  std::string label;
  double measured = 0.0;
  double threshold = 0.0;
  bool passed = false;
};

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::vector<CheckLine> checks;
  double seconds = 0.0;
  std::string error;  // nonempty when the suite aborted on an exception
};

struct VerifyOptions {
  // Replaces every residual threshold in every suite; structural checks
  // keep their pass/fail meaning. An override of 1e-30 is expected to
  // fail the run, which is the standard harness sanity check.
  std::optional<double> rel_tol;
  int threads = 0;  // 0 = hardware default
};

// Registered suite names, in execution order.
std::vector<std::string> suite_names();

// Runs one suite; unknown names throw DomainError.
SuiteResult run_suite(const std::string& name, const VerifyOptions& opt = {});

// Runs the named suites (all when empty). Never throws on suite
// failure; exceptions inside a suite mark it failed with the message.
std::vector<SuiteResult> run_suites(const std::vector<std::string>& names,
                                    const VerifyOptions& opt = {});

}  // namespace alphasun
