#pragma once

#include "trotter_cli/config.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace trotter::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kConfigError = 2,
  kAccuracyError = 3,
  kResourceCap = 4,
};

struct CheckResult {
  std::string name;
  bool passed;
  double value;
  double limit;
};

/// Structural and numerical self-checks: unitarity of every scheme, the
/// D1^dagger D1 factorisation and FD spectrum, FFT against dense algebra,
/// closed-form commutators, and one-step error bounds.
std::vector<CheckResult> run_verify_suite(const VerifyConfig& cfg);

/// Full command-line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace trotter::cli
