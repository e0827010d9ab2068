#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "corrdyn/corr_core.hpp"

namespace corrdyn {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool numeric_failure = false;  // a check aborted with a numeric error

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

/// Runs every module invariant at the given parameters. Checks that need the
/// base family run at c = 0 with the same (p, q); checks that need a motion
/// target use the given c. Numeric aborts (no convergence, shadow escape,
/// starvation) are recorded per check and flagged on the report.
VerifyReport run_invariant_suite(const CorrespondenceParams& params,
                                 std::uint64_t seed = 20240915,
                                 unsigned threads = 1);

}  // namespace corrdyn
