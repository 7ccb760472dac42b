#pragma once

#include <string>
#include <vector>

#include "lounge/params.hpp"

namespace lounge {

struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0.0;      ///< measured error or statistic
  double threshold = 0.0;  ///< pass iff value < threshold (or as described)
  std::string detail;
};

/// Closed forms against the numerical oracle for one parameter set.
std::vector<CheckResult> oracle_validate(const SystemParams& params);

/// Fixed reproduction suite: baseline second moments, both closed-form laws
/// against the oracle, the total-count identity, the one-slot design gap and
/// the small-nu trend.
std::vector<CheckResult> run_validation_suite();

}  // namespace lounge
