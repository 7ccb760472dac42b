#pragma once

#include <random>

#include "lounge/params.hpp"

namespace lounge::testing {

/// Valid parameter sets spread over several orders of magnitude.
inline RawParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  RawParams p;
  p.mu = 0.5 + 9.5 * u(rng);
  p.lambda = p.mu * (0.05 + 0.9 * u(rng));
  p.nu = p.mu * (0.005 + 0.5 * u(rng));
  p.alpha = 0.1 + 4.9 * u(rng);
  p.beta = p.alpha * (0.01 + 0.98 * u(rng));
  return p;
}

inline RawParams busy_params() { return {6.0, 7.2, 0.1, 0.45, 0.035}; }

}  // namespace lounge::testing
