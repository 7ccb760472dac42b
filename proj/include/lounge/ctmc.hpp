#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/SparseCore>

#include "lounge/distribution.hpp"
#include "lounge/params.hpp"

namespace lounge {

enum class SpaceKind { original, approximating };

/// Enumerated truncated state space. States (0, l > 0) are never included.
/// original:      (0,0) and 1 <= q <= q_max, 0 <= l <= l_max (= b_int)
/// approximating: (0,0) and 1 <= q <= a_int + 1, 0 <= l <= l_max
class StateSpace {
 public:
  StateSpace(SpaceKind kind, int q_max, int l_max);

  SpaceKind kind() const { return kind_; }
  int q_max() const { return q_max_; }
  int l_max() const { return l_max_; }
  int size() const { return static_cast<int>(states_.size()); }

  const State& state(int index) const { return states_.at(static_cast<std::size_t>(index)); }
  /// -1 when the state lies outside the space.
  int index_of(int q, int l) const;

 private:
  SpaceKind kind_;
  int q_max_;
  int l_max_;
  std::vector<State> states_;
};

using RateMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Transition-rate matrix with diagonal -sum(off-diagonal) in every row.
struct Generator {
  RateMatrix rates;
  StateSpace space;
  std::string truncation_note;
  double rho = 0.0;
  double tail_mass_bound = 0.0;
  double tail_moment_bound = 0.0;
};

/// Original system under the threshold rule (a_int, b_int). Transitions that
/// would leave q <= q_max are dropped. Requires q_max > a_int + b_int + 2.
Generator build_generator(double lambda, double mu, double nu, int a_int, int b_int, int q_max);
Generator build_generator(const SystemParams& params, const DerivedThresholds& thresholds, int q_max);

/// Limit system in units where mu = 1. The arrival into the lounge at
/// l = l_max is dropped. Requires l_max >= 2.
Generator build_generator_approx(double rho, int a_int, int l_max);

struct SolveOptions {
  double direct_tol = 1e-12;
  double iterative_tol = 1e-10;
  long long max_iterations = 10'000'000;
  int direct_limit = 5000;
  bool force_iterative = false;
};

class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// Stationary vector of the generator: sparse LU with one balance equation
/// replaced by normalisation for small spaces, uniformised power iteration
/// otherwise. Throws SolverError on non-convergence or a residual above
/// tolerance.
StationaryDistribution solve_stationary(const Generator& gen, const SolveOptions& options = {});

/// max_i |sum_j rates(i, j)|
double max_row_sum(const Generator& gen);

/// ||pi * rates||_inf for a distribution over the generator's space.
double residual(const Generator& gen, const StationaryDistribution& d);

/// row,col,rate triplets (diagonal included) with a header row.
void write_triplets_csv(const Generator& gen, std::ostream& os);

}  // namespace lounge
