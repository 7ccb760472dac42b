#pragma once

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lounge/distribution.hpp"
#include "lounge/params.hpp"

namespace lounge {

enum class DistributionSource { approx_closed_form, oracle };
enum class Verdict { provide_lf, no_lf };

const char* to_string(DistributionSource s);
const char* to_string(Verdict v);
DistributionSource parse_source(const std::string& name);

class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CongestionCost {
  double value = 0.0;
  double tail_bound = 0.0;  ///< bound on the omitted-state contribution
};

/// sum (q^2 + omega l^2) pi(q, l) over the stored entries. Throws
/// TruncationError if the tail bound exceeds 1e-6 of the value.
CongestionCost congestion_cost(const StationaryDistribution& d, double omega);

/// G(A) from the limit-system law.
double g_of_a(double rho, int a_int, double omega);

/// G(A) from the oracle solve of the real system with lounge threshold
/// ceil((mu - lambda) / nu - A).
double g_of_a_oracle(double lambda, double mu, double nu, int a_int, double omega);

/// ceil((mu - lambda) / nu - a_int) clamped at 0: the lounge threshold that
/// customers adopt when the queue threshold is exactly a_int.
int lounge_threshold_for(double lambda, double mu, double nu, int a_int);

/// Largest admissible A: ceil((mu - lambda) / nu - 1), or -1 when the
/// lounge can never be accepted.
int max_design_threshold(double lambda, double mu, double nu);

struct DesignResult {
  std::map<int, double> g_values;
  std::optional<double> g_star;  ///< absent when no A is admissible
  std::optional<int> a_star;
  int b_of_a_star = 0;
  double g_baseline = 0.0;
  Verdict verdict = Verdict::no_lf;
  std::optional<double> omega_bar;  ///< set when mu - lambda <= nu
};

/// Sweeps every admissible A; ties go to the smaller A and G* == G_o goes
/// to no lounge.
DesignResult optimize_design(double lambda, double mu, double nu, double omega,
                             DistributionSource source = DistributionSource::approx_closed_form);
DesignResult optimize_design(const SystemParams& params, double omega,
                             DistributionSource source = DistributionSource::approx_closed_form);

struct Theorem2Result {
  Verdict verdict = Verdict::no_lf;
  double omega_bar = 0.0;
  double g_gap = 0.0;  ///< G(A = 0) - G_o
};

class RegimeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// One-slot lounge against no lounge when mu - lambda <= nu. Throws
/// RegimeError outside that regime.
Theorem2Result theorem2_decision(double lambda, double mu, double nu, double omega);
Theorem2Result theorem2_decision(const SystemParams& params, double omega);

/// G(A = 0) for the one-slot lounge in closed form.
double g_one_slot_closed_form(double lambda, double mu, double nu, double omega);

struct SweepRow {
  double omega = 0.0;
  double rho = 0.0;
  std::optional<int> a_star;
  int b_of_a_star = 0;
  std::optional<double> g_star;
  double g_baseline = 0.0;
  Verdict verdict = Verdict::no_lf;
};

/// One optimize_design per (omega, rho) cell, omega-major. jobs > 1 runs
/// cells on worker threads; row order is fixed.
std::vector<SweepRow> design_sweep(double mu, double nu, std::span<const double> omegas,
                                   std::span<const double> rhos,
                                   DistributionSource source = DistributionSource::approx_closed_form,
                                   int jobs = 1);

}  // namespace lounge
