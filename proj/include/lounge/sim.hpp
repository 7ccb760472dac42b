#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lounge/distribution.hpp"
#include "lounge/params.hpp"

namespace lounge {

enum class PolicyVariant { exact_cost, threshold, approximating };

const char* to_string(PolicyVariant v);
PolicyVariant parse_policy(const std::string& name);

struct SimConfig {
  std::uint64_t seed = 1;
  long long total_events = 10'000'000;
  double warmup_fraction = 0.1;  ///< of simulated time
  int replications = 1;
  PolicyVariant policy = PolicyVariant::exact_cost;
  int jobs = 1;
};

struct ReplicationResult {
  std::uint64_t seed = 0;
  long long event_count = 0;
  double sim_time = 0.0;
  long long arrivals = 0;        ///< counted after warmup
  long long lounge_entries = 0;  ///< counted after warmup
  double lounge_entry_fraction = 0.0;
  double mean_q = 0.0;
  double mean_l = 0.0;
  double second_moment_q = 0.0;
  double second_moment_l = 0.0;
  StationaryDistribution empirical_dist;
};

/// Scalars are averages over replications; empirical_dist is the average of
/// the per-replication time-weighted occupancy fractions.
struct SimResult {
  StationaryDistribution empirical_dist;
  double lounge_entry_fraction = 0.0;
  double mean_q = 0.0;
  double mean_l = 0.0;
  double second_moment_q = 0.0;
  double second_moment_l = 0.0;
  long long event_count = 0;
  double sim_time = 0.0;
  std::vector<ReplicationResult> replications;
};

/// Event-driven simulation of the queue/lounge system. Replication r uses
/// seed ^ r; results are merged in replication order, so the output does not
/// depend on config.jobs.
SimResult simulate(const SystemParams& params, const SimConfig& config);

struct MeanCi {
  double mean = 0.0;
  double half_width = 0.0;  ///< 1.96 standard errors; 0 for a single value
  double std_error = 0.0;
};

MeanCi mean_ci(std::span<const double> values);

enum class SweepMode { oracle, monte_carlo };

struct ConjectureRow {
  double nu = 0.0;
  int a_int = 0;
  int b_int = 0;
  double sup_distance = 0.0;  ///< replication mean in monte-carlo mode
  double ci_half_width = 0.0;
  int replications = 0;
};

/// For each nu: distance between the stationary law of the system with
/// beta = eta * nu and the limit law with a_int = floor(eta mu / alpha).
/// base.nu and base.beta are ignored. Oracle mode is deterministic.
std::vector<ConjectureRow> conjecture_sweep(const RawParams& base, double eta, std::span<const double> nus,
                                            SweepMode mode, const SimConfig& sim_config = {});

}  // namespace lounge
