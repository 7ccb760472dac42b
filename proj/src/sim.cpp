#include "lounge/sim.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

#include "lounge/analytic.hpp"
#include "lounge/ctmc.hpp"
#include "lounge/policy.hpp"

namespace lounge {

const char* to_string(PolicyVariant v) {
  switch (v) {
    case PolicyVariant::exact_cost: return "exact-cost";
    case PolicyVariant::threshold: return "threshold";
    case PolicyVariant::approximating: return "approximating";
  }
  return "unknown";
}

PolicyVariant parse_policy(const std::string& name) {
  if (name == "exact-cost") return PolicyVariant::exact_cost;
  if (name == "threshold") return PolicyVariant::threshold;
  if (name == "approximating") return PolicyVariant::approximating;
  throw std::invalid_argument("unknown policy variant: " + name);
}

namespace {

double unit_open(std::mt19937_64& rng) {
  // (0, 1]: never zero, so -log is finite
  return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
}

class Occupancy {
 public:
  void add(int q, int l, double dt) {
    if (static_cast<std::size_t>(q) >= cells_.size()) cells_.resize(static_cast<std::size_t>(q) + 1);
    auto& row = cells_[static_cast<std::size_t>(q)];
    if (static_cast<std::size_t>(l) >= row.size()) row.resize(static_cast<std::size_t>(l) + 1, 0.0);
    row[static_cast<std::size_t>(l)] += dt;
  }

  StationaryDistribution normalised(double total_time) const {
    StationaryDistribution d;
    d.source = SourceTag::simulation;
    for (std::size_t q = 0; q < cells_.size(); ++q) {
      for (std::size_t l = 0; l < cells_[q].size(); ++l) {
        if (cells_[q][l] <= 0.0) continue;
        d.entries[{static_cast<int>(q), static_cast<int>(l)}] = cells_[q][l] / total_time;
        d.q_max = std::max(d.q_max, static_cast<int>(q));
        d.l_max = std::max(d.l_max, static_cast<int>(l));
      }
    }
    return d;
  }

 private:
  std::vector<std::vector<double>> cells_;
};

struct Chain {
  const SystemParams& params;
  PolicyVariant policy;
  DerivedThresholds thresholds;

  Action choose(ObservedState s) const {
    switch (policy) {
      case PolicyVariant::exact_cost: return decide(s, params);
      case PolicyVariant::threshold: return decide_threshold(s, thresholds);
      case PolicyVariant::approximating: return decide_approximating(s, thresholds.a_int);
    }
    return Action::JoinQueue;
  }

  // Runs `events` transitions from the empty system. With accumulate set,
  // occupancy and arrival statistics are recorded from warmup_time onward.
  // Returns the time of the last event.
  double run(std::uint64_t seed, long long events, double warmup_time, ReplicationResult* out) const {
    std::mt19937_64 rng(seed);
    const double lambda = params.lambda();
    const double mu = params.mu();
    const double nu = params.nu();
    int q = 0;
    int l = 0;
    double now = 0.0;
    Occupancy occ;
    double sum_q = 0.0, sum_l = 0.0, sum_q2 = 0.0, sum_l2 = 0.0;

    for (long long e = 0; e < events; ++e) {
      const double service = q >= 1 ? mu : 0.0;
      const double exits = l * nu;
      const double total = lambda + service + exits;
      const double dt = -std::log(unit_open(rng)) / total;
      const double next = now + dt;
      if (out && next > warmup_time) {
        const double counted = next - std::max(now, warmup_time);
        occ.add(q, l, counted);
        sum_q += q * counted;
        sum_l += l * counted;
        sum_q2 += double(q) * q * counted;
        sum_l2 += double(l) * l * counted;
      }
      now = next;

      const double pick = unit_open(rng) * total;
      if (pick <= lambda) {
        const Action a = choose({q, l});
        if (out && now >= warmup_time) {
          ++out->arrivals;
          if (a == Action::JoinLounge) ++out->lounge_entries;
        }
        if (a == Action::JoinLounge) ++l; else ++q;
      } else if (pick <= lambda + service) {
        --q;
        if (q == 0 && l > 0) {  // lounge customer moves to the empty queue at once
          q = 1;
          --l;
        }
      } else {
        --l;
        ++q;
      }
    }

    if (out) {
      const double span = now - warmup_time;
      out->event_count = events;
      out->sim_time = now;
      out->empirical_dist = occ.normalised(span);
      out->mean_q = sum_q / span;
      out->mean_l = sum_l / span;
      out->second_moment_q = sum_q2 / span;
      out->second_moment_l = sum_l2 / span;
      out->lounge_entry_fraction =
          out->arrivals > 0 ? static_cast<double>(out->lounge_entries) / static_cast<double>(out->arrivals) : 0.0;
    }
    return now;
  }
};

StationaryDistribution average(const std::vector<ReplicationResult>& reps) {
  StationaryDistribution d;
  d.source = SourceTag::simulation;
  const double w = 1.0 / static_cast<double>(reps.size());
  for (const auto& r : reps) {
    for (const auto& [s, p] : r.empirical_dist.entries) d.entries[s] += w * p;
    d.q_max = std::max(d.q_max, r.empirical_dist.q_max);
    d.l_max = std::max(d.l_max, r.empirical_dist.l_max);
  }
  return d;
}

}  // namespace

SimResult simulate(const SystemParams& params, const SimConfig& config) {
  if (config.total_events <= 0) throw std::invalid_argument("simulate: total_events must be > 0");
  if (!(config.warmup_fraction >= 0.0 && config.warmup_fraction < 1.0)) {
    throw std::invalid_argument("simulate: warmup_fraction must be in [0,1)");
  }
  if (config.replications <= 0) throw std::invalid_argument("simulate: replications must be > 0");

  const Chain chain{params, config.policy, derive_thresholds(params)};
  std::vector<ReplicationResult> reps(static_cast<std::size_t>(config.replications));

  auto run_one = [&](std::size_t r) {
    const std::uint64_t seed = config.seed ^ static_cast<std::uint64_t>(r);
    // Same stream twice: the first pass fixes the horizon so the warmup can
    // be cut by simulated time.
    const double horizon = chain.run(seed, config.total_events, 0.0, nullptr);
    reps[r].seed = seed;
    chain.run(seed, config.total_events, config.warmup_fraction * horizon, &reps[r]);
  };

  const std::size_t jobs = static_cast<std::size_t>(std::max(1, config.jobs));
  if (jobs == 1 || reps.size() == 1) {
    for (std::size_t r = 0; r < reps.size(); ++r) run_one(r);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < std::min(jobs, reps.size()); ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t r = w; r < reps.size(); r += jobs) run_one(r);
      });
    }
    for (auto& t : pool) t.join();
  }

  SimResult result;
  result.empirical_dist = average(reps);
  const double w = 1.0 / static_cast<double>(reps.size());
  for (const auto& r : reps) {
    result.lounge_entry_fraction += w * r.lounge_entry_fraction;
    result.mean_q += w * r.mean_q;
    result.mean_l += w * r.mean_l;
    result.second_moment_q += w * r.second_moment_q;
    result.second_moment_l += w * r.second_moment_l;
    result.event_count += r.event_count;
    result.sim_time += r.sim_time;
  }
  result.replications = std::move(reps);
  return result;
}

MeanCi mean_ci(std::span<const double> values) {
  MeanCi ci;
  if (values.empty()) return ci;
  const double n = static_cast<double>(values.size());
  for (double v : values) ci.mean += v / n;
  if (values.size() < 2) return ci;
  double ss = 0.0;
  for (double v : values) ss += (v - ci.mean) * (v - ci.mean);
  ci.std_error = std::sqrt(ss / (n - 1.0) / n);
  ci.half_width = 1.96 * ci.std_error;
  return ci;
}

std::vector<ConjectureRow> conjecture_sweep(const RawParams& base, double eta, std::span<const double> nus,
                                            SweepMode mode, const SimConfig& sim_config) {
  if (!(eta > 0.0)) throw std::invalid_argument("conjecture_sweep: eta must be > 0");
  const double rho = base.lambda / base.mu;
  const int a_limit = static_cast<int>(std::floor(eta * base.mu / base.alpha));
  const auto limit_law = approx_stationary(rho, a_limit);

  std::vector<ConjectureRow> rows;
  for (double nu : nus) {
    RawParams raw = base;
    raw.nu = nu;
    raw.beta = eta * nu;
    const auto params = SystemParams::from(raw);
    const auto t = derive_thresholds(params);

    ConjectureRow row;
    row.nu = nu;
    row.a_int = t.a_int;
    row.b_int = t.b_int;
    if (mode == SweepMode::oracle) {
      const int q_max = std::max(tail_truncation(rho), t.a_int + t.b_int + 3);
      const auto law = solve_stationary(build_generator(params, t, q_max));
      row.sup_distance = sup_distance(law, limit_law);
      row.replications = 0;
    } else {
      const auto sim = simulate(params, sim_config);
      std::vector<double> distances;
      for (const auto& r : sim.replications) distances.push_back(sup_distance(r.empirical_dist, limit_law));
      const auto ci = mean_ci(distances);
      row.sup_distance = ci.mean;
      row.ci_half_width = ci.half_width;
      row.replications = static_cast<int>(distances.size());
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace lounge
