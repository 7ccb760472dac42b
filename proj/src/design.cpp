#include "lounge/design.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "lounge/analytic.hpp"
#include "lounge/ctmc.hpp"

namespace lounge {

const char* to_string(DistributionSource s) {
  return s == DistributionSource::oracle ? "oracle" : "approx-closed-form";
}

const char* to_string(Verdict v) { return v == Verdict::provide_lf ? "provide-LF" : "no-LF"; }

DistributionSource parse_source(const std::string& name) {
  if (name == "approx-closed-form" || name == "approx") return DistributionSource::approx_closed_form;
  if (name == "oracle") return DistributionSource::oracle;
  throw std::invalid_argument("unknown distribution source: " + name);
}

namespace {

// (mu - lambda) / nu with representation noise around integers removed, so
// that e.g. (2.5 - 1.0) / 0.1 is 15 and not 14.999999999999998.
double drain_ratio(double lambda, double mu, double nu) {
  const double d = (mu - lambda) / nu;
  const double nearest = std::round(d);
  return std::abs(d - nearest) <= 1e-9 * std::max(1.0, std::abs(d)) ? nearest : d;
}

}  // namespace

int lounge_threshold_for(double lambda, double mu, double nu, int a_int) {
  const double b = std::ceil(drain_ratio(lambda, mu, nu) - a_int);
  return b > 0.0 ? static_cast<int>(b) : 0;
}

CongestionCost congestion_cost(const StationaryDistribution& d, double omega) {
  if (!(omega > 0.0)) throw std::invalid_argument("congestion_cost: omega must be > 0");
  CongestionCost c;
  for (const auto& [s, p] : d.entries) c.value += (double(s.q) * s.q + omega * double(s.l) * s.l) * p;
  // q^2 + omega l^2 <= max(1, omega) (q + l)^2
  c.tail_bound = std::max(1.0, omega) * d.tail_moment_bound;
  if (c.tail_bound > 1e-6 * c.value) {
    throw TruncationError("truncation too coarse: tail bound " + std::to_string(c.tail_bound) +
                          " against cost " + std::to_string(c.value));
  }
  return c;
}

double g_of_a(double rho, int a_int, double omega) {
  return congestion_cost(approx_stationary(rho, a_int), omega).value;
}

double g_of_a_oracle(double lambda, double mu, double nu, int a_int, double omega) {
  const int b = lounge_threshold_for(lambda, mu, nu, a_int);
  const double rho = lambda / mu;
  const int q_max = std::max(tail_truncation(rho), a_int + b + 3);
  return congestion_cost(solve_stationary(build_generator(lambda, mu, nu, a_int, b, q_max)), omega).value;
}

int max_design_threshold(double lambda, double mu, double nu) {
  const double d = drain_ratio(lambda, mu, nu);
  if (!(d > 0.0)) return -1;
  return std::max(0, static_cast<int>(std::ceil(d - 1.0)));
}

DesignResult optimize_design(double lambda, double mu, double nu, double omega, DistributionSource source) {
  const double rho = lambda / mu;
  DesignResult r;
  r.g_baseline = mm1_second_moment(rho);
  if (drain_ratio(lambda, mu, nu) <= 1.0) r.omega_bar = (3.0 - rho) / (1.0 - rho);

  const int a_max = max_design_threshold(lambda, mu, nu);
  for (int a = 0; a <= a_max; ++a) {
    const double g = source == DistributionSource::oracle ? g_of_a_oracle(lambda, mu, nu, a, omega)
                                                          : g_of_a(rho, a, omega);
    r.g_values[a] = g;
    if (!r.g_star || g < *r.g_star) {
      r.g_star = g;
      r.a_star = a;
    }
  }
  if (r.a_star) r.b_of_a_star = lounge_threshold_for(lambda, mu, nu, *r.a_star);
  r.verdict = (r.g_star && *r.g_star < r.g_baseline) ? Verdict::provide_lf : Verdict::no_lf;
  return r;
}

DesignResult optimize_design(const SystemParams& p, double omega, DistributionSource source) {
  return optimize_design(p.lambda(), p.mu(), p.nu(), omega, source);
}

double g_one_slot_closed_form(double lambda, double mu, double nu, double omega) {
  const double rho = lambda / mu;
  const double g_o = mm1_second_moment(rho);
  return (nu + rho * mu) / (nu + mu) * g_o + rho * rho * mu / (nu + mu) * (omega + (1.0 - rho) / rho);
}

Theorem2Result theorem2_decision(double lambda, double mu, double nu, double omega) {
  if (drain_ratio(lambda, mu, nu) > 1.0) {
    throw RegimeError("one-slot lounge comparison requires mu - lambda <= nu");
  }
  const double rho = lambda / mu;
  Theorem2Result t;
  t.omega_bar = (3.0 - rho) / (1.0 - rho);
  t.g_gap = rho * rho * mu / (mu + nu) * (omega - t.omega_bar);
  t.verdict = omega < t.omega_bar ? Verdict::provide_lf : Verdict::no_lf;
  return t;
}

Theorem2Result theorem2_decision(const SystemParams& p, double omega) {
  return theorem2_decision(p.lambda(), p.mu(), p.nu(), omega);
}

std::vector<SweepRow> design_sweep(double mu, double nu, std::span<const double> omegas,
                                   std::span<const double> rhos, DistributionSource source, int jobs) {
  if (omegas.empty() || rhos.empty()) throw std::invalid_argument("design_sweep: empty grid");
  std::vector<SweepRow> rows(omegas.size() * rhos.size());
  auto cell = [&](std::size_t k) {
    const double omega = omegas[k / rhos.size()];
    const double rho = rhos[k % rhos.size()];
    const auto res = optimize_design(rho * mu, mu, nu, omega, source);
    rows[k] = {omega, rho, res.a_star, res.b_of_a_star, res.g_star, res.g_baseline, res.verdict};
  };
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(1, jobs)), rows.size());
  if (workers <= 1) {
    for (std::size_t k = 0; k < rows.size(); ++k) cell(k);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t k = w; k < rows.size(); k += workers) cell(k);
      });
    }
    for (auto& t : pool) t.join();
  }
  return rows;
}

}  // namespace lounge
