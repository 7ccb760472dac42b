#include "lounge/validation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lounge/analytic.hpp"
#include "lounge/ctmc.hpp"
#include "lounge/design.hpp"
#include "lounge/sim.hpp"

namespace lounge {

namespace {

CheckResult below(std::string name, double value, double threshold, std::string detail = {}) {
  return {std::move(name), value < threshold, value, threshold, std::move(detail)};
}

double max_marginal_error(const StationaryDistribution& d, double rho, int n_max) {
  double worst = 0.0;
  for (int n = 0; n <= n_max; ++n) worst = std::max(worst, std::abs(marginal_total(d, n) - mm1_pmf(rho, n)));
  return worst;
}

std::string describe(const RawParams& p) {
  std::ostringstream os;
  os << "lambda=" << p.lambda << " mu=" << p.mu << " nu=" << p.nu << " alpha=" << p.alpha << " beta=" << p.beta;
  return os.str();
}

}  // namespace

std::vector<CheckResult> oracle_validate(const SystemParams& params) {
  std::vector<CheckResult> out;
  const auto t = derive_thresholds(params);
  const double rho = t.rho;
  const std::string who = describe(params.raw());

  const int q_max = std::max(tail_truncation(rho), t.a_int + t.b_int + 3);
  const auto gen = build_generator(params, t, q_max);
  out.push_back(below("generator row sums", max_row_sum(gen), 1e-12, who));
  const auto oracle = solve_stationary(gen);
  out.push_back(below("oracle residual", residual(gen, oracle), 1e-12, who));
  out.push_back(below("oracle total-count identity", max_marginal_error(oracle, rho, q_max / 2), 1e-10, who));

  const auto finer = solve_stationary(build_generator(params, t, 2 * q_max));
  out.push_back(below("truncation sensitivity", sup_distance(oracle, finer),
                      std::max(10.0 * oracle.tail_mass_bound, 1e-12), who));

  if (t.b_int == 1) {
    const auto closed = b1_stationary(params, q_max);
    out.push_back(below("one-slot closed form vs oracle", sup_distance(closed, oracle), 1e-8, who));
  }

  const auto approx = approx_stationary(rho, t.a_int);
  const auto approx_oracle = solve_stationary(build_generator_approx(rho, t.a_int, std::max(2, approx.l_max)));
  out.push_back(below("limit closed form vs oracle", sup_distance(approx, approx_oracle), 1e-8, who));
  return out;
}

std::vector<CheckResult> run_validation_suite() {
  std::vector<CheckResult> out;

  const double rhos[] = {0.4, 0.55, 0.7};
  const double reported[] = {1.56, 4.21, 13.22};
  for (int i = 0; i < 3; ++i) {
    std::ostringstream name;
    name << "baseline second moment rho=" << rhos[i];
    out.push_back(below(name.str(), std::abs(mm1_second_moment(rhos[i]) - reported[i]), 0.005));
  }

  const RawParams one_slot[] = {
      {1.0, 2.0, 0.5, 1.0, 0.375},   // A = 1
      {2.3, 2.5, 0.3, 1.0, 0.05},    // A = 0
      {1.0, 2.0, 0.1, 1.0, 0.475},   // A = 9
  };
  for (const auto& raw : one_slot) {
    const auto p = SystemParams::from(raw);
    const auto t = derive_thresholds(p);
    const int q_max = std::max(tail_truncation(t.rho), t.a_int + t.b_int + 3);
    const auto closed = b1_stationary(p, q_max);
    const auto oracle = solve_stationary(build_generator(p, t, q_max));
    out.push_back(below("one-slot closed form vs oracle", sup_distance(closed, oracle), 1e-8, describe(raw)));
    out.push_back(below("one-slot total-count identity", max_marginal_error(closed, t.rho, q_max - 1), 1e-10,
                        describe(raw)));
  }

  for (int a : {0, 2, 5}) {
    for (double rho : {0.3, 0.7}) {
      const auto closed = approx_stationary(rho, a);
      const auto oracle = solve_stationary(build_generator_approx(rho, a, std::max(2, closed.l_max)));
      std::ostringstream who;
      who << "rho=" << rho << " A=" << a;
      out.push_back(below("limit closed form vs oracle", sup_distance(closed, oracle), 1e-8, who.str()));
    }
  }

  for (double rho : {0.8, 0.9, 0.95}) {
    const double mu = 2.5, nu = 0.6, omega = 2.0;
    const double lambda = rho * mu;
    const auto closed_gap = theorem2_decision(lambda, mu, nu, omega).g_gap;
    const auto law = b1_stationary(lambda, mu, nu, 0, moment_truncation(rho, 1e-13));
    const double numeric_gap = congestion_cost(law, omega).value - mm1_second_moment(rho);
    std::ostringstream who;
    who << "rho=" << rho;
    out.push_back(below("one-slot design gap", std::abs(closed_gap - numeric_gap), 1e-9, who.str()));
  }

  const double nus[] = {0.4, 0.2, 0.1, 0.05};
  const auto rows = conjecture_sweep({6.0, 7.2, 0.0, 0.45, 0.0}, 0.35, nus, SweepMode::oracle);
  int violations = 0;
  std::ostringstream trend;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    trend << (i ? " " : "") << rows[i].sup_distance;
    if (i > 0 && !(rows[i].sup_distance < rows[i - 1].sup_distance)) ++violations;
  }
  out.push_back({"small-nu distance strictly decreasing", violations == 0, double(violations), 1.0, trend.str()});
  return out;
}

}  // namespace lounge
