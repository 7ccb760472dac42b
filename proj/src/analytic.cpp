#include "lounge/analytic.hpp"

#include <cmath>
#include <string>

namespace lounge {

int tail_truncation(double rho, double tol) {
  if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("tail_truncation: rho must be in (0,1)");
  int k = static_cast<int>(std::ceil(std::log(tol * (1.0 - rho)) / std::log(rho))) - 1;
  k = std::max(k, 0);
  while (k > 0 && std::pow(rho, k) / (1.0 - rho) < tol) --k;
  while (!(std::pow(rho, k + 1) / (1.0 - rho) < tol)) ++k;
  return k;
}

int moment_truncation(double rho, double tol) {
  int k = tail_truncation(rho, tol);
  while (!(mm1_second_moment_tail(rho, k) < tol)) ++k;
  return k;
}

StationaryDistribution b1_stationary(double lambda, double mu, double nu, int a_int, int q_max) {
  if (a_int < 0) throw std::invalid_argument("b1_stationary: a_int must be >= 0");
  if (q_max < a_int + 2) throw std::invalid_argument("truncation below closed-form switch point");
  const double rho = lambda / mu;
  const double psi = (1.0 - rho) / (mu + nu);
  const auto m = make_m_sequence((lambda + mu + nu) / mu, rho, a_int);
  const double lounge_head = std::pow(rho, a_int + 2) * psi * mu;  // pi_{A+1,1}

  StationaryDistribution d;
  d.source = SourceTag::b1_closed_form;
  d.q_max = q_max;
  d.l_max = 1;
  d.tail_mass_bound = std::pow(rho, q_max + 1);
  d.tail_moment_bound = mm1_second_moment_tail(rho, q_max);

  auto pi_q1 = [&](int q) {
    if (q < a_int + 1) return m.ratio(q - 1, a_int) * lounge_head;
    return std::pow(rho, q + 1) * psi * mu;
  };

  d.entries[{0, 0}] = 1.0 - rho;
  d.entries[{1, 0}] = rho * (1.0 - rho);
  for (int q = 2; q <= q_max; ++q) {
    d.entries[{q, 0}] = q < a_int + 2 ? mm1_pmf(rho, q) - pi_q1(q - 1) : std::pow(rho, q) * psi * nu;
  }
  for (int q = 1; q <= q_max; ++q) d.entries[{q, 1}] = pi_q1(q);
  return d;
}

StationaryDistribution b1_stationary(const SystemParams& params, int q_max) {
  const auto t = derive_thresholds(params);
  if (q_max < 0) q_max = std::max(tail_truncation(t.rho), t.a_int + 2);
  auto d = b1_stationary(params.lambda(), params.mu(), params.nu(), t.a_int, q_max);
  if (t.b_int != 1) {
    d.note = "lounge threshold of these parameters is " + std::to_string(t.b_int) +
             ", not 1; distribution describes the one-slot lounge system only";
  }
  return d;
}

StationaryDistribution approx_stationary(double rho, int a_int, int l_max) {
  if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("approx_stationary: rho must be in (0,1)");
  if (a_int < 0) throw std::invalid_argument("approx_stationary: a_int must be >= 0");
  if (l_max < 0) l_max = tail_truncation(rho);
  if (l_max < 1) l_max = 1;

  StationaryDistribution d;
  d.source = SourceTag::approx_closed_form;
  d.q_max = a_int + 1;
  d.l_max = l_max;
  d.tail_mass_bound = std::pow(rho, l_max + 1);
  d.tail_moment_bound = mm1_second_moment_tail(rho, l_max);

  const double norm = 1.0 - std::pow(rho, a_int + 1);
  const double layer = (1.0 - rho) * (1.0 - rho) / norm;
  d.entries[{0, 0}] = 1.0 - rho;
  for (int q = 1; q <= a_int; ++q) {
    d.entries[{q, 0}] = (1.0 - rho) * std::pow(rho, q) * (1.0 - std::pow(rho, a_int + 2 - q)) / norm;
  }
  for (int l = 0; l <= l_max; ++l) {
    const double p = std::pow(rho, a_int + l + 1) * layer;
    if (l > 0) {
      for (int q = 1; q <= a_int; ++q) d.entries[{q, l}] = p;
    }
    d.entries[{a_int + 1, l}] = p;
  }
  return d;
}

}  // namespace lounge
