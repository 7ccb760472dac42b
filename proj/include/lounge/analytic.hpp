#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "lounge/distribution.hpp"
#include "lounge/params.hpp"

namespace lounge {

/// P(N = n) = rho^n (1 - rho) for an M/M/1 queue.
template <typename Scalar>
Scalar mm1_pmf(Scalar rho, int n) {
  using std::pow;
  return pow(rho, n) * (Scalar(1) - rho);
}

/// E[N^2] = rho (1 + rho) / (1 - rho)^2 for an M/M/1 queue.
template <typename Scalar>
Scalar mm1_second_moment(Scalar rho) {
  const Scalar one_minus = Scalar(1) - rho;
  return rho * (Scalar(1) + rho) / (one_minus * one_minus);
}

/// sum_{n > k} n^2 rho^n (1 - rho), in closed form.
template <typename Scalar>
Scalar mm1_second_moment_tail(Scalar rho, int k) {
  using std::pow;
  const Scalar m = Scalar(k + 1);
  const Scalar one_minus = Scalar(1) - rho;
  return pow(rho, k + 1) *
         (m * m + Scalar(2) * m * rho / one_minus + rho * (Scalar(1) + rho) / (one_minus * one_minus));
}

/// Smallest k with rho^(k+1) / (1 - rho) < tol.
int tail_truncation(double rho, double tol = 1e-12);

/// Smallest k with mm1_second_moment_tail(rho, k) < tol.
int moment_truncation(double rho, double tol);

/// The sequence m_0 = 1, m_1 = t, m_k = t m_{k-1} - rho m_{k-2} with
/// t = (lambda + mu + nu) / mu.
///
/// m_k grows like r_plus^k, so values are kept as logarithms built from the
/// successive ratios m_k / m_{k-1}; only ratios of m are ever needed by the
/// stationary law.
template <typename Scalar>
struct MSequence {
  Scalar theta_over_mu{};
  Scalar rho{};
  Scalar r_plus{};
  Scalar r_minus{};
  Scalar discriminant{};
  std::vector<Scalar> log_values;

  /// Below this discriminant the two roots are treated as coalesced and the
  /// closed form is not used.
  static constexpr double kMinDiscriminant = 1e-9;

  int size() const { return static_cast<int>(log_values.size()); }
  bool closed_form_reliable() const { return discriminant > Scalar(kMinDiscriminant); }

  Scalar value(int k) const {
    using std::exp;
    return exp(log_values.at(k));
  }

  /// m_i / m_j without forming either value.
  Scalar ratio(int i, int j) const {
    using std::exp;
    return exp(log_values.at(i) - log_values.at(j));
  }

  /// U r_plus^k + V r_minus^k.
  Scalar closed_form(int k) const {
    using std::pow;
    const Scalar gap = r_plus - r_minus;
    const Scalar u = (theta_over_mu - r_minus) / gap;
    const Scalar v = (r_plus - theta_over_mu) / gap;
    return u * pow(r_plus, k) + v * pow(r_minus, k);
  }
};

template <typename Scalar>
MSequence<Scalar> make_m_sequence(Scalar theta_over_mu, Scalar rho, int k_max) {
  using std::log;
  using std::sqrt;
  if (k_max < 0) throw std::invalid_argument("make_m_sequence: k_max must be >= 0");
  MSequence<Scalar> m;
  m.theta_over_mu = theta_over_mu;
  m.rho = rho;
  m.discriminant = theta_over_mu * theta_over_mu - Scalar(4) * rho;
  const Scalar root = m.discriminant > Scalar(0) ? sqrt(m.discriminant) : Scalar(0);
  m.r_plus = (theta_over_mu + root) / Scalar(2);
  // product of the roots is rho; avoids cancellation in t - sqrt(.)
  m.r_minus = rho / m.r_plus;

  m.log_values.reserve(static_cast<std::size_t>(k_max) + 1);
  m.log_values.push_back(Scalar(0));
  Scalar step = theta_over_mu;  // m_k / m_{k-1}
  for (int k = 1; k <= k_max; ++k) {
    if (k > 1) step = theta_over_mu - rho / step;
    m.log_values.push_back(m.log_values.back() + log(step));
  }
  return m;
}

/// Exact stationary law of the system whose lounge holds at most one
/// customer, with queue threshold a_int, truncated at q <= q_max.
/// Throws std::invalid_argument if q_max < a_int + 2.
StationaryDistribution b1_stationary(double lambda, double mu, double nu, int a_int, int q_max);

/// Same, with a_int taken from the parameters. If their lounge threshold is
/// not 1 the law does not describe the actual system; this is recorded in
/// the note rather than rejected. q_max < 0 selects the default tail rule.
StationaryDistribution b1_stationary(const SystemParams& params, int q_max = -1);

/// Stationary law of the limit system (nu -> 0 with beta / nu fixed):
/// queue confined to 0..a_int+1, lounge unbounded, truncated at l <= l_max.
/// l_max < 0 selects the default tail rule.
StationaryDistribution approx_stationary(double rho, int a_int, int l_max = -1);

}  // namespace lounge
