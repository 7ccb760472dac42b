#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <sstream>

#include "lounge/analytic.hpp"
#include "lounge/design.hpp"

using namespace lounge;

TEST_CASE("congestion cost of simple laws") {
  StationaryDistribution empty;
  empty.entries[{0, 0}] = 1.0;
  CHECK(congestion_cost(empty, 3.0).value == 0.0);

  StationaryDistribution mm1;
  const double rho = 0.4;
  const int k = tail_truncation(rho);
  for (int n = 0; n <= k; ++n) mm1.entries[{n, 0}] = mm1_pmf(rho, n);
  mm1.tail_moment_bound = mm1_second_moment_tail(rho, k);
  CHECK(congestion_cost(mm1, 1.0).value == doctest::Approx(mm1_second_moment(rho)).epsilon(1e-9));

  StationaryDistribution bad = mm1;
  bad.tail_moment_bound = 1.0;
  CHECK_THROWS_AS(congestion_cost(bad, 1.0), TruncationError);
}

TEST_CASE("one-slot law: summed cost equals the closed form") {
  const auto d = b1_stationary(1.0, 2.0, 1.5, 0, 400);
  CHECK(congestion_cost(d, 2.0).value == doctest::Approx(g_one_slot_closed_form(1.0, 2.0, 1.5, 2.0)).epsilon(1e-9));
  // G(0) from the limit law at the same load is a different quantity
  CHECK(g_of_a(0.5, 0, 2.0) != doctest::Approx(g_one_slot_closed_form(1.0, 2.0, 1.5, 2.0)));
}

TEST_CASE("G(A) beats the baseline where the lounge is used") {
  const double mu = 2.5, nu = 0.1, omega = 1.2;
  for (double rho : {0.4, 0.55, 0.7}) {
    const auto r = optimize_design(rho * mu, mu, nu, omega);
    REQUIRE(r.g_star);
    CHECK(*r.g_star < r.g_baseline);
    CHECK(r.verdict == Verdict::provide_lf);
    CHECK(r.g_baseline == doctest::Approx(mm1_second_moment(rho)));
    for (const auto& [a, g] : r.g_values) CHECK(g >= *r.g_star);
  }
  CHECK(optimize_design(0.55 * 2.5, 2.5, 0.1, 1.2).a_star == 1);
}

TEST_CASE("G(A) approaches the baseline as A grows") {
  const double rho = 0.3;
  const double go = mm1_second_moment(rho);
  double prev = std::abs(g_of_a(rho, 5, 1.0) - go);
  for (int a : {10, 20, 40}) {
    const double gap = std::abs(g_of_a(rho, a, 1.0) - go);
    CHECK(gap <= prev);
    prev = gap;
  }
  CHECK(prev < 1e-9);
}

TEST_CASE("optimizer reports the admissible range") {
  CHECK(max_design_threshold(1.0, 2.5, 0.1) == 14);  // (2.5 - 1) / 0.1 is not exactly 15 in binary
  CHECK(max_design_threshold(2.0, 2.5, 0.1) == 4);
  CHECK(max_design_threshold(2.0, 2.5, 0.5) == 0);
  CHECK(lounge_threshold_for(1.0, 2.5, 0.1, 3) == 12);

  const auto r = optimize_design(1.0, 2.5, 0.1, 1.2);
  CHECK(r.g_values.size() == 15);
  CHECK(r.g_values.begin()->first == 0);
  CHECK(!r.omega_bar);
}

TEST_CASE("heavy-load regime uses the one-slot comparison") {
  const double lambda = 1.0, mu = 2.0, nu = 1.5;
  const auto t = theorem2_decision(lambda, mu, nu, 3.0);
  CHECK(t.omega_bar == doctest::Approx(5.0));
  CHECK(t.verdict == Verdict::provide_lf);
  CHECK(t.g_gap < 0.0);

  const auto at = theorem2_decision(lambda, mu, nu, 5.0);
  CHECK(std::abs(at.g_gap) < 1e-12);
  CHECK(at.verdict == Verdict::no_lf);

  const auto above = theorem2_decision(lambda, mu, nu, 6.0);
  CHECK(above.verdict == Verdict::no_lf);
  CHECK(above.g_gap > 0.0);

  const auto d = optimize_design(lambda, mu, nu, 6.0);
  CHECK(d.verdict == Verdict::no_lf);
  REQUIRE(d.omega_bar);
  CHECK(*d.omega_bar == doctest::Approx(5.0));

  CHECK_THROWS_AS(theorem2_decision(1.0, 2.5, 0.1, 1.0), RegimeError);
}

TEST_CASE("omega_bar grows with load") {
  double prev = 0.0;
  for (double rho = 0.05; rho < 0.99; rho += 0.05) {
    const double mu = 1.0, lambda = rho * mu, nu = 1.0;
    const double ob = theorem2_decision(lambda, mu, nu, 1.0).omega_bar;
    CHECK(ob > prev);
    prev = ob;
  }
}

TEST_CASE("design sweep") {
  const double mu = 2.5, nu = 0.1;
  SUBCASE("single cell") {
    const double omegas[] = {1.2};
    const double rhos[] = {0.55};
    const auto rows = design_sweep(mu, nu, omegas, rhos);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].a_star == 1);
    CHECK(rows[0].verdict == Verdict::provide_lf);
  }
  SUBCASE("rows are omega-major and jobs-invariant") {
    const double omegas[] = {0.5, 1.2, 2.0};
    std::vector<double> rhos;
    for (int i = 2; i <= 18; ++i) rhos.push_back(0.05 * i);
    const auto a = design_sweep(mu, nu, omegas, rhos);
    const auto b = design_sweep(mu, nu, omegas, rhos, DistributionSource::approx_closed_form, 4);
    REQUIRE(a.size() == 3 * rhos.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].omega == omegas[i / rhos.size()]);
      CHECK(a[i].a_star == b[i].a_star);
      CHECK(a[i].g_star == b[i].g_star);
    }
    // a larger weight on lounge congestion never lowers the optimal threshold
    for (std::size_t j = 0; j < rhos.size(); ++j)
      for (std::size_t w = 1; w < 3; ++w) {
        const auto& lo = a[(w - 1) * rhos.size() + j];
        const auto& hi = a[w * rhos.size() + j];
        if (lo.a_star && hi.a_star) CHECK(*hi.a_star >= *lo.a_star);
      }
  }
  SUBCASE("oracle source agrees on the verdict") {
    const double omegas[] = {1.2};
    const double rhos[] = {0.4, 0.55, 0.7};
    const auto approx = design_sweep(mu, nu, omegas, rhos);
    const auto oracle = design_sweep(mu, nu, omegas, rhos, DistributionSource::oracle, 3);
    for (std::size_t i = 0; i < approx.size(); ++i) {
      CHECK(approx[i].verdict == oracle[i].verdict);
      if (approx[i].a_star != oracle[i].a_star)
        MESSAGE("rho=" << rhos[i] << " a_star approx=" << *approx[i].a_star << " oracle=" << *oracle[i].a_star);
    }
  }
}

TEST_CASE("source names") {
  CHECK(parse_source("oracle") == DistributionSource::oracle);
  CHECK(parse_source("approx-closed-form") == DistributionSource::approx_closed_form);
  CHECK_THROWS_AS(parse_source("exact"), std::invalid_argument);
  CHECK(std::string(to_string(Verdict::provide_lf)) == "provide-LF");
}
