#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "lounge/analytic.hpp"
#include "lounge/ctmc.hpp"
#include "lounge/sim.hpp"
#include "support.hpp"

using namespace lounge;

namespace {

// rho = 0.5, A = 1, B = 1
const RawParams one_slot{1.0, 2.0, 0.5, 1.0, 0.375};

void require_identical(const SimResult& a, const SimResult& b) {
  REQUIRE(a.empirical_dist.entries == b.empirical_dist.entries);
  REQUIRE(a.lounge_entry_fraction == b.lounge_entry_fraction);
  REQUIRE(a.mean_q == b.mean_q);
  REQUIRE(a.second_moment_l == b.second_moment_l);
  REQUIRE(a.sim_time == b.sim_time);
  REQUIRE(a.replications.size() == b.replications.size());
  for (std::size_t r = 0; r < a.replications.size(); ++r) {
    REQUIRE(a.replications[r].seed == b.replications[r].seed);
    REQUIRE(a.replications[r].lounge_entries == b.replications[r].lounge_entries);
  }
}

}  // namespace

TEST_CASE("configuration is checked") {
  const auto p = SystemParams::from(one_slot);
  SimConfig c;
  c.total_events = 0;
  CHECK_THROWS_AS(simulate(p, c), std::invalid_argument);
  c.total_events = 10;
  c.warmup_fraction = 1.0;
  CHECK_THROWS_AS(simulate(p, c), std::invalid_argument);
  CHECK(parse_policy("threshold") == PolicyVariant::threshold);
  CHECK_THROWS_AS(parse_policy("greedy"), std::invalid_argument);
}

TEST_CASE("heavy load: nobody enters the lounge") {
  const auto p = SystemParams::from({2.3, 2.5, 0.3, 1.0, 0.2});
  SimConfig c;
  c.total_events = 200'000;
  const auto r = simulate(p, c);
  CHECK(r.lounge_entry_fraction == 0.0);
  CHECK(r.replications[0].lounge_entries == 0);
  CHECK(r.replications[0].arrivals > 0);
  CHECK(r.mean_l == 0.0);
}

TEST_CASE("same seed, same result; parallel replications change nothing") {
  const auto p = SystemParams::from(testing::busy_params());
  SimConfig c;
  c.total_events = 100'000;
  c.replications = 3;
  c.seed = 42;
  const auto a = simulate(p, c);
  const auto b = simulate(p, c);
  require_identical(a, b);
  c.jobs = 3;
  require_identical(a, simulate(p, c));
  CHECK(a.replications[1].seed == (42u ^ 1u));

  c.seed = 43;
  CHECK(simulate(p, c).mean_q != a.mean_q);
}

TEST_CASE("empirical law is normalised and never dwells in (0, l > 0)") {
  const auto p = SystemParams::from(testing::busy_params());
  for (auto policy : {PolicyVariant::exact_cost, PolicyVariant::threshold, PolicyVariant::approximating}) {
    SimConfig c;
    c.total_events = 200'000;
    c.policy = policy;
    const auto r = simulate(p, c);
    CHECK(std::abs(r.empirical_dist.total() - 1.0) < 1e-12);
    for (const auto& [s, prob] : r.empirical_dist.entries) CHECK_FALSE((s.q == 0 && s.l > 0));
    CHECK(r.lounge_entry_fraction >= 0.0);
    CHECK(r.lounge_entry_fraction <= 1.0);
  }
}

TEST_CASE("exact-cost and threshold policies produce the same trajectory") {
  const auto p = SystemParams::from(testing::busy_params());
  SimConfig c;
  c.total_events = 200'000;
  const auto exact = simulate(p, c);
  c.policy = PolicyVariant::threshold;
  require_identical(exact, simulate(p, c));
}

TEST_CASE("one-slot system: empirical law near the closed form") {
  const auto p = SystemParams::from(one_slot);
  SimConfig c;
  c.total_events = 3'000'000;
  c.seed = 9;
  const auto r = simulate(p, c);
  const auto closed = b1_stationary(p);
  CHECK(sup_distance(r.empirical_dist, closed) < 5e-3);
  for (int n = 0; n <= 10; ++n) CHECK(std::abs(marginal_total(r.empirical_dist, n) - mm1_pmf(0.5, n)) < 5e-3);
}

TEST_CASE("lounge entry fraction matches P(Q > A, L < B) under the oracle law") {
  const auto p = SystemParams::from({1.0, 2.0, 0.25, 1.0, 0.1});
  const auto t = derive_thresholds(p);
  REQUIRE(t.a_int == 0);
  REQUIRE(t.b_int == 4);
  const auto oracle = solve_stationary(build_generator(p, t, tail_truncation(t.rho) + t.b_int));
  double target = 0.0;
  for (const auto& [s, prob] : oracle.entries)
    if (s.q > t.a_int && s.l < t.b_int) target += prob;

  SimConfig c;
  c.total_events = 1'000'000;
  c.replications = 6;
  c.seed = 123;
  const auto r = simulate(p, c);
  std::vector<double> fractions;
  for (const auto& rep : r.replications) fractions.push_back(rep.lounge_entry_fraction);
  const auto ci = mean_ci(fractions);
  CHECK(std::abs(ci.mean - target) < 3.0 * ci.std_error + 1e-12);
}

TEST_CASE("second moments match the oracle within 2%") {
  const auto p = SystemParams::from({1.4, 2.0, 0.25, 1.0, 0.1});  // rho = 0.7
  const auto t = derive_thresholds(p);
  const auto oracle = solve_stationary(build_generator(p, t, tail_truncation(t.rho) + t.b_int + 3));
  double eq2 = 0.0, el2 = 0.0;
  for (const auto& [s, prob] : oracle.entries) {
    eq2 += double(s.q) * s.q * prob;
    el2 += double(s.l) * s.l * prob;
  }
  SimConfig c;
  c.total_events = 10'000'000;
  c.seed = 2024;
  const auto r = simulate(p, c);
  CHECK(std::abs(r.second_moment_q / eq2 - 1.0) < 0.02);
  CHECK(std::abs(r.second_moment_l / el2 - 1.0) < 0.02);
}

TEST_CASE("sup distance") {
  const auto d = approx_stationary(0.5, 2);
  CHECK(sup_distance(d, d) == 0.0);
  StationaryDistribution single;
  single.entries[{0, 0}] = 1.0;
  CHECK(sup_distance(d, single) == doctest::Approx(0.5));
  CHECK(sup_distance(single, d) == sup_distance(d, single));
}

TEST_CASE("mean and confidence interval") {
  const double one[] = {0.3};
  CHECK(mean_ci(one).half_width == 0.0);
  const double values[] = {1.0, 2.0, 3.0};
  const auto ci = mean_ci(values);
  CHECK(ci.mean == doctest::Approx(2.0));
  CHECK(ci.std_error == doctest::Approx(1.0 / std::sqrt(3.0)));
  CHECK(ci.half_width == doctest::Approx(1.96 / std::sqrt(3.0)));
}

TEST_CASE("small-nu sweep") {
  const RawParams base{6.0, 7.2, 0.0, 0.45, 0.0};
  SUBCASE("single nu gives a single row") {
    const double nus[] = {0.1};
    const auto rows = conjecture_sweep(base, 0.35, nus, SweepMode::oracle);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].a_int == 5);
    CHECK(rows[0].b_int == 7);
  }
  SUBCASE("oracle distances fall as nu shrinks") {
    const double nus[] = {0.4, 0.2, 0.1, 0.05};
    const auto rows = conjecture_sweep(base, 0.35, nus, SweepMode::oracle);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].sup_distance < rows[i - 1].sup_distance);
    const auto again = conjecture_sweep(base, 0.35, nus, SweepMode::oracle);
    for (std::size_t i = 0; i < rows.size(); ++i) CHECK(rows[i].sup_distance == again[i].sup_distance);
  }
  SUBCASE("monte-carlo mode reports a replication interval") {
    const double nus[] = {0.2, 0.05};
    SimConfig c;
    c.total_events = 200'000;
    c.replications = 3;
    const auto rows = conjecture_sweep(base, 0.35, nus, SweepMode::monte_carlo, c);
    REQUIRE(rows.size() == 2);
    for (const auto& row : rows) {
      CHECK(row.replications == 3);
      CHECK(row.ci_half_width > 0.0);
      CHECK(row.sup_distance > 0.0);
    }
  }
}
