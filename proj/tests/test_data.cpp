#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "fbounds/bootstrap.hpp"
#include "fbounds/data.hpp"
#include "fbounds/scenario.hpp"

using namespace fbounds;

TEST_CASE("sampling shapes and determinism") {
  const Scenario s = builtin_scenario("example2");
  REQUIRE(s.model.has_value());

  const Dataset empty = sample_dataset(*s.model, 0, 0, 1);
  CHECK(empty.rows.empty());

  const Dataset arms = sample_dataset(*s.model, 0, 5, 1);
  CHECK(arms.rows.size() == 20);
  EmpiricalCounts counts = empirical_distributions(arms).counts;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) CHECK(counts.arm[a][b] == 5);

  const Dataset d1 = sample_dataset(*s.model, 100, 25, 9);
  const Dataset d2 = sample_dataset(*s.model, 100, 25, 9);
  const Dataset d3 = sample_dataset(*s.model, 100, 25, 10);
  CHECK(d1.rows.size() == 200);
  bool same = d1.rows.size() == d2.rows.size();
  for (std::size_t i = 0; same && i < d1.rows.size(); ++i)
    same = d1.rows[i].regime == d2.rows[i].regime && d1.rows[i].a == d2.rows[i].a &&
           d1.rows[i].b == d2.rows[i].b && d1.rows[i].y == d2.rows[i].y;
  CHECK(same);
  bool differs = false;
  for (std::size_t i = 0; i < d1.rows.size(); ++i)
    differs |= d1.rows[i].y != d3.rows[i].y || d1.rows[i].a != d3.rows[i].a;
  CHECK(differs);
}

TEST_CASE("large-sample frequencies approach the forward maps") {
  const Scenario s = builtin_scenario("example2");
  const Dataset data = sample_dataset(*s.model, 1000000, 250000, 2024);
  const EmpiricalDistributions emp = empirical_distributions(data);
  REQUIRE(emp.obs.has_value());
  REQUIRE(emp.fact.has_value());
  CHECK(std::abs(emp.obs->marginal_ab(1, 1) - 0.25) < 0.002);
  for (int i = 0; i < 8; ++i) {
    CHECK(std::abs(emp.obs->cell[i] - s.obs.cell[i]) < 0.005);
    CHECK(std::abs(emp.fact->cell[i] - s.fact.cell[i]) < 0.005);
  }
}

TEST_CASE("csv round trip and parse errors") {
  const Scenario s = builtin_scenario("example1");
  const Dataset data = sample_dataset(*s.model, 37, 11, 5);
  std::ostringstream out;
  write_dataset_csv(out, data);
  std::istringstream in(out.str());
  const Dataset back = parse_dataset_csv(in);
  REQUIRE(back.rows.size() == data.rows.size());
  for (std::size_t i = 0; i < data.rows.size(); ++i) {
    CHECK(back.rows[i].regime == data.rows[i].regime);
    CHECK(back.rows[i].a == data.rows[i].a);
    CHECK(back.rows[i].b == data.rows[i].b);
    CHECK(back.rows[i].y == data.rows[i].y);
  }

  auto expect_error = [](const std::string& text, const std::string& needle) {
    std::istringstream bad(text);
    try {
      (void)parse_dataset_csv(bad);
      FAIL_CHECK("expected parse error for: " << text);
    } catch (const model_error& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  expect_error("a,b,y\n", "header");
  expect_error("regime,a,b,y\nobs,0,1\n", "line 2");
  expect_error("regime,a,b,y\nobs,0,1,1\nboth,0,1,1\n", "line 3");
  expect_error("regime,a,b,y\nexp,0,2,1\n", "must be 0 or 1");
  expect_error("regime,a,b,y\nexp,0,1,1,9\n", "trailing");
}

TEST_CASE("empirical distribution edge cases") {
  Dataset degenerate;
  for (int i = 0; i < 4; ++i) degenerate.rows.push_back({Regime::obs, 0, 0, 1});
  const EmpiricalDistributions emp = empirical_distributions(degenerate);
  REQUIRE(emp.obs.has_value());
  CHECK_FALSE(emp.fact.has_value());
  CHECK(emp.obs->prob(0, 0, 1) == doctest::Approx(1.0));

  Dataset exp_only;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int i = 0; i < 3; ++i) exp_only.rows.push_back({Regime::exp, a, b, i % 2});
  const EmpiricalDistributions emp2 = empirical_distributions(exp_only);
  CHECK_FALSE(emp2.obs.has_value());
  REQUIRE(emp2.fact.has_value());

  Dataset missing_arm;
  missing_arm.rows.push_back({Regime::exp, 0, 0, 1});
  missing_arm.rows.push_back({Regime::exp, 0, 1, 1});
  CHECK_THROWS_AS((void)empirical_distributions(missing_arm), model_error);

  CHECK_THROWS_AS((void)empirical_distributions(Dataset{}), model_error);
}

TEST_CASE("percentile ranks follow the order-statistic rule") {
  CHECK(detail::percentile_interval({4.0, 2.0, 3.0, 1.0}, 0.5) ==
        std::pair<double, double>{2.0, 4.0});
  // single replicate: both ends collapse onto it
  CHECK(detail::percentile_interval({7.5}, 0.05) == std::pair<double, double>{7.5, 7.5});
  std::vector<double> two_hundred;
  for (int i = 1; i <= 200; ++i) two_hundred.push_back(i);
  const auto ci = detail::percentile_interval(two_hundred, 0.05);
  CHECK(ci.first == 6.0);     // index floor(0.025 * 200) = 5
  CHECK(ci.second == 196.0);  // index ceil(0.975 * 200) = 195
}

TEST_CASE("bootstrap determinism and degenerate replicate count") {
  const Scenario s = builtin_scenario("example2");
  const Dataset data = sample_dataset(*s.model, 300, 75, 11);

  const BootstrapResult one =
      bootstrap_bounds(data, Estimand::ate(), AssumptionSet::none(), 1, 0.05, 3);
  CHECK(one.ci_lower.first == one.ci_lower.second);
  CHECK(one.ci_upper.first == one.ci_upper.second);

  const BootstrapResult a =
      bootstrap_bounds(data, Estimand::ate(), AssumptionSet::none(), 25, 0.1, 7);
  const BootstrapResult b =
      bootstrap_bounds(data, Estimand::ate(), AssumptionSet::none(), 25, 0.1, 7);
  CHECK(a.ci_lower == b.ci_lower);
  CHECK(a.ci_upper == b.ci_upper);
  CHECK(a.point.lower == b.point.lower);
  const BootstrapResult c =
      bootstrap_bounds(data, Estimand::ate(), AssumptionSet::none(), 25, 0.1, 8);
  CHECK((a.ci_lower != c.ci_lower || a.ci_upper != c.ci_upper));

  CHECK(a.ci_lower.first <= a.ci_lower.second);
  CHECK(a.ci_upper.first <= a.ci_upper.second);
  CHECK(a.slack_mean >= 0.0);
  CHECK(a.slack_max >= a.slack_mean);

  CHECK_THROWS_AS(
      (void)bootstrap_bounds(data, Estimand::ate(), AssumptionSet::none(), 0, 0.05, 1),
      model_error);
  CHECK_THROWS_AS(
      (void)bootstrap_bounds(data, Estimand::ate(), AssumptionSet::none(), 5, 1.5, 1),
      model_error);
}

TEST_CASE("coverage smoke test: 50 seeded repetitions at n = 1000") {
  const Scenario s = builtin_scenario("example2");
  int covered = 0;
  for (std::uint64_t rep = 1; rep <= 50; ++rep) {
    const Dataset data = sample_dataset(*s.model, 1000, 250, rep);
    const BootstrapResult boot =
        bootstrap_bounds(data, Estimand::ate(), AssumptionSet::none(), 60, 0.05, rep * 1000);
    covered += boot.ci_lower.first <= s.truth->ate && boot.ci_upper.second >= s.truth->ate;
  }
  CHECK(covered >= 45);
}

TEST_CASE("large-sample round trip reproduces the population bounds") {
  const Scenario s = builtin_scenario("example2");
  const BoundsResult population =
      lp_bounds(s.obs, s.fact, AssumptionSet::none(), Estimand::ate());
  const Dataset data = sample_dataset(*s.model, 100000, 25000, 99);
  const EmpiricalDistributions emp = empirical_distributions(data);
  const BoundsResult empirical = lp_bounds(emp.obs, emp.fact, AssumptionSet::none(),
                                           Estimand::ate(), SlackPolicy::automatic());
  REQUIRE(empirical.status == BoundsStatus::feasible);
  CHECK(std::abs(empirical.lower - population.lower) < 0.02);
  CHECK(std::abs(empirical.upper - population.upper) < 0.02);
}

TEST_CASE("bootstrap intervals cover the population endpoints at modest n") {
  const Scenario s = builtin_scenario("example2");
  const BoundsResult population =
      lp_bounds(s.obs, s.fact, AssumptionSet::none(), Estimand::ate());
  const Dataset data = sample_dataset(*s.model, 600, 150, 21);
  const BootstrapResult boot =
      bootstrap_bounds(data, Estimand::ate(), AssumptionSet::none(), 80, 0.05, 22);
  CHECK(boot.ci_lower.first <= population.lower + 1e-9);
  CHECK(boot.ci_lower.second >= population.lower - 1e-9);
  CHECK(boot.ci_upper.first <= population.upper + 1e-9);
  CHECK(boot.ci_upper.second >= population.upper - 1e-9);
  // CI-extended interval covers the truth
  CHECK(boot.ci_lower.first <= s.truth->ate);
  CHECK(boot.ci_upper.second >= s.truth->ate);
}
