#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fbounds/identify.hpp"
#include "fbounds/rng.hpp"
#include "fbounds/scenario.hpp"

using namespace fbounds;

namespace {

std::array<double, 2> obs_b_marginal(const ObservationalDist& obs) {
  return {obs.marginal_b(0), obs.marginal_b(1)};
}

// Model whose response type is independent of the natural cell: the
// strata-level analogue of an unconfounded B.
CanonicalModel independent_type_model(std::uint64_t seed) {
  Rng rng(seed);
  std::array<double, 4> cell{};
  std::array<double, 16> type{};
  double cs = 0, ts = 0;
  for (double& v : cell) {
    v = rng.next_exponential();
    cs += v;
  }
  for (double& v : type) {
    v = rng.next_exponential();
    ts += v;
  }
  CanonicalModel m;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int t = 0; t < kNumResponseTypes; ++t)
        m.q(a, b, t) = (cell[2 * a + b] / cs) * (type[t] / ts);
  return m;
}

}  // namespace

TEST_CASE("population-weighted contrasts on the builtin scenarios") {
  const Scenario ex1 = builtin_scenario("example1");
  const AmceEstimate pop = amce_population(ex1.fact, {0.2, 0.8});
  CHECK(std::abs(pop.ate - (-0.07616)) < 1e-12);

  // Point mass on b0 reduces to the single-arm contrast.
  const AmceEstimate arm0 = amce_population(ex1.fact, {1.0, 0.0});
  CHECK(std::abs(arm0.ate - (-0.5504)) < 1e-12);
  CHECK(std::abs((ex1.fact.mean(1, 0) - ex1.fact.mean(0, 0)) - arm0.ate) < 1e-15);

  const Scenario ex2 = builtin_scenario("example2");
  const AmceEstimate pop2 = amce_population(ex2.fact, obs_b_marginal(ex2.obs));
  CHECK(pop2.ate == doctest::Approx(0.58).epsilon(1e-9));
}

TEST_CASE("uniform-weighted contrasts") {
  const Scenario ex1 = builtin_scenario("example1");
  CHECK(std::abs(amce_uniform(ex1.fact) - (-0.254)) < 1e-12);

  const Scenario ex2 = builtin_scenario("example2");
  CHECK(amce_uniform(ex2.fact) == doctest::Approx(0.58).epsilon(1e-9));

  FactorialDist equal;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      equal.prob(a, b, 1) = 0.3;
      equal.prob(a, b, 0) = 0.7;
    }
  CHECK(amce_uniform(equal) == doctest::Approx(0.0));
}

TEST_CASE("invalid weights are rejected") {
  const Scenario ex1 = builtin_scenario("example1");
  CHECK_THROWS_AS((void)amce_population(ex1.fact, {0.7, 0.7}), model_error);
  CHECK_THROWS_AS((void)amce_population(ex1.fact, {-0.1, 1.1}), model_error);
}

TEST_CASE("F-bias on example1: both estimators flip the sign of the truth") {
  const Scenario ex1 = builtin_scenario("example1");
  REQUIRE(ex1.truth.has_value());
  CHECK(ex1.truth->ate > 0.0);
  CHECK(amce_uniform(ex1.fact) < 0.0);
  CHECK(amce_population(ex1.fact, obs_b_marginal(ex1.obs)).ate < 0.0);
}

TEST_CASE("population weighting is exact when types are independent of the cell") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const CanonicalModel m = independent_type_model(seed);
    const SingleTreatmentTruth truth = single_treatment_truth(m);
    const AmceEstimate est = amce_population(forward_factorial(m),
                                             obs_b_marginal(forward_observational(m)));
    CHECK(std::abs(est.ey_a1 - truth.ey_a1) < 1e-9);
    CHECK(std::abs(est.ey_a0 - truth.ey_a0) < 1e-9);
    CHECK(std::abs(est.ate - truth.ate) < 1e-9);
  }
}

TEST_CASE("uniform weighting is exact without interaction") {
  for (std::uint64_t seed = 40; seed <= 70; ++seed) {
    const CanonicalModel m = random_model(seed, AssumptionSet::without_interaction());
    const double truth = single_treatment_truth(m).ate;
    CHECK(std::abs(amce_uniform(forward_factorial(m)) - truth) < 1e-9);
  }
}

namespace {

struct ParametricRow {
  Functional functional;
  DataRegime data;
  bool ey_identified;
  bool ate_identified;
};

// Parametric decision table under full confounding, transcribed as a test
// fixture; the advisor logic must reproduce every cell.
const ParametricRow kParametricTable[] = {
    {Functional::none, DataRegime::factorial, false, false},
    {Functional::none, DataRegime::observational, false, false},
    {Functional::none, DataRegime::both, false, false},
    {Functional::monotone, DataRegime::factorial, false, false},
    {Functional::monotone, DataRegime::observational, false, false},
    {Functional::monotone, DataRegime::both, false, false},
    {Functional::no_interaction, DataRegime::factorial, false, true},
    {Functional::no_interaction, DataRegime::observational, false, false},
    {Functional::no_interaction, DataRegime::both, false, true},
    {Functional::linear_interactive, DataRegime::factorial, false, false},
    {Functional::linear_interactive, DataRegime::observational, false, false},
    {Functional::linear_interactive, DataRegime::both, true, true},
    {Functional::linear_additive, DataRegime::factorial, true, true},
    {Functional::linear_additive, DataRegime::observational, false, false},
    {Functional::linear_additive, DataRegime::both, true, true},
};

struct StructuralRow {
  GraphCase graph;
  bool observational;
  bool factorial;
  bool both;
};

// Structural decision table for E[Y_a] (functional form unrestricted).
const StructuralRow kStructuralTable[] = {
    {GraphCase::fully_confounded, false, false, false},
    {GraphCase::b_no_effect, false, true, true},
    {GraphCase::b_unconfounded, false, false, true},
    {GraphCase::all_unconfounded, true, true, true},
};

}  // namespace

TEST_CASE("advisor reproduces the parametric table") {
  for (const ParametricRow& row : kParametricTable) {
    const AssumptionProfile profile{GraphCase::fully_confounded, row.functional, row.data};
    const Verdict ey = advise(profile, Verdict::Target::ey_a);
    const Verdict ate = advise(profile, Verdict::Target::ate);
    CAPTURE(static_cast<int>(row.functional));
    CAPTURE(static_cast<int>(row.data));
    CHECK(ey.identified == row.ey_identified);
    CHECK(ate.identified == row.ate_identified);
    CHECK(ey.identified == (ey.estimator != EstimatorTag::none));
    CHECK(ate.identified == (ate.estimator != EstimatorTag::none));
  }
}

TEST_CASE("advisor reproduces the structural table") {
  for (const StructuralRow& row : kStructuralTable) {
    for (const auto& [data, expected] :
         {std::pair{DataRegime::observational, row.observational},
          std::pair{DataRegime::factorial, row.factorial},
          std::pair{DataRegime::both, row.both}}) {
      const AssumptionProfile profile{row.graph, Functional::none, data};
      const Verdict v = advise(profile, Verdict::Target::ey_a);
      CAPTURE(static_cast<int>(row.graph));
      CAPTURE(static_cast<int>(data));
      CHECK(v.identified == expected);
      CHECK(v.identified == (v.estimator != EstimatorTag::none));
    }
  }
}

TEST_CASE("specific advisor cells carry the expected estimators") {
  const Verdict rule2 = advise({GraphCase::b_unconfounded, Functional::none, DataRegime::both},
                               Verdict::Target::ey_a);
  CHECK(rule2.estimator == EstimatorTag::amce_population);
  CHECK(rule2.citation.find("rule 2") != std::string::npos);

  const Verdict rule1 = advise(
      {GraphCase::all_unconfounded, Functional::none, DataRegime::observational},
      Verdict::Target::ey_a);
  CHECK(rule1.estimator == EstimatorTag::observational_conditional);

  const Verdict as = advise(
      {GraphCase::fully_confounded, Functional::no_interaction, DataRegime::both},
      Verdict::Target::ate);
  CHECK(as.estimator == EstimatorTag::amce_uniform);

  const Verdict lin = advise(
      {GraphCase::fully_confounded, Functional::linear_interactive, DataRegime::both},
      Verdict::Target::ey_a);
  CHECK(lin.estimator == EstimatorTag::amce_population);

  // Irrelevant treatments can be weighted arbitrarily even with a functional
  // assumption in play.
  const Verdict rule3 = advise(
      {GraphCase::b_no_effect, Functional::monotone, DataRegime::factorial},
      Verdict::Target::ey_a);
  CHECK(rule3.identified);
  CHECK(rule3.citation.find("any weighting") != std::string::npos);
}
