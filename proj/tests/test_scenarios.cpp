#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fbounds/scenario.hpp"

using namespace fbounds;

TEST_CASE("structural enumeration is exact and total") {
  const StructuralScenario s = detail::example1_structure();
  double prob_sum = 0;
  for (const auto& [u, p] : s.noise_space) {
    CHECK(p >= 0);
    CHECK(s.natural_a(u) == u[0]);
    CHECK(s.natural_b(u) == u[1]);
    prob_sum += p;
  }
  CHECK(prob_sum == doctest::Approx(1.0).epsilon(1e-15));
  const CanonicalModel m = s.enumerate();
  m.validate();
}

TEST_CASE("builtin scenario catalogue") {
  CHECK(builtin_scenario_names().size() == 4);
  for (const auto& name : builtin_scenario_names()) {
    const Scenario s = builtin_scenario(name);
    CHECK(s.name == name);
    s.obs.validate(1e-12);
    s.fact.validate(1e-12);
    if (s.model) {
      CHECK(s.truth.has_value());
      s.model->validate();
    }
  }
  CHECK_THROWS_AS((void)builtin_scenario("nope"), model_error);
}

TEST_CASE("example1 forwards agree with its attached distributions") {
  const Scenario s = builtin_scenario("example1");
  REQUIRE(s.model.has_value());
  const ObservationalDist obs = forward_observational(*s.model);
  const FactorialDist fact = forward_factorial(*s.model);
  for (int i = 0; i < 8; ++i) {
    CHECK(obs.cell[i] == doctest::Approx(s.obs.cell[i]).epsilon(1e-15));
    CHECK(fact.cell[i] == doctest::Approx(s.fact.cell[i]).epsilon(1e-15));
  }
}

TEST_CASE("example2 is monotone and non-interactive by construction") {
  const Scenario s = builtin_scenario("example2");
  REQUIRE(s.model.has_value());
  CHECK(interaction_mass(*s.model) == doctest::Approx(0.0));
  const AssumptionSet mono = AssumptionSet::monotone_both();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int t = 0; t < kNumResponseTypes; ++t)
        if (s.model->q(a, b, t) > 0) CHECK_FALSE(mono.forbids(a, b, t));
  REQUIRE(s.truth.has_value());
  CHECK(std::abs(s.truth->ate - 0.58) < 1e-9);
}
