#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <optional>

#include "fbounds/closed_form.hpp"
#include "fbounds/scenario.hpp"
#include "test_support.hpp"

using namespace fbounds;

namespace {

struct RegimeCase {
  const char* name;
  bool with_obs;
  bool monotone;
  std::vector<Estimand> estimands;
};

const std::vector<RegimeCase>& regimes() {
  static const std::vector<RegimeCase> cases = {
      {"factorial-only", false, false,
       {Estimand::ey_a1(), Estimand::ey_a0(), Estimand::ate()}},
      {"both", true, false, {Estimand::ey_a1(), Estimand::ey_a0(), Estimand::ate()}},
      {"factorial-only monotone", false, true, {Estimand::ey_a1(), Estimand::ate()}},
      {"both monotone", true, true, {Estimand::ey_a1(), Estimand::ate()}},
  };
  return cases;
}

}  // namespace

TEST_CASE("boundary cases of the factorial-only expressions") {
  FactorialDist forced;
  for (int b = 0; b < 2; ++b) {
    forced.prob(1, b, 1) = 1.0;
    forced.prob(0, b, 1) = 0.6;
    forced.prob(0, b, 0) = 0.4;
  }
  const BoundsResult ey =
      closed_form_bounds(Estimand::ey_a1(), forced, std::nullopt, false);
  CHECK(ey.method == BoundsMethod::closed_form);
  CHECK(ey.lower == doctest::Approx(1.0));
  CHECK(ey.upper == doctest::Approx(1.0));

  FactorialDist half;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      half.prob(a, b, 1) = 0.5;
      half.prob(a, b, 0) = 0.5;
    }
  const BoundsResult ate = closed_form_bounds(Estimand::ate(), half, std::nullopt, false);
  CHECK(ate.lower == doctest::Approx(-1.0));
  CHECK(ate.upper == doctest::Approx(1.0));
}

TEST_CASE("closed forms match the LP on random models in all four regimes") {
  for (const RegimeCase& regime : regimes()) {
    CAPTURE(regime.name);
    const AssumptionSet as =
        regime.monotone ? AssumptionSet::monotone_both() : AssumptionSet::none();
    int tested = 0;
    for (std::uint64_t seed = 1; seed <= 250; ++seed) {
      const CanonicalModel m = testing::mixed_model(seed * 131 + 7, as);
      const FactorialDist fact = forward_factorial(m);
      const std::optional<ObservationalDist> obs =
          regime.with_obs ? std::optional<ObservationalDist>(forward_observational(m))
                          : std::nullopt;
      for (const Estimand& est : regime.estimands) {
        const BoundsResult lp = lp_bounds(obs, fact, as, est);
        REQUIRE(lp.status == BoundsStatus::feasible);
        const BoundsResult cf = closed_form_bounds(est, fact, obs, regime.monotone);
        REQUIRE(cf.status == BoundsStatus::feasible);
        CHECK(std::abs(cf.lower - lp.lower) <= 1e-6);
        CHECK(std::abs(cf.upper - lp.upper) <= 1e-6);
        ++tested;
      }
    }
    CHECK(tested == 250 * static_cast<int>(regime.estimands.size()));
  }
}

TEST_CASE("closed forms stay sharp on every one-point stratum model") {
  // Vertices of the strata polytope are the harshest inputs: each bound
  // expression must be tight against the LP on all of them.
  for (const RegimeCase& regime : regimes()) {
    CAPTURE(regime.name);
    const AssumptionSet as =
        regime.monotone ? AssumptionSet::monotone_both() : AssumptionSet::none();
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int t = 0; t < kNumResponseTypes; ++t) {
          if (as.forbids(a, b, t)) continue;
          CanonicalModel m;
          m.q(a, b, t) = 1.0;
          const FactorialDist fact = forward_factorial(m);
          const std::optional<ObservationalDist> obs =
              regime.with_obs ? std::optional<ObservationalDist>(forward_observational(m))
                              : std::nullopt;
          for (const Estimand& est : regime.estimands) {
            const BoundsResult lp = lp_bounds(obs, fact, as, est);
            REQUIRE(lp.status == BoundsStatus::feasible);
            const BoundsResult cf = closed_form_bounds(est, fact, obs, regime.monotone);
            CHECK(std::abs(cf.lower - lp.lower) <= 1e-9);
            CHECK(std::abs(cf.upper - lp.upper) <= 1e-9);
          }
        }
  }
}

TEST_CASE("monotone counterexample margins: upper endpoint is one") {
  const Scenario s = builtin_scenario("counterexample-mono");
  const BoundsResult cf = closed_form_bounds(Estimand::ey_a1(), s.fact, s.obs, true);
  REQUIRE(cf.status == BoundsStatus::feasible);
  CHECK(cf.upper == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(cf.width() > 1e-6);
  const BoundsResult lp =
      lp_bounds(s.obs, s.fact, AssumptionSet::monotone_both(), Estimand::ey_a1());
  CHECK(std::abs(cf.lower - lp.lower) <= 1e-6);
  CHECK(std::abs(cf.upper - lp.upper) <= 1e-6);
}

TEST_CASE("uncovered combinations are rejected") {
  const Scenario s = builtin_scenario("example2");
  CHECK_THROWS_AS((void)closed_form_bounds(Estimand::ey_a0(), s.fact, s.obs, true),
                  model_error);
  std::array<double, kNumStrata> zeros{};
  CHECK_THROWS_AS((void)closed_form_bounds(Estimand::custom_coefficients(zeros), s.fact,
                                           s.obs, false),
                  model_error);
  CHECK_THROWS_AS((void)reconcile(Estimand::ate(), s.fact, s.obs,
                                  AssumptionSet::without_interaction()),
                  model_error);
  AssumptionSet lopsided;
  lopsided.monotone_a = true;
  CHECK_THROWS_AS((void)reconcile(Estimand::ate(), s.fact, s.obs, lopsided), model_error);
}

TEST_CASE("every term carries a provenance tag and factorial-only tables have no obs atoms") {
  for (const RegimeCase& regime : regimes()) {
    for (const Estimand& est : regime.estimands) {
      const ClosedFormPair& pair =
          closed_form_table(est.kind, regime.with_obs, regime.monotone);
      for (const auto* list : {&pair.lower, &pair.upper}) {
        CHECK_FALSE(list->terms.empty());
        for (const BoundTerm& t : list->terms) {
          if (!regime.with_obs) CHECK_FALSE(t.needs_observational());
          CHECK((t.source == TermSource::stated || t.source == TermSource::resolved ||
                 t.source == TermSource::oracle));
        }
      }
    }
  }
}

TEST_CASE("reconcile reports agreement and adjudication notes") {
  const Scenario s = builtin_scenario("example2");
  const ReconcileReport rep =
      reconcile(Estimand::ate(), s.fact, s.obs, AssumptionSet::none());
  REQUIRE(rep.lp.status == BoundsStatus::feasible);
  REQUIRE(rep.closed.has_value());
  CHECK(rep.agree);
  CHECK(rep.max_endpoint_diff <= 1e-6);
  CHECK_FALSE(rep.notes.empty());

  const ReconcileReport mono =
      reconcile(Estimand::ey_a1(), s.fact, s.obs, AssumptionSet::monotone_both());
  CHECK(mono.agree);
}

TEST_CASE("reconcile propagates infeasibility without comparing") {
  const Scenario s = builtin_scenario("example2");
  FactorialDist ones;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) ones.prob(a, b, 1) = 1.0;
  const ReconcileReport rep =
      reconcile(Estimand::ate(), ones, s.obs, AssumptionSet::none());
  CHECK(rep.lp.status == BoundsStatus::infeasible);
  CHECK_FALSE(rep.closed.has_value());
  CHECK_FALSE(rep.agree);
  CHECK(rep.notes.front().find("infeasible") != std::string::npos);
}
