#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fbounds/json_io.hpp"
#include "fbounds/scenario.hpp"

using namespace fbounds;

TEST_CASE("scenario json round trip") {
  const Scenario s = builtin_scenario("example2");
  const std::string text = scenario_to_json(s.obs, s.fact).dump(2);
  const ScenarioInput parsed = parse_scenario_json(text);
  REQUIRE(parsed.obs.has_value());
  REQUIRE(parsed.fact.has_value());
  for (int i = 0; i < 8; ++i) {
    CHECK(parsed.obs->cell[i] == doctest::Approx(s.obs.cell[i]).epsilon(1e-12));
    CHECK(parsed.fact->cell[i] == doctest::Approx(s.fact.cell[i]).epsilon(1e-12));
  }
}

TEST_CASE("sections are optional but not both absent") {
  const ScenarioInput fact_only = parse_scenario_json(
      R"({"factorial":{"r":{"0,0,1":0.5,"0,0,0":0.5,"0,1,1":1.0,"1,0,1":0.25,"1,0,0":0.75,"1,1,1":1.0}}})");
  CHECK_FALSE(fact_only.obs.has_value());
  REQUIRE(fact_only.fact.has_value());
  CHECK(fact_only.fact->prob(0, 1, 1) == doctest::Approx(1.0));
  CHECK(fact_only.fact->prob(0, 1, 0) == doctest::Approx(0.0));  // omitted cell

  CHECK_THROWS_AS((void)parse_scenario_json(R"({})"), model_error);
}

TEST_CASE("invalid documents are rejected with reasons") {
  auto expect_error = [](const std::string& text, const std::string& needle) {
    try {
      (void)parse_scenario_json(text);
      FAIL_CHECK("expected error for: " << text);
    } catch (const model_error& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  expect_error("[1,2]", "object");
  expect_error("{\"observational\": 3}", "'p' map");
  expect_error(R"({"observational":{"p":{"0,1":0.5}}})", "bad cell key");
  expect_error(R"({"observational":{"p":{"0,2,1":0.5}}})", "0 or 1");
  expect_error(R"({"observational":{"p":{"0,0,1":"x"}}})", "not a number");
  // sums off beyond the 1e-9 input tolerance
  expect_error(R"({"observational":{"p":{"0,0,1":0.5,"1,1,1":0.4}}})", "sum");
  expect_error(R"({"factorial":{"r":{"0,0,1":0.7,"0,0,0":0.7,"0,1,1":1,"1,0,1":1,"1,1,1":1}}})",
               "sum");
  expect_error(R"({"observational":{"p":{"0,0,1":1.5,"0,1,1":-0.5}}})", "negative");
  expect_error("{nope", "scenario json");
}

TEST_CASE("tiny deviations inside the input tolerance pass") {
  const ScenarioInput in = parse_scenario_json(
      R"({"observational":{"p":{"0,0,1":0.2500000000,"0,1,1":0.25,"1,0,1":0.25,"1,1,1":0.2499999999}}})");
  REQUIRE(in.obs.has_value());
}
