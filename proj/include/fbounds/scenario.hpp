#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fbounds/model.hpp"

namespace fbounds {

// A discrete structural model: a finite noise space plus deterministic
// equations. Enumerating it yields the exact canonical model, with no
// sampling error.
struct StructuralScenario {
  std::string name;
  // (noise configuration, probability); probabilities sum to one.
  std::vector<std::pair<std::vector<int>, double>> noise_space;
  std::function<int(const std::vector<int>&)> natural_a;
  std::function<int(const std::vector<int>&)> natural_b;
  // Outcome when treatments are forced to (a, b) under the given noise.
  std::function<int(const std::vector<int>&, int a, int b)> outcome;

  CanonicalModel enumerate() const {
    CanonicalModel model;
    for (const auto& [u, prob] : noise_space) {
      const int a = natural_a(u);
      const int b = natural_b(u);
      const ResponseType t = ResponseType::from_outcomes(
          outcome(u, 0, 0), outcome(u, 0, 1), outcome(u, 1, 0), outcome(u, 1, 1));
      model.q(a, b, t.index) += prob;
    }
    return model;
  }
};

// A named data setting: the margins every consumer needs, plus the canonical
// model and truth when the scenario defines one (margin-only scenarios leave
// them empty).
struct Scenario {
  std::string name;
  std::optional<CanonicalModel> model;
  ObservationalDist obs;
  FactorialDist fact;
  std::optional<SingleTreatmentTruth> truth;
};

namespace detail {

// Two confounded binary treatments driven by four Bernoulli noise bits; the
// outcome mixes AND/XOR gates so that treatment effects interact and flip
// sign between arms.
inline StructuralScenario example1_structure() {
  StructuralScenario s;
  s.name = "example1";
  const double p_uay = 0.65, p_uby = 0.80, p_uy1 = 0.95, p_uy2 = 0.90;
  for (int uay = 0; uay < 2; ++uay)
    for (int uby = 0; uby < 2; ++uby)
      for (int uy1 = 0; uy1 < 2; ++uy1)
        for (int uy2 = 0; uy2 < 2; ++uy2) {
          const double prob = (uay ? p_uay : 1 - p_uay) * (uby ? p_uby : 1 - p_uby) *
                              (uy1 ? p_uy1 : 1 - p_uy1) * (uy2 ? p_uy2 : 1 - p_uy2);
          s.noise_space.push_back({{uay, uby, uy1, uy2}, prob});
        }
  s.natural_a = [](const std::vector<int>& u) { return u[0]; };
  s.natural_b = [](const std::vector<int>& u) { return u[1]; };
  // y = (u_ay AND NOT((u_y1 AND b) XOR (u_by AND u_y1))) XOR (a XOR u_y2);
  // conjunction binds tighter than exclusive-or.
  s.outcome = [](const std::vector<int>& u, int a, int b) {
    const int uay = u[0], uby = u[1], uy1 = u[2], uy2 = u[3];
    const int inner = ((uy1 & b) ^ (uby & uy1));
    return (uay & (1 - inner)) ^ (a ^ uy2);
  };
  return s;
}

// Strata table: four non-interactive, monotone response types with
// cell-conditional masses, times the natural-cell distribution.
inline CanonicalModel example2_model() {
  CanonicalModel model;
  const double cell_prob[4] = {0.15, 0.5, 0.1, 0.25};  // (a0b0, a0b1, a1b0, a1b1)
  struct Row {
    int type;
    double mass[4];
  };
  const Row rows[] = {
      {ResponseType::from_outcomes(0, 0, 0, 0).index, {0.05, 0.09, 0.05, 0.12}},
      {ResponseType::from_outcomes(0, 0, 1, 1).index, {0.70, 0.60, 0.50, 0.50}},
      {ResponseType::from_outcomes(0, 1, 0, 1).index, {0.10, 0.10, 0.02, 0.03}},
      {ResponseType::from_outcomes(1, 1, 1, 1).index, {0.15, 0.21, 0.43, 0.35}},
  };
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (const Row& row : rows)
        model.q(a, b, row.type) = cell_prob[2 * a + b] * row.mass[2 * a + b];
  return model;
}

// Margins on which two distinct monotone models agree while their E[Y_{a1}]
// differs (1 vs 0.9): the witness that monotonicity does not identify
// single-treatment effects.
inline Scenario counterexample_mono() {
  Scenario s;
  s.name = "counterexample-mono";
  s.obs.prob(0, 0, 0) = 0.15;
  s.obs.prob(0, 0, 1) = 0.10;
  s.obs.prob(0, 1, 1) = 0.25;
  s.obs.prob(1, 0, 1) = 0.25;
  s.obs.prob(1, 1, 1) = 0.25;
  const double arm_mean[2][2] = {{0.85, 1.0}, {0.90, 1.0}};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      s.fact.prob(a, b, 1) = arm_mean[a][b];
      s.fact.prob(a, b, 0) = 1.0 - arm_mean[a][b];
    }
  return s;
}

// Margins with a constant arm contrast (0.5) on which two distinct
// non-interactive monotone models disagree about E[Y_a].
inline Scenario counterexample_nointeract() {
  Scenario s;
  s.name = "counterexample-nointeract";
  s.obs.prob(0, 0, 0) = 0.1;
  s.obs.prob(0, 0, 1) = 0.1;
  s.obs.prob(0, 1, 1) = 0.2;
  s.obs.prob(1, 1, 1) = 0.6;
  const double arm_mean[2][2] = {{0.1, 0.4}, {0.6, 0.9}};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      s.fact.prob(a, b, 1) = arm_mean[a][b];
      s.fact.prob(a, b, 0) = 1.0 - arm_mean[a][b];
    }
  return s;
}

inline Scenario from_model(std::string name, const CanonicalModel& model) {
  Scenario s;
  s.name = std::move(name);
  s.model = model;
  s.obs = forward_observational(model);
  s.fact = forward_factorial(model);
  s.truth = single_treatment_truth(model);
  return s;
}

}  // namespace detail

inline const std::vector<std::string>& builtin_scenario_names() {
  static const std::vector<std::string> names = {
      "example1", "example2", "counterexample-mono", "counterexample-nointeract"};
  return names;
}

inline Scenario builtin_scenario(const std::string& name) {
  if (name == "example1")
    return detail::from_model(name, detail::example1_structure().enumerate());
  if (name == "example2") return detail::from_model(name, detail::example2_model());
  if (name == "counterexample-mono") return detail::counterexample_mono();
  if (name == "counterexample-nointeract") return detail::counterexample_nointeract();
  throw model_error("unknown scenario: " + name);
}

}  // namespace fbounds
