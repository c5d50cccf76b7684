#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>

#include "fbounds/model.hpp"

namespace fbounds {

// Average marginal component effects: factorial contrasts averaged over a
// weighting distribution for the other treatment.
struct AmceEstimate {
  double ey_a0 = 0;
  double ey_a1 = 0;
  double ate = 0;
};

// Weights the factorial arms by a supplied distribution of B (typically the
// observational marginal). Point-identifies E[Y_a] under interactive
// linearity or an unconfounded B; otherwise it is a descriptive functional.
inline AmceEstimate amce_population(const FactorialDist& fact,
                                    const std::array<double, 2>& p_b) {
  if (!(p_b[0] >= -kInputTol) || !(p_b[1] >= -kInputTol) ||
      std::abs(p_b[0] + p_b[1] - 1.0) > kInputTol)
    throw model_error("p_b is not a distribution over {0, 1}");
  AmceEstimate out;
  for (int b = 0; b < 2; ++b) {
    out.ey_a0 += fact.mean(0, b) * p_b[b];
    out.ey_a1 += fact.mean(1, b) * p_b[b];
  }
  out.ate = out.ey_a1 - out.ey_a0;
  return out;
}

// Uniform weighting over B; identifies the ATE under additive separability
// (no interaction).
inline double amce_uniform(const FactorialDist& fact) {
  return 0.5 * ((fact.mean(1, 0) - fact.mean(0, 0)) + (fact.mean(1, 1) - fact.mean(0, 1)));
}

// ---------------------------------------------------------------------------
// Identification advisor
// ---------------------------------------------------------------------------

enum class GraphCase {
  fully_confounded,  // A, B, Y pairwise confounded
  b_no_effect,       // B confounded but has no arrow into Y
  b_unconfounded,    // B causes Y, B-Y unconfounded
  all_unconfounded,  // no confounding anywhere
};

enum class Functional { none, monotone, no_interaction, linear_interactive, linear_additive };

enum class DataRegime { observational, factorial, both };

struct AssumptionProfile {
  GraphCase graph_case = GraphCase::fully_confounded;
  Functional functional = Functional::none;
  DataRegime data = DataRegime::both;
};

enum class EstimatorTag { none, amce_population, amce_uniform, observational_conditional };

struct Verdict {
  enum class Target { ey_a, ate };
  Target estimand = Target::ey_a;
  bool identified = false;
  EstimatorTag estimator = EstimatorTag::none;
  std::string citation;
};

inline const char* to_string(EstimatorTag tag) {
  switch (tag) {
    case EstimatorTag::none: return "none";
    case EstimatorTag::amce_population: return "amce-population";
    case EstimatorTag::amce_uniform: return "amce-uniform";
    case EstimatorTag::observational_conditional: return "observational-conditional";
  }
  return "?";
}

namespace detail {

// Parametric route: full confounding assumed, identification carried by the
// functional form alone.
inline Verdict advise_functional(Functional f, DataRegime data, Verdict::Target target) {
  Verdict v;
  v.estimand = target;
  const bool has_fact = data != DataRegime::observational;
  const bool has_obs = data != DataRegime::factorial;
  switch (f) {
    case Functional::none:
    case Functional::monotone:
      v.citation = "not identified: confounded single-treatment world";
      return v;
    case Functional::no_interaction:
      if (target == Verdict::Target::ate && has_fact) {
        v.identified = true;
        v.estimator = EstimatorTag::amce_uniform;
        v.citation = "additive separability";
      } else {
        v.citation = "not identified: additive separability covers the ate only";
      }
      return v;
    case Functional::linear_interactive:
      if (has_fact && has_obs) {
        v.identified = true;
        v.estimator = EstimatorTag::amce_population;
        v.citation = "interactive linearity";
      } else {
        v.citation = "not identified: interactive linearity needs both regimes";
      }
      return v;
    case Functional::linear_additive:
      if (has_fact) {
        v.identified = true;
        v.estimator = target == Verdict::Target::ate ? EstimatorTag::amce_uniform
                                                     : EstimatorTag::amce_population;
        v.citation = "strict linearity";
      } else {
        v.citation = "not identified: observational data alone stays confounded";
      }
      return v;
  }
  return v;
}

// Structural route: identification carried by the graph, nonparametrically.
inline Verdict advise_structural(GraphCase g, DataRegime data, Verdict::Target target) {
  Verdict v;
  v.estimand = target;
  const bool has_fact = data != DataRegime::observational;
  const bool has_obs = data != DataRegime::factorial;
  switch (g) {
    case GraphCase::fully_confounded:
      v.citation = "not identified: confounded single-treatment world";
      return v;
    case GraphCase::b_no_effect:
      // Interventions on B do not move Y, so any weighting of the arms
      // recovers E[Y_a] (do-calculus rule 3).
      if (has_fact) {
        v.identified = true;
        v.estimator = EstimatorTag::amce_uniform;
        v.citation = "rule 3 (any weighting valid)";
      } else {
        v.citation = "not identified: confounded, no factorial arms";
      }
      return v;
    case GraphCase::b_unconfounded:
      if (has_fact && has_obs) {
        v.identified = true;
        v.estimator = EstimatorTag::amce_population;
        v.citation = "rule 2";
      } else {
        v.citation = "not identified: needs both regimes";
      }
      return v;
    case GraphCase::all_unconfounded:
      if (has_fact) {
        v.identified = true;
        v.estimator = EstimatorTag::amce_uniform;
        v.citation = "rule 3";
      } else {
        v.identified = true;
        v.estimator = EstimatorTag::observational_conditional;
        v.citation = "rule 1";
      }
      return v;
  }
  return v;
}

}  // namespace detail

// Verdict for one profile and estimand. The structural and parametric routes
// are consulted independently; either suffices. When both identify, the
// structural route's estimator is reported (it needs no functional form).
inline Verdict advise(const AssumptionProfile& profile, Verdict::Target target) {
  const Verdict structural = detail::advise_structural(profile.graph_case, profile.data, target);
  if (structural.identified) return structural;
  const Verdict functional = detail::advise_functional(profile.functional, profile.data, target);
  if (functional.identified) return functional;
  // Neither route identifies; report the reason along the route the user
  // actually strengthened.
  return profile.functional == Functional::none ? structural : functional;
}

}  // namespace fbounds
