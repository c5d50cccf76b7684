#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "fbounds/rng.hpp"

namespace fbounds {

// Tolerance for invariants of internally constructed distributions.
inline constexpr double kModelTol = 1e-12;
// Tolerance applied to externally supplied probabilities (files, CLI).
inline constexpr double kInputTol = 1e-9;

struct model_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A unit's full potential-outcome vector over the four treatment arms,
// (Y_{a0,b0}, Y_{a0,b1}, Y_{a1,b0}, Y_{a1,b1}), packed as a 4-bit index with
// Y_{a0,b0} in the most significant position. 16 distinct values.
struct ResponseType {
  int index = 0;

  constexpr int y_a0b0() const { return (index >> 3) & 1; }
  constexpr int y_a0b1() const { return (index >> 2) & 1; }
  constexpr int y_a1b0() const { return (index >> 1) & 1; }
  constexpr int y_a1b1() const { return index & 1; }

  // Outcome of this unit when treatments are set to (a, b).
  constexpr int outcome_at(int a, int b) const {
    return (index >> (3 - (2 * a + b))) & 1;
  }

  static constexpr ResponseType from_outcomes(int y00, int y01, int y10, int y11) {
    return {y00 * 8 + y01 * 4 + y10 * 2 + y11};
  }
};

inline constexpr int kNumResponseTypes = 16;
inline constexpr int kNumStrata = 64;  // (natural a, natural b, response type)

constexpr int stratum_index(int a, int b, int t) { return (2 * a + b) * 16 + t; }

// A response type is interactive when its A-contrast changes with the level
// of B (equivalently, its B-contrast changes with A). Exactly six types are
// non-interactive: 0000, 0011, 0101, 1010, 1100, 1111.
constexpr bool is_interactive(ResponseType t) {
  return (t.y_a1b0() - t.y_a0b0()) != (t.y_a1b1() - t.y_a0b1());
}

// Response types whose A-effect (resp. B-effect) is negative for a unit with
// the given natural value of the *other* treatment. These are the strata a
// monotonicity assumption removes, cell by cell.
constexpr bool violates_monotone_a(ResponseType t, int natural_b) {
  return natural_b == 0 ? t.y_a0b0() > t.y_a1b0() : t.y_a0b1() > t.y_a1b1();
}
constexpr bool violates_monotone_b(ResponseType t, int natural_a) {
  return natural_a == 0 ? t.y_a0b0() > t.y_a0b1() : t.y_a1b0() > t.y_a1b1();
}

// Joint distribution Pr(Y, A, B) observed without intervention.
struct ObservationalDist {
  std::array<double, 8> cell{};  // index (a << 2) | (b << 1) | y

  static constexpr int idx(int a, int b, int y) { return (a << 2) | (b << 1) | y; }
  double prob(int a, int b, int y) const { return cell[idx(a, b, y)]; }
  double& prob(int a, int b, int y) { return cell[idx(a, b, y)]; }

  double marginal_ab(int a, int b) const { return prob(a, b, 0) + prob(a, b, 1); }
  double marginal_ay(int a, int y) const { return prob(a, 0, y) + prob(a, 1, y); }
  double marginal_by(int b, int y) const { return prob(0, b, y) + prob(1, b, y); }
  double marginal_a(int a) const { return marginal_ab(a, 0) + marginal_ab(a, 1); }
  double marginal_b(int b) const { return marginal_ab(0, b) + marginal_ab(1, b); }
  double marginal_y(int y) const { return marginal_ay(0, y) + marginal_ay(1, y); }

  void validate(double tol = kModelTol) const {
    double sum = 0;
    for (double v : cell) {
      if (!(v >= -tol)) throw model_error("observational probability is negative");
      sum += v;
    }
    if (std::abs(sum - 1.0) > tol)
      throw model_error("observational probabilities sum to " + std::to_string(sum));
  }
};

// Factorial-arm outcome distributions Pr(Y_{a,b} = y); each arm's two
// entries sum to one.
struct FactorialDist {
  std::array<double, 8> cell{};

  static constexpr int idx(int a, int b, int y) { return (a << 2) | (b << 1) | y; }
  double prob(int a, int b, int y) const { return cell[idx(a, b, y)]; }
  double& prob(int a, int b, int y) { return cell[idx(a, b, y)]; }

  // Arm mean E[Y_{a,b}].
  double mean(int a, int b) const { return prob(a, b, 1); }

  void validate(double tol = kModelTol) const {
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        const double p0 = prob(a, b, 0), p1 = prob(a, b, 1);
        if (!(p0 >= -tol) || !(p1 >= -tol))
          throw model_error("factorial probability is negative");
        if (std::abs(p0 + p1 - 1.0) > tol)
          throw model_error("factorial arm does not sum to one");
      }
  }
};

// Canonical principal-strata model: joint mass over (natural A, natural B,
// response type). The 64 weights are the variables of every linear program
// in this library.
struct CanonicalModel {
  std::array<double, kNumStrata> weight{};

  double q(int a, int b, int t) const { return weight[stratum_index(a, b, t)]; }
  double& q(int a, int b, int t) { return weight[stratum_index(a, b, t)]; }

  double cell_mass(int a, int b) const {
    double sum = 0;
    for (int t = 0; t < kNumResponseTypes; ++t) sum += q(a, b, t);
    return sum;
  }

  void validate(double tol = kModelTol) const {
    double sum = 0;
    for (double v : weight) {
      if (!(v >= -tol)) throw model_error("stratum weight is negative");
      sum += v;
    }
    if (std::abs(sum - 1.0) > tol)
      throw model_error("stratum weights sum to " + std::to_string(sum));
  }
};

// True single-treatment quantities of a known model.
struct SingleTreatmentTruth {
  double ey_a0 = 0;
  double ey_a1 = 0;
  double ate = 0;
};

// Assumptions imposed on the strata. Monotonicity flags and the
// no-interaction flag remove strata outright; max_interaction caps the total
// mass on interactive strata at theta.
struct AssumptionSet {
  bool monotone_a = false;
  bool monotone_b = false;
  bool no_interaction = false;
  std::optional<double> max_interaction;

  static AssumptionSet none() { return {}; }
  static AssumptionSet monotone_both() { return {true, true, false, std::nullopt}; }
  static AssumptionSet without_interaction() { return {false, false, true, std::nullopt}; }
  static AssumptionSet interaction_at_most(double theta) {
    return AssumptionSet{false, false, false, theta}.normalized();
  }

  // Collapses the redundant encodings: theta == 0 is the no-interaction
  // flag; the flag makes any theta meaningless.
  AssumptionSet normalized() const {
    AssumptionSet out = *this;
    if (out.max_interaction) {
      const double theta = *out.max_interaction;
      if (!(theta >= 0.0 && theta <= 1.0))
        throw model_error("max_interaction must lie in [0, 1]");
      if (theta == 0.0) {
        out.no_interaction = true;
        out.max_interaction.reset();
      }
    }
    if (out.no_interaction) out.max_interaction.reset();
    return out;
  }

  // True when the assumption set fixes q(a, b, t) = 0.
  bool forbids(int a, int b, int t) const {
    const ResponseType rt{t};
    if (monotone_a && violates_monotone_a(rt, b)) return true;
    if (monotone_b && violates_monotone_b(rt, a)) return true;
    if (no_interaction && is_interactive(rt)) return true;
    return false;
  }
};

// ---------------------------------------------------------------------------
// Forward maps
// ---------------------------------------------------------------------------

// Pr(Y, A, B): at natural cell (a, b) the observed outcome is the response
// type's entry for that same arm.
inline ObservationalDist forward_observational(const CanonicalModel& model) {
  ObservationalDist out;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int t = 0; t < kNumResponseTypes; ++t)
        out.prob(a, b, ResponseType{t}.outcome_at(a, b)) += model.q(a, b, t);
  return out;
}

// Pr(Y_{a*, b*}): intervention reaches every unit regardless of natural cell.
inline FactorialDist forward_factorial(const CanonicalModel& model) {
  FactorialDist out;
  for (int arm_a = 0; arm_a < 2; ++arm_a)
    for (int arm_b = 0; arm_b < 2; ++arm_b)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          for (int t = 0; t < kNumResponseTypes; ++t)
            out.prob(arm_a, arm_b, ResponseType{t}.outcome_at(arm_a, arm_b)) +=
                model.q(a, b, t);
  return out;
}

// E[Y_a]: intervening on A alone leaves each unit's B at its natural value,
// so the relevant response-type entry is selected by the unit's natural b.
inline SingleTreatmentTruth single_treatment_truth(const CanonicalModel& model) {
  SingleTreatmentTruth out;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int t = 0; t < kNumResponseTypes; ++t) {
        const ResponseType rt{t};
        const double w = model.q(a, b, t);
        out.ey_a0 += w * (b == 0 ? rt.y_a0b0() : rt.y_a0b1());
        out.ey_a1 += w * (b == 0 ? rt.y_a1b0() : rt.y_a1b1());
      }
  out.ate = out.ey_a1 - out.ey_a0;
  return out;
}

// Total mass on the ten interactive response types.
inline double interaction_mass(const CanonicalModel& model) {
  double sum = 0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int t = 0; t < kNumResponseTypes; ++t)
        if (is_interactive(ResponseType{t})) sum += model.q(a, b, t);
  return sum;
}

// ---------------------------------------------------------------------------
// Random models
// ---------------------------------------------------------------------------

// Uniform draw from the simplex over the strata the assumption set allows
// (exponential spacings, i.e. a flat Dirichlet restricted to the support).
// When a max_interaction cap is present and the draw exceeds it, interactive
// mass is rescaled to sit exactly at the cap.
inline CanonicalModel random_model(std::uint64_t seed,
                                   const AssumptionSet& assumptions = {}) {
  const AssumptionSet as = assumptions.normalized();
  Rng rng(seed);
  CanonicalModel model;
  double total = 0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int t = 0; t < kNumResponseTypes; ++t) {
        const double draw = rng.next_exponential();
        if (!as.forbids(a, b, t)) {
          model.q(a, b, t) = draw;
          total += draw;
        }
      }
  if (total <= 0) throw model_error("assumption set admits no strata");
  for (double& w : model.weight) w /= total;

  if (as.max_interaction) {
    const double theta = *as.max_interaction;
    const double inter = interaction_mass(model);
    if (inter > theta) {
      const double keep = 1.0 - theta;
      const double plain = 1.0 - inter;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          for (int t = 0; t < kNumResponseTypes; ++t) {
            double& w = model.q(a, b, t);
            if (is_interactive(ResponseType{t}))
              w *= theta / inter;
            else if (plain > 0)
              w *= keep / plain;
          }
      // Degenerate all-interactive draw: park the excess on a neutral stratum.
      if (plain <= 0) model.q(0, 0, 0) += keep;
    }
  }
  return model;
}

}  // namespace fbounds
