#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "fbounds/model.hpp"
#include "fbounds/simplex.hpp"

namespace fbounds {

// Linear functional of the 64 strata weights to be bounded.
struct Estimand {
  enum class Kind { ey_a1, ey_a0, ate, custom };
  Kind kind = Kind::ate;
  std::array<double, kNumStrata> custom{};  // used when kind == custom

  static Estimand ey_a1() { return {Kind::ey_a1, {}}; }
  static Estimand ey_a0() { return {Kind::ey_a0, {}}; }
  static Estimand ate() { return {Kind::ate, {}}; }
  static Estimand custom_coefficients(const std::array<double, kNumStrata>& c) {
    for (double v : c)
      if (!std::isfinite(v)) throw model_error("custom estimand coefficient not finite");
    return {Kind::custom, c};
  }

  // Coefficient on q(a, b, t). Intervening on A alone leaves B natural, so
  // the outcome entry is picked by the stratum's natural b.
  double coefficient(int a, int b, int t) const {
    (void)a;
    const ResponseType rt{t};
    const double under_a1 = b == 0 ? rt.y_a1b0() : rt.y_a1b1();
    const double under_a0 = b == 0 ? rt.y_a0b0() : rt.y_a0b1();
    switch (kind) {
      case Kind::ey_a1: return under_a1;
      case Kind::ey_a0: return under_a0;
      case Kind::ate: return under_a1 - under_a0;
      case Kind::custom: return custom[stratum_index(a, b, t)];
    }
    return 0.0;
  }

  std::string name() const {
    switch (kind) {
      case Kind::ey_a1: return "ey-a1";
      case Kind::ey_a0: return "ey-a0";
      case Kind::ate: return "ate";
      case Kind::custom: return "custom";
    }
    return "?";
  }
};

enum class BoundsStatus { feasible, infeasible };

enum class BoundsMethod { lp, closed_form };

struct BoundsResult {
  double lower = 0.0;
  double upper = 0.0;
  BoundsStatus status = BoundsStatus::infeasible;
  double slack_used = 0.0;
  BoundsMethod method = BoundsMethod::lp;

  double width() const { return upper - lower; }
  bool contains(double v, double tol = 1e-9) const {
    return status == BoundsStatus::feasible && v >= lower - tol && v <= upper + tol;
  }
};

// How to relax the data-matching rows when a zero-slack program is
// infeasible (finite samples routinely produce jointly incompatible
// observational and factorial margins).
struct SlackPolicy {
  enum class Mode { fixed, automatic };
  Mode mode = Mode::fixed;
  double epsilon = 0.0;

  static SlackPolicy zero() { return {Mode::fixed, 0.0}; }
  static SlackPolicy fixed(double eps) {
    if (!(eps >= 0)) throw model_error("slack must be nonnegative");
    return {Mode::fixed, eps};
  }
  static SlackPolicy automatic() { return {Mode::automatic, 0.0}; }
};

// ---------------------------------------------------------------------------
// LP construction
// ---------------------------------------------------------------------------

// Variables are the 64 strata masses. Constraints: the probability simplex,
// one matching row per available data entry (equalities at zero slack,
// otherwise a +-epsilon band), zero-fixing for strata removed by
// monotonicity / no-interaction, and the interactive-mass cap when present.
inline LinearProgram build_lp(const std::optional<ObservationalDist>& obs,
                              const std::optional<FactorialDist>& fact,
                              const AssumptionSet& assumptions,
                              const Estimand& estimand, double slack = 0.0) {
  if (!obs && !fact) throw model_error("no data regime supplied");
  if (!(slack >= 0)) throw model_error("slack must be nonnegative");
  const AssumptionSet as = assumptions.normalized();

  // The unit-sum row plus nonnegativity already confine each weight to
  // [0, 1]; no per-variable upper bound rows are needed.
  LinearProgram lp = LinearProgram::with_box(kNumStrata, 0.0, kLpInf);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int t = 0; t < kNumResponseTypes; ++t) {
        const int v = stratum_index(a, b, t);
        lp.objective[v] = estimand.coefficient(a, b, t);
        if (as.forbids(a, b, t)) lp.var_upper[v] = 0.0;
      }

  lp.add_eq(std::vector<double>(kNumStrata, 1.0), 1.0);

  auto add_data_row = [&](const std::vector<double>& row, double rhs) {
    if (slack == 0.0) {
      lp.add_eq(row, rhs);
    } else {
      lp.add_ineq(row, rhs + slack);
      std::vector<double> neg(row);
      for (double& v : neg) v = -v;
      lp.add_ineq(std::move(neg), -(rhs - slack));
    }
  };

  if (obs) {
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int y = 0; y < 2; ++y) {
          std::vector<double> row(kNumStrata, 0.0);
          for (int t = 0; t < kNumResponseTypes; ++t)
            if (ResponseType{t}.outcome_at(a, b) == y) row[stratum_index(a, b, t)] = 1.0;
          add_data_row(row, obs->prob(a, b, y));
        }
  }
  if (fact) {
    for (int arm_a = 0; arm_a < 2; ++arm_a)
      for (int arm_b = 0; arm_b < 2; ++arm_b)
        for (int y = 0; y < 2; ++y) {
          std::vector<double> row(kNumStrata, 0.0);
          for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
              for (int t = 0; t < kNumResponseTypes; ++t)
                if (ResponseType{t}.outcome_at(arm_a, arm_b) == y)
                  row[stratum_index(a, b, t)] = 1.0;
          add_data_row(row, fact->prob(arm_a, arm_b, y));
        }
  }
  if (as.max_interaction) {
    std::vector<double> row(kNumStrata, 0.0);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int t = 0; t < kNumResponseTypes; ++t)
          if (is_interactive(ResponseType{t})) row[stratum_index(a, b, t)] = 1.0;
    lp.add_ineq(std::move(row), *as.max_interaction);
  }
  return lp;
}

namespace detail {

inline bool data_feasible(const std::optional<ObservationalDist>& obs,
                          const std::optional<FactorialDist>& fact,
                          const AssumptionSet& assumptions, double slack) {
  return lp_feasible(build_lp(obs, fact, assumptions, Estimand::ate(), slack));
}

// Smallest feasible band, by bisection to 1e-6. Slack 1 is always feasible
// because every matching row's value and target both lie in [0, 1].
inline double minimal_slack(const std::optional<ObservationalDist>& obs,
                            const std::optional<FactorialDist>& fact,
                            const AssumptionSet& assumptions) {
  double lo = 0.0, hi = 1.0;
  while (hi - lo > 1e-6) {
    const double mid = 0.5 * (lo + hi);
    if (data_feasible(obs, fact, assumptions, mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Sharp bounds by LP
// ---------------------------------------------------------------------------

inline BoundsResult lp_bounds(const std::optional<ObservationalDist>& obs,
                              const std::optional<FactorialDist>& fact,
                              const AssumptionSet& assumptions,
                              const Estimand& estimand,
                              const SlackPolicy& slack = SlackPolicy::zero()) {
  double eps = slack.epsilon;
  if (slack.mode == SlackPolicy::Mode::automatic) {
    eps = 0.0;
    if (!detail::data_feasible(obs, fact, assumptions, 0.0))
      eps = detail::minimal_slack(obs, fact, assumptions);
  }

  BoundsResult out;
  out.method = BoundsMethod::lp;
  out.slack_used = eps;
  const LinearProgram lp = build_lp(obs, fact, assumptions, estimand, eps);
  const LpSolution lo = solve(lp, LpDirection::minimize);
  if (lo.status != LpStatus::optimal) {
    out.status = BoundsStatus::infeasible;
    return out;
  }
  const LpSolution hi = solve(lp, LpDirection::maximize);
  if (hi.status != LpStatus::optimal) {
    out.status = BoundsStatus::infeasible;
    return out;
  }
  out.status = BoundsStatus::feasible;
  out.lower = lo.value;
  out.upper = hi.value;
  return out;
}

// ---------------------------------------------------------------------------
// Multi-level outcomes
// ---------------------------------------------------------------------------

// Outcome distributions with k >= 2 levels; bounds for Pr(Y_a = level) come
// from collapsing Y to the indicator [Y == level] and reusing the binary
// machinery.
struct MultiLevelObservational {
  int levels = 2;
  // joint probabilities, cells[2a + b][level]
  std::array<std::vector<double>, 4> cells;
};

struct MultiLevelFactorial {
  int levels = 2;
  // per-arm outcome distributions, arms[2a + b][level]
  std::array<std::vector<double>, 4> arms;
};

inline BoundsResult multi_level_bounds(const std::optional<MultiLevelObservational>& obs,
                                       const std::optional<MultiLevelFactorial>& fact,
                                       const AssumptionSet& assumptions,
                                       const Estimand& estimand, int level,
                                       const SlackPolicy& slack = SlackPolicy::zero()) {
  const int levels = obs ? obs->levels : fact ? fact->levels : 0;
  if (!obs && !fact) throw model_error("no data regime supplied");
  if (level < 0 || level >= levels) throw model_error("invalid outcome level");
  if (obs && fact && obs->levels != fact->levels)
    throw model_error("level counts disagree across regimes");

  std::optional<ObservationalDist> obs2;
  if (obs) {
    ObservationalDist d;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int y = 0; y < levels; ++y)
          d.prob(a, b, y == level ? 1 : 0) += obs->cells[2 * a + b][y];
    obs2 = d;
  }
  std::optional<FactorialDist> fact2;
  if (fact) {
    FactorialDist d;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int y = 0; y < levels; ++y)
          d.prob(a, b, y == level ? 1 : 0) += fact->arms[2 * a + b][y];
    fact2 = d;
  }
  return lp_bounds(obs2, fact2, assumptions, estimand, slack);
}

}  // namespace fbounds
