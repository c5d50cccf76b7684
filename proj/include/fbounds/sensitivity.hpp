#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "fbounds/bounds.hpp"
#include "fbounds/model.hpp"

namespace fbounds {

// Bounds as a function of the maximum allowed interactive-strata mass theta.
// theta = 0 reproduces the no-interaction point identification; theta = 1
// reproduces the assumption-free interval.
struct SweepPoint {
  double theta = 0;
  double lower = 0;
  double upper = 0;
  BoundsStatus status = BoundsStatus::infeasible;
  double slack_used = 0;
};

struct SweepCurve {
  std::vector<SweepPoint> points;
};

inline std::vector<double> default_theta_grid() {
  std::vector<double> grid;
  for (int i = 0; i <= 20; ++i) grid.push_back(0.05 * i);
  return grid;
}

inline SweepCurve theta_sweep(const std::optional<ObservationalDist>& obs,
                              const std::optional<FactorialDist>& fact,
                              const Estimand& estimand,
                              const AssumptionSet& base_assumptions,
                              const std::vector<double>& grid,
                              const SlackPolicy& slack = SlackPolicy::zero()) {
  if (grid.empty()) throw model_error("empty theta grid");
  const AssumptionSet base = base_assumptions.normalized();
  if (base.no_interaction)
    throw model_error("sweep over theta is meaningless under a no-interaction base");
  double prev = -1.0;
  for (double theta : grid) {
    if (!(theta >= 0.0 && theta <= 1.0)) throw model_error("theta grid must lie in [0, 1]");
    if (theta <= prev) throw model_error("theta grid must be strictly increasing");
    prev = theta;
  }

  SweepCurve curve;
  for (double theta : grid) {
    AssumptionSet as = base;
    as.max_interaction = theta;
    const BoundsResult r = lp_bounds(obs, fact, as.normalized(), estimand, slack);
    SweepPoint point;
    point.theta = theta;
    point.status = r.status;
    point.slack_used = r.slack_used;
    if (r.status == BoundsStatus::feasible) {
      point.lower = r.lower;
      point.upper = r.upper;
    }
    curve.points.push_back(point);
  }
  return curve;
}

// Plot-data artifact: one row per grid point; infeasible points keep their
// status and leave the interval columns empty.
inline void write_sweep_csv(std::ostream& out, const SweepCurve& curve) {
  out << "theta,lower,upper,status\n";
  for (const SweepPoint& p : curve.points) {
    out << p.theta << ',';
    if (p.status == BoundsStatus::feasible)
      out << p.lower << ',' << p.upper << ",feasible\n";
    else
      out << ",,infeasible\n";
  }
}

}  // namespace fbounds
