#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "fbounds/bounds.hpp"
#include "fbounds/data.hpp"
#include "fbounds/rng.hpp"

namespace fbounds {

// Percentile confidence intervals for both bound endpoints, from resampling
// the dataset with per-regime structure preserved: observational rows are
// resampled jointly, experimental rows within their arm (arm sizes are fixed
// by design in a randomized trial).
struct BootstrapResult {
  BoundsResult point;                        // bounds on the full data
  std::pair<double, double> ci_lower{0, 0};  // CI for the lower endpoint
  std::pair<double, double> ci_upper{0, 0};  // CI for the upper endpoint
  std::size_t replicates = 0;
  double alpha = 0.05;
  // realized slack across replicates, for regime-compatibility diagnostics
  double slack_max = 0;
  double slack_mean = 0;
  std::size_t slack_positive = 0;
};

namespace detail {

inline std::pair<double, double> percentile_interval(std::vector<double> values,
                                                     double alpha) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  const double count = static_cast<double>(n);
  std::size_t lo = static_cast<std::size_t>(std::floor(alpha / 2.0 * count));
  std::size_t hi = static_cast<std::size_t>(std::ceil((1.0 - alpha / 2.0) * count));
  lo = std::min(lo, n - 1);
  hi = std::min(hi, n - 1);
  return {values[lo], values[hi]};
}

}  // namespace detail

inline BootstrapResult bootstrap_bounds(const Dataset& data, const Estimand& estimand,
                                        const AssumptionSet& assumptions,
                                        std::size_t replicates, double alpha,
                                        std::uint64_t seed) {
  if (replicates < 1) throw model_error("bootstrap needs at least one replicate");
  if (!(alpha > 0.0 && alpha < 1.0)) throw model_error("alpha must lie in (0, 1)");

  // Index rows once; resampling preserves per-regime and per-arm sizes.
  std::vector<std::size_t> obs_rows;
  std::vector<std::size_t> arm_rows[2][2];
  for (std::size_t i = 0; i < data.rows.size(); ++i) {
    const DataRow& r = data.rows[i];
    if (r.regime == Regime::obs)
      obs_rows.push_back(i);
    else
      arm_rows[r.a][r.b].push_back(i);
  }

  BootstrapResult out;
  out.replicates = replicates;
  out.alpha = alpha;
  {
    const EmpiricalDistributions full = empirical_distributions(data);
    out.point = lp_bounds(full.obs, full.fact, assumptions, estimand,
                          SlackPolicy::automatic());
  }

  std::vector<double> lowers, uppers;
  lowers.reserve(replicates);
  uppers.reserve(replicates);
  for (std::size_t rep = 0; rep < replicates; ++rep) {
    Rng rng(derive_seed(seed, rep));
    Dataset resampled;
    resampled.rows.reserve(data.rows.size());
    for (std::size_t k = 0; k < obs_rows.size(); ++k)
      resampled.rows.push_back(data.rows[obs_rows[rng.next_index(obs_rows.size())]]);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        const auto& pool = arm_rows[a][b];
        for (std::size_t k = 0; k < pool.size(); ++k)
          resampled.rows.push_back(data.rows[pool[rng.next_index(pool.size())]]);
      }
    const EmpiricalDistributions emp = empirical_distributions(resampled);
    const BoundsResult r =
        lp_bounds(emp.obs, emp.fact, assumptions, estimand, SlackPolicy::automatic());
    lowers.push_back(r.lower);
    uppers.push_back(r.upper);
    out.slack_max = std::max(out.slack_max, r.slack_used);
    out.slack_mean += r.slack_used;
    out.slack_positive += r.slack_used > 0.0;
  }
  out.slack_mean /= static_cast<double>(replicates);
  out.ci_lower = detail::percentile_interval(std::move(lowers), alpha);
  out.ci_upper = detail::percentile_interval(std::move(uppers), alpha);
  return out;
}

}  // namespace fbounds
