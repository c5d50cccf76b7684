#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "fbounds/model.hpp"
#include "fbounds/rng.hpp"

namespace fbounds {

// Unit-level records. Observational rows carry the natural (a, b, y);
// experimental rows carry the randomized arm and its outcome.
enum class Regime { obs, exp };

struct DataRow {
  Regime regime = Regime::obs;
  int a = 0, b = 0, y = 0;
};

struct Dataset {
  std::vector<DataRow> rows;

  std::size_t obs_count() const {
    std::size_t n = 0;
    for (const auto& r : rows) n += r.regime == Regime::obs;
    return n;
  }
  std::size_t exp_count() const { return rows.size() - obs_count(); }
};

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

// n_obs draws from the observational joint plus n_per_arm outcome draws per
// factorial arm. Row order is observational block first, then arms in
// (a, b) order; identical seeds give identical datasets.
inline Dataset sample_dataset(const CanonicalModel& model, std::size_t n_obs,
                              std::size_t n_per_arm, std::uint64_t seed) {
  const ObservationalDist obs = forward_observational(model);
  const FactorialDist fact = forward_factorial(model);
  Rng rng(seed);
  Dataset data;
  data.rows.reserve(n_obs + 4 * n_per_arm);
  for (std::size_t i = 0; i < n_obs; ++i) {
    double u = rng.next_unit();
    int cell = 7;
    for (int c = 0; c < 8; ++c) {
      u -= obs.cell[c];
      if (u < 0) {
        cell = c;
        break;
      }
    }
    data.rows.push_back({Regime::obs, (cell >> 2) & 1, (cell >> 1) & 1, cell & 1});
  }
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (std::size_t i = 0; i < n_per_arm; ++i)
        data.rows.push_back({Regime::exp, a, b, rng.next_bernoulli(fact.prob(a, b, 1)) ? 1 : 0});
  return data;
}

// ---------------------------------------------------------------------------
// CSV format: header "regime,a,b,y"; regime in {obs, exp}; values 0/1.
// ---------------------------------------------------------------------------

inline void write_dataset_csv(std::ostream& out, const Dataset& data) {
  out << "regime,a,b,y\n";
  for (const auto& r : data.rows)
    out << (r.regime == Regime::obs ? "obs" : "exp") << ',' << r.a << ',' << r.b << ','
        << r.y << '\n';
}

inline Dataset parse_dataset_csv(std::istream& in) {
  Dataset data;
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) {
    throw model_error("dataset csv line " + std::to_string(line_no) + ": " + what);
  };
  if (!std::getline(in, line)) throw model_error("dataset csv: empty input");
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "regime,a,b,y") fail("expected header 'regime,a,b,y'");
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string regime, field;
    DataRow row;
    if (!std::getline(ss, regime, ',')) fail("missing regime");
    if (regime == "obs")
      row.regime = Regime::obs;
    else if (regime == "exp")
      row.regime = Regime::exp;
    else
      fail("regime must be 'obs' or 'exp', got '" + regime + "'");
    int* fields[3] = {&row.a, &row.b, &row.y};
    const char* names[3] = {"a", "b", "y"};
    for (int k = 0; k < 3; ++k) {
      if (!std::getline(ss, field, ',')) fail(std::string("missing column ") + names[k]);
      if (field == "0")
        *fields[k] = 0;
      else if (field == "1")
        *fields[k] = 1;
      else
        fail(std::string(names[k]) + " must be 0 or 1, got '" + field + "'");
    }
    if (std::getline(ss, field, ',')) fail("trailing fields");
    data.rows.push_back(row);
  }
  return data;
}

// ---------------------------------------------------------------------------
// Empirical distributions
// ---------------------------------------------------------------------------

struct EmpiricalCounts {
  std::size_t n_obs = 0;
  std::size_t arm[2][2] = {{0, 0}, {0, 0}};

  std::size_t exp_total() const { return arm[0][0] + arm[0][1] + arm[1][0] + arm[1][1]; }
};

struct EmpiricalDistributions {
  std::optional<ObservationalDist> obs;
  std::optional<FactorialDist> fact;
  EmpiricalCounts counts;
};

// Maximum-likelihood cell frequencies per regime. A factorial regime with an
// empty arm has no defensible arm frequency, so it is rejected (positivity).
inline EmpiricalDistributions empirical_distributions(const Dataset& data) {
  if (data.rows.empty()) throw model_error("empty dataset");
  EmpiricalDistributions out;
  ObservationalDist obs;
  double arm_ones[2][2] = {{0, 0}, {0, 0}};
  for (const auto& r : data.rows) {
    if (r.regime == Regime::obs) {
      obs.prob(r.a, r.b, r.y) += 1.0;
      ++out.counts.n_obs;
    } else {
      arm_ones[r.a][r.b] += r.y;
      ++out.counts.arm[r.a][r.b];
    }
  }
  if (out.counts.n_obs > 0) {
    for (double& c : obs.cell) c /= static_cast<double>(out.counts.n_obs);
    out.obs = obs;
  }
  if (out.counts.exp_total() > 0) {
    FactorialDist fact;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        if (out.counts.arm[a][b] == 0)
          throw model_error("factorial arm (" + std::to_string(a) + "," + std::to_string(b) +
                            ") has no rows");
        const double p1 = arm_ones[a][b] / static_cast<double>(out.counts.arm[a][b]);
        fact.prob(a, b, 1) = p1;
        fact.prob(a, b, 0) = 1.0 - p1;
      }
    out.fact = fact;
  }
  return out;
}

}  // namespace fbounds
