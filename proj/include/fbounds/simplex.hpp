#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fbounds {

struct lp_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr double kLpInf = std::numeric_limits<double>::infinity();

// Dense linear program: minimize or maximize objective . x subject to
// eq_rows (row . x == rhs), ineq_rows (row . x <= rhs) and box bounds.
struct LinearProgram {
  int n_vars = 0;
  std::vector<double> objective;
  std::vector<std::pair<std::vector<double>, double>> eq_rows;
  std::vector<std::pair<std::vector<double>, double>> ineq_rows;
  std::vector<double> var_lower;
  std::vector<double> var_upper;

  static LinearProgram with_box(int n, double lower, double upper) {
    LinearProgram lp;
    lp.n_vars = n;
    lp.objective.assign(n, 0.0);
    lp.var_lower.assign(n, lower);
    lp.var_upper.assign(n, upper);
    return lp;
  }

  void add_eq(std::vector<double> row, double rhs) {
    eq_rows.emplace_back(std::move(row), rhs);
  }
  void add_ineq(std::vector<double> row, double rhs) {
    ineq_rows.emplace_back(std::move(row), rhs);
  }

  // Shape errors are structural and throw; they are never reported as an
  // infeasible status.
  void validate() const {
    if (n_vars < 0) throw lp_error("negative variable count");
    auto check_len = [&](std::size_t len, const char* what) {
      if (len != static_cast<std::size_t>(n_vars))
        throw lp_error(std::string(what) + ": length does not match n_vars");
    };
    check_len(objective.size(), "objective");
    check_len(var_lower.size(), "var_lower");
    check_len(var_upper.size(), "var_upper");
    for (const auto& [row, rhs] : eq_rows) {
      (void)rhs;
      check_len(row.size(), "eq row");
    }
    for (const auto& [row, rhs] : ineq_rows) {
      (void)rhs;
      check_len(row.size(), "ineq row");
    }
    for (int i = 0; i < n_vars; ++i)
      if (!(var_lower[i] <= var_upper[i]))
        throw lp_error("variable bounds cross at index " + std::to_string(i));
  }
};

enum class LpStatus { optimal, infeasible, unbounded };
enum class LpDirection { minimize, maximize };

inline const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
  }
  return "?";
}

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  double value = 0.0;
  std::vector<double> point;
};

// Largest constraint/bound violation of a candidate point; an independent
// feasibility certificate.
inline double lp_residual(const LinearProgram& lp, const std::vector<double>& x) {
  double worst = 0.0;
  auto dot = [&](const std::vector<double>& row) {
    double s = 0.0;
    for (int i = 0; i < lp.n_vars; ++i) s += row[i] * x[i];
    return s;
  };
  for (const auto& [row, rhs] : lp.eq_rows) worst = std::max(worst, std::abs(dot(row) - rhs));
  for (const auto& [row, rhs] : lp.ineq_rows) worst = std::max(worst, dot(row) - rhs);
  for (int i = 0; i < lp.n_vars; ++i) {
    worst = std::max(worst, lp.var_lower[i] - x[i]);
    if (lp.var_upper[i] < kLpInf) worst = std::max(worst, x[i] - lp.var_upper[i]);
  }
  return worst;
}

namespace detail {

inline constexpr double kPivotTol = 1e-10;  // entries below this act as zero
inline constexpr double kPhase1Tol = 1e-8;  // infeasible when phase-1 optimum exceeds

// Two-phase primal simplex on a dense tableau with Bland's rule throughout
// (lowest eligible index enters; ratio ties leave by lowest basic index),
// which rules out cycling. Fixed variables are substituted away up front;
// remaining variables are shifted to lower bound zero and finite upper
// bounds become explicit rows.
class DenseSimplex {
 public:
  explicit DenseSimplex(const LinearProgram& lp) : lp_(lp) {
    lp.validate();
    reduce_variables();
    build_tableau();
  }

  LpSolution minimize() {
    LpSolution out;
    if (!phase1()) {
      out.status = LpStatus::infeasible;
      return out;
    }
    drop_artificials();
    if (!phase2()) {
      out.status = LpStatus::unbounded;
      return out;
    }
    out.status = LpStatus::optimal;
    out.point = extract_point();
    out.value = 0.0;
    for (int i = 0; i < lp_.n_vars; ++i) out.value += lp_.objective[i] * out.point[i];
    return out;
  }

 private:
  const LinearProgram& lp_;

  std::vector<int> free_index_;   // original index of each reduced variable
  std::vector<double> fixed_at_;  // value for variables with lower == upper
  std::vector<bool> is_fixed_;
  int n_struct_ = 0;  // reduced structural variables
  int n_cols_ = 0;    // structural + slack (+ artificial during phase 1)
  int n_real_ = 0;    // structural + slack
  int m_ = 0;

  std::vector<std::vector<double>> a_;
  std::vector<double> b_;
  std::vector<int> basis_;
  std::vector<bool> dead_;  // retired artificial columns
  std::vector<double> cbar_;

  void reduce_variables() {
    is_fixed_.assign(lp_.n_vars, false);
    fixed_at_.assign(lp_.n_vars, 0.0);
    for (int i = 0; i < lp_.n_vars; ++i) {
      if (lp_.var_lower[i] == lp_.var_upper[i]) {
        is_fixed_[i] = true;
        fixed_at_[i] = lp_.var_lower[i];
      } else {
        free_index_.push_back(i);
      }
    }
    n_struct_ = static_cast<int>(free_index_.size());
  }

  // Reduced row over free variables, with the rhs adjusted for fixed values
  // and the shift to lower bounds.
  std::pair<std::vector<double>, double> reduce_row(const std::vector<double>& row,
                                                    double rhs) const {
    std::vector<double> out(n_struct_, 0.0);
    for (int i = 0; i < lp_.n_vars; ++i)
      if (is_fixed_[i]) rhs -= row[i] * fixed_at_[i];
    for (int j = 0; j < n_struct_; ++j) {
      const int i = free_index_[j];
      out[j] = row[i];
      rhs -= row[i] * lp_.var_lower[i];
    }
    return {std::move(out), rhs};
  }

  void build_tableau() {
    std::vector<std::pair<std::vector<double>, double>> eqs, ineqs;
    for (const auto& [row, rhs] : lp_.eq_rows) eqs.push_back(reduce_row(row, rhs));
    for (const auto& [row, rhs] : lp_.ineq_rows) ineqs.push_back(reduce_row(row, rhs));
    for (int j = 0; j < n_struct_; ++j) {
      const int i = free_index_[j];
      if (lp_.var_upper[i] < kLpInf) {
        std::vector<double> row(n_struct_, 0.0);
        row[j] = 1.0;
        ineqs.emplace_back(std::move(row), lp_.var_upper[i] - lp_.var_lower[i]);
      }
    }

    m_ = static_cast<int>(eqs.size() + ineqs.size());
    const int n_slack = static_cast<int>(ineqs.size());
    n_real_ = n_struct_ + n_slack;
    a_.assign(m_, std::vector<double>(n_real_, 0.0));
    b_.assign(m_, 0.0);
    basis_.assign(m_, -1);

    int r = 0;
    for (auto& [row, rhs] : eqs) {
      std::copy(row.begin(), row.end(), a_[r].begin());
      b_[r] = rhs;
      ++r;
    }
    for (int s = 0; s < n_slack; ++s, ++r) {
      auto& [row, rhs] = ineqs[s];
      std::copy(row.begin(), row.end(), a_[r].begin());
      a_[r][n_struct_ + s] = 1.0;
      b_[r] = rhs;
    }
    for (int i = 0; i < m_; ++i) {
      if (b_[i] < 0) {
        for (double& v : a_[i]) v = -v;
        b_[i] = -b_[i];
      }
    }
    // Slack columns with +1 coefficient and nonnegative rhs seed the basis;
    // every other row receives an artificial variable.
    std::vector<int> needs_artificial;
    for (int i = 0; i < m_; ++i) {
      int slack_col = -1;
      for (int j = n_struct_; j < n_real_; ++j)
        if (a_[i][j] == 1.0) {
          slack_col = j;
          break;
        }
      if (slack_col >= 0)
        basis_[i] = slack_col;
      else
        needs_artificial.push_back(i);
    }
    n_cols_ = n_real_ + static_cast<int>(needs_artificial.size());
    for (auto& row : a_) row.resize(n_cols_, 0.0);
    int art = n_real_;
    for (int i : needs_artificial) {
      a_[i][art] = 1.0;
      basis_[i] = art;
      ++art;
    }
    dead_.assign(n_cols_, false);
  }

  void pivot(int r, int s) {
    const double inv = 1.0 / a_[r][s];
    for (double& v : a_[r]) v *= inv;
    b_[r] *= inv;
    a_[r][s] = 1.0;
    for (int i = 0; i < m_; ++i) {
      if (i == r) continue;
      const double f = a_[i][s];
      if (std::abs(f) <= kPivotTol) {
        a_[i][s] = 0.0;
        continue;
      }
      for (int j = 0; j < n_cols_; ++j) a_[i][j] -= f * a_[r][j];
      a_[i][s] = 0.0;
      b_[i] -= f * b_[r];
      if (b_[i] < 0 && b_[i] > -1e-11) b_[i] = 0.0;
    }
    const double cf = cbar_[s];
    if (std::abs(cf) > 0) {
      for (int j = 0; j < n_cols_; ++j) cbar_[j] -= cf * a_[r][j];
      cbar_[s] = 0.0;
    }
    if (basis_[r] >= n_real_) dead_[basis_[r]] = true;  // artificial leaves for good
    basis_[r] = s;
  }

  // Bland iteration on the current cbar; returns false on unboundedness.
  bool iterate() {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < n_cols_; ++j) {
        if (dead_[j]) continue;
        if (cbar_[j] < -kPivotTol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      double best_ratio = 0.0;
      for (int i = 0; i < m_; ++i) {
        if (a_[i][enter] > kPivotTol) {
          const double ratio = std::max(b_[i], 0.0) / a_[i][enter];
          if (leave < 0 || ratio < best_ratio ||
              (ratio == best_ratio && basis_[i] < basis_[leave])) {
            leave = i;
            best_ratio = ratio;
          }
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }

  bool phase1() {
    cbar_.assign(n_cols_, 0.0);
    bool any_artificial = false;
    for (int j = n_real_; j < n_cols_; ++j) {
      cbar_[j] = 1.0;
      any_artificial = true;
    }
    if (!any_artificial) return true;
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] >= n_real_) {
        for (int j = 0; j < n_cols_; ++j) cbar_[j] -= a_[i][j];
      }
    }
    iterate();  // phase 1 cannot be unbounded (objective >= 0)
    double infeas = 0.0;
    for (int i = 0; i < m_; ++i)
      if (basis_[i] >= n_real_) infeas += std::max(b_[i], 0.0);
    return infeas <= kPhase1Tol;
  }

  // Pivot residual artificial basics (all at zero level) out of the basis,
  // or drop their rows when the row has no real nonzero entry left.
  void drop_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < n_real_) continue;
      int col = -1;
      for (int j = 0; j < n_real_; ++j)
        if (std::abs(a_[i][j]) > kPivotTol) {
          col = j;
          break;
        }
      if (col >= 0) {
        pivot(i, col);
      } else {
        a_.erase(a_.begin() + i);
        b_.erase(b_.begin() + i);
        basis_.erase(basis_.begin() + i);
        --m_;
        --i;
      }
    }
    for (auto& row : a_) row.resize(n_real_);
    n_cols_ = n_real_;
    dead_.assign(n_cols_, false);
  }

  bool phase2() {
    cbar_.assign(n_cols_, 0.0);
    for (int j = 0; j < n_struct_; ++j) cbar_[j] = lp_.objective[free_index_[j]];
    for (int i = 0; i < m_; ++i) {
      const int bj = basis_[i];
      const double cb = bj < n_struct_ ? lp_.objective[free_index_[bj]] : 0.0;
      if (cb == 0.0) continue;
      for (int j = 0; j < n_cols_; ++j) cbar_[j] -= cb * a_[i][j];
    }
    return iterate();
  }

  std::vector<double> extract_point() const {
    std::vector<double> reduced(n_struct_, 0.0);
    for (int i = 0; i < m_; ++i)
      if (basis_[i] < n_struct_) reduced[basis_[i]] = std::max(b_[i], 0.0);
    std::vector<double> x(lp_.n_vars, 0.0);
    for (int i = 0; i < lp_.n_vars; ++i)
      if (is_fixed_[i]) x[i] = fixed_at_[i];
    for (int j = 0; j < n_struct_; ++j) {
      const int i = free_index_[j];
      x[i] = lp_.var_lower[i] + reduced[j];
      if (lp_.var_upper[i] < kLpInf) x[i] = std::min(x[i], lp_.var_upper[i]);
    }
    return x;
  }
};

}  // namespace detail

inline LpSolution solve(const LinearProgram& lp,
                        LpDirection direction = LpDirection::minimize) {
  if (direction == LpDirection::minimize) {
    return detail::DenseSimplex(lp).minimize();
  }
  LinearProgram flipped = lp;
  for (double& c : flipped.objective) c = -c;
  LpSolution sol = detail::DenseSimplex(flipped).minimize();
  if (sol.status == LpStatus::optimal) {
    sol.value = 0.0;
    for (int i = 0; i < lp.n_vars; ++i) sol.value += lp.objective[i] * sol.point[i];
  }
  return sol;
}

// Phase-1 feasibility probe (no objective).
inline bool lp_feasible(const LinearProgram& lp) {
  LinearProgram probe = lp;
  probe.objective.assign(lp.n_vars, 0.0);
  return solve(probe, LpDirection::minimize).status == LpStatus::optimal;
}

}  // namespace fbounds
