// Copyright 2026 The dplab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "dplab/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "dplab/error.hpp"

namespace dplab {

std::string ToString(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
    case LpStatus::kIterationLimit: return "iteration-limit";
  }
  return "unknown";
}

LinearProgram::LinearProgram(std::size_t num_vars)
    : objective_(num_vars, 0.0) {}

void LinearProgram::set_objective(std::size_t var, double coeff) {
  if (var >= objective_.size()) {
    Fail(ErrorKind::kInvalidArgument, "objective variable out of range");
  }
  objective_[var] = coeff;
}

void LinearProgram::add_constraint(std::vector<LpTerm> terms,
                                   Relation relation, double rhs) {
  for (const LpTerm& t : terms) {
    if (t.var >= objective_.size()) {
      Fail(ErrorKind::kInvalidArgument, "constraint variable out of range");
    }
    if (!std::isfinite(t.coeff)) {
      Fail(ErrorKind::kInvalidArgument, "non-finite constraint coefficient");
    }
  }
  if (!std::isfinite(rhs)) {
    Fail(ErrorKind::kInvalidArgument, "non-finite constraint bound");
  }
  rows_.push_back(Row{std::move(terms), relation, rhs});
}

namespace {

constexpr double kMaxTableauEntries = 4e7;

// Dense simplex tableau. Row m holds reduced costs; its last entry is the
// negated objective value.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_((rows + 1) * (cols + 1), 0.0) {}

  double& at(std::size_t r, std::size_t c) { return data_[r * (cols_ + 1) + c]; }
  double at(std::size_t r, std::size_t c) const {
    return data_[r * (cols_ + 1) + c];
  }
  double& rhs(std::size_t r) { return at(r, cols_); }
  double* row(std::size_t r) { return &data_[r * (cols_ + 1)]; }

  void pivot(std::size_t pr, std::size_t pc) {
    double* prow = row(pr);
    const double inv = 1.0 / prow[pc];
    for (std::size_t c = 0; c <= cols_; ++c) prow[c] *= inv;
    prow[pc] = 1.0;
    for (std::size_t r = 0; r <= rows_; ++r) {
      if (r == pr) continue;
      double* rrow = row(r);
      const double f = rrow[pc];
      if (f == 0.0) continue;
      for (std::size_t c = 0; c <= cols_; ++c) rrow[c] -= f * prow[c];
      rrow[pc] = 0.0;
    }
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

struct SimplexState {
  Tableau tab;
  std::vector<std::size_t> basis;
  std::vector<bool> dead;
  std::size_t rows;
  std::size_t cols;
  std::size_t pivots = 0;
  bool bland = false;
  std::size_t degenerate_streak = 0;
};

enum class PhaseOutcome { kOptimal, kUnbounded, kIterationLimit };

PhaseOutcome RunSimplex(SimplexState& s, const std::vector<bool>& allowed,
                        double opt_tol, const LpOptions& options) {
  const std::size_t m = s.rows;
  while (true) {
    if (s.pivots >= options.max_pivots) return PhaseOutcome::kIterationLimit;
    // Pricing.
    std::size_t enter = s.cols;
    double best = -opt_tol;
    for (std::size_t j = 0; j < s.cols; ++j) {
      if (!allowed[j]) continue;
      const double d = s.tab.at(m, j);
      if (s.bland) {
        if (d < -opt_tol) {
          enter = j;
          break;
        }
      } else if (d < best) {
        best = d;
        enter = j;
      }
    }
    if (enter == s.cols) return PhaseOutcome::kOptimal;

    // Ratio test.
    std::size_t leave = m;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      if (s.dead[i]) continue;
      const double a = s.tab.at(i, enter);
      if (a <= options.pivot_tolerance) continue;
      const double ratio = std::max(s.tab.at(i, s.cols), 0.0) / a;
      if (leave == m || ratio < best_ratio - 1e-13 * (1.0 + best_ratio)) {
        leave = i;
        best_ratio = ratio;
      } else if (ratio <= best_ratio + 1e-13 * (1.0 + best_ratio)) {
        const bool better = s.bland ? s.basis[i] < s.basis[leave]
                                    : a > s.tab.at(leave, enter);
        if (better) {
          leave = i;
          best_ratio = std::min(best_ratio, ratio);
        }
      }
    }
    if (leave == m) return PhaseOutcome::kUnbounded;

    if (best_ratio <= 1e-14) {
      if (++s.degenerate_streak >= options.degenerate_streak_before_bland) {
        s.bland = true;
      }
    } else {
      s.degenerate_streak = 0;
      s.bland = false;
    }
    s.tab.pivot(leave, enter);
    s.basis[leave] = enter;
    ++s.pivots;
  }
}

}  // namespace

LpResult LinearProgram::minimize(const LpOptions& options) const {
  const std::size_t n = objective_.size();
  const std::size_t m = rows_.size();
  LpResult result;
  result.x.assign(n, 0.0);

  if (m == 0) {
    for (std::size_t j = 0; j < n; ++j) {
      if (objective_[j] < 0.0) {
        result.status = LpStatus::kUnbounded;
        return result;
      }
    }
    result.status = LpStatus::kOptimal;
    return result;
  }

  // Dense rows with a sign flip so every rhs is nonnegative.
  std::size_t num_slacks = 0;
  for (const Row& r : rows_) num_slacks += r.relation != Relation::kEqual;
  std::vector<std::vector<double>> dense(m, std::vector<double>(n + num_slacks, 0.0));
  std::vector<double> b(m);
  std::vector<std::size_t> slack_col(m, n + num_slacks);
  std::size_t next_slack = n;
  for (std::size_t i = 0; i < m; ++i) {
    const Row& r = rows_[i];
    for (const LpTerm& t : r.terms) dense[i][t.var] += t.coeff;
    if (r.relation != Relation::kEqual) {
      slack_col[i] = next_slack;
      dense[i][next_slack++] = r.relation == Relation::kLessEqual ? 1.0 : -1.0;
    }
    b[i] = r.rhs;
    if (b[i] < 0.0) {
      for (double& v : dense[i]) v = -v;
      b[i] = -b[i];
    }
  }

  // Rows whose slack has coefficient +1 start with the slack basic; the others
  // get an artificial column.
  std::vector<std::size_t> art_rows;
  for (std::size_t i = 0; i < m; ++i) {
    const bool slack_basic = slack_col[i] < n + num_slacks &&
                             dense[i][slack_col[i]] > 0.0;
    if (!slack_basic) art_rows.push_back(i);
  }
  const std::size_t first_art = n + num_slacks;
  const std::size_t cols = first_art + art_rows.size();
  if (static_cast<double>(m + 1) * static_cast<double>(cols + 1) >
      kMaxTableauEntries) {
    Fail(ErrorKind::kCapacityExceeded,
         "linear program too large for the dense solver (" +
             std::to_string(m) + " rows x " + std::to_string(cols) +
             " columns)");
  }

  SimplexState s{Tableau(m, cols), std::vector<std::size_t>(m),
                 std::vector<bool>(m, false), m, cols};
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < first_art; ++j) s.tab.at(i, j) = dense[i][j];
    s.tab.rhs(i) = b[i];
    s.basis[i] = slack_col[i];
  }
  for (std::size_t k = 0; k < art_rows.size(); ++k) {
    const std::size_t i = art_rows[k];
    s.tab.at(i, first_art + k) = 1.0;
    s.basis[i] = first_art + k;
  }

  // Phase one: minimize the sum of artificials.
  if (!art_rows.empty()) {
    for (std::size_t i : art_rows) {
      for (std::size_t j = 0; j <= cols; ++j) {
        if (j >= first_art && j < cols) continue;
        s.tab.at(m, j) -= s.tab.at(i, j);
      }
    }
    std::vector<bool> allowed(cols, true);
    const PhaseOutcome outcome = RunSimplex(s, allowed, options.optimality_tolerance, options);
    if (outcome == PhaseOutcome::kIterationLimit) {
      result.status = LpStatus::kIterationLimit;
      result.pivots = s.pivots;
      return result;
    }
    const double infeasibility = -s.tab.rhs(m);
    double scale = 1.0;
    for (double v : b) scale = std::max(scale, v);
    if (infeasibility > options.feasibility_tolerance * scale) {
      result.status = LpStatus::kInfeasible;
      result.pivots = s.pivots;
      return result;
    }
    // Drive remaining artificials out of the basis; rows where that is
    // impossible are linearly dependent and get retired.
    for (std::size_t i = 0; i < m; ++i) {
      if (s.basis[i] < first_art) continue;
      std::size_t best_col = cols;
      double best_abs = options.pivot_tolerance * 100.0;
      for (std::size_t j = 0; j < first_art; ++j) {
        const double a = std::abs(s.tab.at(i, j));
        if (a > best_abs) {
          best_abs = a;
          best_col = j;
        }
      }
      if (best_col == cols) {
        s.dead[i] = true;
      } else {
        s.tab.pivot(i, best_col);
        s.basis[i] = best_col;
        ++s.pivots;
      }
    }
  }

  // Phase two.
  double cost_scale = 1.0;
  for (double c : objective_) cost_scale = std::max(cost_scale, std::abs(c));
  for (std::size_t j = 0; j <= cols; ++j) s.tab.at(m, j) = 0.0;
  for (std::size_t j = 0; j < n; ++j) s.tab.at(m, j) = objective_[j];
  for (std::size_t i = 0; i < m; ++i) {
    if (s.dead[i]) continue;
    const std::size_t bv = s.basis[i];
    const double cb = bv < n ? objective_[bv] : 0.0;
    if (cb == 0.0) continue;
    for (std::size_t j = 0; j <= cols; ++j) s.tab.at(m, j) -= cb * s.tab.at(i, j);
  }
  std::vector<bool> allowed(cols, true);
  for (std::size_t j = first_art; j < cols; ++j) allowed[j] = false;
  s.degenerate_streak = 0;
  s.bland = false;
  const PhaseOutcome outcome =
      RunSimplex(s, allowed, options.optimality_tolerance * cost_scale, options);
  result.pivots = s.pivots;
  if (outcome == PhaseOutcome::kIterationLimit) {
    result.status = LpStatus::kIterationLimit;
    return result;
  }
  if (outcome == PhaseOutcome::kUnbounded) {
    result.status = LpStatus::kUnbounded;
    return result;
  }

  // Tableau values, then an LU re-solve of the final basis on the original
  // rows.
  std::vector<double> full(first_art, 0.0);
  std::vector<std::size_t> live;
  for (std::size_t i = 0; i < m; ++i) {
    if (s.dead[i]) continue;
    live.push_back(i);
    if (s.basis[i] < first_art) full[s.basis[i]] = std::max(s.tab.rhs(i), 0.0);
  }
  const std::size_t k = live.size();
  bool basis_ok = true;
  for (std::size_t i : live) basis_ok = basis_ok && s.basis[i] < first_art;
  if (basis_ok && k > 0) {
    Eigen::MatrixXd B(k, k);
    Eigen::VectorXd rhs(k);
    for (std::size_t r = 0; r < k; ++r) {
      rhs(r) = b[live[r]];
      for (std::size_t c = 0; c < k; ++c) B(r, c) = dense[live[r]][s.basis[live[c]]];
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(B);
    const Eigen::VectorXd xb = lu.solve(rhs);
    const double residual = (B * xb - rhs).lpNorm<Eigen::Infinity>();
    bool accept = xb.allFinite() && residual <= 1e-12 * (1.0 + rhs.lpNorm<Eigen::Infinity>());
    for (std::size_t c = 0; accept && c < k; ++c) {
      if (xb(c) < -1e-9) accept = false;
    }
    if (accept) {
      for (std::size_t c = 0; c < k; ++c) full[s.basis[live[c]]] = std::max(xb(c), 0.0);
    }
  }

  for (std::size_t j = 0; j < n; ++j) result.x[j] = full[j];
  double obj = 0.0;
  for (std::size_t j = 0; j < n; ++j) obj += objective_[j] * result.x[j];
  result.objective = obj;
  result.status = LpStatus::kOptimal;
  return result;
}

}  // namespace dplab
