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
#ifndef DPLAB_LP_HPP_
#define DPLAB_LP_HPP_

#include <cstddef>
#include <string>
#include <vector>

namespace dplab {

enum class Relation { kLessEqual, kEqual, kGreaterEqual };

struct LpTerm {
  std::size_t var;
  double coeff;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

std::string ToString(LpStatus status);

struct LpOptions {
  // Minimum magnitude of an accepted pivot element.
  double pivot_tolerance = 1e-11;
  // A reduced cost must be below -optimality_tolerance to enter the basis.
  double optimality_tolerance = 1e-12;
  // Phase-one residual above which the problem is declared infeasible.
  double feasibility_tolerance = 1e-9;
  // Consecutive degenerate pivots after which pricing switches to Bland's
  // rule; Dantzig pricing resumes after the next nondegenerate pivot.
  std::size_t degenerate_streak_before_bland = 50;
  std::size_t max_pivots = 200000;
};

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  double objective = 0.0;
  std::vector<double> x;
  std::size_t pivots = 0;
};

// Dense two-phase primal simplex:
//   minimize c^T x  subject to  rows (<=, =, >=) rhs,  x >= 0.
// At termination the basic solution is recomputed from the original rows by
// an LU solve, so the returned x is accurate to roughly machine precision
// even after many pivots.
class LinearProgram {
 public:
  explicit LinearProgram(std::size_t num_vars);

  std::size_t num_vars() const { return objective_.size(); }
  std::size_t num_constraints() const { return rows_.size(); }

  void set_objective(std::size_t var, double coeff);
  void add_constraint(std::vector<LpTerm> terms, Relation relation,
                      double rhs);

  LpResult minimize(const LpOptions& options = {}) const;

 private:
  struct Row {
    std::vector<LpTerm> terms;
    Relation relation;
    double rhs;
  };
  std::vector<double> objective_;
  std::vector<Row> rows_;
};

}  // namespace dplab

#endif  // DPLAB_LP_HPP_
