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
#ifndef DPLAB_TRANSPORT_HPP_
#define DPLAB_TRANSPORT_HPP_

#include <cstddef>
#include <span>

#include <Eigen/Dense>

#include "dplab/distribution.hpp"

namespace dplab {

struct TransportOptions {
  // Maximum support size of either marginal.
  std::size_t size_cap = 512;
};

// Optimal coupling of two marginals under a dense cost matrix.
struct Coupling {
  Eigen::MatrixXd pi;
  double cost = 0.0;
  std::size_t pivots = 0;
};

// Exact transportation simplex (network simplex on the bipartite graph).
//
// Starts from the north-west-corner basis and prices with Dantzig's rule,
// falling back to Bland's rule after a run of degenerate pivots. Column
// masses are rescaled to the row total before solving, so inputs that differ
// by up to kMassInputTolerance are accepted.
Coupling solve_transport_lp(const Eigen::MatrixXd& cost,
                            std::span<const double> row_probs,
                            std::span<const double> col_probs,
                            const TransportOptions& options = {});

struct TransportPlan {
  DiscreteDistribution row;
  DiscreteDistribution col;
  Eigen::MatrixXd pi;
  double cost = 0.0;
  // Ground cost exponent: 1 for W1, 2 for squared W2.
  int order = 1;
};

// W1 with Euclidean ground cost.
TransportPlan w1_exact(const DiscreteDistribution& a,
                       const DiscreteDistribution& b,
                       const TransportOptions& options = {});

// Squared W2: minimum of sum pi ||x - y||^2 (no square root is taken).
TransportPlan w2sq_exact(const DiscreteDistribution& a,
                         const DiscreteDistribution& b,
                         const TransportOptions& options = {});

// One-dimensional closed form. Order 1 integrates |F_a - F_b| piecewise over
// the merged support; order 2 pairs the quantile functions. Requires d == 1.
double w_1d_closed_form(const DiscreteDistribution& a,
                        const DiscreteDistribution& b, int order);

// Cost matrix ||a_i - b_j||^order between two supports.
Eigen::MatrixXd ground_cost(const DiscreteDistribution& a,
                            const DiscreteDistribution& b, int order);

}  // namespace dplab

#endif  // DPLAB_TRANSPORT_HPP_
