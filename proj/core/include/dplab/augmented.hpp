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
#ifndef DPLAB_AUGMENTED_HPP_
#define DPLAB_AUGMENTED_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "dplab/codec.hpp"
#include "dplab/distribution.hpp"
#include "dplab/encoder.hpp"

namespace dplab {

enum class PhaseFlag { kOk, kIndeterminate };

std::string ToString(PhaseFlag flag);

// Terms of  W1(p_{Xhat,X_d}, p_{X,X_d}) + lambda * E||Xhat - X_d||.
struct AugmentedTerms {
  double w1_gap = 0.0;
  double mean_dev = 0.0;
  double objective = 0.0;
};

// The W1 term is computed on the concatenated vectors (xhat, x_d) against
// (x, x_d) with Euclidean ground cost; the penalty is an exact expectation.
AugmentedTerms augmented_terms(const DiscreteDistribution& source,
                               const Encoder& enc,
                               const DeterministicDecoder& gd,
                               const StochasticDecoder& decoder,
                               double lambda);

double augmented_objective(const DiscreteDistribution& source,
                           const Encoder& enc, const DeterministicDecoder& gd,
                           const StochasticDecoder& decoder, double lambda);

struct AugmentedSolution {
  double lambda = 0.0;
  // Rows are indexed by code z; with a bijective gd this is the same as
  // indexing by the MMSE output x_d = gd[z].
  StochasticDecoder decoder;
  double w1_gap = 0.0;
  double mean_dev = 0.0;
  double mse = 0.0;
  double objective = 0.0;
  // Value of the linear program itself (equals objective up to round-off).
  double lp_objective = 0.0;
  PhaseFlag flag = PhaseFlag::kOk;
};

struct AugmentedOptions {
  // Upper bound on LP variables K*m*n + K*m.
  std::size_t variable_cap = 400000;
};

// Exact minimizer of the augmented objective over decoder rows restricted to
// out_support, as one linear program jointly over q(xhat | z) and the W1
// coupling between (xhat, x_d) and (x, x_d). lambda == 1 is solved but
// flagged kIndeterminate.
AugmentedSolution solve_augmented(const DiscreteDistribution& source,
                                  const Encoder& enc,
                                  const DeterministicDecoder& gd,
                                  double lambda,
                                  const std::vector<Point>& out_support,
                                  const AugmentedOptions& options = {});

// supp(X) U gd table, canonical.
std::vector<Point> default_augmented_support(
    const DiscreteDistribution& source, const DeterministicDecoder& gd);

// One solution per lambda, in grid order (grid must be ascending).
std::vector<AugmentedSolution> phase_sweep(
    const DiscreteDistribution& source, const Encoder& enc,
    const DeterministicDecoder& gd, const std::vector<double>& lambdas,
    const std::vector<Point>& out_support, std::size_t threads = 0);

// (1 - beta) / beta for beta in (0, 1].
double beta_to_lambda(double beta);

struct ConditioningGaps {
  double gap_xd = 0.0;
  double gap_zd = 0.0;
};

// Conditional W1 gaps sum_v p(v) W1(p_{Xhat|V=v}, p_{X|V=v}) for V = X_d
// (rows grouped by decoded value) and V = Z_d (rows grouped by code).
// Throws kPrecondition when gd is not bijective on codes.
ConditioningGaps conditioning_equivalence(const DiscreteDistribution& source,
                                          const Encoder& enc,
                                          const DeterministicDecoder& gd,
                                          const StochasticDecoder& decoder);

}  // namespace dplab

#endif  // DPLAB_AUGMENTED_HPP_
