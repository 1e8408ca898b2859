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
#include "dplab/augmented.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>

#include "dplab/error.hpp"
#include "dplab/lp.hpp"
#include "dplab/parallel.hpp"
#include "dplab/transport.hpp"

namespace dplab {
namespace {

void CheckShapes(const DiscreteDistribution& source, const Encoder& enc,
                 const DeterministicDecoder& gd) {
  if (enc.support_size() != source.size()) {
    Fail(ErrorKind::kInvalidArgument, "encoder does not match the source support");
  }
  if (gd.K() != enc.K()) {
    Fail(ErrorKind::kInvalidArgument, "MMSE decoder size differs from K");
  }
  for (const Point& c : gd.table) {
    if (c.size() != source.dim()) {
      Fail(ErrorKind::kInvalidArgument, "MMSE decoder dimension differs from source");
    }
  }
}

void CheckLambda(double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    Fail(ErrorKind::kInvalidArgument, "lambda must be a finite value >= 0");
  }
}

Point Concat(const Point& a, const Point& b) {
  Point out(a);
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::vector<double> CodeMass(const DiscreteDistribution& source,
                             const Encoder& enc) {
  std::vector<double> mass(enc.K(), 0.0);
  for (std::size_t i = 0; i < source.size(); ++i) mass[enc.code(i)] += source.prob(i);
  return mass;
}

}  // namespace

std::string ToString(PhaseFlag flag) {
  return flag == PhaseFlag::kOk ? "ok" : "indeterminate";
}

AugmentedTerms augmented_terms(const DiscreteDistribution& source,
                               const Encoder& enc,
                               const DeterministicDecoder& gd,
                               const StochasticDecoder& decoder,
                               double lambda) {
  CheckShapes(source, enc, gd);
  CheckLambda(lambda);
  if (decoder.K() != enc.K()) {
    Fail(ErrorKind::kInvalidArgument, "decoder rows do not match K");
  }
  if (decoder.out_support().front().size() != source.dim()) {
    Fail(ErrorKind::kInvalidArgument, "decoder dimension differs from source");
  }
  const std::vector<double> code_mass = CodeMass(source, enc);

  std::vector<Point> hat_points, true_points;
  std::vector<double> hat_probs, true_probs;
  double mean_dev = 0.0;
  for (std::size_t z = 0; z < enc.K(); ++z) {
    if (code_mass[z] == 0.0) continue;
    const auto& row = decoder.row(z);
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j] <= 0.0) continue;
      const Point& y = decoder.out_support()[j];
      hat_points.push_back(Concat(y, gd.table[z]));
      hat_probs.push_back(code_mass[z] * row[j]);
      mean_dev += code_mass[z] * row[j] * Distance(y, gd.table[z]);
    }
  }
  for (std::size_t i = 0; i < source.size(); ++i) {
    true_points.push_back(Concat(source.point(i), gd.table[enc.code(i)]));
    true_probs.push_back(source.prob(i));
  }
  AugmentedTerms t;
  t.w1_gap = w1_exact(make_distribution(std::move(hat_points), std::move(hat_probs)),
                      make_distribution(std::move(true_points), std::move(true_probs)))
                 .cost;
  t.mean_dev = mean_dev;
  t.objective = t.w1_gap + lambda * t.mean_dev;
  return t;
}

double augmented_objective(const DiscreteDistribution& source,
                           const Encoder& enc, const DeterministicDecoder& gd,
                           const StochasticDecoder& decoder, double lambda) {
  return augmented_terms(source, enc, gd, decoder, lambda).objective;
}

AugmentedSolution solve_augmented(const DiscreteDistribution& source,
                                  const Encoder& enc,
                                  const DeterministicDecoder& gd,
                                  double lambda,
                                  const std::vector<Point>& out_support,
                                  const AugmentedOptions& options) {
  CheckShapes(source, enc, gd);
  CheckLambda(lambda);
  if (enc.has_empty_cell()) Fail(ErrorKind::kPrecondition, "encoder has an empty cell");
  if (out_support.empty()) Fail(ErrorKind::kInvalidArgument, "out_support must be non-empty");
  for (const Point& y : out_support) {
    if (y.size() != source.dim()) {
      Fail(ErrorKind::kInvalidArgument, "out_support dimension differs from source");
    }
  }
  std::vector<Point> support = out_support;
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());

  const std::size_t K = enc.K();
  const std::size_t n = source.size();
  const std::size_t m = support.size();
  const std::size_t gamma_base = K * m;
  const std::size_t num_vars = gamma_base + K * m * n;
  if (num_vars > options.variable_cap) {
    Fail(ErrorKind::kCapacityExceeded,
         "augmented LP needs " + std::to_string(num_vars) +
             " variables, above the cap of " + std::to_string(options.variable_cap));
  }
  const std::vector<double> code_mass = CodeMass(source, enc);

  // Variables: q(z, j), then gamma((z, j), i) coupling the output pair
  // (y_j, c_z) with the source pair (x_i, c_{E(x_i)}).
  LinearProgram lp(num_vars);
  for (std::size_t z = 0; z < K; ++z) {
    for (std::size_t j = 0; j < m; ++j) {
      lp.set_objective(z * m + j, lambda * code_mass[z] * Distance(support[j], gd.table[z]));
      for (std::size_t i = 0; i < n; ++i) {
        const double dx = SquaredDistance(support[j], source.point(i));
        const double dc = SquaredDistance(gd.table[z], gd.table[enc.code(i)]);
        lp.set_objective(gamma_base + (z * m + j) * n + i, std::sqrt(dx + dc));
      }
    }
  }
  for (std::size_t z = 0; z < K; ++z) {
    std::vector<LpTerm> terms;
    for (std::size_t j = 0; j < m; ++j) terms.push_back({z * m + j, 1.0});
    lp.add_constraint(std::move(terms), Relation::kEqual, 1.0);
  }
  for (std::size_t z = 0; z < K; ++z) {
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<LpTerm> terms;
      for (std::size_t i = 0; i < n; ++i) terms.push_back({gamma_base + (z * m + j) * n + i, 1.0});
      terms.push_back({z * m + j, -code_mass[z]});
      lp.add_constraint(std::move(terms), Relation::kEqual, 0.0);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<LpTerm> terms;
    for (std::size_t zj = 0; zj < K * m; ++zj) terms.push_back({gamma_base + zj * n + i, 1.0});
    lp.add_constraint(std::move(terms), Relation::kEqual, source.prob(i));
  }

  const LpResult res = lp.minimize();
  if (res.status != LpStatus::kOptimal) {
    Fail(ErrorKind::kNumerical, "augmented LP ended with status " + ToString(res.status));
  }
  std::vector<std::vector<double>> rows(K, std::vector<double>(m, 0.0));
  for (std::size_t z = 0; z < K; ++z) {
    double total = 0.0;
    for (std::size_t j = 0; j < m; ++j) total += res.x[z * m + j];
    for (std::size_t j = 0; j < m; ++j) rows[z][j] = res.x[z * m + j] / total;
  }

  AugmentedSolution sol;
  sol.lambda = lambda;
  sol.decoder = StochasticDecoder(std::move(support), std::move(rows));
  const AugmentedTerms terms = augmented_terms(source, enc, gd, sol.decoder, lambda);
  sol.w1_gap = terms.w1_gap;
  sol.mean_dev = terms.mean_dev;
  sol.objective = terms.objective;
  sol.lp_objective = res.objective;
  sol.mse = distortion(source, enc, sol.decoder);
  sol.flag = lambda == 1.0 ? PhaseFlag::kIndeterminate : PhaseFlag::kOk;
  return sol;
}

std::vector<Point> default_augmented_support(
    const DiscreteDistribution& source, const DeterministicDecoder& gd) {
  std::vector<Point> pts = source.points();
  pts.insert(pts.end(), gd.table.begin(), gd.table.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

std::vector<AugmentedSolution> phase_sweep(
    const DiscreteDistribution& source, const Encoder& enc,
    const DeterministicDecoder& gd, const std::vector<double>& lambdas,
    const std::vector<Point>& out_support, std::size_t threads) {
  for (std::size_t k = 0; k < lambdas.size(); ++k) {
    CheckLambda(lambdas[k]);
    if (k > 0 && lambdas[k] < lambdas[k - 1]) {
      Fail(ErrorKind::kInvalidArgument, "lambda grid must be ascending");
    }
  }
  std::vector<AugmentedSolution> out(lambdas.size());
  ParallelFor(lambdas.size(), threads, [&](std::size_t k) {
    out[k] = solve_augmented(source, enc, gd, lambdas[k], out_support);
  });
  return out;
}

double beta_to_lambda(double beta) {
  if (!(beta > 0.0 && beta <= 1.0)) {
    Fail(ErrorKind::kInvalidArgument, "beta must lie in (0, 1]");
  }
  return (1.0 - beta) / beta;
}

ConditioningGaps conditioning_equivalence(const DiscreteDistribution& source,
                                          const Encoder& enc,
                                          const DeterministicDecoder& gd,
                                          const StochasticDecoder& decoder) {
  CheckShapes(source, enc, gd);
  if (!check_zd_xd_bijective(enc, gd)) {
    Fail(ErrorKind::kPrecondition,
         "MMSE decoder is not injective on codes; conditioning on X_d and Z_d "
         "is not equivalent");
  }
  if (decoder.K() != enc.K()) Fail(ErrorKind::kInvalidArgument, "decoder rows do not match K");
  const std::vector<double> code_mass = CodeMass(source, enc);

  // Conditional W1 gap for a grouping of codes into classes.
  auto grouped_gap = [&](const std::vector<std::vector<std::size_t>>& groups) {
    double gap = 0.0;
    for (const auto& group : groups) {
      double mass = 0.0;
      for (std::size_t z : group) mass += code_mass[z];
      if (mass == 0.0) continue;
      std::vector<Point> hat_pts, true_pts;
      std::vector<double> hat_probs, true_probs;
      for (std::size_t z : group) {
        for (std::size_t j = 0; j < decoder.out_support().size(); ++j) {
          const double w = code_mass[z] * decoder.row(z)[j];
          if (w <= 0.0) continue;
          hat_pts.push_back(decoder.out_support()[j]);
          hat_probs.push_back(w / mass);
        }
        for (std::size_t i = 0; i < source.size(); ++i) {
          if (enc.code(i) != z) continue;
          true_pts.push_back(source.point(i));
          true_probs.push_back(source.prob(i) / mass);
        }
      }
      gap += mass * w1_exact(make_distribution(std::move(hat_pts), std::move(hat_probs)),
                             make_distribution(std::move(true_pts), std::move(true_probs)))
                        .cost;
    }
    return gap;
  };

  std::vector<std::vector<std::size_t>> by_code(enc.K());
  for (std::size_t z = 0; z < enc.K(); ++z) by_code[z] = {z};
  std::map<Point, std::vector<std::size_t>> value_groups;
  for (std::size_t z = 0; z < enc.K(); ++z) value_groups[gd.table[z]].push_back(z);
  std::vector<std::vector<std::size_t>> by_value;
  for (auto& [value, codes] : value_groups) by_value.push_back(codes);

  return ConditioningGaps{grouped_gap(by_value), grouped_gap(by_code)};
}

}  // namespace dplab
