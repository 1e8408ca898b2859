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
#ifndef DPLAB_TRADEOFF_HPP_
#define DPLAB_TRADEOFF_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "dplab/codec.hpp"
#include "dplab/distribution.hpp"
#include "dplab/encoder.hpp"
#include "dplab/transport.hpp"

namespace dplab {

// Decoder emitting alpha * gd[z] + (1 - alpha) * xp with xp ~ gp row z.
struct InterpolatedDecoder {
  double alpha = 1.0;
  DeterministicDecoder gd;
  StochasticDecoder gp;
  // out_support holds the exact affine combinations (canonical order, exact
  // duplicates merged); row pmfs carry the gp row masses.
  StochasticDecoder realized;
};

InterpolatedDecoder interpolate(const DeterministicDecoder& gd,
                                const StochasticDecoder& gp, double alpha);

// min(sqrt(P / P_d), 1). Throws when P < 0 or P_d <= 0.
double alpha_for_perception(double perception, double perception_mmse);

// (1 + (1 - alpha)^2) D_d.
double predicted_distortion(double alpha, double distortion_mmse);

// alpha^2 P_d.
double predicted_perception(double alpha, double perception_mmse);

struct DpDerivatives {
  double first = 0.0;   // dP/dD
  double second = 0.0;  // d^2P/dD^2
};

// Slope and curvature of the tradeoff curve at an interior alpha.
DpDerivatives dp_derivatives(double alpha, double distortion_mmse);

struct TradeoffPoint {
  double alpha = 0.0;
  double D_measured = 0.0;
  double P_measured = 0.0;
  double D_predicted = 0.0;
  double P_predicted = 0.0;
  double D_d = 0.0;
  double P_d = 0.0;
};

// D_d = MSE of (enc, gd); P_d = W2^2(p_X, p_{gd(Z)}), measured rather than
// assumed equal to D_d.
struct MmseBaseline {
  double D_d = 0.0;
  double P_d = 0.0;
  TransportPlan plan;
};

MmseBaseline mmse_baseline(const DiscreteDistribution& source,
                           const Encoder& enc, const DeterministicDecoder& gd);

// Measured and predicted (D, P) at one alpha. The predictions only bind when
// (enc, gd) is a globally MSE-optimal pair.
TradeoffPoint evaluate_point(const DiscreteDistribution& source,
                             const Encoder& enc,
                             const DeterministicDecoder& gd,
                             const StochasticDecoder& gp, double alpha);

struct SweepOptions {
  // 0 means DefaultThreadCount().
  std::size_t threads = 0;
  // Keep the perception transport plan of every point.
  bool keep_plans = false;
};

struct SweepResult {
  std::vector<TradeoffPoint> points;
  // Filled when SweepOptions::keep_plans is set; index-aligned with points.
  std::vector<TransportPlan> plans;
};

// One point per alpha, in grid order. The grid must be ascending in [0, 1].
SweepResult sweep(const DiscreteDistribution& source, const Encoder& enc,
                  const DeterministicDecoder& gd, const StochasticDecoder& gp,
                  const std::vector<double>& alphas,
                  const SweepOptions& options = {});

struct OracleResult {
  double D_star = 0.0;
  StochasticDecoder decoder;
  // Transport cost of the coupling found by the program (<= P).
  double perception = 0.0;
  std::size_t pivots = 0;
};

// Solves the perception-constrained distortion problem for a fixed encoder
// as one linear program over decoder rows q(xhat | z) and a coupling
// pi(x, xhat) between p_X and the output law, restricted to out_support.
// Encoders with empty cells are accepted; their rows are irrelevant and set
// to a point mass on out_support[0].
OracleResult constrained_oracle(const DiscreteDistribution& source,
                                const Encoder& enc, double perception,
                                const std::vector<Point>& out_support);

// supp(X) U gd table U { a gd[z] + (1 - a) x : z, x in supp(X | Z = z),
// a in alphas }, canonical and deduplicated.
std::vector<Point> default_oracle_support(const DiscreteDistribution& source,
                                          const Encoder& enc,
                                          const DeterministicDecoder& gd,
                                          const std::vector<double>& alphas);

struct UniversalityRow {
  double perception = 0.0;
  double D_mmse_encoder = 0.0;
  double D_best_any_encoder = 0.0;
  std::vector<std::size_t> best_assignment;
  // (D_mmse_encoder - D_best_any_encoder) / max(D_best_any_encoder, tiny);
  // zero when both vanish.
  double relative_gap = 0.0;
};

struct UniversalityReport {
  Encoder mmse_encoder;
  double D_d = 0.0;
  double P_d = 0.0;
  std::size_t encoders_checked = 0;
  std::vector<UniversalityRow> rows;
};

// Compares the oracle under the MSE-optimal encoder with the minimum of the
// oracle over all K^n encoders, for each P in the grid. Each encoder e gets
// its own candidate support: supp(X), its conditional means c_z and
// { a c_z + (1 - a) x : z, x in supp(X) } at a = min(sqrt(P / P_d(e)), 1),
// so encoders are not handicapped by a support tailored to the MMSE pair.
UniversalityReport universal_encoder_check(
    const DiscreteDistribution& source, std::size_t K,
    const std::vector<double>& perceptions,
    std::uint64_t enumeration_cap = kDefaultEnumerationCap,
    std::size_t threads = 0);

}  // namespace dplab

#endif  // DPLAB_TRADEOFF_HPP_
