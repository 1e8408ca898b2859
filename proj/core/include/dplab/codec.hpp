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
#ifndef DPLAB_CODEC_HPP_
#define DPLAB_CODEC_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "dplab/distribution.hpp"
#include "dplab/encoder.hpp"

namespace dplab {

// Code index -> reconstruction point.
struct DeterministicDecoder {
  std::vector<Point> table;

  std::size_t K() const { return table.size(); }
  bool operator==(const DeterministicDecoder&) const = default;
};

// Code index -> pmf over a shared output support. Rows are never sampled;
// every quantity derived from a stochastic decoder is an exact sum.
class StochasticDecoder {
 public:
  StochasticDecoder() = default;

  // Validates shapes and that every row is a pmf (entries >= 0, total within
  // kMassInputTolerance of 1); rows are renormalized.
  StochasticDecoder(std::vector<Point> out_support,
                    std::vector<std::vector<double>> rows);

  std::size_t K() const { return rows_.size(); }
  const std::vector<Point>& out_support() const { return out_support_; }
  const std::vector<std::vector<double>>& rows() const { return rows_; }
  const std::vector<double>& row(std::size_t z) const { return rows_[z]; }

  bool operator==(const StochasticDecoder&) const = default;

 private:
  std::vector<Point> out_support_;
  std::vector<std::vector<double>> rows_;
};

// Conditional-mean decoder E[X | Z = z]. Throws on empty cells.
DeterministicDecoder mmse_decoder_for(const DiscreteDistribution& source,
                                      const Encoder& enc);

// Conditional resampler: row z is p_{X|Z=z} over the source support.
StochasticDecoder perceptual_decoder_for(const DiscreteDistribution& source,
                                         const Encoder& enc);

// E||X - Xhat||^2, summed exactly over p(x, z) q(xhat | z).
double distortion(const DiscreteDistribution& source, const Encoder& enc,
                  const DeterministicDecoder& dec);
double distortion(const DiscreteDistribution& source, const Encoder& enc,
                  const StochasticDecoder& dec);

// Output law p_{Xhat} = sum_z p(z) q(. | z).
DiscreteDistribution decoder_output_dist(const DiscreteDistribution& source,
                                         const Encoder& enc,
                                         const DeterministicDecoder& dec);
DiscreteDistribution decoder_output_dist(const DiscreteDistribution& source,
                                         const Encoder& enc,
                                         const StochasticDecoder& dec);

// True iff the decoder table has K pairwise distinct points.
bool check_zd_xd_bijective(const Encoder& enc,
                           const DeterministicDecoder& dec);

struct LloydOptions {
  std::uint64_t seed = 0;
  std::size_t max_iter = 1000;
  // Stop when the relative MSE decrease of one iteration is <= tol.
  double tol = 1e-10;
};

struct LloydResult {
  Encoder encoder;
  DeterministicDecoder decoder;
  double mse = 0.0;
  // MSE after initialization and after every iteration; nonincreasing.
  std::vector<double> mse_history;
  std::size_t iterations = 0;
};

// Lloyd / k-means on a weighted discrete source. Centroids are initialized
// from K seeded stratified quantile draws of the support (in canonical
// order); ties in the assignment step go to the lower code. Empty cells are
// repaired by moving in the point farthest from its current centroid.
LloydResult lloyd_train(const DiscreteDistribution& source, std::size_t K,
                        const LloydOptions& options = {});

struct OptimalCodec {
  Encoder encoder;
  DeterministicDecoder decoder;
  // Minimum MSE (D_d).
  double mse = 0.0;
};

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

// Enumerates all K^n assignments and keeps the MSE-optimal one, ties going to
// the lexicographically smallest assignment. Throws kCapacityExceeded when
// K^n exceeds the cap.
OptimalCodec exhaustive_optimal_encoder(
    const DiscreteDistribution& source, std::size_t K,
    std::uint64_t enumeration_cap = kDefaultEnumerationCap);

// Globally MSE-optimal K-cell partition of a one-dimensional source by dynamic
// programming over contiguous intervals (optimal scalar quantizer cells are
// intervals). O(K n^2). Throws unless d == 1.
OptimalCodec interval_optimal_encoder(const DiscreteDistribution& source,
                                      std::size_t K);

// Certified optimum: enumeration when K^n fits under the cap, otherwise the
// interval dynamic program for scalar sources.
OptimalCodec certified_optimal_encoder(
    const DiscreteDistribution& source, std::size_t K,
    std::uint64_t enumeration_cap = kDefaultEnumerationCap);

// MSE of the conditional-mean decoder for a given partition; cells with zero
// mass contribute nothing.
double partition_mse(const DiscreteDistribution& source, const Encoder& enc);

}  // namespace dplab

#endif  // DPLAB_CODEC_HPP_
