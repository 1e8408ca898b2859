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

#ifndef DPLAB_DISTRIBUTION_HPP_
#define DPLAB_DISTRIBUTION_HPP_

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "dplab/encoder.hpp"

namespace dplab {

// A point of R^d in signal units.
using Point = std::vector<double>;

// Input drift allowed on the total mass before renormalization.
inline constexpr double kMassInputTolerance = 1e-9;
// Drift maintained internally after canonicalization.
inline constexpr double kMassInternalTolerance = 1e-12;

double SquaredDistance(std::span<const double> a, std::span<const double> b);
double Distance(std::span<const double> a, std::span<const double> b);

// Finite discrete probability law on R^d.
//
// The support is kept in lexicographic order with exact (bitwise) duplicate
// points merged and zero-mass points dropped, so two equal laws compare equal
// with operator==. Instances are immutable.
class DiscreteDistribution {
 public:
  DiscreteDistribution() = default;

  std::size_t size() const { return probs_.size(); }
  std::size_t dim() const { return dim_; }
  const std::vector<Point>& points() const { return points_; }
  const std::vector<double>& probs() const { return probs_; }
  const Point& point(std::size_t i) const { return points_[i]; }
  double prob(std::size_t i) const { return probs_[i]; }

  // Index of an exactly matching support point.
  std::optional<std::size_t> index_of(const Point& p) const;

  bool operator==(const DiscreteDistribution&) const = default;

 private:
  friend DiscreteDistribution make_distribution(std::vector<Point>,
                                                std::vector<double>);
  std::vector<Point> points_;
  std::vector<double> probs_;
  std::size_t dim_ = 0;
};

// Canonicalizes (sort, merge exact duplicates, drop zero mass, renormalize).
// Errors: empty input, length mismatch, dimension mismatch, negative or
// non-finite values, total mass off by more than kMassInputTolerance.
DiscreteDistribution make_distribution(std::vector<Point> points,
                                       std::vector<double> probs);

// Convenience for scalar supports.
DiscreteDistribution make_distribution_1d(const std::vector<double>& values,
                                          std::vector<double> probs);
DiscreteDistribution uniform_1d(const std::vector<double>& values);
DiscreteDistribution point_mass(Point p);

// N equally spaced points on [mean - halfwidth*std, mean + halfwidth*std]
// with Gaussian weights, renormalized.
DiscreteDistribution gaussian_grid(double mean, double std_dev, int n,
                                   double halfwidth);

// Joint law p(x, z) of a source and the code of a deterministic encoder.
// mass(z, i) is indexed by code and by source support index.
class JointXZ {
 public:
  const DiscreteDistribution& source() const { return source_; }
  std::size_t K() const { return K_; }
  std::size_t support_size() const { return source_.size(); }
  double mass(std::size_t z, std::size_t i) const {
    return mass_[z * source_.size() + i];
  }
  // Marginal p(z).
  double code_mass(std::size_t z) const { return code_mass_[z]; }
  const std::vector<double>& code_masses() const { return code_mass_; }

 private:
  friend JointXZ joint_from_encoder(const DiscreteDistribution&,
                                    const Encoder&);
  DiscreteDistribution source_;
  std::size_t K_ = 0;
  std::vector<double> mass_;
  std::vector<double> code_mass_;
};

JointXZ joint_from_encoder(const DiscreteDistribution& source,
                           const Encoder& enc);

// p_{X|Z=z}. Throws kPrecondition when the cell has zero mass.
DiscreteDistribution conditional_x_given_z(const JointXZ& joint,
                                           std::size_t z);

// Exact weighted sums.
double expectation(const DiscreteDistribution& dist,
                   const std::function<double(const Point&)>& f);
double expectation(const JointXZ& joint,
                   const std::function<double(const Point&, std::size_t)>& f);

// E[X] and sum_i p_i ||x_i - E X||^2.
Point mean(const DiscreteDistribution& dist);
double variance(const DiscreteDistribution& dist);

}  // namespace dplab

#endif  // DPLAB_DISTRIBUTION_HPP_
