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
#include "dplab/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "dplab/error.hpp"

namespace dplab {

double SquaredDistance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    s += d * d;
  }
  return s;
}

double Distance(std::span<const double> a, std::span<const double> b) {
  return std::sqrt(SquaredDistance(a, b));
}

std::optional<std::size_t> DiscreteDistribution::index_of(
    const Point& p) const {
  auto it = std::lower_bound(points_.begin(), points_.end(), p);
  if (it == points_.end() || *it != p) return std::nullopt;
  return static_cast<std::size_t>(it - points_.begin());
}

DiscreteDistribution make_distribution(std::vector<Point> points,
                                       std::vector<double> probs) {
  if (points.empty()) {
    Fail(ErrorKind::kInvalidArgument, "distribution needs at least one point");
  }
  if (points.size() != probs.size()) {
    Fail(ErrorKind::kInvalidArgument,
         "points and probs differ in length (" + std::to_string(points.size()) +
             " vs " + std::to_string(probs.size()) + ")");
  }
  const std::size_t dim = points.front().size();
  if (dim == 0) Fail(ErrorKind::kInvalidArgument, "points must have dimension >= 1");
  double total = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != dim) {
      Fail(ErrorKind::kInvalidArgument, "dimension mismatch at point " +
                                            std::to_string(i));
    }
    for (double v : points[i]) {
      if (!std::isfinite(v)) {
        Fail(ErrorKind::kInvalidArgument, "non-finite coordinate at point " +
                                              std::to_string(i));
      }
    }
    if (!std::isfinite(probs[i]) || probs[i] < 0.0) {
      Fail(ErrorKind::kInvalidArgument,
           "negative or non-finite probability at point " + std::to_string(i));
    }
    total += probs[i];
  }
  if (std::abs(total - 1.0) > kMassInputTolerance) {
    Fail(ErrorKind::kInvalidArgument,
         "total mass " + std::to_string(total) + " deviates from 1");
  }

  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return points[a] < points[b];
  });

  DiscreteDistribution out;
  out.dim_ = dim;
  for (std::size_t idx : order) {
    if (probs[idx] == 0.0) continue;
    if (!out.points_.empty() && out.points_.back() == points[idx]) {
      out.probs_.back() += probs[idx];
    } else {
      out.points_.push_back(std::move(points[idx]));
      out.probs_.push_back(probs[idx]);
    }
  }
  // Renormalize only beyond the internal tolerance, which keeps the
  // canonical form a fixed point.
  double sum = 0.0;
  for (double p : out.probs_) sum += p;
  if (std::abs(sum - 1.0) > kMassInternalTolerance) {
    for (double& p : out.probs_) p /= sum;
  }
  return out;
}

DiscreteDistribution make_distribution_1d(const std::vector<double>& values,
                                          std::vector<double> probs) {
  std::vector<Point> points;
  points.reserve(values.size());
  for (double v : values) points.push_back(Point{v});
  return make_distribution(std::move(points), std::move(probs));
}

DiscreteDistribution uniform_1d(const std::vector<double>& values) {
  if (values.empty()) Fail(ErrorKind::kInvalidArgument, "empty support");
  std::vector<double> probs(values.size(), 1.0 / static_cast<double>(values.size()));
  return make_distribution_1d(values, std::move(probs));
}

DiscreteDistribution point_mass(Point p) {
  return make_distribution({std::move(p)}, {1.0});
}

DiscreteDistribution gaussian_grid(double mean, double std_dev, int n,
                                   double halfwidth) {
  if (n < 1) Fail(ErrorKind::kInvalidArgument, "gaussian-grid needs n >= 1");
  if (!(std_dev > 0.0) || !(halfwidth >= 0.0)) {
    Fail(ErrorKind::kInvalidArgument,
         "gaussian-grid needs std > 0 and halfwidth >= 0");
  }
  if (n == 1) return point_mass(Point{mean});
  const double lo = mean - halfwidth * std_dev;
  const double span = 2.0 * halfwidth * std_dev;
  std::vector<double> values(n), weights(n);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    values[i] = lo + span * static_cast<double>(i) / static_cast<double>(n - 1);
    const double t = (values[i] - mean) / std_dev;
    weights[i] = std::exp(-0.5 * t * t);
    total += weights[i];
  }
  for (double& w : weights) w /= total;
  return make_distribution_1d(values, std::move(weights));
}

JointXZ joint_from_encoder(const DiscreteDistribution& source,
                           const Encoder& enc) {
  if (enc.support_size() != source.size()) {
    Fail(ErrorKind::kInvalidArgument,
         "encoder covers " + std::to_string(enc.support_size()) +
             " support points but the source has " +
             std::to_string(source.size()));
  }
  JointXZ joint;
  joint.source_ = source;
  joint.K_ = enc.K();
  joint.mass_.assign(enc.K() * source.size(), 0.0);
  joint.code_mass_.assign(enc.K(), 0.0);
  for (std::size_t i = 0; i < source.size(); ++i) {
    const std::size_t z = enc.code(i);
    joint.mass_[z * source.size() + i] = source.prob(i);
    joint.code_mass_[z] += source.prob(i);
  }
  return joint;
}

DiscreteDistribution conditional_x_given_z(const JointXZ& joint,
                                           std::size_t z) {
  if (z >= joint.K()) {
    Fail(ErrorKind::kInvalidArgument, "code " + std::to_string(z) +
                                          " out of range");
  }
  const double pz = joint.code_mass(z);
  if (!(pz > 0.0)) {
    Fail(ErrorKind::kPrecondition,
         "cell " + std::to_string(z) + " has zero mass");
  }
  std::vector<Point> points;
  std::vector<double> probs;
  for (std::size_t i = 0; i < joint.support_size(); ++i) {
    const double m = joint.mass(z, i);
    if (m > 0.0) {
      points.push_back(joint.source().point(i));
      probs.push_back(m / pz);
    }
  }
  return make_distribution(std::move(points), std::move(probs));
}

double expectation(const DiscreteDistribution& dist,
                   const std::function<double(const Point&)>& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < dist.size(); ++i) s += dist.prob(i) * f(dist.point(i));
  return s;
}

double expectation(const JointXZ& joint,
                   const std::function<double(const Point&, std::size_t)>& f) {
  double s = 0.0;
  for (std::size_t z = 0; z < joint.K(); ++z) {
    for (std::size_t i = 0; i < joint.support_size(); ++i) {
      const double m = joint.mass(z, i);
      if (m > 0.0) s += m * f(joint.source().point(i), z);
    }
  }
  return s;
}

Point mean(const DiscreteDistribution& dist) {
  Point m(dist.dim(), 0.0);
  for (std::size_t i = 0; i < dist.size(); ++i) {
    for (std::size_t k = 0; k < dist.dim(); ++k) m[k] += dist.prob(i) * dist.point(i)[k];
  }
  return m;
}

double variance(const DiscreteDistribution& dist) {
  const Point m = mean(dist);
  return expectation(dist, [&](const Point& x) { return SquaredDistance(x, m); });
}

}  // namespace dplab
