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
#include "dplab/codec.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <utility>

#include "dplab/error.hpp"

namespace dplab {
namespace {

void CheckEncoder(const DiscreteDistribution& source, const Encoder& enc) {
  if (enc.support_size() != source.size()) {
    Fail(ErrorKind::kInvalidArgument,
         "encoder covers " + std::to_string(enc.support_size()) +
             " support points but the source has " +
             std::to_string(source.size()));
  }
}

void CheckNoEmptyCell(const Encoder& enc) {
  const auto sizes = enc.cell_sizes();
  for (std::size_t z = 0; z < sizes.size(); ++z) {
    if (sizes[z] == 0) {
      Fail(ErrorKind::kPrecondition, "cell " + std::to_string(z) + " is empty");
    }
  }
}

void CheckDecoderShape(const DiscreteDistribution& source, const Encoder& enc,
                       std::size_t decoder_K, std::size_t decoder_dim) {
  CheckEncoder(source, enc);
  if (decoder_K != enc.K()) {
    Fail(ErrorKind::kInvalidArgument,
         "decoder has " + std::to_string(decoder_K) + " rows but K=" +
             std::to_string(enc.K()));
  }
  if (decoder_dim != source.dim()) {
    Fail(ErrorKind::kInvalidArgument, "decoder dimension differs from source");
  }
}

// Conditional means; cells without mass keep an empty Point.
std::vector<Point> CellMeans(const DiscreteDistribution& source,
                             const std::vector<std::size_t>& assignment,
                             std::size_t K, std::vector<double>* cell_mass) {
  std::vector<Point> sums(K, Point(source.dim(), 0.0));
  std::vector<double> mass(K, 0.0);
  for (std::size_t i = 0; i < source.size(); ++i) {
    const std::size_t z = assignment[i];
    mass[z] += source.prob(i);
    for (std::size_t k = 0; k < source.dim(); ++k) {
      sums[z][k] += source.prob(i) * source.point(i)[k];
    }
  }
  for (std::size_t z = 0; z < K; ++z) {
    if (mass[z] > 0.0) {
      for (double& v : sums[z]) v /= mass[z];
    } else {
      sums[z].clear();
    }
  }
  if (cell_mass != nullptr) *cell_mass = std::move(mass);
  return sums;
}

double AssignmentMse(const DiscreteDistribution& source,
                     const std::vector<std::size_t>& assignment,
                     std::size_t K) {
  const std::vector<Point> means = CellMeans(source, assignment, K, nullptr);
  double mse = 0.0;
  for (std::size_t i = 0; i < source.size(); ++i) {
    mse += source.prob(i) * SquaredDistance(source.point(i), means[assignment[i]]);
  }
  return mse;
}

bool FitsEnumerationCap(std::size_t n, std::size_t K, std::uint64_t cap) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (total > cap / K) return false;
    total *= K;
  }
  return total <= cap;
}

double Uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

StochasticDecoder::StochasticDecoder(std::vector<Point> out_support,
                                     std::vector<std::vector<double>> rows)
    : out_support_(std::move(out_support)), rows_(std::move(rows)) {
  if (out_support_.empty()) {
    Fail(ErrorKind::kInvalidArgument, "stochastic decoder needs a non-empty support");
  }
  const std::size_t dim = out_support_.front().size();
  for (const Point& p : out_support_) {
    if (p.size() != dim) {
      Fail(ErrorKind::kInvalidArgument, "decoder support points differ in dimension");
    }
    for (double v : p) {
      if (!std::isfinite(v)) Fail(ErrorKind::kInvalidArgument, "non-finite decoder support point");
    }
  }
  for (std::size_t z = 0; z < rows_.size(); ++z) {
    auto& row = rows_[z];
    if (row.size() != out_support_.size()) {
      Fail(ErrorKind::kInvalidArgument,
           "decoder row " + std::to_string(z) + " has the wrong length");
    }
    double total = 0.0;
    for (double q : row) {
      if (!std::isfinite(q) || q < 0.0) {
        Fail(ErrorKind::kInvalidArgument,
             "decoder row " + std::to_string(z) + " has a negative entry");
      }
      total += q;
    }
    if (std::abs(total - 1.0) > kMassInputTolerance) {
      Fail(ErrorKind::kInvalidArgument,
           "decoder row " + std::to_string(z) + " sums to " + std::to_string(total));
    }
    if (std::abs(total - 1.0) > kMassInternalTolerance) {
      for (double& q : row) q /= total;
    }
  }
}

DeterministicDecoder mmse_decoder_for(const DiscreteDistribution& source,
                                      const Encoder& enc) {
  CheckEncoder(source, enc);
  CheckNoEmptyCell(enc);
  return DeterministicDecoder{CellMeans(source, enc.assignment(), enc.K(), nullptr)};
}

namespace {

// A double q near p / m with fl(q * m) == p when one exists within a few
// ulps, so that reassembling the marginal reproduces p bit for bit.
double ExactQuotient(double p, double m) {
  const double q = p / m;
  if (q * m == p) return q;
  double up = q, down = q;
  for (int step = 0; step < 4; ++step) {
    up = std::nextafter(up, std::numeric_limits<double>::infinity());
    down = std::nextafter(down, 0.0);
    if (up * m == p) return up;
    if (down * m == p) return down;
  }
  return q;
}

}  // namespace

StochasticDecoder perceptual_decoder_for(const DiscreteDistribution& source,
                                         const Encoder& enc) {
  CheckEncoder(source, enc);
  CheckNoEmptyCell(enc);
  std::vector<double> mass(enc.K(), 0.0);
  for (std::size_t i = 0; i < source.size(); ++i) mass[enc.code(i)] += source.prob(i);
  std::vector<std::vector<double>> rows(enc.K(), std::vector<double>(source.size(), 0.0));
  for (std::size_t i = 0; i < source.size(); ++i) {
    rows[enc.code(i)][i] = ExactQuotient(source.prob(i), mass[enc.code(i)]);
  }
  return StochasticDecoder(source.points(), std::move(rows));
}

double distortion(const DiscreteDistribution& source, const Encoder& enc,
                  const DeterministicDecoder& dec) {
  CheckDecoderShape(source, enc, dec.K(),
                    dec.table.empty() ? source.dim() : dec.table.front().size());
  double d = 0.0;
  for (std::size_t i = 0; i < source.size(); ++i) {
    d += source.prob(i) * SquaredDistance(source.point(i), dec.table[enc.code(i)]);
  }
  return d;
}

double distortion(const DiscreteDistribution& source, const Encoder& enc,
                  const StochasticDecoder& dec) {
  CheckDecoderShape(source, enc, dec.K(), dec.out_support().front().size());
  double d = 0.0;
  for (std::size_t i = 0; i < source.size(); ++i) {
    const auto& row = dec.row(enc.code(i));
    double inner = 0.0;
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j] > 0.0) inner += row[j] * SquaredDistance(source.point(i), dec.out_support()[j]);
    }
    d += source.prob(i) * inner;
  }
  return d;
}

DiscreteDistribution decoder_output_dist(const DiscreteDistribution& source,
                                         const Encoder& enc,
                                         const DeterministicDecoder& dec) {
  CheckDecoderShape(source, enc, dec.K(),
                    dec.table.empty() ? source.dim() : dec.table.front().size());
  std::vector<Point> points;
  std::vector<double> probs;
  for (std::size_t i = 0; i < source.size(); ++i) {
    points.push_back(dec.table[enc.code(i)]);
    probs.push_back(source.prob(i));
  }
  return make_distribution(std::move(points), std::move(probs));
}

DiscreteDistribution decoder_output_dist(const DiscreteDistribution& source,
                                         const Encoder& enc,
                                         const StochasticDecoder& dec) {
  CheckDecoderShape(source, enc, dec.K(), dec.out_support().front().size());
  std::vector<double> code_mass(enc.K(), 0.0);
  for (std::size_t i = 0; i < source.size(); ++i) code_mass[enc.code(i)] += source.prob(i);
  std::vector<double> probs(dec.out_support().size(), 0.0);
  for (std::size_t z = 0; z < enc.K(); ++z) {
    if (code_mass[z] == 0.0) continue;
    for (std::size_t j = 0; j < probs.size(); ++j) probs[j] += code_mass[z] * dec.row(z)[j];
  }
  return make_distribution(dec.out_support(), std::move(probs));
}

bool check_zd_xd_bijective(const Encoder& enc,
                           const DeterministicDecoder& dec) {
  if (dec.K() != enc.K()) return false;
  std::vector<Point> sorted = dec.table;
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

double partition_mse(const DiscreteDistribution& source, const Encoder& enc) {
  CheckEncoder(source, enc);
  return AssignmentMse(source, enc.assignment(), enc.K());
}

LloydResult lloyd_train(const DiscreteDistribution& source, std::size_t K,
                        const LloydOptions& options) {
  const std::size_t n = source.size();
  if (K == 0) Fail(ErrorKind::kInvalidArgument, "K must be >= 1");
  if (K > n) {
    Fail(ErrorKind::kInvalidArgument,
         "K=" + std::to_string(K) + " exceeds the support size " + std::to_string(n));
  }
  if (options.max_iter < 1) Fail(ErrorKind::kInvalidArgument, "max_iter must be >= 1");

  // Seeded stratified quantile draws over the canonical support order.
  std::mt19937_64 rng(options.seed);
  std::vector<double> cdf(n);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) cdf[i] = (acc += source.prob(i));
  std::vector<bool> used(n, false);
  std::vector<Point> centroids;
  for (std::size_t k = 0; k < K; ++k) {
    const double u = (static_cast<double>(k) + Uniform01(rng)) / static_cast<double>(K);
    std::size_t idx = static_cast<std::size_t>(
        std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    idx = std::min(idx, n - 1);
    if (used[idx]) {
      // Nearest unused index, lower side first on ties.
      for (std::size_t off = 1; off < n; ++off) {
        if (idx >= off && !used[idx - off]) {
          idx -= off;
          break;
        }
        if (idx + off < n && !used[idx + off]) {
          idx += off;
          break;
        }
      }
    }
    used[idx] = true;
    centroids.push_back(source.point(idx));
  }

  std::vector<std::size_t> assignment(n, 0);
  auto assign = [&] {
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t best = 0;
      double best_d = SquaredDistance(source.point(i), centroids[0]);
      for (std::size_t z = 1; z < K; ++z) {
        const double d = SquaredDistance(source.point(i), centroids[z]);
        if (d < best_d) {
          best_d = d;
          best = z;
        }
      }
      assignment[i] = best;
    }
    // Repair empty cells by stealing the worst-served point.
    while (true) {
      std::vector<std::size_t> sizes(K, 0);
      for (std::size_t z : assignment) ++sizes[z];
      const auto empty = std::find(sizes.begin(), sizes.end(), 0);
      if (empty == sizes.end()) break;
      const std::size_t e = static_cast<std::size_t>(empty - sizes.begin());
      std::size_t victim = n;
      double worst = -1.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (sizes[assignment[i]] < 2) continue;
        const double d = SquaredDistance(source.point(i), centroids[assignment[i]]);
        if (d > worst) {
          worst = d;
          victim = i;
        }
      }
      assignment[victim] = e;
      centroids[e] = source.point(victim);
    }
  };
  auto update = [&] {
    centroids = CellMeans(source, assignment, K, nullptr);
    double mse = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      mse += source.prob(i) * SquaredDistance(source.point(i), centroids[assignment[i]]);
    }
    return mse;
  };

  LloydResult result;
  assign();
  double mse = update();
  result.mse_history.push_back(mse);
  for (std::size_t it = 1; it <= options.max_iter; ++it) {
    assign();
    const double next = update();
    result.mse_history.push_back(next);
    result.iterations = it;
    const double prev = mse;
    mse = next;
    if (prev <= 0.0 || prev - next <= options.tol * prev) break;
  }
  result.encoder = Encoder(assignment, K);
  result.decoder = DeterministicDecoder{centroids};
  result.mse = mse;
  return result;
}

OptimalCodec exhaustive_optimal_encoder(const DiscreteDistribution& source,
                                        std::size_t K,
                                        std::uint64_t enumeration_cap) {
  const std::size_t n = source.size();
  if (K == 0) Fail(ErrorKind::kInvalidArgument, "K must be >= 1");
  if (K > n) {
    Fail(ErrorKind::kInvalidArgument,
         "K=" + std::to_string(K) + " exceeds the support size " + std::to_string(n));
  }
  if (!FitsEnumerationCap(n, K, enumeration_cap)) {
    Fail(ErrorKind::kCapacityExceeded,
         "K^n = " + std::to_string(K) + "^" + std::to_string(n) +
             " assignments exceed the enumeration cap of " +
             std::to_string(enumeration_cap));
  }

  std::vector<std::size_t> assignment(n, 0);
  std::vector<std::size_t> best;
  double best_mse = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> sizes(K, 0);
  sizes[0] = n;
  while (true) {
    if (std::find(sizes.begin(), sizes.end(), 0) == sizes.end()) {
      const double mse = AssignmentMse(source, assignment, K);
      // Strict improvement beyond round-off keeps the lexicographically first
      // optimum.
      if (best.empty() || mse < best_mse - 1e-12 * best_mse) {
        best_mse = mse;
        best = assignment;
      }
    }
    // Lexicographic successor.
    std::size_t pos = n;
    while (pos > 0) {
      --pos;
      --sizes[assignment[pos]];
      if (++assignment[pos] < K) {
        ++sizes[assignment[pos]];
        break;
      }
      assignment[pos] = 0;
      ++sizes[0];
      if (pos == 0) {
        pos = n;
        break;
      }
    }
    if (pos == n) break;
  }

  Encoder enc(best, K);
  DeterministicDecoder dec = mmse_decoder_for(source, enc);
  return OptimalCodec{std::move(enc), std::move(dec), best_mse};
}

OptimalCodec interval_optimal_encoder(const DiscreteDistribution& source,
                                      std::size_t K) {
  const std::size_t n = source.size();
  if (source.dim() != 1) {
    Fail(ErrorKind::kInvalidArgument, "interval optimization requires a scalar source");
  }
  if (K == 0) Fail(ErrorKind::kInvalidArgument, "K must be >= 1");
  if (K > n) {
    Fail(ErrorKind::kInvalidArgument,
         "K=" + std::to_string(K) + " exceeds the support size " + std::to_string(n));
  }
  // Cost of the cell [a, b) as a centered second moment, accurate for any
  // offset of the support.
  auto cell_cost = [&](std::size_t a, std::size_t b) {
    double w = 0.0, m = 0.0;
    for (std::size_t i = a; i < b; ++i) {
      w += source.prob(i);
      m += source.prob(i) * source.point(i)[0];
    }
    m /= w;
    double c = 0.0;
    for (std::size_t i = a; i < b; ++i) {
      const double d = source.point(i)[0] - m;
      c += source.prob(i) * d * d;
    }
    return c;
  };
  std::vector<std::vector<double>> cost(n + 1, std::vector<double>(n + 1, 0.0));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b <= n; ++b) cost[a][b] = cell_cost(a, b);
  }
  const double inf = std::numeric_limits<double>::infinity();
  // best[k][j]: first j points in k cells.
  std::vector<std::vector<double>> best(K + 1, std::vector<double>(n + 1, inf));
  std::vector<std::vector<std::size_t>> split(K + 1, std::vector<std::size_t>(n + 1, 0));
  best[0][0] = 0.0;
  for (std::size_t k = 1; k <= K; ++k) {
    for (std::size_t j = k; j <= n; ++j) {
      for (std::size_t s = k - 1; s < j; ++s) {
        if (best[k - 1][s] == inf) continue;
        const double v = best[k - 1][s] + cost[s][j];
        if (best[k][j] == inf || v < best[k][j] - 1e-15 * best[k][j]) {
          best[k][j] = v;
          split[k][j] = s;
        }
      }
    }
  }
  std::vector<std::size_t> assignment(n, 0);
  std::size_t end = n;
  for (std::size_t k = K; k >= 1; --k) {
    const std::size_t start = split[k][end];
    for (std::size_t i = start; i < end; ++i) assignment[i] = k - 1;
    end = start;
  }
  Encoder enc(assignment, K);
  DeterministicDecoder dec = mmse_decoder_for(source, enc);
  const double mse = AssignmentMse(source, assignment, K);
  return OptimalCodec{std::move(enc), std::move(dec), mse};
}

OptimalCodec certified_optimal_encoder(const DiscreteDistribution& source,
                                       std::size_t K,
                                       std::uint64_t enumeration_cap) {
  if (K >= 1 && K <= source.size() &&
      FitsEnumerationCap(source.size(), K, enumeration_cap)) {
    return exhaustive_optimal_encoder(source, K, enumeration_cap);
  }
  if (source.dim() == 1) return interval_optimal_encoder(source, K);
  Fail(ErrorKind::kCapacityExceeded,
       "no certified optimizer: K^n exceeds the enumeration cap and the source "
       "is not scalar");
}

}  // namespace dplab
