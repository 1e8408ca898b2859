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
#include "dplab/tradeoff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <utility>

#include "dplab/error.hpp"
#include "dplab/lp.hpp"
#include "dplab/parallel.hpp"

namespace dplab {
namespace {

void CheckAlpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    Fail(ErrorKind::kInvalidArgument,
         "alpha must lie in [0, 1], got " + std::to_string(alpha));
  }
}

void CheckGrid(const std::vector<double>& grid, const char* name, double lo,
               double hi) {
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!(grid[k] >= lo && grid[k] <= hi)) {
      Fail(ErrorKind::kInvalidArgument,
           std::string(name) + " grid value " + std::to_string(grid[k]) +
               " out of range");
    }
    if (k > 0 && grid[k] < grid[k - 1]) {
      Fail(ErrorKind::kInvalidArgument, std::string(name) + " grid must be ascending");
    }
  }
}

Point Affine(double alpha, const Point& a, const Point& b) {
  Point out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = alpha * a[k] + (1.0 - alpha) * b[k];
  return out;
}

std::vector<Point> SortedUnique(std::vector<Point> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

TradeoffPoint EvaluateWithBaseline(const DiscreteDistribution& source,
                                   const Encoder& enc,
                                   const DeterministicDecoder& gd,
                                   const StochasticDecoder& gp, double alpha,
                                   const MmseBaseline& baseline,
                                   TransportPlan* plan_out) {
  const InterpolatedDecoder interp = interpolate(gd, gp, alpha);
  TradeoffPoint pt;
  pt.alpha = alpha;
  pt.D_measured = distortion(source, enc, interp.realized);
  TransportPlan plan =
      w2sq_exact(source, decoder_output_dist(source, enc, interp.realized));
  pt.P_measured = plan.cost;
  pt.D_d = baseline.D_d;
  pt.P_d = baseline.P_d;
  pt.D_predicted = predicted_distortion(alpha, baseline.D_d);
  pt.P_predicted = predicted_perception(alpha, baseline.P_d);
  if (plan_out != nullptr) *plan_out = std::move(plan);
  return pt;
}

}  // namespace

InterpolatedDecoder interpolate(const DeterministicDecoder& gd,
                                const StochasticDecoder& gp, double alpha) {
  CheckAlpha(alpha);
  if (gd.K() != gp.K()) {
    Fail(ErrorKind::kInvalidArgument,
         "decoders disagree on K (" + std::to_string(gd.K()) + " vs " +
             std::to_string(gp.K()) + ")");
  }
  for (const Point& c : gd.table) {
    if (c.size() != gp.out_support().front().size()) {
      Fail(ErrorKind::kInvalidArgument, "decoders disagree on dimension");
    }
  }
  std::map<Point, std::size_t> index;
  std::vector<std::vector<std::pair<Point, double>>> cells(gd.K());
  for (std::size_t z = 0; z < gd.K(); ++z) {
    const auto& row = gp.row(z);
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j] <= 0.0) continue;
      Point p = Affine(alpha, gd.table[z], gp.out_support()[j]);
      index.emplace(p, 0);
      cells[z].emplace_back(std::move(p), row[j]);
    }
  }
  std::vector<Point> support;
  support.reserve(index.size());
  for (auto& [p, idx] : index) {
    idx = support.size();
    support.push_back(p);
  }
  std::vector<std::vector<double>> rows(gd.K(), std::vector<double>(support.size(), 0.0));
  for (std::size_t z = 0; z < gd.K(); ++z) {
    for (const auto& [p, q] : cells[z]) rows[z][index.at(p)] += q;
  }
  return InterpolatedDecoder{alpha, gd, gp, StochasticDecoder(std::move(support), std::move(rows))};
}

double alpha_for_perception(double perception, double perception_mmse) {
  if (!(perception >= 0.0)) Fail(ErrorKind::kInvalidArgument, "perception must be >= 0");
  if (!(perception_mmse > 0.0)) {
    Fail(ErrorKind::kPrecondition,
         "P_d must be positive (a lossless codec has no tradeoff)");
  }
  return std::min(std::sqrt(perception / perception_mmse), 1.0);
}

double predicted_distortion(double alpha, double distortion_mmse) {
  CheckAlpha(alpha);
  const double r = 1.0 - alpha;
  return (1.0 + r * r) * distortion_mmse;
}

double predicted_perception(double alpha, double perception_mmse) {
  CheckAlpha(alpha);
  return alpha * alpha * perception_mmse;
}

DpDerivatives dp_derivatives(double alpha, double distortion_mmse) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    Fail(ErrorKind::kInvalidArgument,
         "derivatives need an interior alpha in (0, 1)");
  }
  if (!(distortion_mmse > 0.0)) Fail(ErrorKind::kInvalidArgument, "D_d must be positive");
  const double r = 1.0 - alpha;
  return DpDerivatives{alpha / (alpha - 1.0), 1.0 / (2.0 * r * r * r * distortion_mmse)};
}

MmseBaseline mmse_baseline(const DiscreteDistribution& source,
                           const Encoder& enc, const DeterministicDecoder& gd) {
  MmseBaseline b;
  b.D_d = distortion(source, enc, gd);
  b.plan = w2sq_exact(source, decoder_output_dist(source, enc, gd));
  b.P_d = b.plan.cost;
  return b;
}

TradeoffPoint evaluate_point(const DiscreteDistribution& source,
                             const Encoder& enc,
                             const DeterministicDecoder& gd,
                             const StochasticDecoder& gp, double alpha) {
  CheckAlpha(alpha);
  const MmseBaseline baseline = mmse_baseline(source, enc, gd);
  return EvaluateWithBaseline(source, enc, gd, gp, alpha, baseline, nullptr);
}

SweepResult sweep(const DiscreteDistribution& source, const Encoder& enc,
                  const DeterministicDecoder& gd, const StochasticDecoder& gp,
                  const std::vector<double>& alphas,
                  const SweepOptions& options) {
  CheckGrid(alphas, "alpha", 0.0, 1.0);
  SweepResult out;
  if (alphas.empty()) return out;
  const MmseBaseline baseline = mmse_baseline(source, enc, gd);
  out.points.resize(alphas.size());
  if (options.keep_plans) out.plans.resize(alphas.size());
  ParallelFor(alphas.size(), options.threads, [&](std::size_t k) {
    out.points[k] = EvaluateWithBaseline(
        source, enc, gd, gp, alphas[k], baseline,
        options.keep_plans ? &out.plans[k] : nullptr);
  });
  return out;
}

OracleResult constrained_oracle(const DiscreteDistribution& source,
                                const Encoder& enc, double perception,
                                const std::vector<Point>& out_support) {
  if (!(perception >= 0.0) || !std::isfinite(perception)) {
    Fail(ErrorKind::kInvalidArgument, "perception must be >= 0");
  }
  if (out_support.empty()) Fail(ErrorKind::kInvalidArgument, "out_support must be non-empty");
  if (enc.support_size() != source.size()) {
    Fail(ErrorKind::kInvalidArgument, "encoder does not match the source support");
  }
  for (const Point& y : out_support) {
    if (y.size() != source.dim()) {
      Fail(ErrorKind::kInvalidArgument, "out_support dimension differs from source");
    }
  }
  const std::vector<Point> support = SortedUnique(out_support);
  const std::size_t K = enc.K();
  const std::size_t n = source.size();
  const std::size_t m = support.size();

  std::vector<double> code_mass(K, 0.0);
  for (std::size_t i = 0; i < n; ++i) code_mass[enc.code(i)] += source.prob(i);

  // Variables: w(z, j) = p(z) q(j | z), then pi(i, j).
  const std::size_t pi_base = K * m;
  LinearProgram lp(pi_base + n * m);
  for (std::size_t z = 0; z < K; ++z) {
    if (code_mass[z] == 0.0) continue;
    for (std::size_t j = 0; j < m; ++j) {
      double c = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (enc.code(i) == z) c += source.prob(i) * SquaredDistance(source.point(i), support[j]);
      }
      lp.set_objective(z * m + j, c / code_mass[z]);
    }
  }
  for (std::size_t z = 0; z < K; ++z) {
    std::vector<LpTerm> terms;
    for (std::size_t j = 0; j < m; ++j) terms.push_back({z * m + j, 1.0});
    lp.add_constraint(std::move(terms), Relation::kEqual, code_mass[z]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<LpTerm> terms;
    for (std::size_t j = 0; j < m; ++j) terms.push_back({pi_base + i * m + j, 1.0});
    lp.add_constraint(std::move(terms), Relation::kEqual, source.prob(i));
  }
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<LpTerm> terms;
    for (std::size_t i = 0; i < n; ++i) terms.push_back({pi_base + i * m + j, 1.0});
    for (std::size_t z = 0; z < K; ++z) {
      if (code_mass[z] > 0.0) terms.push_back({z * m + j, -1.0});
    }
    lp.add_constraint(std::move(terms), Relation::kEqual, 0.0);
  }
  std::vector<double> pair_cost(n * m);
  {
    std::vector<LpTerm> terms;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        pair_cost[i * m + j] = SquaredDistance(source.point(i), support[j]);
        if (pair_cost[i * m + j] != 0.0) {
          terms.push_back({pi_base + i * m + j, pair_cost[i * m + j]});
        }
      }
    }
    lp.add_constraint(std::move(terms), Relation::kLessEqual, perception);
  }

  const LpResult res = lp.minimize();
  if (res.status == LpStatus::kInfeasible) {
    Fail(ErrorKind::kInfeasible,
         "no decoder on the candidate support meets the perception bound "
         "(out_support must contain supp(X) when P = 0)");
  }
  if (res.status != LpStatus::kOptimal) {
    Fail(ErrorKind::kNumerical, "oracle LP ended with status " + ToString(res.status));
  }

  std::vector<std::vector<double>> rows(K, std::vector<double>(m, 0.0));
  for (std::size_t z = 0; z < K; ++z) {
    if (code_mass[z] == 0.0) {
      rows[z][0] = 1.0;
      continue;
    }
    double total = 0.0;
    for (std::size_t j = 0; j < m; ++j) total += res.x[z * m + j];
    for (std::size_t j = 0; j < m; ++j) rows[z][j] = res.x[z * m + j] / total;
  }
  OracleResult out;
  out.D_star = res.objective;
  out.decoder = StochasticDecoder(support, std::move(rows));
  for (std::size_t k = 0; k < n * m; ++k) out.perception += res.x[pi_base + k] * pair_cost[k];
  out.pivots = res.pivots;
  return out;
}

std::vector<Point> default_oracle_support(const DiscreteDistribution& source,
                                          const Encoder& enc,
                                          const DeterministicDecoder& gd,
                                          const std::vector<double>& alphas) {
  if (gd.K() != enc.K() || enc.support_size() != source.size()) {
    Fail(ErrorKind::kInvalidArgument, "decoder/encoder/source shapes disagree");
  }
  std::vector<Point> pts = source.points();
  pts.insert(pts.end(), gd.table.begin(), gd.table.end());
  for (double a : alphas) {
    CheckAlpha(a);
    for (std::size_t i = 0; i < source.size(); ++i) {
      pts.push_back(Affine(a, gd.table[enc.code(i)], source.point(i)));
    }
  }
  return SortedUnique(std::move(pts));
}

UniversalityReport universal_encoder_check(
    const DiscreteDistribution& source, std::size_t K,
    const std::vector<double>& perceptions, std::uint64_t enumeration_cap,
    std::size_t threads) {
  for (double P : perceptions) {
    if (!(P >= 0.0)) Fail(ErrorKind::kInvalidArgument, "perception must be >= 0");
  }
  const OptimalCodec opt = exhaustive_optimal_encoder(source, K, enumeration_cap);
  const std::size_t n = source.size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= K;

  UniversalityReport report;
  report.mmse_encoder = opt.encoder;
  const MmseBaseline base = mmse_baseline(source, opt.encoder, opt.decoder);
  report.D_d = base.D_d;
  report.P_d = base.P_d;
  report.encoders_checked = total;

  // Candidate support for encoder e at perception P.
  auto support_for = [&](const std::vector<std::size_t>& assignment,
                         const std::vector<Point>& means, double P_d_e,
                         double P) {
    std::vector<Point> pts = source.points();
    const double a = P_d_e > 0.0 ? std::min(std::sqrt(P / P_d_e), 1.0) : 1.0;
    std::vector<bool> used(K, false);
    for (std::size_t z : assignment) used[z] = true;
    for (std::size_t z = 0; z < K; ++z) {
      if (!used[z]) continue;
      pts.push_back(means[z]);
      for (std::size_t i = 0; i < n; ++i) pts.push_back(Affine(a, means[z], source.point(i)));
    }
    return pts;
  };

  auto decode_index = [&](std::size_t index) {
    std::vector<std::size_t> assignment(n, 0);
    for (std::size_t pos = n; pos-- > 0;) {
      assignment[pos] = index % K;
      index /= K;
    }
    return assignment;
  };

  // values[e][p]
  std::vector<std::vector<double>> values(total, std::vector<double>(perceptions.size(), 0.0));
  ParallelFor(total, threads, [&](std::size_t e) {
    const std::vector<std::size_t> assignment = decode_index(e);
    const Encoder enc(assignment, K);
    std::vector<Point> means(K);
    std::vector<double> mass(K, 0.0);
    std::vector<Point> table(K, Point(source.dim(), 0.0));
    for (std::size_t i = 0; i < n; ++i) {
      mass[assignment[i]] += source.prob(i);
      for (std::size_t k = 0; k < source.dim(); ++k) {
        table[assignment[i]][k] += source.prob(i) * source.point(i)[k];
      }
    }
    std::vector<Point> out_points;
    std::vector<double> out_probs;
    for (std::size_t z = 0; z < K; ++z) {
      if (mass[z] == 0.0) continue;
      for (double& v : table[z]) v /= mass[z];
      means[z] = table[z];
      out_points.push_back(table[z]);
      out_probs.push_back(mass[z]);
    }
    const double P_d_e =
        w2sq_exact(source, make_distribution(out_points, out_probs)).cost;
    for (std::size_t p = 0; p < perceptions.size(); ++p) {
      values[e][p] = constrained_oracle(source, enc, perceptions[p],
                                        support_for(assignment, means, P_d_e, perceptions[p]))
                         .D_star;
    }
  });

  std::size_t mmse_index = 0;
  for (std::size_t i = 0; i < n; ++i) mmse_index = mmse_index * K + opt.encoder.code(i);

  for (std::size_t p = 0; p < perceptions.size(); ++p) {
    UniversalityRow row;
    row.perception = perceptions[p];
    row.D_mmse_encoder = values[mmse_index][p];
    std::size_t best = 0;
    for (std::size_t e = 1; e < total; ++e) {
      if (values[e][p] < values[best][p]) best = e;
    }
    row.D_best_any_encoder = values[best][p];
    row.best_assignment = decode_index(best);
    const double gap = row.D_mmse_encoder - row.D_best_any_encoder;
    row.relative_gap = gap <= 0.0 ? 0.0 : gap / std::max(row.D_best_any_encoder, 1e-12);
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace dplab
