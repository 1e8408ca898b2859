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
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "dplab/augmented.hpp"
#include "dplab/codec.hpp"
#include "dplab/tradeoff.hpp"
#include "dplab/transport.hpp"
#include "scenario.hpp"

namespace dplab::cli {
namespace {

constexpr std::size_t kOracleMaxSupport = 16;
constexpr std::size_t kUniversalityMaxSupport = 8;
constexpr std::size_t kAugmentedMaxSupport = 40;

class Report {
 public:
  void Measure(const std::string& name, double measured, double tolerance) {
    rows_.push_back({name, measured <= tolerance ? "pass" : "fail", measured, tolerance});
  }
  // Reported only: a pass/fail verdict is not contract-bearing.
  void Info(const std::string& name, double measured, double tolerance) {
    rows_.push_back({name, measured <= tolerance ? "pass" : "info", measured, tolerance});
  }
  void Skip(const std::string& name, double tolerance) {
    rows_.push_back({name, "skip", 0.0, tolerance});
  }
  std::vector<CheckRow> Take() { return std::move(rows_); }

 private:
  std::vector<CheckRow> rows_;
};

std::vector<double> Grid(int points) {
  std::vector<double> g;
  for (int k = 0; k < points; ++k) g.push_back(static_cast<double>(k) / (points - 1));
  return g;
}

double Uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

std::vector<CheckRow> RunVerify(const Scenario& sc, const Prepared& p) {
  Report report;
  const auto& src = p.source;
  const auto& enc = p.encoder;
  const double d_d = distortion(src, enc, p.gd);
  const MmseBaseline base = mmse_baseline(src, enc, p.gd);
  auto assert_or_info = [&](const std::string& name, double measured, double tol) {
    if (p.certified) {
      report.Measure(name, measured, tol);
    } else {
      report.Info(name, measured, tol);
    }
  };

  report.Measure("endpoint_doubling", std::abs(distortion(src, enc, p.gp) - 2 * d_d), 1e-8);

  const auto points = sweep(src, enc, p.gd, p.gp, Grid(21)).points;
  double err_d = 0.0, err_p = 0.0;
  for (const auto& pt : points) {
    err_d = std::max(err_d, std::abs(pt.D_measured - pt.D_predicted));
    err_p = std::max(err_p, std::abs(pt.P_measured - pt.P_predicted));
  }
  report.Measure("interpolation_distortion", err_d, 1e-8);
  assert_or_info("interpolation_perception", err_p, 1e-8);
  assert_or_info("perception_equals_distortion", std::abs(base.P_d - d_d), 1e-9);

  const auto marginal = decoder_output_dist(src, enc, p.gp);
  double marg = marginal.points() == src.points() ? 0.0 : 1.0;
  for (std::size_t i = 0; i < src.size() && marg == 0.0; ++i) {
    marg = std::max(marg, std::abs(marginal.prob(i) - src.prob(i)) / src.prob(i));
  }
  report.Measure("resampler_marginal", marg, 4 * std::numeric_limits<double>::epsilon());

  double lhs = 0.0, rhs = 0.0;
  for (std::size_t i = 0; i < src.size(); ++i) {
    const Point& xd = p.gd.table[enc.code(i)];
    rhs += src.prob(i) * SquaredDistance(xd, src.point(i));
    const auto& row = p.gp.row(enc.code(i));
    for (std::size_t j = 0; j < row.size(); ++j) {
      lhs += src.prob(i) * row[j] * SquaredDistance(xd, p.gp.out_support()[j]);
    }
  }
  report.Measure("cross_term_identity", std::abs(lhs - rhs), 1e-10);

  std::mt19937_64 rng(sc.seed);
  double ortho = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Point> f(enc.K(), Point(src.dim()));
    for (auto& v : f) {
      for (double& c : v) c = Uniform(rng, -1.0, 1.0);
    }
    double inner = 0.0;
    for (std::size_t i = 0; i < src.size(); ++i) {
      const std::size_t z = enc.code(i);
      for (std::size_t d = 0; d < src.dim(); ++d) {
        inner += src.prob(i) * (src.point(i)[d] - p.gd.table[z][d]) * f[z][d];
      }
    }
    ortho = std::max(ortho, std::abs(inner));
  }
  report.Measure("mmse_orthogonality", ortho, 1e-10);

  if (src.dim() == 1) {
    double worst = 0.0;
    for (double a : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      const auto out = decoder_output_dist(src, enc, interpolate(p.gd, p.gp, a).realized);
      worst = std::max(worst, std::abs(w1_exact(src, out).cost - w_1d_closed_form(src, out, 1)));
      worst = std::max(worst, std::abs(w2sq_exact(src, out).cost - w_1d_closed_form(src, out, 2)));
    }
    report.Measure("transport_closed_form", worst, 1e-10);
  } else {
    report.Skip("transport_closed_form", 1e-10);
  }

  if (d_d > 0.0) {
    const auto fine = sweep(src, enc, p.gd, p.gp, Grid(101)).points;
    double slope_err = 0.0, shape = 0.0;
    for (std::size_t k = 1; k + 1 < fine.size(); ++k) {
      const double a = fine[k].alpha;
      const double slope = (fine[k + 1].P_measured - fine[k - 1].P_measured) /
                           (fine[k + 1].D_measured - fine[k - 1].D_measured);
      slope_err = std::max(slope_err, std::abs(slope / (a / (a - 1)) - 1.0));
      const auto dv = dp_derivatives(a, d_d);
      if (!(dv.first < 0.0 && dv.second > 0.0)) shape = 1.0;
    }
    for (std::size_t k = 1; k < fine.size(); ++k) {
      shape = std::max(shape, fine[k].D_measured - fine[k - 1].D_measured);
    }
    assert_or_info("derivative_consistency", slope_err, 1e-3);
    report.Measure("curve_nonincreasing", shape, 1e-9);
  } else {
    report.Skip("derivative_consistency", 1e-3);
    report.Skip("curve_nonincreasing", 1e-9);
  }

  const std::vector<double> alphas{0, 0.25, 0.5, 0.75, 1};
  if (src.size() <= kOracleMaxSupport && d_d > 0.0) {
    const auto support = default_oracle_support(src, enc, p.gd, alphas);
    double worst = 0.0;
    for (double a : alphas) {
      const auto pt = evaluate_point(src, enc, p.gd, p.gp, a);
      const auto r = constrained_oracle(src, enc, a * a * pt.P_d, support);
      worst = std::max(worst, std::abs(r.D_star - pt.D_measured) / pt.D_measured);
    }
    assert_or_info("oracle_tightness", worst, 1e-6);
  } else {
    report.Skip("oracle_tightness", 1e-6);
  }

  if (src.size() <= kUniversalityMaxSupport && d_d > 0.0) {
    std::vector<double> grid;
    for (double a : alphas) grid.push_back(a * a * base.P_d);
    const auto rep = universal_encoder_check(src, enc.K(), grid);
    double worst = 0.0;
    for (const auto& row : rep.rows) worst = std::max(worst, row.relative_gap);
    assert_or_info("encoder_universality", worst, 1e-6);
  } else {
    report.Skip("encoder_universality", 1e-6);
  }

  if (src.size() <= kAugmentedMaxSupport && d_d > 0.0 && check_zd_xd_bijective(enc, p.gd)) {
    const auto rows = phase_sweep(src, enc, p.gd, {0, 0.25, 0.5, 0.9, 1.1, 1.5, 2},
                                  default_augmented_support(src, p.gd));
    double low = 0.0, high = 0.0;
    for (const auto& r : rows) {
      if (r.lambda < 1) {
        low = std::max({low, r.w1_gap, std::abs(r.mse - 2 * d_d)});
      } else {
        high = std::max({high, r.mean_dev, std::abs(r.mse - d_d)});
      }
    }
    assert_or_info("phase_transition_below_one", low, 1e-8);
    assert_or_info("phase_transition_above_one", high, 1e-8);
  } else {
    report.Skip("phase_transition_below_one", 1e-8);
    report.Skip("phase_transition_above_one", 1e-8);
  }

  if (p.lloyd) {
    double rise = 0.0;
    const auto& h = p.lloyd->mse_history;
    for (std::size_t k = 1; k < h.size(); ++k) rise = std::max(rise, h[k] - h[k - 1]);
    report.Measure("lloyd_monotone", rise, 0.0);
  }
  return report.Take();
}

}  // namespace dplab::cli
