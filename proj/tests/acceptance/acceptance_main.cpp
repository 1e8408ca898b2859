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
// Acceptance gate: runs every criterion at its stated tolerance and prints one
// PASS/FAIL line each. Exit status is nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dplab/augmented.hpp"
#include "dplab/codec.hpp"
#include "dplab/distribution.hpp"
#include "dplab/io.hpp"
#include "dplab/tradeoff.hpp"
#include "dplab/transport.hpp"

namespace dplab {
namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void Check(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

double Uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Distinct points on a 1/8 lattice in [-4, 4], 1 <= size <= max_points.
DiscreteDistribution RandomSource(std::mt19937_64& rng, std::size_t max_points,
                                  std::size_t min_points = 1) {
  const std::size_t n = min_points + rng() % (max_points - min_points + 1);
  std::vector<Point> pts;
  while (pts.size() < n) {
    const Point p{std::round(Uniform(rng, -4, 4) * 8) / 8};
    if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
  }
  std::vector<double> w(n);
  double total = 0.0;
  for (double& v : w) total += (v = Uniform(rng, 0.05, 1.0));
  for (double& v : w) v /= total;
  return make_distribution(pts, w);
}

std::vector<double> Grid(int points) {
  std::vector<double> g;
  for (int k = 0; k < points; ++k) g.push_back(static_cast<double>(k) / (points - 1));
  return g;
}

DiscreteDistribution Builtin(const char* name) {
  return io::builtin_source(std::string("builtin:") + name).value();
}

// Small sources used by the oracle and universality criteria.
std::vector<DiscreteDistribution> SmallSources() {
  std::vector<DiscreteDistribution> out{Builtin("u4"), uniform_1d({0, 1, 4, 5}),
                                        make_distribution_1d({-1, 0, 2, 3, 7}, {0.1, 0.3, 0.2, 0.25, 0.15})};
  std::mt19937_64 rng(20240501);
  for (int k = 0; k < 3; ++k) out.push_back(RandomSource(rng, 8, 6));
  out.push_back(make_distribution({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {2.0, 2.0}, {3.0, 1.0}},
                                  {0.2, 0.2, 0.2, 0.2, 0.2}));
  return out;
}

void Criterion1(Outcome& o) {
  const auto u4 = Builtin("u4");
  const auto c = certified_optimal_encoder(u4, CodebookSize(1));
  const auto gp = perceptual_decoder_for(u4, c.encoder);
  const double d0 = distortion(u4, c.encoder, gp);
  o.detail << "D_d=" << c.mse << " D(0)=" << d0 << " ";
  o.Check(std::abs(c.mse - 0.25) <= 1e-8, "D_d != 0.25");
  o.Check(std::abs(d0 - 0.5) <= 1e-8, "D(0) != 0.5");
  o.Check(std::abs(d0 - 2 * c.mse) <= 1e-8, "D(0) != 2 D_d");
}

void Criterion2(Outcome& o) {
  double worst = 0.0;
  for (const char* name : {"u4", "gauss33"}) {
    const auto src = Builtin(name);
    for (int rate : {1, 2}) {
      const auto c = certified_optimal_encoder(src, CodebookSize(rate));
      const auto gp = perceptual_decoder_for(src, c.encoder);
      const auto r = sweep(src, c.encoder, c.decoder, gp, Grid(21));
      for (const auto& p : r.points) {
        const double ed = std::abs(p.D_measured - (1 + (1 - p.alpha) * (1 - p.alpha)) * p.D_d);
        const double ep = std::abs(p.P_measured - p.alpha * p.alpha * p.P_d);
        worst = std::max({worst, ed, ep});
        o.Check(ed <= 1e-8 && ep <= 1e-8,
                std::string(name) + " R=" + std::to_string(rate) + " alpha=" +
                    std::to_string(p.alpha));
      }
    }
  }
  o.detail << "max identity error=" << worst << " ";
}

void Criterion3(Outcome& o) {
  const std::vector<double> alphas{0, 0.25, 0.5, 0.75, 1};
  double worst = 0.0;
  for (const auto& src : SmallSources()) {
    const auto c = certified_optimal_encoder(src, 2);
    const auto gp = perceptual_decoder_for(src, c.encoder);
    const auto support = default_oracle_support(src, c.encoder, c.decoder, alphas);
    for (double a : alphas) {
      const auto pt = evaluate_point(src, c.encoder, c.decoder, gp, a);
      const auto r = constrained_oracle(src, c.encoder, a * a * pt.P_d, support);
      const double rel = std::abs(r.D_star - pt.D_measured) / std::max(pt.D_measured, 1e-300);
      worst = std::max(worst, rel);
      o.Check(rel <= 1e-6, "oracle gap at alpha=" + std::to_string(a));
    }
  }
  o.detail << "max relative gap=" << worst << " ";
}

void Criterion4(Outcome& o) {
  double worst = 0.0;
  std::size_t encoders = 0;
  for (const auto& src : SmallSources()) {
    const auto c = certified_optimal_encoder(src, 2);
    const double pd = c.mse;
    std::vector<double> grid;
    for (double f : {0.0, 0.0625, 0.25, 0.5625, 1.0}) grid.push_back(f * pd);
    const auto rep = universal_encoder_check(src, 2, grid);
    encoders += rep.encoders_checked;
    for (const auto& row : rep.rows) {
      worst = std::max(worst, row.relative_gap);
      o.Check(row.relative_gap <= 1e-6, "universality gap at P=" + std::to_string(row.perception));
    }
  }
  o.detail << "encoders=" << encoders << " max relative gap=" << worst << " ";
}

void Criterion5(Outcome& o) {
  const std::vector<double> grid{0, 0.25, 0.5, 0.9, 1.1, 1.5, 2};
  double worst = 0.0;
  for (const auto& src : {Builtin("u4"), uniform_1d({0, 1, 4, 5})}) {
    const auto c = certified_optimal_encoder(src, 2);
    const auto rows = phase_sweep(src, c.encoder, c.decoder, grid,
                                  default_augmented_support(src, c.decoder));
    for (const auto& r : rows) {
      if (r.lambda < 1) {
        const double e = std::max(r.w1_gap, std::abs(r.mse - 2 * c.mse));
        worst = std::max(worst, e);
        o.Check(r.w1_gap <= 1e-8 && std::abs(r.mse - 2 * c.mse) <= 1e-8,
                "lambda=" + std::to_string(r.lambda));
      } else {
        const double e = std::max(r.mean_dev, std::abs(r.mse - c.mse));
        worst = std::max(worst, e);
        o.Check(r.mean_dev <= 1e-8 && std::abs(r.mse - c.mse) <= 1e-8,
                "lambda=" + std::to_string(r.lambda));
      }
    }
  }
  o.detail << "max deviation=" << worst << " ";
}

void Criterion6(Outcome& o) {
  double worst = 0.0;
  for (const char* name : {"u4", "gauss33"}) {
    const auto src = Builtin(name);
    const auto c = certified_optimal_encoder(src, 2);
    const auto gp = perceptual_decoder_for(src, c.encoder);
    const auto pts = sweep(src, c.encoder, c.decoder, gp, Grid(101)).points;
    for (std::size_t k = 1; k + 1 < pts.size(); ++k) {
      const double a = pts[k].alpha;
      const double slope = (pts[k + 1].P_measured - pts[k - 1].P_measured) /
                           (pts[k + 1].D_measured - pts[k - 1].D_measured);
      const double expected = a / (a - 1);
      const double rel = std::abs(slope - expected) / std::abs(expected);
      worst = std::max(worst, rel);
      o.Check(rel <= 1e-3, std::string(name) + " slope at alpha=" + std::to_string(a));
      const auto d = dp_derivatives(a, c.mse);
      o.Check(d.first < 0 && d.second > 0, "derivative signs at alpha=" + std::to_string(a));
      o.Check(slope < 0, "measured slope sign at alpha=" + std::to_string(a));
    }
  }
  o.detail << "max relative slope error=" << worst << " ";
}

void Criterion7(Outcome& o) {
  std::mt19937_64 rng(7);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = RandomSource(rng, 16);
    const auto b = RandomSource(rng, 16);
    const double e1 = std::abs(w1_exact(a, b).cost - w_1d_closed_form(a, b, 1));
    const double e2 = std::abs(w2sq_exact(a, b).cost - w_1d_closed_form(a, b, 2));
    worst = std::max({worst, e1, e2});
    o.Check(e1 <= 1e-10 && e2 <= 1e-10, "closed-form mismatch, trial " + std::to_string(trial));
  }
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = RandomSource(rng, 10);
    const auto b = RandomSource(rng, 10);
    const auto c = RandomSource(rng, 10);
    const double ab = w1_exact(a, b).cost, ba = w1_exact(b, a).cost;
    const double bc = w1_exact(b, c).cost, ac = w1_exact(a, c).cost;
    o.Check(std::abs(ab - ba) <= 1e-10, "symmetry, triple " + std::to_string(trial));
    o.Check(ac <= ab + bc + 1e-10, "triangle, triple " + std::to_string(trial));
    o.Check(w1_exact(a, a).cost == 0.0, "self distance, triple " + std::to_string(trial));
    o.Check((ab == 0.0) == (a == b), "identity of indiscernibles, triple " + std::to_string(trial));
  }
  o.detail << "max closed-form error=" << worst << " ";
}

void Criterion8(Outcome& o) {
  double worst_cross = 0.0, worst_pd = 0.0, worst_marginal = 0.0;
  std::vector<DiscreteDistribution> sources = SmallSources();
  sources.push_back(Builtin("gauss33"));
  for (const auto& src : sources) {
    for (std::size_t K : {1u, 2u, 4u}) {
      if (K > src.size()) continue;
      const auto c = certified_optimal_encoder(src, K);
      const auto gp = perceptual_decoder_for(src, c.encoder);
      const auto marginal = decoder_output_dist(src, c.encoder, gp);
      o.Check(marginal.points() == src.points(), "resampler marginal support");
      for (std::size_t i = 0; i < src.size(); ++i) {
        const double e = std::abs(marginal.prob(i) - src.prob(i));
        worst_marginal = std::max(worst_marginal, e / src.prob(i));
        o.Check(e <= 4 * std::numeric_limits<double>::epsilon() * src.prob(i),
                "resampler marginal mass");
      }
      double lhs = 0.0, rhs = 0.0;
      for (std::size_t i = 0; i < src.size(); ++i) {
        const Point& xd = c.decoder.table[c.encoder.code(i)];
        rhs += src.prob(i) * SquaredDistance(xd, src.point(i));
        const auto& row = gp.row(c.encoder.code(i));
        for (std::size_t j = 0; j < row.size(); ++j) {
          lhs += src.prob(i) * row[j] * SquaredDistance(xd, gp.out_support()[j]);
        }
      }
      worst_cross = std::max(worst_cross, std::abs(lhs - rhs));
      o.Check(std::abs(lhs - rhs) <= 1e-10, "cross-term identity");
      const double pd = mmse_baseline(src, c.encoder, c.decoder).P_d;
      worst_pd = std::max(worst_pd, std::abs(pd - c.mse));
      o.Check(std::abs(pd - c.mse) <= 1e-9, "P_d != D_d");
    }
  }
  o.detail << "max relative marginal error=" << worst_marginal << " max cross-term error=" << worst_cross << " max |P_d-D_d|=" << worst_pd << " ";
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;  // 0 means no runtime bound
  std::function<void(Outcome&)> run;
};

}  // namespace
}  // namespace dplab

int main() {
  using dplab::Criterion;
  const std::vector<Criterion> criteria{
      {1, "endpoint doubling", 1.0, dplab::Criterion1},
      {2, "interpolation identities", 30.0, dplab::Criterion2},
      {3, "oracle tightness", 120.0, dplab::Criterion3},
      {4, "encoder universality", 300.0, dplab::Criterion4},
      {5, "phase transition", 60.0, dplab::Criterion5},
      {6, "derivative consistency", 0.0, dplab::Criterion6},
      {7, "transport solver", 0.0, dplab::Criterion7},
      {8, "structural identities", 0.0, dplab::Criterion8},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    dplab::Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.Check(false, std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0) {
      o.Check(secs < c.limit_seconds, "runtime limit exceeded");
    }
    if (!o.pass) ++failures;
    std::printf("criterion %d (%s): %s [%.3fs] %s\n", c.id, c.name, o.pass ? "PASS" : "FAIL",
                secs, o.detail.str().c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
