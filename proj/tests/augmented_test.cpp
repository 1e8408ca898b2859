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

#include <random>

#include <gtest/gtest.h>

#include "dplab/codec.hpp"
#include "dplab/error.hpp"
#include "dplab/transport.hpp"
#include "test_util.hpp"

namespace dplab {
namespace {

const DiscreteDistribution kU4 = uniform_1d({0, 1, 2, 3});
const Encoder kHalves({0, 0, 1, 1}, 2);
const DeterministicDecoder kGd{{{0.5}, {2.5}}};

// Rows placing all mass on gd[z] over the given support.
StochasticDecoder Collapsed(const DeterministicDecoder& gd,
                            const std::vector<Point>& support) {
  std::vector<std::vector<double>> rows(gd.K(), std::vector<double>(support.size(), 0.0));
  for (std::size_t z = 0; z < gd.K(); ++z) {
    for (std::size_t j = 0; j < support.size(); ++j) {
      if (support[j] == gd.table[z]) rows[z][j] = 1.0;
    }
  }
  return StochasticDecoder(support, rows);
}

// W1 between the joint laws of (X_d, X_d) and (X, X_d), computed by a direct
// transport solve on concatenated vectors.
double JointW1(const DiscreteDistribution& src, const Encoder& enc,
               const DeterministicDecoder& gd) {
  std::vector<Point> ys, yds;
  std::vector<double> ps;
  for (std::size_t i = 0; i < src.size(); ++i) {
    const Point& xd = gd.table[enc.code(i)];
    Point y = src.point(i), yd = xd;
    y.insert(y.end(), xd.begin(), xd.end());
    yd.insert(yd.end(), xd.begin(), xd.end());
    ys.push_back(y);
    yds.push_back(yd);
    ps.push_back(src.prob(i));
  }
  return w1_exact(make_distribution(yds, ps), make_distribution(ys, ps)).cost;
}

TEST(AugmentedObjectiveTest, Examples) {
  const auto gp = perceptual_decoder_for(kU4, kHalves);
  for (double lambda : {0.0, 0.5, 3.0}) {
    const auto t = augmented_terms(kU4, kHalves, kGd, gp, lambda);
    EXPECT_NEAR(t.w1_gap, 0.0, 1e-12);
    EXPECT_NEAR(t.mean_dev, 0.5, 1e-12);
    EXPECT_NEAR(t.objective, lambda * 0.5, 1e-12);
  }
  EXPECT_NEAR(augmented_objective(kU4, kHalves, kGd, gp, 0.5), 0.25, 1e-12);
  const auto collapsed = Collapsed(kGd, default_augmented_support(kU4, kGd));
  const auto t = augmented_terms(kU4, kHalves, kGd, collapsed, 0.7);
  EXPECT_EQ(t.mean_dev, 0.0);
  EXPECT_NEAR(t.w1_gap, JointW1(kU4, kHalves, kGd), 1e-12);
  EXPECT_NEAR(t.w1_gap, 0.5, 1e-12);
}

TEST(AugmentedObjectiveTest, ShapeMismatch) {
  const auto gp1 = perceptual_decoder_for(kU4, Encoder({0, 0, 0, 0}, 1));
  EXPECT_THROW(augmented_terms(kU4, kHalves, kGd, gp1, 0.5), Error);
}

TEST(SolveAugmentedTest, U4Branches) {
  const auto sup = default_augmented_support(kU4, kGd);
  const auto low = solve_augmented(kU4, kHalves, kGd, 0.5, sup);
  EXPECT_LE(low.w1_gap, 1e-8);
  EXPECT_NEAR(low.mse, 0.5, 1e-8);
  EXPECT_EQ(low.flag, PhaseFlag::kOk);
  const auto high = solve_augmented(kU4, kHalves, kGd, 2.0, sup);
  EXPECT_LE(high.mean_dev, 1e-8);
  EXPECT_NEAR(high.mse, 0.25, 1e-8);
  const auto zero = solve_augmented(kU4, kHalves, kGd, 0.0, sup);
  EXPECT_LE(zero.w1_gap, 1e-8);
  const auto edge = solve_augmented(kU4, kHalves, kGd, 1.0, sup);
  EXPECT_EQ(edge.flag, PhaseFlag::kIndeterminate);
  EXPECT_EQ(ToString(edge.flag), "indeterminate");
  EXPECT_EQ(ToString(PhaseFlag::kOk), "ok");
}

TEST(SolveAugmentedTest, Errors) {
  const auto sup = default_augmented_support(kU4, kGd);
  EXPECT_THROW(solve_augmented(kU4, kHalves, kGd, -1.0, sup), Error);
  AugmentedOptions tiny;
  tiny.variable_cap = 10;
  try {
    solve_augmented(kU4, kHalves, kGd, 0.5, sup, tiny);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kCapacityExceeded);
  }
}

TEST(PhaseSweepTest, U4Step) {
  const std::vector<double> grid{0, 0.25, 0.5, 0.9, 1, 1.1, 1.5, 2};
  const auto rows = phase_sweep(kU4, kHalves, kGd, grid, default_augmented_support(kU4, kGd));
  ASSERT_EQ(rows.size(), grid.size());
  for (const auto& r : rows) {
    if (r.lambda < 1) {
      EXPECT_NEAR(r.mse, 0.5, 1e-8) << r.lambda;
    } else if (r.lambda > 1) {
      EXPECT_NEAR(r.mse, 0.25, 1e-8) << r.lambda;
    } else {
      EXPECT_EQ(r.flag, PhaseFlag::kIndeterminate);
    }
  }
  EXPECT_THROW(phase_sweep(kU4, kHalves, kGd, {1, 0.5}, default_augmented_support(kU4, kGd)),
               Error);
}

TEST(PhaseSweepTest, RandomOptimalPairs) {
  std::mt19937_64 rng(31);
  const std::vector<double> grid{0, 0.25, 0.5, 0.9, 1.1, 1.5, 2};
  for (int trial = 0; trial < 6; ++trial) {
    const auto src = testing::RandomDistribution(rng, 6, 1 + trial % 2);
    if (src.size() < 3) continue;
    const auto c = exhaustive_optimal_encoder(src, 2);
    if (!check_zd_xd_bijective(c.encoder, c.decoder)) continue;
    const double dd = c.mse;
    const double bound = JointW1(src, c.encoder, c.decoder);
    const auto rows = phase_sweep(src, c.encoder, c.decoder, grid,
                                  default_augmented_support(src, c.decoder));
    for (const auto& r : rows) {
      ASSERT_NEAR(r.objective, r.w1_gap + r.lambda * r.mean_dev, 1e-9);
      ASSERT_NEAR(augmented_objective(src, c.encoder, c.decoder, r.decoder, r.lambda),
                  r.objective, 1e-9);
      ASSERT_NEAR(r.lp_objective, r.objective, 1e-9);
      if (r.lambda < 1) {
        ASSERT_LE(r.w1_gap, 1e-8);
        ASSERT_NEAR(r.mse, 2 * dd, 1e-8);
        // Sandwich: lambda * W1(Y_d, Y) is attained.
        ASSERT_NEAR(r.objective, r.lambda * bound, 1e-9);
      } else {
        ASSERT_LE(r.mean_dev, 1e-8);
        ASSERT_NEAR(r.mse, dd, 1e-8);
      }
    }
  }
}

TEST(BetaTest, Examples) {
  EXPECT_EQ(beta_to_lambda(0.5), 1.0);
  EXPECT_EQ(beta_to_lambda(1.0), 0.0);
  EXPECT_NEAR(beta_to_lambda(0.2), 4.0, 1e-15);
  EXPECT_THROW(beta_to_lambda(0.0), Error);
  EXPECT_THROW(beta_to_lambda(1.5), Error);
}

TEST(BetaTest, StrictlyDecreasing) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 1000; ++trial) {
    double a = testing::Uniform(rng, 1e-6, 1.0), b = testing::Uniform(rng, 1e-6, 1.0);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    ASSERT_GT(beta_to_lambda(a), beta_to_lambda(b));
  }
}

TEST(ConditioningTest, Examples) {
  const auto gp = perceptual_decoder_for(kU4, kHalves);
  const auto g0 = conditioning_equivalence(kU4, kHalves, kGd, gp);
  EXPECT_NEAR(g0.gap_xd, 0.0, 1e-12);
  EXPECT_NEAR(g0.gap_zd, 0.0, 1e-12);
  const auto collapsed = Collapsed(kGd, default_augmented_support(kU4, kGd));
  const auto g1 = conditioning_equivalence(kU4, kHalves, kGd, collapsed);
  EXPECT_NEAR(g1.gap_xd, 0.5, 1e-12);
  EXPECT_NEAR(g1.gap_zd, 0.5, 1e-12);
  const DeterministicDecoder clash{{{1.5}, {1.5}}};
  try {
    conditioning_equivalence(kU4, kHalves, clash, gp);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kPrecondition);
  }
}

TEST(ConditioningTest, GapsVanishTogether) {
  const auto sup = default_augmented_support(kU4, kGd);
  for (double lambda : {0.3, 1.7}) {
    const auto s = solve_augmented(kU4, kHalves, kGd, lambda, sup);
    const auto g = conditioning_equivalence(kU4, kHalves, kGd, s.decoder);
    EXPECT_EQ(g.gap_xd <= 1e-9, g.gap_zd <= 1e-9);
    EXPECT_NEAR(g.gap_xd, g.gap_zd, 1e-12);
  }
}

}  // namespace
}  // namespace dplab
