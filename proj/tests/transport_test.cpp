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
#include "dplab/transport.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "dplab/error.hpp"
#include "test_util.hpp"

namespace dplab {
namespace {

void ExpectValidPlan(const TransportPlan& plan) {
  ASSERT_EQ(plan.pi.rows(), static_cast<Eigen::Index>(plan.row.size()));
  ASSERT_EQ(plan.pi.cols(), static_cast<Eigen::Index>(plan.col.size()));
  EXPECT_GE(plan.pi.minCoeff(), 0.0);
  double cost = 0.0;
  for (Eigen::Index i = 0; i < plan.pi.rows(); ++i) {
    EXPECT_NEAR(plan.pi.row(i).sum(), plan.row.prob(i), 1e-9);
  }
  for (Eigen::Index j = 0; j < plan.pi.cols(); ++j) {
    EXPECT_NEAR(plan.pi.col(j).sum(), plan.col.prob(j), 1e-9);
    for (Eigen::Index i = 0; i < plan.pi.rows(); ++i) {
      const double d = Distance(plan.row.point(i), plan.col.point(j));
      cost += plan.pi(i, j) * (plan.order == 1 ? d : d * d);
    }
  }
  EXPECT_NEAR(plan.cost, cost, 1e-10);
}

// Monotone (north-west corner on sorted supports) coupling cost in 1-D,
// written independently of the library.
double MonotoneCost(const DiscreteDistribution& a, const DiscreteDistribution& b,
                    int order) {
  std::size_t i = 0, j = 0;
  double ra = a.prob(0), rb = b.prob(0), cost = 0.0;
  while (i < a.size() && j < b.size()) {
    const double m = std::min(ra, rb);
    cost += m * std::pow(std::abs(a.point(i)[0] - b.point(j)[0]), order);
    ra -= m;
    rb -= m;
    if (ra <= 1e-15 && ++i < a.size()) ra = a.prob(i);
    if (rb <= 1e-15 && ++j < b.size()) rb = b.prob(j);
  }
  return cost;
}

const DiscreteDistribution kU4 = uniform_1d({0, 1, 2, 3});

TEST(W1Test, Examples) {
  EXPECT_EQ(w1_exact(kU4, kU4).cost, 0.0);
  EXPECT_NEAR(w1_exact(point_mass({0.0}), point_mass({3.0})).cost, 3.0, 1e-12);
  const auto plan = w1_exact(kU4, uniform_1d({0.5, 2.5}));
  EXPECT_NEAR(plan.cost, 0.5, 1e-12);
  EXPECT_EQ(plan.order, 1);
  ExpectValidPlan(plan);
}

TEST(W2Test, Examples) {
  EXPECT_EQ(w2sq_exact(kU4, kU4).cost, 0.0);
  EXPECT_NEAR(w2sq_exact(kU4, uniform_1d({0.5, 2.5})).cost, 0.25, 1e-12);
  const auto plan = w2sq_exact(kU4, uniform_1d({0.25, 0.75, 2.25, 2.75}));
  EXPECT_NEAR(plan.cost, 0.0625, 1e-12);
  EXPECT_EQ(plan.order, 2);
  ExpectValidPlan(plan);
}

TEST(ClosedFormTest, Examples) {
  EXPECT_EQ(w_1d_closed_form(kU4, kU4, 1), 0.0);
  EXPECT_EQ(w_1d_closed_form(kU4, kU4, 2), 0.0);
  EXPECT_NEAR(w_1d_closed_form(uniform_1d({0, 1}), uniform_1d({2, 3}), 2), 4.0, 1e-12);
  EXPECT_NEAR(w_1d_closed_form(kU4, uniform_1d({0.5, 2.5}), 2), 0.25, 1e-12);
  EXPECT_NEAR(w_1d_closed_form(kU4, uniform_1d({0.5, 2.5}), 1), 0.5, 1e-12);
}

TEST(ClosedFormTest, RejectsHigherDimension) {
  const auto a = make_distribution({{0.0, 0.0}}, {1.0});
  EXPECT_THROW(w_1d_closed_form(a, a, 1), Error);
  EXPECT_THROW(w_1d_closed_form(kU4, kU4, 3), Error);
}

TEST(TransportErrorsTest, DimensionMismatchAndCap) {
  const auto a2 = make_distribution({{0.0, 0.0}}, {1.0});
  EXPECT_THROW(w1_exact(kU4, a2), Error);
  TransportOptions tiny;
  tiny.size_cap = 3;
  try {
    w2sq_exact(kU4, kU4, tiny);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kCapacityExceeded);
  }
}

TEST(SolveTransportTest, SmallCases) {
  Eigen::MatrixXd c1(1, 1);
  c1 << 2.5;
  const std::vector<double> one{1.0};
  const Coupling k1 = solve_transport_lp(c1, one, one);
  EXPECT_EQ(k1.pi(0, 0), 1.0);
  EXPECT_EQ(k1.cost, 2.5);

  Eigen::MatrixXd c2(2, 2);
  c2 << 0, 1, 1, 0;
  const std::vector<double> half{0.5, 0.5};
  const Coupling k2 = solve_transport_lp(c2, half, half);
  EXPECT_EQ(k2.cost, 0.0);
  EXPECT_EQ(k2.pi(0, 0), 0.5);
  EXPECT_EQ(k2.pi(1, 1), 0.5);
  EXPECT_EQ(k2.pi(0, 1), 0.0);
}

TEST(SolveTransportTest, InfeasibleMarginals) {
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(2, 2);
  const std::vector<double> a{0.5, 0.5}, b{0.5, 0.6};
  try {
    solve_transport_lp(c, a, b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInfeasible);
  }
}

// Transport polytope in equality form, solved by brute force over bases.
double EnumeratedTransportCost(const Eigen::MatrixXd& cost,
                               const std::vector<double>& a,
                               const std::vector<double>& b) {
  const int m = static_cast<int>(a.size()), n = static_cast<int>(b.size());
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m + n, m * n);
  Eigen::VectorXd rhs(m + n), c(m * n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      A(i, i * n + j) = 1.0;
      A(m + j, i * n + j) = 1.0;
      c(i * n + j) = cost(i, j);
    }
    rhs(i) = a[i];
  }
  for (int j = 0; j < n; ++j) rhs(m + j) = b[j];
  return testing::VertexEnumerationMinimum(A, rhs, c);
}

TEST(SolveTransportTest, MatchesVertexEnumeration) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = testing::UniformIndex(rng, 1, 3);
    const std::size_t n = testing::UniformIndex(rng, 2, 3);
    Eigen::MatrixXd cost(m, n);
    for (Eigen::Index i = 0; i < cost.size(); ++i) {
      cost(i) = std::round(testing::Uniform(rng, 0, 5) * 4) / 4;
    }
    const auto a = testing::RandomSimplex(rng, m);
    const auto b = testing::RandomSimplex(rng, n);
    const Coupling k = solve_transport_lp(cost, a, b);
    ASSERT_NEAR(k.cost, EnumeratedTransportCost(cost, a, b), 1e-10);
    ASSERT_NEAR((k.pi.array() * cost.array()).sum(), k.cost, 1e-12);
  }
}

TEST(SolveTransportTest, Deterministic) {
  std::mt19937_64 rng(9);
  const auto a = testing::RandomDistribution(rng, 16, 2);
  const auto b = testing::RandomDistribution(rng, 16, 2);
  const auto p1 = w2sq_exact(a, b);
  const auto p2 = w2sq_exact(a, b);
  EXPECT_EQ(p1.cost, p2.cost);
  EXPECT_TRUE(p1.pi == p2.pi);
}

TEST(TransportPropertyTest, LpMatchesClosedFormIn1d) {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = testing::RandomDistribution(rng, 16, 1, 0.125);
    const auto b = testing::RandomDistribution(rng, 16, 1, 0.125);
    const auto p1 = w1_exact(a, b);
    const auto p2 = w2sq_exact(a, b);
    ExpectValidPlan(p1);
    ExpectValidPlan(p2);
    ASSERT_NEAR(p1.cost, w_1d_closed_form(a, b, 1), 1e-10);
    ASSERT_NEAR(p2.cost, w_1d_closed_form(a, b, 2), 1e-10);
    ASSERT_NEAR(p1.cost, MonotoneCost(a, b, 1), 1e-10);
    ASSERT_NEAR(p2.cost, MonotoneCost(a, b, 2), 1e-10);
  }
}

TEST(TransportPropertyTest, MetricAxioms) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t dim = testing::UniformIndex(rng, 1, 3);
    const auto a = testing::RandomDistribution(rng, 10, dim);
    const auto b = testing::RandomDistribution(rng, 10, dim);
    const auto c = testing::RandomDistribution(rng, 10, dim);
    const double ab = w1_exact(a, b).cost;
    const double ba = w1_exact(b, a).cost;
    const double bc = w1_exact(b, c).cost;
    const double ac = w1_exact(a, c).cost;
    ASSERT_NEAR(ab, ba, 1e-10);
    ASSERT_LE(ac, ab + bc + 1e-10);
    ASSERT_EQ(w1_exact(a, a).cost, 0.0);
    ASSERT_EQ(ab == 0.0, a == b);
    ASSERT_GE(ab, 0.0);
  }
}

TEST(TransportPropertyTest, PlansAreFeasibleInHigherDimensions) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    const auto a = testing::RandomDistribution(rng, 20, 3);
    const auto b = testing::RandomDistribution(rng, 20, 3);
    ExpectValidPlan(w1_exact(a, b));
    ExpectValidPlan(w2sq_exact(a, b));
  }
}

TEST(TransportPropertyTest, Order2PlansAreMonotoneIn1d) {
  std::mt19937_64 rng(4321);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = testing::RandomDistribution(rng, 12, 1);
    const auto b = testing::RandomDistribution(rng, 12, 1);
    const auto plan = w2sq_exact(a, b);
    bool crossing = false;
    for (Eigen::Index i = 0; i < plan.pi.rows(); ++i) {
      for (Eigen::Index j = 0; j < plan.pi.cols(); ++j) {
        if (plan.pi(i, j) <= 1e-14) continue;
        for (Eigen::Index k = i + 1; k < plan.pi.rows(); ++k) {
          for (Eigen::Index l = 0; l < j; ++l) {
            if (plan.pi(k, l) > 1e-14) crossing = true;
          }
        }
      }
    }
    if (crossing) {
      ASSERT_NEAR(plan.cost, MonotoneCost(a, b, 2), 1e-10);
    }
  }
}

TEST(GroundCostTest, Orders) {
  const auto a = make_distribution({{0.0, 0.0}}, {1.0});
  const auto b = make_distribution({{3.0, 4.0}}, {1.0});
  EXPECT_EQ(ground_cost(a, b, 1)(0, 0), 5.0);
  EXPECT_EQ(ground_cost(a, b, 2)(0, 0), 25.0);
}

}  // namespace
}  // namespace dplab
