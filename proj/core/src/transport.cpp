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
#include <string>
#include <utility>
#include <vector>

#include "dplab/error.hpp"

namespace dplab {
namespace {

struct Cell {
  std::size_t i;
  std::size_t j;
};

constexpr std::size_t kDegenerateStreakBeforeBland = 50;

void CheckMarginal(std::span<const double> probs, const char* which) {
  if (probs.empty()) {
    Fail(ErrorKind::kInvalidArgument, std::string(which) + " marginal is empty");
  }
  double total = 0.0;
  for (double p : probs) {
    if (!std::isfinite(p) || p < 0.0) {
      Fail(ErrorKind::kInvalidArgument,
           std::string(which) + " marginal has a negative or non-finite entry");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kMassInputTolerance) {
    Fail(ErrorKind::kInfeasible,
         std::string(which) + " marginal sums to " + std::to_string(total));
  }
}

// Spanning-tree basis of the transportation polytope.
class TransportSimplex {
 public:
  TransportSimplex(const Eigen::MatrixXd& cost, std::vector<double> supply,
                   std::vector<double> demand)
      : cost_(cost),
        m_(supply.size()),
        n_(demand.size()),
        row_major_(m_ * n_),
        flow_(Eigen::MatrixXd::Zero(m_, n_)),
        basic_(m_ * n_, 0) {
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) row_major_[i * n_ + j] = cost(i, j);
    }
    NorthWestCorner(std::move(supply), std::move(demand));
  }

  std::size_t Solve() {
    double scale = 1.0;
    for (Eigen::Index r = 0; r < cost_.rows(); ++r) {
      for (Eigen::Index c = 0; c < cost_.cols(); ++c) scale = std::max(scale, std::abs(cost_(r, c)));
    }
    const double tol = 1e-13 * scale;
    const std::size_t max_pivots = 50 * m_ * n_ + 1000;
    std::size_t pivots = 0;
    std::size_t streak = 0;
    bool bland = false;
    std::vector<double> u(m_), v(n_);
    while (true) {
      ComputePotentials(u, v);
      std::size_t enter_i = m_, enter_j = n_;
      double best = -tol;
      for (std::size_t i = 0; i < m_ && !(bland && enter_i < m_); ++i) {
        const double* row = &row_major_[i * n_];
        const char* basic = &basic_[i * n_];
        for (std::size_t j = 0; j < n_; ++j) {
          if (basic[j]) continue;
          const double r = row[j] - u[i] - v[j];
          if (bland) {
            if (r < -tol) {
              enter_i = i;
              enter_j = j;
              break;
            }
          } else if (r < best) {
            best = r;
            enter_i = i;
            enter_j = j;
          }
        }
      }
      if (enter_i == m_) return pivots;
      if (++pivots > max_pivots) {
        Fail(ErrorKind::kNumerical, "transport simplex exceeded its pivot limit");
      }

      const std::vector<Cell> path = TreePath(enter_i, enter_j);
      // path[0] touches row enter_i and loses flow; signs alternate.
      double theta = 0.0;
      std::size_t leave = path.size();
      for (std::size_t k = 0; k < path.size(); k += 2) {
        const double f = flow_(path[k].i, path[k].j);
        const std::size_t idx = path[k].i * n_ + path[k].j;
        if (leave == path.size() || f < theta ||
            (f == theta && idx < path[leave].i * n_ + path[leave].j)) {
          theta = f;
          leave = k;
        }
      }
      for (std::size_t k = 0; k < path.size(); ++k) {
        flow_(path[k].i, path[k].j) += (k % 2 == 0) ? -theta : theta;
      }
      flow_(enter_i, enter_j) = theta;
      const Cell out = path[leave];
      flow_(out.i, out.j) = 0.0;
      basic_[out.i * n_ + out.j] = 0;
      basic_[enter_i * n_ + enter_j] = 1;
      for (Cell& c : cells_) {
        if (c.i == out.i && c.j == out.j) {
          c = Cell{enter_i, enter_j};
          break;
        }
      }
      if (theta <= 1e-15) {
        if (++streak >= kDegenerateStreakBeforeBland) bland = true;
      } else {
        streak = 0;
        bland = false;
      }
    }
  }

  Eigen::MatrixXd TakeFlow() {
    // Round-off can leave tiny negative entries on degenerate cells.
    return flow_.cwiseMax(0.0);
  }

 private:
  void NorthWestCorner(std::vector<double> supply, std::vector<double> demand) {
    std::size_t i = 0, j = 0;
    while (true) {
      const double amount = std::max(std::min(supply[i], demand[j]), 0.0);
      flow_(i, j) = amount;
      basic_[i * n_ + j] = 1;
      cells_.push_back(Cell{i, j});
      supply[i] -= amount;
      demand[j] -= amount;
      if (i + 1 == m_ && j + 1 == n_) break;
      if (i + 1 == m_) {
        ++j;
      } else if (j + 1 == n_) {
        ++i;
      } else if (supply[i] <= demand[j]) {
        ++i;
      } else {
        ++j;
      }
    }
    if (i + 1 == m_ && j + 1 == n_) {
      // The last cell absorbs whatever round-off remains.
      flow_(i, j) += std::max(std::min(supply[i], demand[j]), 0.0);
    }
  }

  void BuildAdjacency() {
    adj_.assign(m_ + n_, {});
    for (const Cell& c : cells_) {
      adj_[c.i].push_back(m_ + c.j);
      adj_[m_ + c.j].push_back(c.i);
    }
  }

  void ComputePotentials(std::vector<double>& u, std::vector<double>& v) {
    BuildAdjacency();
    std::vector<bool> seen(m_ + n_, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    u[0] = 0.0;
    while (!stack.empty()) {
      const std::size_t node = stack.back();
      stack.pop_back();
      for (std::size_t next : adj_[node]) {
        if (seen[next]) continue;
        seen[next] = true;
        if (node < m_) {
          v[next - m_] = cost_(node, next - m_) - u[node];
        } else {
          u[next] = cost_(next, node - m_) - v[node - m_];
        }
        stack.push_back(next);
      }
    }
  }

  // Tree path from row node i to column node j, as cells in walking order.
  std::vector<Cell> TreePath(std::size_t i, std::size_t j) const {
    const std::size_t nodes = m_ + n_;
    std::vector<std::size_t> parent(nodes, nodes);
    std::vector<std::size_t> queue{i};
    parent[i] = i;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::size_t node = queue[head];
      if (node == m_ + j) break;
      for (std::size_t next : adj_[node]) {
        if (parent[next] != nodes) continue;
        parent[next] = node;
        queue.push_back(next);
      }
    }
    if (parent[m_ + j] == nodes) {
      Fail(ErrorKind::kNumerical, "transport basis is not a spanning tree");
    }
    std::vector<Cell> reversed;
    for (std::size_t node = m_ + j; node != i; node = parent[node]) {
      const std::size_t p = parent[node];
      reversed.push_back(node < m_ ? Cell{node, p - m_} : Cell{p, node - m_});
    }
    return {reversed.rbegin(), reversed.rend()};
  }

  const Eigen::MatrixXd& cost_;
  std::size_t m_;
  std::size_t n_;
  std::vector<double> row_major_;
  Eigen::MatrixXd flow_;
  std::vector<char> basic_;
  std::vector<Cell> cells_;
  std::vector<std::vector<std::size_t>> adj_;
};

TransportPlan SolvePlan(const DiscreteDistribution& a,
                        const DiscreteDistribution& b, int order,
                        const TransportOptions& options) {
  if (a.dim() != b.dim()) {
    Fail(ErrorKind::kInvalidArgument,
         "dimension mismatch (" + std::to_string(a.dim()) + " vs " +
             std::to_string(b.dim()) + ")");
  }
  const Eigen::MatrixXd cost = ground_cost(a, b, order);
  Coupling coupling = solve_transport_lp(cost, a.probs(), b.probs(), options);
  return TransportPlan{a, b, std::move(coupling.pi), coupling.cost, order};
}

}  // namespace

Coupling solve_transport_lp(const Eigen::MatrixXd& cost,
                            std::span<const double> row_probs,
                            std::span<const double> col_probs,
                            const TransportOptions& options) {
  CheckMarginal(row_probs, "row");
  CheckMarginal(col_probs, "column");
  const std::size_t m = row_probs.size();
  const std::size_t n = col_probs.size();
  if (m > options.size_cap || n > options.size_cap) {
    Fail(ErrorKind::kCapacityExceeded,
         "transport problem " + std::to_string(m) + "x" + std::to_string(n) +
             " exceeds the size cap of " + std::to_string(options.size_cap));
  }
  if (static_cast<std::size_t>(cost.rows()) != m ||
      static_cast<std::size_t>(cost.cols()) != n) {
    Fail(ErrorKind::kInvalidArgument, "cost matrix shape does not match marginals");
  }
  if (!cost.allFinite()) Fail(ErrorKind::kInvalidArgument, "cost matrix has non-finite entries");

  double row_total = 0.0, col_total = 0.0;
  for (double p : row_probs) row_total += p;
  for (double p : col_probs) col_total += p;
  std::vector<double> supply(row_probs.begin(), row_probs.end());
  std::vector<double> demand(col_probs.begin(), col_probs.end());
  for (double& d : demand) d *= row_total / col_total;

  TransportSimplex simplex(cost, std::move(supply), std::move(demand));
  Coupling out;
  out.pivots = simplex.Solve();
  out.pi = simplex.TakeFlow();
  out.cost = (out.pi.array() * cost.array()).sum();
  return out;
}

Eigen::MatrixXd ground_cost(const DiscreteDistribution& a,
                            const DiscreteDistribution& b, int order) {
  if (order != 1 && order != 2) {
    Fail(ErrorKind::kInvalidArgument, "transport order must be 1 or 2");
  }
  Eigen::MatrixXd cost(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      const double sq = SquaredDistance(a.point(i), b.point(j));
      cost(i, j) = order == 2 ? sq : std::sqrt(sq);
    }
  }
  return cost;
}

TransportPlan w1_exact(const DiscreteDistribution& a,
                       const DiscreteDistribution& b,
                       const TransportOptions& options) {
  return SolvePlan(a, b, 1, options);
}

TransportPlan w2sq_exact(const DiscreteDistribution& a,
                         const DiscreteDistribution& b,
                         const TransportOptions& options) {
  return SolvePlan(a, b, 2, options);
}

double w_1d_closed_form(const DiscreteDistribution& a,
                        const DiscreteDistribution& b, int order) {
  if (a.dim() != 1 || b.dim() != 1) {
    Fail(ErrorKind::kInvalidArgument, "closed form requires one-dimensional laws");
  }
  if (order == 1) {
    // Integral of |F_a - F_b| between consecutive merged breakpoints.
    std::size_t ia = 0, ib = 0;
    double fa = 0.0, fb = 0.0, total = 0.0;
    double prev = std::min(a.point(0)[0], b.point(0)[0]);
    while (ia < a.size() || ib < b.size()) {
      const double ta = ia < a.size() ? a.point(ia)[0] : HUGE_VAL;
      const double tb = ib < b.size() ? b.point(ib)[0] : HUGE_VAL;
      const double t = std::min(ta, tb);
      total += std::abs(fa - fb) * (t - prev);
      if (ta == t) fa += a.prob(ia++);
      if (tb == t) fb += b.prob(ib++);
      prev = t;
    }
    return total;
  }
  if (order == 2) {
    // Pair quantile functions level by level.
    std::size_t ia = 0, ib = 0;
    double ra = a.prob(0), rb = b.prob(0), total = 0.0;
    while (ia < a.size() && ib < b.size()) {
      const double mass = std::min(ra, rb);
      const double d = a.point(ia)[0] - b.point(ib)[0];
      total += mass * d * d;
      ra -= mass;
      rb -= mass;
      if (ra <= rb) {
        if (++ia < a.size()) ra += a.prob(ia);
      } else {
        if (++ib < b.size()) rb += b.prob(ib);
      }
    }
    return total;
  }
  Fail(ErrorKind::kInvalidArgument, "transport order must be 1 or 2");
}

}  // namespace dplab
