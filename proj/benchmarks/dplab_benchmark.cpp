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
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "dplab/augmented.hpp"
#include "dplab/codec.hpp"
#include "dplab/distribution.hpp"
#include "dplab/tradeoff.hpp"
#include "dplab/transport.hpp"

namespace dplab {
namespace {

DiscreteDistribution RandomCloud(std::size_t n, std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<Point> pts(n, Point(dim));
  for (auto& p : pts) {
    for (double& v : p) v = normal(rng);
  }
  return make_distribution(pts, std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

void BM_W2Transport(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = RandomCloud(n, 2, 1), b = RandomCloud(n, 2, 2);
  for (auto _ : state) benchmark::DoNotOptimize(w2sq_exact(a, b).cost);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_W2Transport)->RangeMultiplier(2)->Range(16, 256)->Complexity();

void BM_W1ClosedForm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = RandomCloud(n, 1, 3), b = RandomCloud(n, 1, 4);
  for (auto _ : state) benchmark::DoNotOptimize(w_1d_closed_form(a, b, 1));
}
BENCHMARK(BM_W1ClosedForm)->Range(16, 512);

void BM_Lloyd(benchmark::State& state) {
  const auto src = RandomCloud(static_cast<std::size_t>(state.range(0)), 2, 5);
  for (auto _ : state) benchmark::DoNotOptimize(lloyd_train(src, 8).mse);
}
BENCHMARK(BM_Lloyd)->Range(64, 1024);

void BM_ExhaustiveEncoder(benchmark::State& state) {
  const auto src = RandomCloud(static_cast<std::size_t>(state.range(0)), 1, 6);
  for (auto _ : state) benchmark::DoNotOptimize(exhaustive_optimal_encoder(src, 2).mse);
}
BENCHMARK(BM_ExhaustiveEncoder)->DenseRange(8, 16, 4);

void BM_IntervalEncoder(benchmark::State& state) {
  const auto src = gaussian_grid(0, 1, static_cast<int>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(interval_optimal_encoder(src, 4).mse);
}
BENCHMARK(BM_IntervalEncoder)->Range(33, 513);

void BM_ConstrainedOracle(benchmark::State& state) {
  const auto src = gaussian_grid(0, 1, static_cast<int>(state.range(0)), 3);
  const auto c = certified_optimal_encoder(src, 2);
  const auto support = default_oracle_support(src, c.encoder, c.decoder, {0.5});
  for (auto _ : state) {
    benchmark::DoNotOptimize(constrained_oracle(src, c.encoder, 0.25 * c.mse, support).D_star);
  }
}
BENCHMARK(BM_ConstrainedOracle)->DenseRange(4, 16, 4)->Unit(benchmark::kMillisecond);

void BM_AugmentedSolve(benchmark::State& state) {
  const auto src = gaussian_grid(0, 1, static_cast<int>(state.range(0)), 3);
  const auto c = certified_optimal_encoder(src, 2);
  const auto support = default_augmented_support(src, c.decoder);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_augmented(src, c.encoder, c.decoder, 0.5, support).mse);
  }
}
BENCHMARK(BM_AugmentedSolve)->DenseRange(4, 16, 4)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace dplab

BENCHMARK_MAIN();
