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
#ifndef DPLAB_TOOLS_SCENARIO_HPP_
#define DPLAB_TOOLS_SCENARIO_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dplab/codec.hpp"
#include "dplab/distribution.hpp"

namespace dplab::cli {

struct Scenario {
  std::string source = "builtin:u4";
  int rate = 1;
  std::string method = "exhaustive";
  std::string alphas = "0:1:0.05";
  std::string lambdas = "0,0.25,0.5,0.9,1,1.1,1.5,2";
  std::string perception;
  std::uint64_t seed = 0;
  double tol = 1e-10;
  std::string out;
  std::string format;
  bool dump_plan = false;
  std::string codec;
};

// Source, trained (or loaded) codec and its resampler.
struct Prepared {
  DiscreteDistribution source;
  Encoder encoder;
  DeterministicDecoder gd;
  StochasticDecoder gp;
  // True when the pair is certified globally MSE-optimal.
  bool certified = false;
  std::optional<LloydResult> lloyd;
};

// "builtin:NAME", inline JSON (starts with '{') or a path to a JSON file.
DiscreteDistribution LoadSource(const std::string& spec);
Prepared Prepare(const Scenario& scenario);

// "a:b:step" (inclusive, ascending) or a single number.
std::vector<double> ParseRange(const std::string& text);
// Comma-separated numbers.
std::vector<double> ParseList(const std::string& text);

struct CheckRow {
  std::string name;
  std::string status;  // pass, fail, skip or info (reported, not asserted)
  double measured = 0.0;
  double tolerance = 0.0;
};

std::vector<CheckRow> RunVerify(const Scenario& scenario, const Prepared& prepared);

}  // namespace dplab::cli

#endif  // DPLAB_TOOLS_SCENARIO_HPP_
