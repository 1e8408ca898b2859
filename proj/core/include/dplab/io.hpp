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
#ifndef DPLAB_IO_HPP_
#define DPLAB_IO_HPP_

#include <optional>
#include <string>
#include <vector>

#include "dplab/augmented.hpp"
#include "dplab/codec.hpp"
#include "dplab/distribution.hpp"
#include "dplab/encoder.hpp"
#include "dplab/tradeoff.hpp"
#include "dplab/transport.hpp"

// Text formats. JSON numbers use the shortest representation that round-trips
// to the same double; CSV numbers use 17 significant digits and LF endings.
namespace dplab::io {

// {"points": [[..], ..], "probs": [..]} or
// {"kind": "gaussian-grid", "mean": m, "std": s, "n": N, "halfwidth": w}.
DiscreteDistribution parse_source_json(const std::string& text);
std::string source_to_json(const DiscreteDistribution& dist);

// builtin:u4, builtin:u2, builtin:gauss33.
std::optional<DiscreteDistribution> builtin_source(const std::string& name);

struct Codec {
  Encoder encoder;
  DeterministicDecoder gd;
  std::optional<StochasticDecoder> gp;

  bool operator==(const Codec&) const = default;
};

// {"K": k, "assignment": [...], "gd": [...], "gp": {"support": [...],
// "rows": [[...], ...]}}; "gp" is omitted when absent.
std::string codec_to_json(const Codec& codec);
Codec parse_codec_json(const std::string& text);

std::string plan_to_json(const TransportPlan& plan);

// "%.17g".
std::string FormatNumber(double value);

std::string sweep_csv(const std::vector<TradeoffPoint>& points);
std::string phase_csv(const std::vector<AugmentedSolution>& rows);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace dplab::io

#endif  // DPLAB_IO_HPP_
