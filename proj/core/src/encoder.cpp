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
#include "dplab/encoder.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "dplab/error.hpp"

namespace dplab {

Encoder::Encoder(std::vector<std::size_t> assignment, std::size_t K)
    : assignment_(std::move(assignment)), K_(K) {
  if (K_ == 0) Fail(ErrorKind::kInvalidArgument, "codebook size K must be >= 1");
  for (std::size_t i = 0; i < assignment_.size(); ++i) {
    if (assignment_[i] >= K_) {
      Fail(ErrorKind::kInvalidArgument,
           "code " + std::to_string(assignment_[i]) + " of support point " +
               std::to_string(i) + " is out of range for K=" +
               std::to_string(K_));
    }
  }
}

Encoder Encoder::WithRate(std::vector<std::size_t> assignment, int rate_bits) {
  return Encoder(std::move(assignment), CodebookSize(rate_bits));
}

std::optional<int> Encoder::rate_bits() const {
  if ((K_ & (K_ - 1)) != 0) return std::nullopt;
  int bits = 0;
  while ((std::size_t{1} << bits) < K_) ++bits;
  return bits;
}

std::vector<std::size_t> Encoder::cell_sizes() const {
  std::vector<std::size_t> sizes(K_, 0);
  for (std::size_t z : assignment_) ++sizes[z];
  return sizes;
}

bool Encoder::has_empty_cell() const {
  const auto sizes = cell_sizes();
  return std::find(sizes.begin(), sizes.end(), 0) != sizes.end();
}

std::size_t CodebookSize(int rate_bits) {
  if (rate_bits < 0) Fail(ErrorKind::kInvalidArgument, "rate must be >= 0");
  if (rate_bits > 30) Fail(ErrorKind::kInvalidArgument, "rate must be <= 30 bits");
  return std::size_t{1} << rate_bits;
}

}  // namespace dplab
