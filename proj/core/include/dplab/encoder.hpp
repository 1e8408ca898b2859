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

#ifndef DPLAB_ENCODER_HPP_
#define DPLAB_ENCODER_HPP_

#include <cstddef>
#include <optional>
#include <vector>

namespace dplab {

// A deterministic fixed-rate encoder: a partition of the source support into
// K cells. assignment[i] is the code of the i-th support point (in the
// source's canonical order).
class Encoder {
 public:
  Encoder() = default;

  // Throws kInvalidArgument if K == 0 or any code is >= K.
  Encoder(std::vector<std::size_t> assignment, std::size_t K);

  // Encoder with K = 2^rate_bits.
  static Encoder WithRate(std::vector<std::size_t> assignment, int rate_bits);

  const std::vector<std::size_t>& assignment() const { return assignment_; }
  std::size_t code(std::size_t support_index) const {
    return assignment_[support_index];
  }
  std::size_t K() const { return K_; }
  std::size_t support_size() const { return assignment_.size(); }

  // log2(K) when K is a power of two.
  std::optional<int> rate_bits() const;

  // Number of support points mapped to each code.
  std::vector<std::size_t> cell_sizes() const;
  bool has_empty_cell() const;

  bool operator==(const Encoder&) const = default;

 private:
  std::vector<std::size_t> assignment_;
  std::size_t K_ = 1;
};

// Codebook size for an integer rate; throws on negative or oversized rates.
std::size_t CodebookSize(int rate_bits);

}  // namespace dplab

#endif  // DPLAB_ENCODER_HPP_
