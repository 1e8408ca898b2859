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

#ifndef DPLAB_ERROR_HPP_
#define DPLAB_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace dplab {

// Broad failure categories. The CLI maps every category to exit code 2, but
// tests and callers can distinguish them.
enum class ErrorKind {
  kInvalidArgument,   // bad input values or shapes
  kPrecondition,      // a documented precondition does not hold
  kCapacityExceeded,  // size or enumeration caps
  kInfeasible,        // an optimization problem has no feasible point
  kNumerical,         // solver did not converge / iteration limit
  kIo,                // file or parse failures
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void Fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace dplab

#endif  // DPLAB_ERROR_HPP_
