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
#ifndef DPLAB_PARALLEL_HPP_
#define DPLAB_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace dplab {

// Worker count: DPLAB_THREADS when set to a positive integer, otherwise the
// hardware concurrency (at least 1).
std::size_t DefaultThreadCount();

// Runs body(i) for i in [0, count) on up to max_threads threads. The first
// exception thrown by any body is rethrown after all workers join. Callers
// write results into pre-sized slots, so output order never depends on
// scheduling.
void ParallelFor(std::size_t count, std::size_t max_threads,
                 const std::function<void(std::size_t)>& body);

}  // namespace dplab

#endif  // DPLAB_PARALLEL_HPP_
