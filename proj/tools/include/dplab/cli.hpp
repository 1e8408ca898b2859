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
#ifndef DPLAB_CLI_HPP_
#define DPLAB_CLI_HPP_

#include <ostream>

namespace dplab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

// Entry point of the dplab command-line tool. Reports go to out (or the
// --out file), diagnostics to err.
int Run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dplab::cli

#endif  // DPLAB_CLI_HPP_
