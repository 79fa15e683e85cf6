// Copyright 2026 The ErasureKit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ERASUREKIT_CLI_COMMANDS_HPP
#define ERASUREKIT_CLI_COMMANDS_HPP

#include <ostream>
#include <string>
#include <vector>

#include "erasurekit/cli/run_config.hpp"

namespace erasurekit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitVerificationFailure = 2;

/// Parses `args` (without the program name) and runs the selected command.
/// Reports go to `out` when the output path is "-", diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Runs an already resolved configuration.
int run_config(RunConfig config, std::ostream& out, std::ostream& err);

}  // namespace erasurekit::cli

#endif  // ERASUREKIT_CLI_COMMANDS_HPP
