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

#ifndef ERASUREKIT_CLI_RUN_CONFIG_HPP
#define ERASUREKIT_CLI_RUN_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "erasurekit/channels.hpp"
#include "erasurekit/cli/io.hpp"

namespace erasurekit::cli {

struct ChannelSource {
  std::optional<std::string> file;
  std::optional<std::string> preset;
  PresetParams params;
};

/// Fully resolved options of one CLI run. Every output embeds it, so a saved
/// config reproduces the run byte for byte.
struct RunConfig {
  std::string command;  ///< analyze | optimize | verify | scenario
  ChannelSource channel;
  std::string state = "mixed";  ///< mixed | zero | plus | path to a state file
  std::optional<std::string> ensemble_file;
  int ensemble_size = 4;
  std::string mixing = "identity";  ///< identity | hadamard | path to a measurement file
  int frame_members = 0;            ///< 0 selects rank(rho)^2
  std::uint64_t seed = 1;
  std::string output = "-";
  std::string format;  ///< json | csv; empty selects the command default

  int outcomes = 0;  ///< 0 selects the Kraus count
  int restarts = 32;
  int max_iters = 500;
  double tol = 1e-12;
  int oracle_samples = 0;
  double ru_tol = 1e-6;
  std::optional<std::string> trace_csv;

  int trials = 100;

  std::string scenario;
  int grid = 0;  ///< 0 selects 33 (eraser) or 21 (teleport)

  double slack_tol = kSlackTolerance;
};

json to_json(const RunConfig& config);
/// Throws InputError naming the offending field.
RunConfig run_config_from_json(const json& j);

}  // namespace erasurekit::cli

#endif  // ERASUREKIT_CLI_RUN_CONFIG_HPP
