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

// JSON file schemas and CSV formatting.
//
//   matrix:      [[[re, im], ...], ...]            (list of rows)
//   channel:     {"dim": d, "kraus": [matrix, ...]}
//                or {"preset": name, "params": {...}}
//   ensemble:    {"members": [matrix, ...]}
//   measurement: {"mixing": matrix}
//   state:       {"state": matrix}

#ifndef ERASUREKIT_CLI_IO_HPP
#define ERASUREKIT_CLI_IO_HPP

#include <filesystem>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "erasurekit/channels.hpp"
#include "erasurekit/erasure.hpp"
#include "erasurekit/optimizer.hpp"
#include "erasurekit/probes.hpp"

namespace erasurekit::cli {

using json = nlohmann::json;

/// Malformed input files or flags. The message names the offending field.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json matrix_to_json(const CMatrix& m);
/// `field` names the location in the document for diagnostics.
CMatrix matrix_from_json(const json& j, std::string_view field);

json channel_to_json(const KrausChannel& channel);
KrausChannel channel_from_json(const json& j);

json ensemble_to_json(const Ensemble& ensemble);
Ensemble ensemble_from_json(const json& j);

json measurement_to_json(const ProbeMeasurement& meas);
ProbeMeasurement measurement_from_json(const json& j);

CMatrix state_from_json(const json& j);

json report_to_json(const ErasureReport& report);
json optimization_to_json(const OptimizationResult& result);
json verdict_to_json(const RandomUnitaryVerdict& verdict);

json read_json_file(const std::filesystem::path& path);

/// 17 significant digits, '.' decimal separator; round-trips every double.
std::string format_double(double v);

/// Writes `row` as one comma-separated line.
void write_csv_row(std::ostream& os, const std::vector<std::string>& row);
void write_csv_row(std::ostream& os, const std::vector<double>& row);

}  // namespace erasurekit::cli

#endif  // ERASUREKIT_CLI_IO_HPP
