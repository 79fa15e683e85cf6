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

#ifndef ERASUREKIT_ERROR_HPP
#define ERASUREKIT_ERROR_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace erasurekit {

enum class ErrorCode {
  DimensionMismatch,
  NotPSD,
  NotDensity,
  NotTracePreserving,
  NotIsometry,
  NotNormalized,
  IndexOutOfRange,
  UnknownPreset,
  ParamOutOfRange,
  DivergentRelativeEntropy,
  BetaZero,
  InsufficientFrame,
  SingularAverage,
  EnsembleMismatch,
  InvalidEnsemble,
  BadOutcomeCount,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library. `what()` starts with the error code
/// name so diagnostics can be matched textually (e.g. "NotTracePreserving").
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail,
        std::optional<double> deviation = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  /// Size of the violated constraint, when one is measurable.
  std::optional<double> deviation() const noexcept { return deviation_; }

 private:
  ErrorCode code_;
  std::optional<double> deviation_;
};

}  // namespace erasurekit

#endif  // ERASUREKIT_ERROR_HPP
