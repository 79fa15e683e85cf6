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

#include "erasurekit/error.hpp"

#include <sstream>

namespace erasurekit {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::NotDensity: return "NotDensity";
    case ErrorCode::NotTracePreserving: return "NotTracePreserving";
    case ErrorCode::NotIsometry: return "NotIsometry";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::UnknownPreset: return "UnknownPreset";
    case ErrorCode::ParamOutOfRange: return "ParamOutOfRange";
    case ErrorCode::DivergentRelativeEntropy: return "DivergentRelativeEntropy";
    case ErrorCode::BetaZero: return "BetaZero";
    case ErrorCode::InsufficientFrame: return "InsufficientFrame";
    case ErrorCode::SingularAverage: return "SingularAverage";
    case ErrorCode::EnsembleMismatch: return "EnsembleMismatch";
    case ErrorCode::InvalidEnsemble: return "InvalidEnsemble";
    case ErrorCode::BadOutcomeCount: return "BadOutcomeCount";
  }
  return "Unknown";
}

namespace {

std::string format_message(ErrorCode code, const std::string& detail,
                           std::optional<double> deviation) {
  std::ostringstream os;
  os << to_string(code);
  if (!detail.empty()) os << ": " << detail;
  if (deviation) os << " (deviation " << *deviation << ")";
  return os.str();
}

}  // namespace

Error::Error(ErrorCode code, const std::string& detail,
             std::optional<double> deviation)
    : std::runtime_error(format_message(code, detail, deviation)),
      code_(code),
      deviation_(deviation) {}

}  // namespace erasurekit
