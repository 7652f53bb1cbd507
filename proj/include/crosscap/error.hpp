// Copyright 2026 The Crosscap Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace crosscap {

enum class ErrorCode {
  kInvalidInput,
  kUndefinedDirection,
  kNonUniqueSegment,
  kNoComparisonTriangle,
  kUndefinedAngle,
  kUndefinedComparison,
  kDegenerateDirection,
  kStepTooLarge,
  kNonInvertibleChart,
  kCertificateFailure,
  kInconsistency,
  kUnreachable,
  kCorruptMetric,
  kPerturbLevel,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures surface as this exception; `code()` is stable and is
// what the CLI maps onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput: return "invalid-input";
    case ErrorCode::kUndefinedDirection: return "undefined-direction";
    case ErrorCode::kNonUniqueSegment: return "non-unique-segment";
    case ErrorCode::kNoComparisonTriangle: return "no-comparison-triangle";
    case ErrorCode::kUndefinedAngle: return "undefined-angle";
    case ErrorCode::kUndefinedComparison: return "undefined-comparison";
    case ErrorCode::kDegenerateDirection: return "degenerate-direction";
    case ErrorCode::kStepTooLarge: return "step-too-large";
    case ErrorCode::kNonInvertibleChart: return "non-invertible-chart";
    case ErrorCode::kCertificateFailure: return "certificate-failure";
    case ErrorCode::kInconsistency: return "inconsistency";
    case ErrorCode::kUnreachable: return "unreachable";
    case ErrorCode::kCorruptMetric: return "corrupt-metric";
    case ErrorCode::kPerturbLevel: return "perturb-level";
  }
  return "unknown";
}

[[noreturn]] inline void Fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void Require(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) Fail(code, what);
}

}  // namespace crosscap
