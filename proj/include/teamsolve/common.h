// Copyright 2026 The teamsolve Authors.
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

#ifndef TEAMSOLVE_COMMON_H_
#define TEAMSOLVE_COMMON_H_

#include <stdexcept>
#include <string>

namespace teamsolve {

// Failure categories surfaced by the public API. Each maps to one documented
// error of an operation; the CLI maps them to exit codes.
enum class ErrorCode {
  kInvalidGame,
  kUnsupportedParameters,
  kIndexMismatch,
  kPlanIncomplete,
  kNotTriangleFree,
  kNotSemiRandomized,
  kBackendUnavailable,
  kNonConvergence,
  kSolverFailure,
  kProblemTooLarge,
  kInvalidArgument,
};

const char* ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Tolerances shared across modules.
inline constexpr double kFeasibilityTol = 1e-9;
inline constexpr double kDualFeasibilityTol = 1e-8;
inline constexpr double kIntegralityTol = 1e-6;

}  // namespace teamsolve

#endif  // TEAMSOLVE_COMMON_H_
