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

#include "teamsolve/common.h"

namespace teamsolve {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidGame: return "InvalidGame";
    case ErrorCode::kUnsupportedParameters: return "UnsupportedParameters";
    case ErrorCode::kIndexMismatch: return "IndexMismatch";
    case ErrorCode::kPlanIncomplete: return "PlanIncomplete";
    case ErrorCode::kNotTriangleFree: return "NotTriangleFree";
    case ErrorCode::kNotSemiRandomized: return "NotSemiRandomized";
    case ErrorCode::kBackendUnavailable: return "BackendUnavailable";
    case ErrorCode::kNonConvergence: return "NonConvergence";
    case ErrorCode::kSolverFailure: return "SolverFailure";
    case ErrorCode::kProblemTooLarge: return "ProblemTooLarge";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace teamsolve
