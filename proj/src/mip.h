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

#ifndef TEAMSOLVE_SRC_MIP_H_
#define TEAMSOLVE_SRC_MIP_H_

#include <vector>

#include "teamsolve/linsolve.h"

namespace teamsolve::internal {

// LP relaxation oracle used by branch and bound.
class NodeLp {
 public:
  virtual ~NodeLp() = default;
  virtual Solution Solve(const std::vector<double>& lower,
                         const std::vector<double>& upper,
                         const Basis* warm_start, Basis* final_basis) = 0;
};

// Best-bound branch and bound on the binary variables, branching on the
// most fractional one (lowest index on ties).
MipResult BranchAndBound(const Model& model, NodeLp& lp,
                         const SolverOptions& options);

Solution DenseSolveLp(const Model& model, const SolverOptions& options);

}  // namespace teamsolve::internal

#endif  // TEAMSOLVE_SRC_MIP_H_
