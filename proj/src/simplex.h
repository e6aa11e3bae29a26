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

#ifndef TEAMSOLVE_SRC_SIMPLEX_H_
#define TEAMSOLVE_SRC_SIMPLEX_H_

#include <cstdint>
#include <vector>

#include "basis_factor.h"
#include "teamsolve/linsolve.h"

namespace teamsolve::internal {

enum VarStatus : std::int8_t {
  kBasic = 0,
  kAtLower = 1,
  kAtUpper = 2,
  kZero = 3,  // nonbasic free variable
};

// Bounded revised simplex over A x - s = 0 with bounds on x and on the row
// activities s. Binaries are relaxed to their bounds.
class SimplexEngine {
 public:
  SimplexEngine(const Model& model, const SolverOptions& options);

  int num_vars() const { return n_; }
  int num_rows() const { return m_; }

  void SetBounds(int var, double lower, double upper);
  double lower(int var) const { return lb_[var]; }
  double upper(int var) const { return ub_[var]; }

  // Starts from the all-logical basis.
  void ResetBasis();
  // Returns false (and keeps the current basis) if the shape is wrong.
  bool SetBasis(const Basis& basis);
  Basis GetBasis() const;

  // Primal simplex from the current basis.
  SolveStatus SolvePrimal();
  // Dual simplex from the current basis; falls back to the primal method if
  // the basis is not dual feasible.
  SolveStatus SolveDual();

  // Primal values, duals and reduced costs in the model's sense.
  Solution Extract(SolveStatus status) const;

  std::int64_t iterations() const { return iterations_; }

 private:
  bool Refactor();
  void ComputePrimal();
  void ComputeDuals(const std::vector<double>& cost);
  void ComputePivotRow(int r);
  void Column(int j, std::vector<double>& out) const;
  void MakeNonbasic(int j);
  double NonbasicValue(int j) const;
  double MaxPrimalInfeasibility() const;
  bool PhaseOneCosts(std::vector<double>& cost) const;
  void Pivot(int q, int r, std::vector<double>& alpha);
  void Perturb();
  void RemovePerturbation();
  bool LimitReached() const;

  const Model& model_;
  SolverOptions options_;
  bool maximize_;
  int n_, m_;
  std::vector<int> col_start_, col_row_;
  std::vector<double> col_val_;
  std::vector<int> row_start_, row_col_;
  std::vector<double> row_val_;
  std::vector<double> cost_;
  std::vector<double> lb_, ub_;
  std::vector<double> orig_lb_, orig_ub_;
  bool perturbed_ = false;
  int perturb_rounds_ = 0;
  bool bland_ = false;

  std::vector<double> x_;
  std::vector<std::int8_t> status_;
  std::vector<int> head_;
  std::vector<int> pos_;
  std::vector<double> y_, d_;
  std::vector<double> row_alpha_;
  std::vector<int> row_alpha_nz_;
  std::vector<double> devex_;

  BasisFactor factor_;
  std::int64_t iterations_ = 0;
  std::vector<double> work_;
};

}  // namespace teamsolve::internal

#endif  // TEAMSOLVE_SRC_SIMPLEX_H_
