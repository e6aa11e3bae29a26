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

#ifndef TEAMSOLVE_SRC_BASIS_FACTOR_H_
#define TEAMSOLVE_SRC_BASIS_FACTOR_H_

#include <utility>
#include <vector>

namespace teamsolve::internal {

struct SparseColumn {
  const int* rows = nullptr;
  const double* vals = nullptr;
  int nnz = 0;
};

// LU factors of a square basis matrix with product-form updates.
// Columns are addressed by basis position, rows by constraint index.
class BasisFactor {
 public:
  // Factors the matrix whose k-th column is columns[k]. Dependent columns are
  // dropped and replaced by the unit column -e_row of an unpivoted row; the
  // returned pairs are (basis position, row) for every replacement.
  std::vector<std::pair<int, int>> Factor(
      int m, const std::vector<SparseColumn>& columns);

  // In: right-hand side by row. Out: solution by basis position.
  void Ftran(std::vector<double>& x) const;
  // In: right-hand side by basis position. Out: solution by row.
  void Btran(std::vector<double>& y) const;

  // Replaces the column at `pos`; `alpha` is the entering column after
  // Ftran, indexed by basis position.
  void Update(int pos, const std::vector<double>& alpha);

  int num_updates() const { return static_cast<int>(eta_pos_.size()); }
  long long eta_nnz() const { return static_cast<long long>(eta_idx_.size()); }
  long long lu_nnz() const {
    return static_cast<long long>(l_idx_.size() + u_idx_.size());
  }

 private:
  int m_ = 0;
  // Step k pivots row pivot_row_[k] and column at basis position
  // step_pos_[k].
  std::vector<int> pivot_row_;
  std::vector<int> step_pos_;
  std::vector<int> row_step_;
  std::vector<double> u_diag_;
  // Column k of L holds multipliers for rows pivoted after step k; column k
  // of U holds entries at earlier steps.
  std::vector<int> l_start_, l_idx_;
  std::vector<double> l_val_;
  std::vector<int> u_start_, u_idx_;
  std::vector<double> u_val_;
  // Eta file.
  std::vector<int> eta_pos_;
  std::vector<double> eta_pivot_;
  std::vector<int> eta_start_ = {0};
  std::vector<int> eta_idx_;
  std::vector<double> eta_val_;
  mutable std::vector<double> work_;
};

}  // namespace teamsolve::internal

#endif  // TEAMSOLVE_SRC_BASIS_FACTOR_H_
