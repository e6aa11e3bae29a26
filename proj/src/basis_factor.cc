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

#include "basis_factor.h"

#include <Eigen/OrderingMethods>
#include <Eigen/SparseCore>
#include <algorithm>
#include <cmath>

namespace teamsolve::internal {
namespace {

constexpr double kPivotThreshold = 0.1;
constexpr double kSingularTol = 1e-11;
constexpr double kDropTol = 1e-14;

}  // namespace

std::vector<std::pair<int, int>> BasisFactor::Factor(
    int m, const std::vector<SparseColumn>& columns) {
  m_ = m;
  pivot_row_.clear();
  step_pos_.clear();
  u_diag_.clear();
  row_step_.assign(m, -1);
  l_start_.assign(1, 0);
  l_idx_.clear();
  l_val_.clear();
  u_start_.assign(1, 0);
  u_idx_.clear();
  u_val_.clear();
  eta_pos_.clear();
  eta_pivot_.clear();
  eta_start_.assign(1, 0);
  eta_idx_.clear();
  eta_val_.clear();

  // Fill-reducing column order.
  std::vector<int> order(m);
  {
    Eigen::SparseMatrix<double, Eigen::ColMajor, int> mat(m, m);
    std::vector<Eigen::Triplet<double, int>> trip;
    for (int k = 0; k < m; ++k) {
      for (int t = 0; t < columns[k].nnz; ++t) {
        trip.emplace_back(columns[k].rows[t], k, columns[k].vals[t]);
      }
    }
    mat.setFromTriplets(trip.begin(), trip.end());
    mat.makeCompressed();
    Eigen::COLAMDOrdering<int> colamd;
    Eigen::PermutationMatrix<Eigen::Dynamic, Eigen::Dynamic, int> perm;
    colamd(mat, perm);
    for (int k = 0; k < m; ++k) order[perm.indices()(k)] = k;
  }

  std::vector<int> row_count(m, 0);
  for (int k = 0; k < m; ++k) {
    for (int t = 0; t < columns[k].nnz; ++t) ++row_count[columns[k].rows[t]];
  }

  std::vector<double> x(m, 0.0);
  std::vector<char> mark(m, 0);
  std::vector<int> pattern, topo, stack, child;
  std::vector<int> singular_pos;
  pattern.reserve(m);

  for (int c : order) {
    const SparseColumn& col = columns[c];
    // Symbolic: rows reachable from the column through pivoted L columns,
    // collected in reverse topological order.
    topo.clear();
    for (int t = 0; t < col.nnz; ++t) {
      const int r0 = col.rows[t];
      if (mark[r0]) continue;
      stack.assign(1, r0);
      child.assign(1, 0);
      mark[r0] = 1;
      while (!stack.empty()) {
        const int r = stack.back();
        const int step = row_step_[r];
        int& next = child.back();
        bool descended = false;
        if (step >= 0) {
          while (next < l_start_[step + 1] - l_start_[step]) {
            const int rr = l_idx_[l_start_[step] + next++];
            if (!mark[rr]) {
              mark[rr] = 1;
              stack.push_back(rr);
              child.push_back(0);
              descended = true;
              break;
            }
          }
        }
        if (!descended) {
          topo.push_back(r);
          stack.pop_back();
          child.pop_back();
        }
      }
    }
    double col_max = 0.0;
    for (int t = 0; t < col.nnz; ++t) {
      x[col.rows[t]] += col.vals[t];
      col_max = std::max(col_max, std::abs(col.vals[t]));
    }
    for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
      const int r = *it;
      const int step = row_step_[r];
      if (step < 0 || x[r] == 0.0) continue;
      const double xr = x[r];
      for (int t = l_start_[step]; t < l_start_[step + 1]; ++t) {
        x[l_idx_[t]] -= l_val_[t] * xr;
      }
    }
    double best = 0.0;
    for (int r : topo) {
      if (row_step_[r] < 0) best = std::max(best, std::abs(x[r]));
    }
    int pivot = -1;
    if (best > kSingularTol && best > 1e-9 * col_max) {
      for (int r : topo) {
        if (row_step_[r] >= 0 || std::abs(x[r]) < kPivotThreshold * best) {
          continue;
        }
        if (pivot < 0 || row_count[r] < row_count[pivot] ||
            (row_count[r] == row_count[pivot] && r < pivot)) {
          pivot = r;
        }
      }
    }
    if (pivot < 0) {
      singular_pos.push_back(c);
    } else {
      const int k = static_cast<int>(pivot_row_.size());
      const double piv = x[pivot];
      for (int r : topo) {
        if (r == pivot || std::abs(x[r]) <= kDropTol) continue;
        if (row_step_[r] >= 0) {
          u_idx_.push_back(row_step_[r]);
          u_val_.push_back(x[r]);
        } else {
          l_idx_.push_back(r);
          l_val_.push_back(x[r] / piv);
        }
      }
      u_start_.push_back(static_cast<int>(u_idx_.size()));
      l_start_.push_back(static_cast<int>(l_idx_.size()));
      pivot_row_.push_back(pivot);
      step_pos_.push_back(c);
      u_diag_.push_back(piv);
      row_step_[pivot] = k;
    }
    for (int r : topo) {
      x[r] = 0.0;
      mark[r] = 0;
    }
  }

  std::vector<std::pair<int, int>> replaced;
  if (!singular_pos.empty()) {
    std::sort(singular_pos.begin(), singular_pos.end());
    int next_row = 0;
    for (int pos : singular_pos) {
      while (row_step_[next_row] >= 0) ++next_row;
      const int k = static_cast<int>(pivot_row_.size());
      pivot_row_.push_back(next_row);
      step_pos_.push_back(pos);
      u_diag_.push_back(-1.0);
      u_start_.push_back(static_cast<int>(u_idx_.size()));
      l_start_.push_back(static_cast<int>(l_idx_.size()));
      row_step_[next_row] = k;
      replaced.emplace_back(pos, next_row);
    }
  }
  work_.assign(m, 0.0);
  return replaced;
}

void BasisFactor::Ftran(std::vector<double>& x) const {
  std::vector<double>& w = x;
  for (int k = 0; k < m_; ++k) {
    const double xk = w[pivot_row_[k]];
    if (xk == 0.0) continue;
    for (int t = l_start_[k]; t < l_start_[k + 1]; ++t) {
      w[l_idx_[t]] -= l_val_[t] * xk;
    }
  }
  std::vector<double>& y = work_;
  for (int k = 0; k < m_; ++k) y[k] = w[pivot_row_[k]];
  for (int k = m_ - 1; k >= 0; --k) {
    const double z = y[k] / u_diag_[k];
    y[k] = z;
    if (z == 0.0) continue;
    for (int t = u_start_[k]; t < u_start_[k + 1]; ++t) {
      y[u_idx_[t]] -= u_val_[t] * z;
    }
  }
  for (int k = 0; k < m_; ++k) x[step_pos_[k]] = y[k];
  for (std::size_t e = 0; e < eta_pos_.size(); ++e) {
    const int r = eta_pos_[e];
    const double xr = x[r] / eta_pivot_[e];
    x[r] = xr;
    if (xr == 0.0) continue;
    for (int t = eta_start_[e]; t < eta_start_[e + 1]; ++t) {
      x[eta_idx_[t]] -= eta_val_[t] * xr;
    }
  }
}

void BasisFactor::Btran(std::vector<double>& y) const {
  for (int e = static_cast<int>(eta_pos_.size()) - 1; e >= 0; --e) {
    const int r = eta_pos_[e];
    double s = y[r];
    for (int t = eta_start_[e]; t < eta_start_[e + 1]; ++t) {
      s -= eta_val_[t] * y[eta_idx_[t]];
    }
    y[r] = s / eta_pivot_[e];
  }
  std::vector<double>& v = work_;
  for (int k = 0; k < m_; ++k) {
    double s = y[step_pos_[k]];
    for (int t = u_start_[k]; t < u_start_[k + 1]; ++t) {
      s -= u_val_[t] * v[u_idx_[t]];
    }
    v[k] = s / u_diag_[k];
  }
  for (int k = m_ - 1; k >= 0; --k) {
    double s = v[k];
    for (int t = l_start_[k]; t < l_start_[k + 1]; ++t) {
      s -= l_val_[t] * v[row_step_[l_idx_[t]]];
    }
    v[k] = s;
  }
  for (int k = 0; k < m_; ++k) y[pivot_row_[k]] = v[k];
}

void BasisFactor::Update(int pos, const std::vector<double>& alpha) {
  eta_pos_.push_back(pos);
  eta_pivot_.push_back(alpha[pos]);
  for (int i = 0; i < m_; ++i) {
    if (i == pos || std::abs(alpha[i]) <= kDropTol) continue;
    eta_idx_.push_back(i);
    eta_val_.push_back(alpha[i]);
  }
  eta_start_.push_back(static_cast<int>(eta_idx_.size()));
}

}  // namespace teamsolve::internal
