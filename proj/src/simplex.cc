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

#include "simplex.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

namespace teamsolve::internal {
namespace {

constexpr double kPrimalTol = 1e-9;
constexpr double kDualTol = 1e-9;
constexpr double kPivotTol = 1e-9;
constexpr int kDegenerateTrigger = 50;
constexpr int kMaxPerturbRounds = 3;

double Uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

SimplexEngine::SimplexEngine(const Model& model, const SolverOptions& options)
    : model_(model),
      options_(options),
      maximize_(model.sense() == Sense::kMaximize),
      n_(model.num_vars()),
      m_(model.num_constraints()) {
  const int total = n_ + m_;
  // Column-wise copy, merging repeated terms within a row.
  std::vector<std::vector<std::pair<int, double>>> cols(n_);
  std::vector<int> last_row(n_, -1), last_slot(n_, -1);
  for (int i = 0; i < m_; ++i) {
    for (int t = model.row_begin(i); t < model.row_end(i); ++t) {
      const Term& term = model.terms()[t];
      if (last_row[term.var] == i) {
        cols[term.var][last_slot[term.var]].second += term.coef;
      } else {
        last_row[term.var] = i;
        last_slot[term.var] = static_cast<int>(cols[term.var].size());
        cols[term.var].emplace_back(i, term.coef);
      }
    }
  }
  col_start_.assign(total + 1, 0);
  for (int j = 0; j < n_; ++j) {
    for (auto [i, v] : cols[j]) {
      if (v == 0.0) continue;
      col_row_.push_back(i);
      col_val_.push_back(v);
    }
    col_start_[j + 1] = static_cast<int>(col_row_.size());
  }
  for (int i = 0; i < m_; ++i) {
    col_row_.push_back(i);
    col_val_.push_back(-1.0);
    col_start_[n_ + i + 1] = static_cast<int>(col_row_.size());
  }
  row_start_.assign(m_ + 1, 0);
  for (int j = 0; j < n_; ++j) {
    for (int t = col_start_[j]; t < col_start_[j + 1]; ++t) {
      ++row_start_[col_row_[t] + 1];
    }
  }
  for (int i = 0; i < m_; ++i) row_start_[i + 1] += row_start_[i];
  row_col_.resize(row_start_[m_]);
  row_val_.resize(row_start_[m_]);
  {
    std::vector<int> fill(row_start_.begin(), row_start_.end() - 1);
    for (int j = 0; j < n_; ++j) {
      for (int t = col_start_[j]; t < col_start_[j + 1]; ++t) {
        const int slot = fill[col_row_[t]]++;
        row_col_[slot] = j;
        row_val_[slot] = col_val_[t];
      }
    }
  }

  cost_.assign(total, 0.0);
  lb_.resize(total);
  ub_.resize(total);
  for (int j = 0; j < n_; ++j) {
    cost_[j] = maximize_ ? -model.objective(j) : model.objective(j);
    lb_[j] = model.lower(j);
    ub_[j] = model.upper(j);
    if (model.type(j) == VarType::kBinary) {
      lb_[j] = std::max(lb_[j], 0.0);
      ub_[j] = std::min(ub_[j], 1.0);
    }
  }
  for (int i = 0; i < m_; ++i) {
    const double b = model.rhs(i);
    switch (model.relation(i)) {
      case Relation::kLessEqual:
        lb_[n_ + i] = -kInfinity;
        ub_[n_ + i] = b;
        break;
      case Relation::kEqual:
        lb_[n_ + i] = b;
        ub_[n_ + i] = b;
        break;
      case Relation::kGreaterEqual:
        lb_[n_ + i] = b;
        ub_[n_ + i] = kInfinity;
        break;
    }
  }
  orig_lb_ = lb_;
  orig_ub_ = ub_;
  x_.assign(total, 0.0);
  status_.assign(total, kAtLower);
  head_.assign(m_, -1);
  pos_.assign(total, -1);
  y_.assign(m_, 0.0);
  d_.assign(total, 0.0);
  row_alpha_.assign(total, 0.0);
  devex_.assign(total, 1.0);
  work_.assign(m_, 0.0);
  ResetBasis();
}

void SimplexEngine::SetBounds(int var, double lower, double upper) {
  lb_[var] = orig_lb_[var] = lower;
  ub_[var] = orig_ub_[var] = upper;
  if (status_[var] == kBasic) return;
  if ((status_[var] == kAtLower && lower == -kInfinity) ||
      (status_[var] == kAtUpper && upper == kInfinity) ||
      status_[var] == kZero) {
    MakeNonbasic(var);
  } else {
    x_[var] = NonbasicValue(var);
  }
}

void SimplexEngine::MakeNonbasic(int j) {
  pos_[j] = -1;
  if (lb_[j] > -kInfinity && ub_[j] < kInfinity) {
    status_[j] = std::abs(x_[j] - ub_[j]) < std::abs(x_[j] - lb_[j])
                     ? kAtUpper
                     : kAtLower;
  } else if (lb_[j] > -kInfinity) {
    status_[j] = kAtLower;
  } else if (ub_[j] < kInfinity) {
    status_[j] = kAtUpper;
  } else {
    status_[j] = kZero;
  }
  x_[j] = NonbasicValue(j);
}

double SimplexEngine::NonbasicValue(int j) const {
  switch (status_[j]) {
    case kAtLower:
      return lb_[j];
    case kAtUpper:
      return ub_[j];
    default:
      return 0.0;
  }
}

void SimplexEngine::ResetBasis() {
  for (int j = 0; j < n_; ++j) {
    x_[j] = 0.0;
    MakeNonbasic(j);
  }
  for (int i = 0; i < m_; ++i) {
    head_[i] = n_ + i;
    pos_[n_ + i] = i;
    status_[n_ + i] = kBasic;
  }
}

bool SimplexEngine::SetBasis(const Basis& basis) {
  const int total = n_ + m_;
  if (static_cast<int>(basis.status.size()) != total) return false;
  int basic = 0;
  for (std::int8_t s : basis.status) basic += s == kBasic;
  if (basic != m_) return false;
  int k = 0;
  for (int j = 0; j < total; ++j) {
    status_[j] = basis.status[j];
    if (status_[j] == kBasic) {
      head_[k] = j;
      pos_[j] = k++;
    } else {
      pos_[j] = -1;
      if ((status_[j] == kAtLower && lb_[j] == -kInfinity) ||
          (status_[j] == kAtUpper && ub_[j] == kInfinity) ||
          (status_[j] == kZero &&
           (lb_[j] > -kInfinity || ub_[j] < kInfinity))) {
        MakeNonbasic(j);
      }
      x_[j] = NonbasicValue(j);
    }
  }
  return true;
}

Basis SimplexEngine::GetBasis() const {
  Basis b;
  b.status = status_;
  return b;
}

bool SimplexEngine::Refactor() {
  std::vector<SparseColumn> cols(m_);
  for (int k = 0; k < m_; ++k) {
    const int j = head_[k];
    cols[k].rows = col_row_.data() + col_start_[j];
    cols[k].vals = col_val_.data() + col_start_[j];
    cols[k].nnz = col_start_[j + 1] - col_start_[j];
  }
  const auto replaced = factor_.Factor(m_, cols);
  for (auto [k, row] : replaced) {
    const int old = head_[k];
    const int fresh = n_ + row;
    head_[k] = fresh;
    pos_[fresh] = k;
    status_[fresh] = kBasic;
    MakeNonbasic(old);
  }
  return replaced.empty();
}

void SimplexEngine::ComputePrimal() {
  std::vector<double>& rhs = work_;
  std::fill(rhs.begin(), rhs.end(), 0.0);
  for (int j = 0; j < n_ + m_; ++j) {
    if (status_[j] == kBasic || x_[j] == 0.0) continue;
    for (int t = col_start_[j]; t < col_start_[j + 1]; ++t) {
      rhs[col_row_[t]] -= col_val_[t] * x_[j];
    }
  }
  factor_.Ftran(rhs);
  for (int k = 0; k < m_; ++k) x_[head_[k]] = rhs[k];
}

void SimplexEngine::ComputeDuals(const std::vector<double>& cost) {
  for (int k = 0; k < m_; ++k) y_[k] = cost[head_[k]];
  factor_.Btran(y_);
  for (int j = 0; j < n_; ++j) {
    if (status_[j] == kBasic) {
      d_[j] = 0.0;
      continue;
    }
    double s = cost[j];
    for (int t = col_start_[j]; t < col_start_[j + 1]; ++t) {
      s -= col_val_[t] * y_[col_row_[t]];
    }
    d_[j] = s;
  }
  for (int i = 0; i < m_; ++i) {
    d_[n_ + i] = status_[n_ + i] == kBasic ? 0.0 : cost[n_ + i] + y_[i];
  }
}

void SimplexEngine::ComputePivotRow(int r) {
  for (int j : row_alpha_nz_) row_alpha_[j] = 0.0;
  row_alpha_nz_.clear();
  std::vector<double>& rho = work_;
  std::fill(rho.begin(), rho.end(), 0.0);
  rho[r] = 1.0;
  factor_.Btran(rho);
  for (int i = 0; i < m_; ++i) {
    const double v = rho[i];
    if (v == 0.0) continue;
    for (int t = row_start_[i]; t < row_start_[i + 1]; ++t) {
      const int j = row_col_[t];
      if (row_alpha_[j] == 0.0) row_alpha_nz_.push_back(j);
      row_alpha_[j] += row_val_[t] * v;
      if (row_alpha_[j] == 0.0) row_alpha_[j] = 1e-300;
    }
    row_alpha_[n_ + i] = -v;
    row_alpha_nz_.push_back(n_ + i);
  }
}

void SimplexEngine::Column(int j, std::vector<double>& out) const {
  std::fill(out.begin(), out.end(), 0.0);
  for (int t = col_start_[j]; t < col_start_[j + 1]; ++t) {
    out[col_row_[t]] = col_val_[t];
  }
}

double SimplexEngine::MaxPrimalInfeasibility() const {
  double worst = 0.0;
  for (int k = 0; k < m_; ++k) {
    const int j = head_[k];
    worst = std::max({worst, lb_[j] - x_[j], x_[j] - ub_[j]});
  }
  return worst;
}

bool SimplexEngine::PhaseOneCosts(std::vector<double>& cost) const {
  std::fill(cost.begin(), cost.end(), 0.0);
  bool any = false;
  for (int k = 0; k < m_; ++k) {
    const int j = head_[k];
    if (x_[j] < lb_[j] - kPrimalTol) {
      cost[j] = -1.0;
      any = true;
    } else if (x_[j] > ub_[j] + kPrimalTol) {
      cost[j] = 1.0;
      any = true;
    }
  }
  return any;
}

void SimplexEngine::Pivot(int q, int r, std::vector<double>& alpha) {
  const int leaving = head_[r];
  pos_[leaving] = -1;
  head_[r] = q;
  pos_[q] = r;
  status_[q] = kBasic;
  factor_.Update(r, alpha);
}

void SimplexEngine::Perturb() {
  std::mt19937_64 rng(0x5eed + perturb_rounds_);
  ++perturb_rounds_;
  perturbed_ = true;
  const double scale = 1e-7 / perturb_rounds_;
  for (int k = 0; k < m_; ++k) {
    const int j = head_[k];
    if (lb_[j] == ub_[j]) continue;
    const double u = 0.5 + 0.5 * Uniform(rng);
    if (lb_[j] > -kInfinity) {
      lb_[j] -= scale * u * (1.0 + std::abs(lb_[j]));
    }
    if (ub_[j] < kInfinity) {
      ub_[j] += scale * u * (1.0 + std::abs(ub_[j]));
    }
  }
}

void SimplexEngine::RemovePerturbation() {
  perturbed_ = false;
  lb_ = orig_lb_;
  ub_ = orig_ub_;
  for (int j = 0; j < n_ + m_; ++j) {
    if (status_[j] != kBasic) x_[j] = NonbasicValue(j);
  }
}

bool SimplexEngine::LimitReached() const {
  return iterations_ >= options_.iteration_limit;
}

SolveStatus SimplexEngine::SolvePrimal() {
  const int total = n_ + m_;
  Refactor();
  ComputePrimal();
  std::vector<double> phase_cost(total, 0.0);
  std::vector<double> alpha(m_, 0.0);
  int phase = 0;
  int degenerate = 0;
  bool fresh = true;
  std::fill(devex_.begin(), devex_.end(), 1.0);

  while (true) {
    if (LimitReached()) return SolveStatus::kIterationLimit;
    if (factor_.num_updates() >= options_.refactor_interval) {
      Refactor();
      ComputePrimal();
      fresh = true;
    }
    const bool infeasible = PhaseOneCosts(phase_cost);
    const int new_phase = infeasible ? 1 : 2;
    if (new_phase != phase) {
      std::fill(devex_.begin(), devex_.end(), 1.0);
      phase = new_phase;
    }
    const std::vector<double>& cost = phase == 1 ? phase_cost : cost_;
    ComputeDuals(cost);

    int q = -1;
    double best = 0.0;
    for (int j = 0; j < total; ++j) {
      const std::int8_t st = status_[j];
      if (st == kBasic || lb_[j] == ub_[j]) continue;
      const double dj = d_[j];
      const bool eligible = (st == kAtLower && dj < -kDualTol) ||
                            (st == kAtUpper && dj > kDualTol) ||
                            (st == kZero && std::abs(dj) > kDualTol);
      if (!eligible) continue;
      if (bland_) {
        q = j;
        break;
      }
      const double score = dj * dj / devex_[j];
      if (score > best) {
        best = score;
        q = j;
      }
    }

    if (q < 0) {
      if (!fresh) {
        Refactor();
        ComputePrimal();
        fresh = true;
        continue;
      }
      if (perturbed_) {
        RemovePerturbation();
        ComputePrimal();
        continue;
      }
      return phase == 1 ? SolveStatus::kInfeasible : SolveStatus::kOptimal;
    }

    const int dir = d_[q] < 0.0 ? 1 : -1;
    Column(q, alpha);
    factor_.Ftran(alpha);

    // Harris two-pass ratio test with the phase-one bound rule.
    auto effective = [&](int j, double& lo, double& hi) {
      lo = lb_[j];
      hi = ub_[j];
      if (phase == 1) {
        if (x_[j] < lb_[j] - kPrimalTol) {
          lo = -kInfinity;
        } else if (x_[j] > ub_[j] + kPrimalTol) {
          hi = kInfinity;
        }
      }
    };
    const double range = ub_[q] - lb_[q];
    double theta_max = range;
    for (int k = 0; k < m_; ++k) {
      const double a = alpha[k];
      if (std::abs(a) < kPivotTol) continue;
      const int j = head_[k];
      const double delta = -dir * a;
      double lo, hi;
      effective(j, lo, hi);
      if (delta > 0 && hi < kInfinity) {
        theta_max = std::min(theta_max, (hi + kPrimalTol - x_[j]) / delta);
      } else if (delta < 0 && lo > -kInfinity) {
        theta_max = std::min(theta_max, (lo - kPrimalTol - x_[j]) / delta);
      }
    }
    int r = -1;
    double theta = 0.0;
    double leave_bound = 0.0;
    if (theta_max < kInfinity) {
      double best_pivot = 0.0;
      double best_ratio = kInfinity;
      for (int k = 0; k < m_; ++k) {
        const double a = alpha[k];
        if (std::abs(a) < kPivotTol) continue;
        const int j = head_[k];
        const double delta = -dir * a;
        double lo, hi;
        effective(j, lo, hi);
        double bound;
        if (delta > 0 && hi < kInfinity) {
          bound = hi;
        } else if (delta < 0 && lo > -kInfinity) {
          bound = lo;
        } else {
          continue;
        }
        const double ratio = std::max(0.0, (bound - x_[j]) / delta);
        if (ratio > theta_max) continue;
        bool take;
        if (bland_) {
          take = r < 0 || ratio < best_ratio ||
                 (ratio == best_ratio && j < head_[r]);
        } else {
          take = std::abs(a) > best_pivot;
        }
        if (take) {
          r = k;
          best_pivot = std::abs(a);
          best_ratio = ratio;
          theta = ratio;
          leave_bound = bound;
        }
      }
    }
    bool flip = range < kInfinity && (r < 0 || range <= theta);
    if (r < 0 && !flip) {
      if (phase == 2) return SolveStatus::kUnbounded;
      // Nothing blocks: step to the last point where an infeasible basic
      // variable becomes feasible.
      double far = -1.0;
      for (int k = 0; k < m_; ++k) {
        const double a = alpha[k];
        if (std::abs(a) < kPivotTol) continue;
        const int j = head_[k];
        const double delta = -dir * a;
        double t = -1.0, bound = 0.0;
        if (x_[j] < lb_[j] - kPrimalTol && delta > 0) {
          t = (lb_[j] - x_[j]) / delta;
          bound = lb_[j];
        } else if (x_[j] > ub_[j] + kPrimalTol && delta < 0) {
          t = (ub_[j] - x_[j]) / delta;
          bound = ub_[j];
        }
        if (t > far) {
          far = t;
          r = k;
          theta = t;
          leave_bound = bound;
        }
      }
      if (r < 0) {
        if (fresh) return SolveStatus::kInfeasible;
        Refactor();
        ComputePrimal();
        fresh = true;
        continue;
      }
    }
    if (flip) theta = range;

    ++iterations_;
    fresh = false;
    if (options_.log_interval > 0 && iterations_ % options_.log_interval == 0) {
      double obj = 0.0;
      for (int j = 0; j < n_; ++j) obj += cost_[j] * x_[j];
      std::fprintf(stderr, "primal iter %lld phase %d obj %.10g\n",
                   static_cast<long long>(iterations_), phase,
                   maximize_ ? -obj : obj);
    }

    const double step = dir * theta;
    if (step != 0.0) {
      x_[q] += step;
      for (int k = 0; k < m_; ++k) {
        if (alpha[k] != 0.0) x_[head_[k]] -= step * alpha[k];
      }
    }
    if (flip) {
      status_[q] = dir > 0 ? kAtUpper : kAtLower;
      x_[q] = NonbasicValue(q);
      degenerate = 0;
      continue;
    }

    if (theta < 1e-12) {
      ++degenerate;
    } else {
      degenerate = 0;
      bland_ = false;
    }
    if (degenerate > kDegenerateTrigger && !perturbed_ &&
        perturb_rounds_ < kMaxPerturbRounds) {
      Perturb();
      degenerate = 0;
    } else if (degenerate > std::max(1000, m_)) {
      bland_ = true;
    }

    const int leaving = head_[r];
    const double alpha_r = alpha[r];
    if (!bland_) {
      ComputePivotRow(r);
      const double wq = devex_[q];
      for (int j : row_alpha_nz_) {
        if (status_[j] == kBasic || j == q) continue;
        const double ratio = row_alpha_[j] / alpha_r;
        devex_[j] = std::max(devex_[j], ratio * ratio * wq);
      }
      devex_[leaving] = std::max(wq / (alpha_r * alpha_r), 1.0);
    }
    Pivot(q, r, alpha);
    x_[leaving] = leave_bound;
    if (leave_bound == lb_[leaving]) {
      status_[leaving] = kAtLower;
    } else {
      status_[leaving] = kAtUpper;
    }
  }
}

SolveStatus SimplexEngine::SolveDual() {
  const int total = n_ + m_;
  if (perturbed_) RemovePerturbation();
  Refactor();
  ComputeDuals(cost_);
  // Boxed variables can be moved to the bound matching their reduced cost;
  // anything else that is dual infeasible needs the primal method.
  for (int j = 0; j < total; ++j) {
    const std::int8_t st = status_[j];
    if (st == kBasic || lb_[j] == ub_[j]) continue;
    const double dj = d_[j];
    if (st == kAtLower && dj < -kDualTol) {
      if (ub_[j] == kInfinity) return SolvePrimal();
      status_[j] = kAtUpper;
    } else if (st == kAtUpper && dj > kDualTol) {
      if (lb_[j] == -kInfinity) return SolvePrimal();
      status_[j] = kAtLower;
    } else if (st == kZero && std::abs(dj) > kDualTol) {
      return SolvePrimal();
    }
    x_[j] = NonbasicValue(j);
  }
  ComputePrimal();
  std::vector<double> alpha(m_, 0.0);
  bool fresh = true;

  while (true) {
    if (LimitReached()) return SolveStatus::kIterationLimit;
    if (factor_.num_updates() >= options_.refactor_interval) {
      Refactor();
      ComputePrimal();
      fresh = true;
    }
    ComputeDuals(cost_);

    int r = -1;
    double worst = kPrimalTol;
    for (int k = 0; k < m_; ++k) {
      const int j = head_[k];
      const double infeas = std::max(lb_[j] - x_[j], x_[j] - ub_[j]);
      if (infeas > worst) {
        worst = infeas;
        r = k;
      }
    }
    if (r < 0) {
      if (!fresh) {
        Refactor();
        ComputePrimal();
        fresh = true;
        continue;
      }
      // Verify dual feasibility; drift is repaired by the primal method.
      for (int j = 0; j < total; ++j) {
        const std::int8_t st = status_[j];
        if (st == kBasic || lb_[j] == ub_[j]) continue;
        if ((st == kAtLower && d_[j] < -kDualTol) ||
            (st == kAtUpper && d_[j] > kDualTol) ||
            (st == kZero && std::abs(d_[j]) > kDualTol)) {
          return SolvePrimal();
        }
      }
      return SolveStatus::kOptimal;
    }

    const int leaving = head_[r];
    const bool to_lower = x_[leaving] < lb_[leaving];
    const double bound = to_lower ? lb_[leaving] : ub_[leaving];
    const double s = to_lower ? -1.0 : 1.0;
    ComputePivotRow(r);

    double t_max = kInfinity;
    for (int j : row_alpha_nz_) {
      const std::int8_t st = status_[j];
      if (st == kBasic || lb_[j] == ub_[j]) continue;
      const double a = s * row_alpha_[j];
      if (std::abs(a) < kPivotTol) continue;
      if (a > 0 && (st == kAtLower || st == kZero)) {
        t_max = std::min(t_max, (d_[j] + kDualTol) / a);
      } else if (a < 0 && (st == kAtUpper || st == kZero)) {
        t_max = std::min(t_max, (d_[j] - kDualTol) / a);
      }
    }
    int q = -1;
    double best_pivot = 0.0;
    for (int j : row_alpha_nz_) {
      const std::int8_t st = status_[j];
      if (st == kBasic || lb_[j] == ub_[j]) continue;
      const double a = s * row_alpha_[j];
      if (std::abs(a) < kPivotTol) continue;
      const bool blocks = (a > 0 && (st == kAtLower || st == kZero)) ||
                          (a < 0 && (st == kAtUpper || st == kZero));
      if (!blocks) continue;
      const double ratio = std::max(0.0, d_[j] / a);
      if (ratio > t_max) continue;
      if (std::abs(a) > best_pivot ||
          (std::abs(a) == best_pivot && q >= 0 && j < q)) {
        best_pivot = std::abs(a);
        q = j;
      }
    }
    if (q < 0) {
      if (fresh) return SolveStatus::kInfeasible;
      Refactor();
      ComputePrimal();
      fresh = true;
      continue;
    }

    Column(q, alpha);
    factor_.Ftran(alpha);
    if (std::abs(alpha[r]) < kPivotTol) {
      if (fresh) return SolvePrimal();
      Refactor();
      ComputePrimal();
      fresh = true;
      continue;
    }
    ++iterations_;
    fresh = false;
    if (options_.log_interval > 0 && iterations_ % options_.log_interval == 0) {
      std::fprintf(stderr, "dual iter %lld infeasibility %.3g\n",
                   static_cast<long long>(iterations_), worst);
    }
    const double delta = (x_[leaving] - bound) / alpha[r];
    x_[q] += delta;
    for (int k = 0; k < m_; ++k) {
      if (alpha[k] != 0.0) x_[head_[k]] -= delta * alpha[k];
    }
    Pivot(q, r, alpha);
    x_[leaving] = bound;
    status_[leaving] = to_lower ? kAtLower : kAtUpper;
  }
}

Solution SimplexEngine::Extract(SolveStatus status) const {
  Solution sol;
  sol.status = status;
  sol.iterations = iterations_;
  sol.primal.assign(x_.begin(), x_.begin() + n_);
  if (status != SolveStatus::kOptimal) return sol;
  sol.objective = model_.ObjectiveValue(sol.primal);
  std::vector<double> y(m_);
  for (int k = 0; k < m_; ++k) y[k] = cost_[head_[k]];
  factor_.Btran(y);
  const double sign = maximize_ ? -1.0 : 1.0;
  sol.duals.resize(m_);
  for (int i = 0; i < m_; ++i) sol.duals[i] = sign * y[i];
  sol.reduced_costs.resize(n_);
  for (int j = 0; j < n_; ++j) {
    double s = cost_[j];
    for (int t = col_start_[j]; t < col_start_[j + 1]; ++t) {
      s -= col_val_[t] * y[col_row_[t]];
    }
    sol.reduced_costs[j] = status_[j] == kBasic ? 0.0 : sign * s;
  }
  return sol;
}

}  // namespace teamsolve::internal
