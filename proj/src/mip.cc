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

#include "mip.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <map>
#include <memory>
#include <queue>

namespace teamsolve::internal {
namespace {

constexpr double kPlungeTol = 1e-9;
constexpr std::size_t kMaxTried = 64;

struct OpenNode {
  double bound;
  std::int64_t id;
  std::vector<std::pair<int, std::int8_t>> fixes;
  std::shared_ptr<const Basis> basis;
};

struct WorseNode {
  bool operator()(const std::shared_ptr<OpenNode>& a,
                  const std::shared_ptr<OpenNode>& b) const {
    if (a->bound != b->bound) return a->bound < b->bound;
    return a->id > b->id;
  }
};

}  // namespace

MipResult BranchAndBound(const Model& model, NodeLp& lp,
                         const SolverOptions& options) {
  if (!options.branch_priority.empty() &&
      static_cast<int>(options.branch_priority.size()) != model.num_vars()) {
    throw Error(ErrorCode::kInvalidArgument,
                "branch priorities must cover every variable");
  }
  const bool maximize = model.sense() == Sense::kMaximize;
  auto score = [&](double obj) { return maximize ? obj : -obj; };
  std::vector<int> binaries;
  std::vector<double> root_lb(model.num_vars()), root_ub(model.num_vars());
  for (int j = 0; j < model.num_vars(); ++j) {
    root_lb[j] = model.lower(j);
    root_ub[j] = model.upper(j);
    if (model.type(j) == VarType::kBinary) {
      binaries.push_back(j);
      root_lb[j] = std::max(root_lb[j], 0.0);
      root_ub[j] = std::min(root_ub[j], 1.0);
    }
  }

  MipResult result;
  Solution& best = result.solution;
  best.status = SolveStatus::kInfeasible;
  double incumbent = -kInfinity;
  bool have_incumbent = false;
  auto cutoff = [&]() {
    return incumbent + options.mip_abs_gap +
           options.mip_rel_gap * std::abs(incumbent);
  };

  std::priority_queue<std::shared_ptr<OpenNode>,
                      std::vector<std::shared_ptr<OpenNode>>, WorseNode>
      open;
  std::int64_t next_id = 0;
  open.push(std::make_shared<OpenNode>(OpenNode{kInfinity, next_id++, {}, {}}));
  std::int64_t nodes = 0, iterations = 0;
  bool complete = true;
  std::vector<double> lb, ub;

  std::shared_ptr<OpenNode> plunge;
  std::map<std::vector<std::int8_t>, Solution> tried;
  while (plunge || !open.empty()) {
    std::shared_ptr<OpenNode> node;
    if (plunge) {
      node = std::move(plunge);
      if (have_incumbent && node->bound <= cutoff()) continue;
    } else {
      node = open.top();
      open.pop();
      if (have_incumbent && node->bound <= cutoff()) break;
    }
    if (nodes >= options.node_limit) {
      best.status = SolveStatus::kNodeLimit;
      complete = false;
      break;
    }
    ++nodes;
    lb = root_lb;
    ub = root_ub;
    for (auto [var, value] : node->fixes) lb[var] = ub[var] = value;
    auto basis = std::make_shared<Basis>();
    Solution s = lp.Solve(lb, ub, node->basis.get(), basis.get());
    iterations += s.iterations;
    if (options.log_interval > 0 && nodes % options.log_interval == 0) {
      std::fprintf(stderr, "node %lld open %zu incumbent %.10g bound %.10g\n",
                   static_cast<long long>(nodes), open.size(),
                   maximize ? incumbent : -incumbent,
                   maximize ? node->bound : -node->bound);
    }
    if (s.status == SolveStatus::kInfeasible) continue;
    if (s.status == SolveStatus::kUnbounded) {
      if (node->fixes.empty()) {
        best.status = SolveStatus::kUnbounded;
        complete = false;
        break;
      }
      continue;
    }
    if (s.status != SolveStatus::kOptimal) {
      best.status = SolveStatus::kIterationLimit;
      complete = false;
      break;
    }
    const double sc = score(s.objective);
    int branch = -1;
    double most = kIntegralityTol;
    int priority = std::numeric_limits<int>::max();
    const bool prioritized = !options.branch_priority.empty();
    for (int j : binaries) {
      const double v = s.primal[j];
      const double frac = std::min(v - std::floor(v), std::ceil(v) - v);
      if (frac <= kIntegralityTol) continue;
      const int pj = prioritized ? options.branch_priority[j] : 0;
      if (pj < priority || (pj == priority && frac > most)) {
        priority = pj;
        most = frac;
        branch = j;
      }
    }
    if (branch < 0) {
      result.pool.Add(model, s.primal);
      if (!have_incumbent || sc > incumbent) {
        have_incumbent = true;
        incumbent = sc;
        best.primal = s.primal;
        for (int j : binaries) best.primal[j] = std::round(best.primal[j]);
        best.objective = model.ObjectiveValue(best.primal);
      }
      continue;
    }
    if (options.heuristic &&
        (nodes == 1 ||
         nodes % std::max(1, options.heuristic_frequency) == 0)) {
      options.heuristic(s.primal, [&](const std::vector<double>& fixes) {
        std::vector<std::int8_t> key;
        key.reserve(binaries.size());
        for (int j : binaries) {
          key.push_back(std::isnan(fixes[j])
                            ? std::int8_t{-1}
                            : static_cast<std::int8_t>(std::round(fixes[j])));
        }
        auto hit = tried.find(key);
        if (hit != tried.end()) return hit->second;
        std::vector<double> hlb = root_lb, hub = root_ub;
        for (int j : binaries) {
          if (!std::isnan(fixes[j])) hlb[j] = hub[j] = std::round(fixes[j]);
        }
        Solution h = lp.Solve(hlb, hub, basis.get(), nullptr);
        iterations += h.iterations;
        if (h.optimal() && model.MaxIntegralityViolation(h.primal) <=
                               kIntegralityTol) {
          for (int j : binaries) h.primal[j] = std::round(h.primal[j]);
          result.pool.Add(model, h.primal);
          const double hs = score(h.objective);
          if (!have_incumbent || hs > incumbent) {
            have_incumbent = true;
            incumbent = hs;
            best.primal = h.primal;
            best.objective = model.ObjectiveValue(best.primal);
          }
        }
        if (tried.size() >= kMaxTried) tried.clear();
        tried.emplace(std::move(key), h);
        return h;
      });
    }
    if (have_incumbent && sc <= cutoff()) continue;
    const double v = s.primal[branch];
    const std::int8_t first = v >= 0.5 ? 1 : 0;
    // Dive into the rounded child until an incumbent exists, and afterwards
    // while this node is still among the best open ones.
    const bool dive =
        !have_incumbent || open.empty() ||
        sc >= open.top()->bound - kPlungeTol * (1.0 + std::abs(sc));
    for (std::int8_t value : {first, static_cast<std::int8_t>(1 - first)}) {
      auto child = std::make_shared<OpenNode>();
      child->bound = sc;
      child->id = next_id++;
      child->fixes = node->fixes;
      child->fixes.emplace_back(branch, value);
      child->basis = basis;
      if (dive && value == first) {
        plunge = std::move(child);
      } else {
        open.push(std::move(child));
      }
    }
  }
  if (complete) {
    best.status =
        have_incumbent ? SolveStatus::kOptimal : SolveStatus::kInfeasible;
  }
  best.nodes = nodes;
  best.iterations = iterations;
  return result;
}

Solution DenseSolveLp(const Model& model, const SolverOptions& options) {
  const int n = model.num_vars();
  const int m0 = model.num_constraints();
  // x_j = offset_j + sign_j * z_a (- z_b for free variables).
  std::vector<double> offset(n, 0.0), sign(n, 1.0);
  std::vector<int> za(n, -1), zb(n, -1);
  std::vector<std::pair<int, double>> box;  // (z, width)
  int nz = 0;
  for (int j = 0; j < n; ++j) {
    double l = model.lower(j), u = model.upper(j);
    if (model.type(j) == VarType::kBinary) {
      l = std::max(l, 0.0);
      u = std::min(u, 1.0);
    }
    if (l > -kInfinity) {
      offset[j] = l;
      za[j] = nz++;
      if (u < kInfinity) box.emplace_back(za[j], u - l);
    } else if (u < kInfinity) {
      offset[j] = u;
      sign[j] = -1.0;
      za[j] = nz++;
    } else {
      za[j] = nz++;
      zb[j] = nz++;
    }
  }
  const int m = m0 + static_cast<int>(box.size());
  int num_slack = static_cast<int>(box.size());
  for (int i = 0; i < m0; ++i) {
    if (model.relation(i) != Relation::kEqual) ++num_slack;
  }
  const int cols = nz + num_slack + m + 1;
  if (static_cast<double>(m) * cols > 4e7) {
    throw Error(ErrorCode::kProblemTooLarge,
                "dense backend limited to small models");
  }
  const int art0 = nz + num_slack;
  const int rhs_col = cols - 1;
  std::vector<double> t(static_cast<std::size_t>(m) * cols, 0.0);
  auto at = [&](int i, int c) -> double& {
    return t[static_cast<std::size_t>(i) * cols + c];
  };
  std::vector<double> row_sign(m, 1.0);
  int slack = nz;
  for (int i = 0; i < m0; ++i) {
    double b = model.rhs(i);
    for (int k = model.row_begin(i); k < model.row_end(i); ++k) {
      const Term& term = model.terms()[k];
      b -= term.coef * offset[term.var];
      at(i, za[term.var]) += term.coef * sign[term.var];
      if (zb[term.var] >= 0) at(i, zb[term.var]) -= term.coef;
    }
    if (model.relation(i) == Relation::kLessEqual) at(i, slack++) = 1.0;
    if (model.relation(i) == Relation::kGreaterEqual) at(i, slack++) = -1.0;
    at(i, rhs_col) = b;
  }
  for (std::size_t k = 0; k < box.size(); ++k) {
    const int i = m0 + static_cast<int>(k);
    at(i, box[k].first) = 1.0;
    at(i, slack++) = 1.0;
    at(i, rhs_col) = box[k].second;
  }
  for (int i = 0; i < m; ++i) {
    if (at(i, rhs_col) < 0) {
      row_sign[i] = -1.0;
      for (int c = 0; c < art0; ++c) at(i, c) = -at(i, c);
      at(i, rhs_col) = -at(i, rhs_col);
    }
    at(i, art0 + i) = 1.0;
  }
  std::vector<int> basic(m);
  for (int i = 0; i < m; ++i) basic[i] = art0 + i;

  const bool maximize = model.sense() == Sense::kMaximize;
  std::vector<double> cost2(cols, 0.0);
  for (int j = 0; j < n; ++j) {
    const double c = maximize ? -model.objective(j) : model.objective(j);
    cost2[za[j]] += c * sign[j];
    if (zb[j] >= 0) cost2[zb[j]] -= c;
  }
  std::vector<double> cost1(cols, 0.0);
  for (int i = 0; i < m; ++i) cost1[art0 + i] = 1.0;

  std::int64_t iterations = 0;
  auto pivot = [&](int r, int c) {
    const double p = at(r, c);
    for (int k = 0; k < cols; ++k) at(r, k) /= p;
    for (int i = 0; i < m; ++i) {
      if (i == r) continue;
      const double f = at(i, c);
      if (f == 0.0) continue;
      for (int k = 0; k < cols; ++k) at(i, k) -= f * at(r, k);
    }
    basic[r] = c;
    ++iterations;
  };
  // Bland's rule; returns 0 optimal, 1 unbounded, 2 limit.
  auto run = [&](const std::vector<double>& cost, int allowed) {
    while (true) {
      if (iterations >= options.iteration_limit) return 2;
      int enter = -1;
      for (int c = 0; c < allowed; ++c) {
        double d = cost[c];
        for (int i = 0; i < m; ++i) d -= cost[basic[i]] * at(i, c);
        if (d < -1e-11) {
          enter = c;
          break;
        }
      }
      if (enter < 0) return 0;
      int leave = -1;
      double best = kInfinity;
      for (int i = 0; i < m; ++i) {
        const double a = at(i, enter);
        if (a <= 1e-11) continue;
        const double ratio = at(i, rhs_col) / a;
        if (leave < 0 || ratio < best - 1e-13 ||
            (std::abs(ratio - best) <= 1e-13 && basic[i] < basic[leave])) {
          best = ratio;
          leave = i;
        }
      }
      if (leave < 0) return 1;
      pivot(leave, enter);
    }
  };

  Solution sol;
  int rc = run(cost1, art0);
  if (rc == 2) {
    sol.status = SolveStatus::kIterationLimit;
    return sol;
  }
  double infeas = 0.0;
  for (int i = 0; i < m; ++i) {
    if (basic[i] >= art0) infeas += at(i, rhs_col);
  }
  if (infeas > 1e-9) {
    sol.status = SolveStatus::kInfeasible;
    sol.iterations = iterations;
    return sol;
  }
  for (int i = 0; i < m; ++i) {
    if (basic[i] < art0) continue;
    for (int c = 0; c < art0; ++c) {
      if (std::abs(at(i, c)) > 1e-9) {
        pivot(i, c);
        break;
      }
    }
  }
  rc = run(cost2, art0);
  sol.iterations = iterations;
  if (rc == 1) {
    sol.status = SolveStatus::kUnbounded;
    return sol;
  }
  if (rc == 2) {
    sol.status = SolveStatus::kIterationLimit;
    return sol;
  }
  std::vector<double> z(nz, 0.0);
  for (int i = 0; i < m; ++i) {
    if (basic[i] < nz) z[basic[i]] = at(i, rhs_col);
  }
  sol.status = SolveStatus::kOptimal;
  sol.primal.resize(n);
  for (int j = 0; j < n; ++j) {
    sol.primal[j] = offset[j] + sign[j] * z[za[j]];
    if (zb[j] >= 0) sol.primal[j] -= z[zb[j]];
  }
  sol.objective = model.ObjectiveValue(sol.primal);
  // Row multipliers c_B B^{-1}, read from the artificial columns.
  const double out_sign = maximize ? -1.0 : 1.0;
  std::vector<double> y(m0, 0.0);
  for (int i = 0; i < m0; ++i) {
    double v = 0.0;
    for (int k = 0; k < m; ++k) v += cost2[basic[k]] * at(k, art0 + i);
    y[i] = v * row_sign[i];
  }
  sol.duals.resize(m0);
  for (int i = 0; i < m0; ++i) sol.duals[i] = out_sign * y[i];
  sol.reduced_costs.assign(n, 0.0);
  for (int j = 0; j < n; ++j) {
    sol.reduced_costs[j] = maximize ? -model.objective(j) : model.objective(j);
  }
  for (int i = 0; i < m0; ++i) {
    for (int k = model.row_begin(i); k < model.row_end(i); ++k) {
      const Term& term = model.terms()[k];
      sol.reduced_costs[term.var] -= term.coef * y[i];
    }
  }
  for (double& d : sol.reduced_costs) d *= out_sign;
  return sol;
}

}  // namespace teamsolve::internal
