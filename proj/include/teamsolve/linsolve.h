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

#ifndef TEAMSOLVE_LINSOLVE_H_
#define TEAMSOLVE_LINSOLVE_H_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "teamsolve/common.h"

namespace teamsolve {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Sense { kMaximize, kMinimize };
enum class Relation { kLessEqual, kEqual, kGreaterEqual };
enum class VarType { kContinuous, kBinary };

struct Term {
  int var;
  double coef;
};

class Model {
 public:
  int AddVariable(double lower, double upper, double objective = 0.0,
                  VarType type = VarType::kContinuous, std::string name = "");
  int AddConstraint(std::vector<Term> terms, Relation relation, double rhs,
                    std::string name = "");

  void set_sense(Sense sense) { sense_ = sense; }
  void set_objective(int var, double coef) { obj_[var] = coef; }
  void set_objective_offset(double offset) { offset_ = offset; }
  void set_bounds(int var, double lower, double upper);

  Sense sense() const { return sense_; }
  int num_vars() const { return static_cast<int>(lower_.size()); }
  int num_constraints() const { return static_cast<int>(rhs_.size()); }
  int num_binaries() const;
  bool has_binaries() const { return num_binaries() > 0; }

  double lower(int var) const { return lower_[var]; }
  double upper(int var) const { return upper_[var]; }
  double objective(int var) const { return obj_[var]; }
  double objective_offset() const { return offset_; }
  VarType type(int var) const { return type_[var]; }
  const std::string& var_name(int var) const { return var_names_[var]; }

  // Constraint rows in CSR form.
  int row_begin(int row) const { return row_start_[row]; }
  int row_end(int row) const { return row_start_[row + 1]; }
  const std::vector<Term>& terms() const { return terms_; }
  Relation relation(int row) const { return rel_[row]; }
  double rhs(int row) const { return rhs_[row]; }
  const std::string& constraint_name(int row) const { return row_names_[row]; }

  // Throws kInvalidArgument on dangling variables, crossed bounds, binaries
  // outside [0, 1], or non-finite coefficients.
  void Validate() const;

  double ObjectiveValue(const std::vector<double>& x) const;
  double RowActivity(int row, const std::vector<double>& x) const;
  // Largest bound or row violation.
  double MaxViolation(const std::vector<double>& x) const;
  // Largest distance of a binary from {0, 1}.
  double MaxIntegralityViolation(const std::vector<double>& x) const;

 private:
  Sense sense_ = Sense::kMaximize;
  double offset_ = 0.0;
  std::vector<double> lower_, upper_, obj_;
  std::vector<VarType> type_;
  std::vector<std::string> var_names_;
  std::vector<int> row_start_ = {0};
  std::vector<Term> terms_;
  std::vector<Relation> rel_;
  std::vector<double> rhs_;
  std::vector<std::string> row_names_;
};

// Human-readable dump in LP text format.
void WriteLp(const Model& model, std::ostream& out);

enum class SolveStatus {
  kOptimal,
  kInfeasible,
  kUnbounded,
  kIterationLimit,
  kNodeLimit,
};

const char* SolveStatusName(SolveStatus status);

// Status of every variable followed by every constraint's logical.
struct Basis {
  std::vector<std::int8_t> status;
  bool empty() const { return status.empty(); }
};

struct Solution {
  SolveStatus status = SolveStatus::kInfeasible;
  double objective = 0.0;
  std::vector<double> primal;
  // Rate of change of the optimal objective per unit increase of each
  // constraint's right-hand side: for a maximization with <= rows these are
  // nonnegative. Defined for LP solves.
  std::vector<double> duals;
  // Same convention for the variable bounds.
  std::vector<double> reduced_costs;
  std::int64_t iterations = 0;
  std::int64_t nodes = 0;

  bool optimal() const { return status == SolveStatus::kOptimal; }
};

// Lagrangian dual bound implied by the returned multipliers; equals the
// primal objective for an optimal LP. Infinite if a multiplier pushes
// against an infinite bound beyond tolerance.
double DualObjective(const Model& model, const Solution& solution);

struct PoolEntry {
  double objective = 0.0;
  std::vector<double> primal;
};

// Integer-feasible points found during branch and bound, best first.
class SolutionPool {
 public:
  // Rounds binaries and drops exact duplicates; returns false if dropped.
  bool Add(const Model& model, std::vector<double> primal);
  const std::vector<PoolEntry>& entries() const { return entries_; }
  int size() const { return static_cast<int>(entries_.size()); }
  bool empty() const { return entries_.empty(); }

 private:
  std::vector<PoolEntry> entries_;
};

struct MipResult {
  Solution solution;
  SolutionPool pool;
};

struct SolverOptions {
  std::int64_t iteration_limit = 10'000'000;
  std::int64_t node_limit = 1'000'000;
  // Refactor the basis after this many updates.
  int refactor_interval = 100;
  // Branch and bound prunes nodes whose bound does not beat the incumbent
  // by more than abs_gap + rel_gap * |incumbent|.
  double mip_abs_gap = 1e-9;
  double mip_rel_gap = 1e-9;
  // Prints progress to stderr every so many iterations or nodes; 0 is quiet.
  int log_interval = 0;
  // Optional primal heuristic for branch and bound, run at the root and every
  // `heuristic_frequency` nodes with the node's LP solution. `solve`
  // re-optimizes the LP with binaries fixed to the given values (indexed like
  // the model's variables; NaN leaves a binary free within its root bounds).
  // Every solution it returns whose binaries are integral is offered as an
  // incumbent.
  using HeuristicSolve =
      std::function<Solution(const std::vector<double>& fixes)>;
  std::function<void(const std::vector<double>& primal,
                     const HeuristicSolve& solve)>
      heuristic;
  int heuristic_frequency = 10;
  // Optional branching order indexed like the model's variables: among
  // fractional binaries the lowest priority is branched on first, ties going
  // to the most fractional one. Empty means most fractional overall.
  std::vector<int> branch_priority;
};

class Backend {
 public:
  virtual ~Backend() = default;
  virtual std::string name() const = 0;
  // Binary variables are treated as continuous in [0, 1]. A warm-start basis
  // from an earlier solve of a model with the same shape may be supplied.
  virtual Solution SolveLp(const Model& model, const SolverOptions& options,
                           const Basis* warm_start = nullptr,
                           Basis* final_basis = nullptr) = 0;
  virtual MipResult SolveMip(const Model& model,
                             const SolverOptions& options) = 0;
};

// "embedded" (sparse revised simplex) and "dense" (tableau reference) are
// always registered.
void RegisterBackend(const std::string& name,
                     std::function<std::unique_ptr<Backend>()> factory);
// Throws kBackendUnavailable for unknown names.
std::unique_ptr<Backend> MakeBackend(const std::string& name);
std::vector<std::string> BackendNames();

Solution SolveLp(const Model& model, const SolverOptions& options = {});
MipResult SolveMip(const Model& model, const SolverOptions& options = {});

}  // namespace teamsolve

#endif  // TEAMSOLVE_LINSOLVE_H_
