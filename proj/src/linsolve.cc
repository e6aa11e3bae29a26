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

#include "teamsolve/linsolve.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <ostream>

#include "mip.h"
#include "simplex.h"

namespace teamsolve {

int Model::AddVariable(double lower, double upper, double objective,
                       VarType type, std::string name) {
  lower_.push_back(lower);
  upper_.push_back(upper);
  obj_.push_back(objective);
  type_.push_back(type);
  if (name.empty()) name = "x" + std::to_string(lower_.size() - 1);
  var_names_.push_back(std::move(name));
  return static_cast<int>(lower_.size()) - 1;
}

int Model::AddConstraint(std::vector<Term> terms, Relation relation,
                         double rhs, std::string name) {
  terms_.insert(terms_.end(), terms.begin(), terms.end());
  row_start_.push_back(static_cast<int>(terms_.size()));
  rel_.push_back(relation);
  rhs_.push_back(rhs);
  if (name.empty()) name = "c" + std::to_string(rhs_.size() - 1);
  row_names_.push_back(std::move(name));
  return static_cast<int>(rhs_.size()) - 1;
}

void Model::set_bounds(int var, double lower, double upper) {
  lower_[var] = lower;
  upper_[var] = upper;
}

int Model::num_binaries() const {
  return static_cast<int>(
      std::count(type_.begin(), type_.end(), VarType::kBinary));
}

void Model::Validate() const {
  for (int j = 0; j < num_vars(); ++j) {
    if (std::isnan(lower_[j]) || std::isnan(upper_[j]) ||
        lower_[j] > upper_[j] || lower_[j] == kInfinity ||
        upper_[j] == -kInfinity) {
      throw Error(ErrorCode::kInvalidArgument,
                  "variable " + var_names_[j] + " has invalid bounds");
    }
    if (!std::isfinite(obj_[j])) {
      throw Error(ErrorCode::kInvalidArgument,
                  "variable " + var_names_[j] + " has a non-finite cost");
    }
    if (type_[j] == VarType::kBinary && (lower_[j] < 0.0 || upper_[j] > 1.0)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "binary " + var_names_[j] + " has bounds outside [0, 1]");
    }
  }
  for (const Term& t : terms_) {
    if (t.var < 0 || t.var >= num_vars()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "constraint references unknown variable " +
                      std::to_string(t.var));
    }
    if (!std::isfinite(t.coef)) {
      throw Error(ErrorCode::kInvalidArgument, "non-finite coefficient");
    }
  }
  for (double b : rhs_) {
    if (!std::isfinite(b)) {
      throw Error(ErrorCode::kInvalidArgument, "non-finite right-hand side");
    }
  }
}

double Model::ObjectiveValue(const std::vector<double>& x) const {
  double v = offset_;
  for (int j = 0; j < num_vars(); ++j) v += obj_[j] * x[j];
  return v;
}

double Model::RowActivity(int row, const std::vector<double>& x) const {
  double s = 0.0;
  for (int k = row_start_[row]; k < row_start_[row + 1]; ++k) {
    s += terms_[k].coef * x[terms_[k].var];
  }
  return s;
}

double Model::MaxViolation(const std::vector<double>& x) const {
  double worst = 0.0;
  for (int j = 0; j < num_vars(); ++j) {
    worst = std::max({worst, lower_[j] - x[j], x[j] - upper_[j]});
  }
  for (int i = 0; i < num_constraints(); ++i) {
    const double a = RowActivity(i, x);
    switch (rel_[i]) {
      case Relation::kLessEqual:
        worst = std::max(worst, a - rhs_[i]);
        break;
      case Relation::kEqual:
        worst = std::max(worst, std::abs(a - rhs_[i]));
        break;
      case Relation::kGreaterEqual:
        worst = std::max(worst, rhs_[i] - a);
        break;
    }
  }
  return worst;
}

double Model::MaxIntegralityViolation(const std::vector<double>& x) const {
  double worst = 0.0;
  for (int j = 0; j < num_vars(); ++j) {
    if (type_[j] != VarType::kBinary) continue;
    worst = std::max(worst, std::abs(x[j] - std::round(x[j])));
  }
  return worst;
}

namespace {

void WriteNumber(std::ostream& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out << buf;
}

void WriteTerms(std::ostream& out, const Model& model,
                const std::vector<Term>& terms) {
  if (terms.empty()) {
    out << " 0 " << model.var_name(0);
    return;
  }
  for (const Term& t : terms) {
    out << (t.coef < 0 ? " - " : " + ");
    WriteNumber(out, std::abs(t.coef));
    out << ' ' << model.var_name(t.var);
  }
}

}  // namespace

void WriteLp(const Model& model, std::ostream& out) {
  out << (model.sense() == Sense::kMaximize ? "Maximize\n" : "Minimize\n");
  std::vector<Term> obj;
  for (int j = 0; j < model.num_vars(); ++j) {
    if (model.objective(j) != 0.0) obj.push_back({j, model.objective(j)});
  }
  out << " obj:";
  WriteTerms(out, model, obj);
  out << "\nSubject To\n";
  for (int i = 0; i < model.num_constraints(); ++i) {
    std::vector<Term> row(model.terms().begin() + model.row_begin(i),
                          model.terms().begin() + model.row_end(i));
    out << ' ' << model.constraint_name(i) << ':';
    WriteTerms(out, model, row);
    switch (model.relation(i)) {
      case Relation::kLessEqual:
        out << " <= ";
        break;
      case Relation::kEqual:
        out << " = ";
        break;
      case Relation::kGreaterEqual:
        out << " >= ";
        break;
    }
    WriteNumber(out, model.rhs(i));
    out << '\n';
  }
  out << "Bounds\n";
  for (int j = 0; j < model.num_vars(); ++j) {
    const double l = model.lower(j), u = model.upper(j);
    out << ' ';
    if (l == -kInfinity && u == kInfinity) {
      out << model.var_name(j) << " free\n";
      continue;
    }
    if (l == -kInfinity) {
      out << "-inf";
    } else {
      WriteNumber(out, l);
    }
    out << " <= " << model.var_name(j) << " <= ";
    if (u == kInfinity) {
      out << "+inf";
    } else {
      WriteNumber(out, u);
    }
    out << '\n';
  }
  if (model.has_binaries()) {
    out << "Binaries\n";
    for (int j = 0; j < model.num_vars(); ++j) {
      if (model.type(j) == VarType::kBinary) out << ' ' << model.var_name(j) << '\n';
    }
  }
  out << "End\n";
}

const char* SolveStatusName(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
      return "Optimal";
    case SolveStatus::kInfeasible:
      return "Infeasible";
    case SolveStatus::kUnbounded:
      return "Unbounded";
    case SolveStatus::kIterationLimit:
      return "IterationLimit";
    case SolveStatus::kNodeLimit:
      return "NodeLimit";
  }
  return "Unknown";
}

double DualObjective(const Model& model, const Solution& solution) {
  // Work in minimization form, where multipliers of lower bounds are
  // nonnegative and those of upper bounds nonpositive.
  const double sign = model.sense() == Sense::kMaximize ? -1.0 : 1.0;
  constexpr double kTiny = 1e-9;
  double total = 0.0;
  auto add = [&](double mult, double lo, double hi) {
    if (mult > 0) {
      if (lo == -kInfinity) return mult > kTiny ? -kInfinity : 0.0;
      return mult * lo;
    }
    if (mult < 0) {
      if (hi == kInfinity) return mult < -kTiny ? -kInfinity : 0.0;
      return mult * hi;
    }
    return 0.0;
  };
  for (int i = 0; i < model.num_constraints(); ++i) {
    double lo = -kInfinity, hi = kInfinity;
    if (model.relation(i) != Relation::kLessEqual) lo = model.rhs(i);
    if (model.relation(i) != Relation::kGreaterEqual) hi = model.rhs(i);
    total += add(sign * solution.duals[i], lo, hi);
  }
  for (int j = 0; j < model.num_vars(); ++j) {
    double lo = model.lower(j), hi = model.upper(j);
    if (model.type(j) == VarType::kBinary) {
      lo = std::max(lo, 0.0);
      hi = std::min(hi, 1.0);
    }
    total += add(sign * solution.reduced_costs[j], lo, hi);
  }
  return sign * total + model.objective_offset();
}

bool SolutionPool::Add(const Model& model, std::vector<double> primal) {
  for (int j = 0; j < model.num_vars(); ++j) {
    if (model.type(j) == VarType::kBinary) primal[j] = std::round(primal[j]);
  }
  if (model.MaxViolation(primal) > 1e-6) return false;
  for (const PoolEntry& e : entries_) {
    double diff = 0.0;
    for (std::size_t j = 0; j < primal.size(); ++j) {
      diff = std::max(diff, std::abs(primal[j] - e.primal[j]));
    }
    if (diff <= 1e-9) return false;
  }
  PoolEntry entry{model.ObjectiveValue(primal), std::move(primal)};
  const bool maximize = model.sense() == Sense::kMaximize;
  auto it = std::find_if(entries_.begin(), entries_.end(),
                         [&](const PoolEntry& e) {
                           return maximize ? e.objective < entry.objective
                                           : e.objective > entry.objective;
                         });
  entries_.insert(it, std::move(entry));
  return true;
}

namespace {

class EmbeddedNodeLp : public internal::NodeLp {
 public:
  EmbeddedNodeLp(const Model& model, const SolverOptions& options)
      : engine_(model, options) {}

  Solution Solve(const std::vector<double>& lower,
                 const std::vector<double>& upper, const Basis* warm_start,
                 Basis* final_basis) override {
    for (int j = 0; j < engine_.num_vars(); ++j) {
      if (engine_.lower(j) != lower[j] || engine_.upper(j) != upper[j]) {
        engine_.SetBounds(j, lower[j], upper[j]);
      }
    }
    const std::int64_t before = engine_.iterations();
    SolveStatus status;
    if (warm_start != nullptr && engine_.SetBasis(*warm_start)) {
      status = engine_.SolveDual();
    } else {
      status = engine_.SolvePrimal();
    }
    Solution sol = engine_.Extract(status);
    sol.iterations = engine_.iterations() - before;
    if (final_basis != nullptr) *final_basis = engine_.GetBasis();
    return sol;
  }

 private:
  internal::SimplexEngine engine_;
};

class EmbeddedBackend : public Backend {
 public:
  std::string name() const override { return "embedded"; }

  Solution SolveLp(const Model& model, const SolverOptions& options,
                   const Basis* warm_start, Basis* final_basis) override {
    model.Validate();
    internal::SimplexEngine engine(model, options);
    if (warm_start != nullptr) engine.SetBasis(*warm_start);
    const SolveStatus status = engine.SolvePrimal();
    if (final_basis != nullptr) *final_basis = engine.GetBasis();
    return engine.Extract(status);
  }

  MipResult SolveMip(const Model& model, const SolverOptions& options) override {
    model.Validate();
    EmbeddedNodeLp lp(model, options);
    return internal::BranchAndBound(model, lp, options);
  }
};

class DenseNodeLp : public internal::NodeLp {
 public:
  DenseNodeLp(const Model& model, const SolverOptions& options)
      : model_(model), options_(options) {}

  Solution Solve(const std::vector<double>& lower,
                 const std::vector<double>& upper, const Basis*,
                 Basis*) override {
    for (int j = 0; j < model_.num_vars(); ++j) {
      model_.set_bounds(j, lower[j], upper[j]);
    }
    return internal::DenseSolveLp(model_, options_);
  }

 private:
  Model model_;
  SolverOptions options_;
};

class DenseBackend : public Backend {
 public:
  std::string name() const override { return "dense"; }

  Solution SolveLp(const Model& model, const SolverOptions& options,
                   const Basis*, Basis*) override {
    model.Validate();
    return internal::DenseSolveLp(model, options);
  }

  MipResult SolveMip(const Model& model, const SolverOptions& options) override {
    model.Validate();
    DenseNodeLp lp(model, options);
    return internal::BranchAndBound(model, lp, options);
  }
};

struct Registry {
  std::mutex mu;
  std::map<std::string, std::function<std::unique_ptr<Backend>()>> factories;
};

Registry& GetRegistry() {
  static Registry* registry = [] {
    auto* r = new Registry;
    r->factories["embedded"] = [] { return std::make_unique<EmbeddedBackend>(); };
    r->factories["dense"] = [] { return std::make_unique<DenseBackend>(); };
    return r;
  }();
  return *registry;
}

}  // namespace

void RegisterBackend(const std::string& name,
                     std::function<std::unique_ptr<Backend>()> factory) {
  Registry& r = GetRegistry();
  std::lock_guard<std::mutex> lock(r.mu);
  r.factories[name] = std::move(factory);
}

std::unique_ptr<Backend> MakeBackend(const std::string& name) {
  Registry& r = GetRegistry();
  std::function<std::unique_ptr<Backend>()> factory;
  {
    std::lock_guard<std::mutex> lock(r.mu);
    auto it = r.factories.find(name);
    if (it == r.factories.end()) {
      throw Error(ErrorCode::kBackendUnavailable,
                  "no LP backend named '" + name + "' is registered");
    }
    factory = it->second;
  }
  return factory();
}

std::vector<std::string> BackendNames() {
  Registry& r = GetRegistry();
  std::lock_guard<std::mutex> lock(r.mu);
  std::vector<std::string> names;
  for (const auto& [name, factory] : r.factories) names.push_back(name);
  return names;
}

Solution SolveLp(const Model& model, const SolverOptions& options) {
  return MakeBackend("embedded")->SolveLp(model, options);
}

MipResult SolveMip(const Model& model, const SolverOptions& options) {
  return MakeBackend("embedded")->SolveMip(model, options);
}

}  // namespace teamsolve
