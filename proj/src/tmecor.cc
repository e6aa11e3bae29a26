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

#include "teamsolve/tmecor.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <iostream>
#include <limits>
#include <unordered_map>
#include <utility>

namespace teamsolve {
namespace {

constexpr double kSupportThreshold = 1e-9;
constexpr double kSemiRandomizedTol = 1e-6;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr int kHeuristicPasses = 3;

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

PlayerRole OtherMember(PlayerRole member) {
  return member == PlayerRole::kTeamOne ? PlayerRole::kTeamTwo
                                        : PlayerRole::kTeamOne;
}

// Opponent value variables: v_root, then one per opponent infoset.
struct OpponentValues {
  int root = -1;
  std::vector<int> of_infoset;  // global infoset id -> variable, or -1
};

OpponentValues AddOpponentValues(const TeamGame& team, Model& model) {
  OpponentValues v;
  v.root = model.AddVariable(-kInfinity, kInfinity, 1.0,
                             VarType::kContinuous, "v_root");
  v.of_infoset.assign(team.game().num_infosets(), -1);
  for (int i : team.opponent().infosets()) {
    v.of_infoset[i] = model.AddVariable(-kInfinity, kInfinity, 0.0,
                                        VarType::kContinuous,
                                        "v_" + std::to_string(i));
  }
  return v;
}

std::vector<Term> OpponentRowBase(const SequenceIndex& opp,
                                  const OpponentValues& v, int seq) {
  std::vector<Term> terms;
  terms.push_back({seq == 0 ? v.root : v.of_infoset[opp.infoset_of(seq)], 1.0});
  for (int child : opp.child_infosets(seq)) {
    terms.push_back({v.of_infoset[child], -1.0});
  }
  return terms;
}

// Team payoff aggregated per (opponent sequence, pair).
std::vector<std::vector<Term>> LeafTermsByOpponentSequence(
    const RelevantPairIndex& index) {
  std::vector<std::vector<Term>> rows(index.team().opponent().size());
  for (const LeafTriple& leaf : index.leaves()) {
    if (leaf.team_payoff == 0.0) continue;
    rows[leaf.seq_opp].push_back({leaf.pair, leaf.team_payoff});
  }
  for (auto& row : rows) {
    std::sort(row.begin(), row.end(),
              [](const Term& a, const Term& b) { return a.var < b.var; });
    std::size_t out = 0;
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (out > 0 && row[out - 1].var == row[k].var) {
        row[out - 1].coef += row[k].coef;
      } else {
        row[out++] = row[k];
      }
    }
    row.resize(out);
  }
  return rows;
}

void AddVsfRows(const VsfSystem& vsf, int offset, Model& model,
                int scale_var = -1) {
  for (int r = 0; r < vsf.num_rows(); ++r) {
    std::vector<Term> terms;
    for (int k = vsf.row_start[r]; k < vsf.row_start[r + 1]; ++k) {
      terms.push_back({offset + vsf.cols[k], vsf.coefs[k]});
    }
    double rhs = vsf.rhs[r];
    if (scale_var >= 0 && rhs != 0.0) {
      terms.push_back({scale_var, -rhs});
      rhs = 0.0;
    }
    model.AddConstraint(std::move(terms), Relation::kEqual, rhs);
  }
}

// Number of own decisions on the path to `seq`, counting its own.
int SequenceDepth(const SequenceIndex& seqs, int seq) {
  int depth = 0;
  while (seq != 0) {
    ++depth;
    seq = seqs.parent_sequence(seqs.infoset_of(seq));
  }
  return depth;
}

std::vector<double> GreedyPure(const SequenceIndex& seqs,
                               std::span<const double> marginal) {
  std::vector<double> y(seqs.size(), 0.0);
  y[0] = 1.0;
  for (int i : seqs.infosets_topological()) {
    if (y[seqs.parent_sequence(i)] == 0.0) continue;
    const int first = seqs.first_sequence(i);
    int best = 0;
    for (int a = 1; a < seqs.num_actions(i); ++a) {
      if (marginal[first + a] > marginal[first + best]) best = a;
    }
    y[first + best] = 1.0;
  }
  return y;
}

// Exact hashable copy of a plan's nonzeros.
struct SparsePlan {
  std::vector<int> idx;
  std::vector<double> val;
  bool operator==(const SparsePlan&) const = default;
};

SparsePlan Sparsify(const std::vector<double>& values) {
  SparsePlan s;
  for (int p = 0; p < static_cast<int>(values.size()); ++p) {
    if (values[p] != 0.0) {
      s.idx.push_back(p);
      s.val.push_back(values[p]);
    }
  }
  return s;
}

std::uint64_t HashSparse(const SparsePlan& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (std::size_t k = 0; k < s.idx.size(); ++k) {
    std::uint64_t bits;
    std::memcpy(&bits, &s.val[k], sizeof(bits));
    h ^= static_cast<std::uint64_t>(s.idx[k]) + 0x9e3779b97f4a7c15ULL +
         (h << 6) + (h >> 2);
    h ^= bits + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

void Finish(TmecorSolution& sol,
            const std::shared_ptr<const RelevantPairIndex>& index) {
  sol.combined.index = index;
  sol.combined.values.assign(index->size(), 0.0);
  for (const SupportPlan& s : sol.support) {
    for (int p = 0; p < index->size(); ++p) {
      sol.combined.values[p] += s.weight * s.plan.values[p];
    }
  }
  sol.certificate = PlanValue(sol.combined);
}

}  // namespace

const char* PricingMethodName(PricingMethod method) {
  return method == PricingMethod::kRelaxation ? "relaxation" : "mip";
}

TmecorSolution DirectLp(std::shared_ptr<const RelevantPairIndex> index,
                        const TmecorOptions& options) {
  const auto start = Clock::now();
  const TeamGame& team = index->team();
  if (!IsTriangleFree(team, index->connectivity())) {
    throw Error(ErrorCode::kNotTriangleFree,
                "the team's information structure is not triangle-free");
  }
  Model model;
  model.set_sense(Sense::kMaximize);
  for (int p = 0; p < index->size(); ++p) {
    model.AddVariable(0.0, kInfinity);
  }
  const OpponentValues v = AddOpponentValues(team, model);
  AddVsfRows(VsfConstraints(*index), 0, model);
  const auto leaf_terms = LeafTermsByOpponentSequence(*index);
  const SequenceIndex& opp = team.opponent();
  for (int s = 0; s < opp.size(); ++s) {
    std::vector<Term> terms = OpponentRowBase(opp, v, s);
    for (const Term& t : leaf_terms[s]) terms.push_back({t.var, -t.coef});
    model.AddConstraint(std::move(terms), Relation::kLessEqual, 0.0);
  }

  std::unique_ptr<Backend> backend = MakeBackend(options.backend);
  Solution lp = backend->SolveLp(model, options.solver);
  if (!lp.optimal()) {
    throw Error(ErrorCode::kSolverFailure,
                std::string("direct LP ended with status ") +
                    SolveStatusName(lp.status));
  }
  TmecorSolution sol;
  sol.value = lp.objective;
  CorrelationPlan plan{index, std::vector<double>(index->size())};
  for (int p = 0; p < index->size(); ++p) {
    plan.values[p] = std::max(0.0, lp.primal[p]);
  }
  sol.support.push_back({1.0, std::move(plan)});
  sol.stats.iterations = 1;
  sol.stats.columns = 1;
  sol.stats.lp_iterations = lp.iterations;
  sol.stats.master_values.push_back(lp.objective);
  Finish(sol, index);
  sol.stats.seconds = SecondsSince(start);
  return sol;
}

std::vector<double> BetaCoefficients(const CorrelationPlan& plan) {
  const RelevantPairIndex& index = *plan.index;
  std::vector<double> beta(index.team().opponent().size(), 0.0);
  for (const LeafTriple& leaf : index.leaves()) {
    beta[leaf.seq_opp] += leaf.team_payoff * plan.values[leaf.pair];
  }
  return beta;
}

Model BuildMaster(const TeamGame& team,
                  const std::vector<std::vector<double>>& betas) {
  if (betas.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "master needs at least one plan");
  }
  const SequenceIndex& opp = team.opponent();
  Model model;
  model.set_sense(Sense::kMaximize);
  const int k = static_cast<int>(betas.size());
  for (int i = 0; i < k; ++i) {
    model.AddVariable(0.0, kInfinity, 0.0, VarType::kContinuous,
                      "lambda_" + std::to_string(i));
  }
  const OpponentValues v = AddOpponentValues(team, model);
  for (int s = 0; s < opp.size(); ++s) {
    std::vector<Term> terms = OpponentRowBase(opp, v, s);
    for (int i = 0; i < k; ++i) {
      if (betas[i][s] != 0.0) terms.push_back({i, -betas[i][s]});
    }
    model.AddConstraint(std::move(terms), Relation::kLessEqual, 0.0,
                        "seq_" + std::to_string(s));
  }
  std::vector<Term> convexity;
  for (int i = 0; i < k; ++i) convexity.push_back({i, 1.0});
  model.AddConstraint(std::move(convexity), Relation::kEqual, 1.0, "convexity");
  return model;
}

CorrelationPlan CleanSemiRandomized(
    std::shared_ptr<const RelevantPairIndex> index,
    std::span<const double> values, PlayerRole deterministic_member) {
  CorrelationPlan raw{index, std::vector<double>(values.begin(), values.end())};
  std::vector<double> y1 = TeamOneMarginal(raw);
  std::vector<double> y2 = TeamTwoMarginal(raw);
  const TeamGame& team = index->team();
  if (deterministic_member == PlayerRole::kTeamOne) {
    y1 = GreedyPure(team.team_one(), y1);
    for (double& x : y2) x = std::max(0.0, x);
  } else {
    y2 = GreedyPure(team.team_two(), y2);
    for (double& x : y1) x = std::max(0.0, x);
  }
  return PlanFromProduct(index, y1, y2);
}

struct Pricer::MemberModel {
  Model model;
  Basis basis;
  PlayerRole deterministic = PlayerRole::kTeamTwo;
};

Pricer::Pricer(std::shared_ptr<const RelevantPairIndex> index,
               const TmecorOptions& options)
    : index_(std::move(index)),
      options_(options),
      backend_(MakeBackend(options.backend)) {}

Pricer::~Pricer() = default;

Pricer::MemberModel& Pricer::ModelFor(PlayerRole member) {
  const int slot = member == PlayerRole::kTeamOne ? 0 : 1;
  if (models_[slot]) return *models_[slot];
  auto m = std::make_unique<MemberModel>();
  m->deterministic = OtherMember(member);
  m->model.set_sense(Sense::kMaximize);
  const TeamGame& team = index_->team();
  std::vector<char> binary(index_->size(), 0);
  if (m->deterministic == PlayerRole::kTeamTwo) {
    for (int s = 1; s < team.team_two().size(); ++s) {
      binary[index_->EmptyOnePair(s)] = 1;
    }
  } else {
    for (int s = 1; s < team.team_one().size(); ++s) {
      binary[index_->RowBegin(s)] = 1;
    }
  }
  for (int p = 0; p < index_->size(); ++p) {
    if (binary[p]) {
      m->model.AddVariable(0.0, 1.0, 0.0, VarType::kBinary);
    } else {
      m->model.AddVariable(0.0, kInfinity);
    }
  }
  AddVsfRows(VsfConstraints(*index_), 0, m->model);
  models_[slot] = std::move(m);
  return *models_[slot];
}

double Pricer::ReducedCost(const MasterDuals& duals,
                           const CorrelationPlan& plan) const {
  const std::vector<double> beta = BetaCoefficients(plan);
  double c = -duals.gamma_convexity;
  for (std::size_t s = 0; s < beta.size(); ++s) c += duals.gamma[s] * beta[s];
  return c;
}

PricingResult Pricer::Price(const MasterDuals& duals, PlayerRole member) {
  if (member != PlayerRole::kTeamOne && member != PlayerRole::kTeamTwo) {
    throw Error(ErrorCode::kInvalidArgument, "pricing member must be a team member");
  }
  MemberModel& mm = ModelFor(member);
  Model& model = mm.model;
  std::vector<double> obj(index_->size(), 0.0);
  for (const LeafTriple& leaf : index_->leaves()) {
    obj[leaf.pair] += leaf.team_payoff * duals.gamma[leaf.seq_opp];
  }
  for (int p = 0; p < index_->size(); ++p) model.set_objective(p, obj[p]);
  model.set_objective_offset(-duals.gamma_convexity);

  PricingResult result;
  result.deterministic_member = mm.deterministic;
  const Solution lp = backend_->SolveLp(
      model, options_.solver, mm.basis.empty() ? nullptr : &mm.basis,
      &mm.basis);
  lp_iterations_ += lp.iterations;
  if (!lp.optimal()) {
    throw Error(ErrorCode::kSolverFailure,
                std::string("pricing relaxation ended with status ") +
                    SolveStatusName(lp.status));
  }
  result.relaxation_value = lp.objective;
  CorrelationPlan relaxed{index_, lp.primal};
  if (lp.objective <= options_.tolerance ||
      IsSemiRandomized(relaxed, mm.deterministic, kSemiRandomizedTol)) {
    result.resolved_by = PricingMethod::kRelaxation;
    result.candidate = CleanSemiRandomized(index_, lp.primal, mm.deterministic);
    result.reduced_cost = ReducedCost(duals, result.candidate);
    return result;
  }

  SolverOptions solver = options_.solver;
  const SequenceIndex& seqs = mm.deterministic == PlayerRole::kTeamTwo
                                  ? index_->team().team_two()
                                  : index_->team().team_one();
  auto coordinate = [&](int s) {
    return mm.deterministic == PlayerRole::kTeamTwo ? index_->EmptyOnePair(s)
                                                    : index_->RowBegin(s);
  };
  solver.heuristic = [&](const std::vector<double>& primal,
                         const SolverOptions::HeuristicSolve& solve) {
    std::vector<double> marginal(seqs.size());
    for (int s = 0; s < seqs.size(); ++s) marginal[s] = primal[coordinate(s)];
    const std::vector<double> pure = GreedyPure(seqs, marginal);
    std::vector<double> fixes(primal.size(), kNaN);
    for (int s = 1; s < seqs.size(); ++s) fixes[coordinate(s)] = pure[s];
    solve(fixes);
  };
  const MipResult mip = backend_->SolveMip(model, solver);
  lp_iterations_ += mip.solution.iterations;
  mip_nodes_ += mip.solution.nodes;
  if (!mip.solution.optimal()) {
    throw Error(ErrorCode::kSolverFailure,
                std::string("pricing MIP ended with status ") +
                    SolveStatusName(mip.solution.status));
  }
  result.resolved_by = PricingMethod::kMip;
  result.candidate =
      CleanSemiRandomized(index_, mip.solution.primal, mm.deterministic);
  result.reduced_cost = ReducedCost(duals, result.candidate);
  for (const PoolEntry& entry : mip.pool.entries()) {
    CorrelationPlan plan =
        CleanSemiRandomized(index_, entry.primal, mm.deterministic);
    if (plan.values == result.candidate.values) continue;
    result.extras.push_back(std::move(plan));
  }
  return result;
}

PricingResult Pricing(std::shared_ptr<const RelevantPairIndex> index,
                      const MasterDuals& duals, PlayerRole member,
                      const TmecorOptions& options) {
  Pricer pricer(std::move(index), options);
  return pricer.Price(duals, member);
}

TmecorSolution ColumnGeneration(std::shared_ptr<const RelevantPairIndex> index,
                                const TmecorOptions& options,
                                std::vector<CorrelationPlan> initial) {
  const auto start = Clock::now();
  const TeamGame& team = index->team();
  const int num_opp = team.opponent().size();
  TmecorSolution sol;

  std::vector<SparsePlan> plans;
  std::vector<std::vector<double>> betas;
  std::unordered_multimap<std::uint64_t, int> seen;
  auto add = [&](const CorrelationPlan& plan) {
    SparsePlan s = Sparsify(plan.values);
    const std::uint64_t h = HashSparse(s);
    auto range = seen.equal_range(h);
    for (auto it = range.first; it != range.second; ++it) {
      if (plans[it->second] == s) return false;
    }
    seen.emplace(h, static_cast<int>(plans.size()));
    plans.push_back(std::move(s));
    betas.push_back(BetaCoefficients(plan));
    return true;
  };
  if (initial.empty()) {
    SeedBatch batch = Seed(index, options.seed_iterations, options.rng_seed);
    for (const CorrelationPlan& plan : batch.plans) add(plan);
  } else {
    for (const CorrelationPlan& plan : initial) {
      CheckPlanIndex(plan, *index);
      add(plan);
    }
    initial.clear();
  }
  sol.stats.seed_plans = static_cast<int>(plans.size());

  std::unique_ptr<Backend> backend = MakeBackend(options.backend);
  Pricer pricer(index, options);
  Solution master;
  for (int it = 0;; ++it) {
    if (it >= options.max_iterations) {
      throw Error(ErrorCode::kNonConvergence,
                  "column generation hit the iteration cap of " +
                      std::to_string(options.max_iterations));
    }
    master = backend->SolveLp(BuildMaster(team, betas), options.solver);
    sol.stats.lp_iterations += master.iterations;
    if (!master.optimal()) {
      throw Error(ErrorCode::kSolverFailure,
                  std::string("master LP ended with status ") +
                      SolveStatusName(master.status));
    }
    sol.stats.master_values.push_back(master.objective);
    MasterDuals duals;
    duals.gamma.assign(master.duals.begin(), master.duals.begin() + num_opp);
    duals.gamma_convexity = master.duals[num_opp];

    const PlayerRole member = options.alternate_pricing && it % 2 == 1
                                  ? PlayerRole::kTeamTwo
                                  : PlayerRole::kTeamOne;
    PricingResult priced = pricer.Price(duals, member);
    if (priced.resolved_by == PricingMethod::kRelaxation) {
      ++sol.stats.relaxation_count;
    } else {
      ++sol.stats.mip_count;
    }
    sol.stats.iterations = it + 1;
    if (options.verbose) {
      std::cerr << "iter " << it + 1 << " columns " << plans.size()
                << " master " << master.objective << " reduced cost "
                << priced.reduced_cost << " ("
                << PricingMethodName(priced.resolved_by) << ")\n";
    }
    if (priced.reduced_cost <= options.tolerance) break;
    bool added = add(priced.candidate);
    for (const CorrelationPlan& extra : priced.extras) added |= add(extra);
    if (!added) {
      throw Error(ErrorCode::kNonConvergence,
                  "pricing returned only plans already in the master");
    }
  }
  sol.stats.lp_iterations += pricer.lp_iterations();
  sol.stats.mip_nodes = pricer.mip_nodes();
  sol.stats.columns = static_cast<int>(plans.size());
  sol.value = master.objective;
  sol.duals.gamma.assign(master.duals.begin(), master.duals.begin() + num_opp);
  sol.duals.gamma_convexity = master.duals[num_opp];
  for (int i = 0; i < static_cast<int>(plans.size()); ++i) {
    const double lambda = master.primal[i];
    if (lambda <= kSupportThreshold) continue;
    CorrelationPlan plan{index, std::vector<double>(index->size(), 0.0)};
    for (std::size_t k = 0; k < plans[i].idx.size(); ++k) {
      plan.values[plans[i].idx[k]] = plans[i].val[k];
    }
    sol.support.push_back({lambda, std::move(plan)});
  }
  Finish(sol, index);
  sol.stats.seconds = SecondsSince(start);
  return sol;
}

TmecorSolution FixedSupportMip(std::shared_ptr<const RelevantPairIndex> index,
                               int n, const TmecorOptions& options) {
  if (n < 1) {
    throw Error(ErrorCode::kInvalidArgument, "support cap must be at least 1");
  }
  const auto start = Clock::now();
  const TeamGame& team = index->team();
  const int num_pairs = index->size();
  std::vector<int> det_two, det_one;
  for (int s = 1; s < team.team_two().size(); ++s) {
    det_two.push_back(index->EmptyOnePair(s));
  }
  for (int s = 1; s < team.team_one().size(); ++s) {
    det_one.push_back(index->RowBegin(s));
  }
  auto deterministic = [](int i) {
    return i % 2 == 0 ? PlayerRole::kTeamTwo : PlayerRole::kTeamOne;
  };
  std::int64_t num_vars = 1 + static_cast<std::int64_t>(
                                  team.opponent().infosets().size());
  for (int i = 0; i < n; ++i) {
    num_vars += 1 + num_pairs +
                static_cast<std::int64_t>(i % 2 == 0 ? det_two.size()
                                                     : det_one.size());
  }
  if (num_vars > options.max_variables) {
    throw Error(ErrorCode::kProblemTooLarge,
                "fixed-support program needs " + std::to_string(num_vars) +
                    " variables, above the limit of " +
                    std::to_string(options.max_variables));
  }

  Model model;
  model.set_sense(Sense::kMaximize);
  std::vector<int> lambda(n), w_offset(n);
  std::vector<std::vector<std::pair<int, int>>> binaries(n);
  for (int i = 0; i < n; ++i) {
    lambda[i] = model.AddVariable(0.0, 1.0, 0.0, VarType::kContinuous,
                                  "lambda_" + std::to_string(i));
    w_offset[i] = model.num_vars();
    for (int p = 0; p < num_pairs; ++p) model.AddVariable(0.0, 1.0);
    for (int p : i % 2 == 0 ? det_two : det_one) {
      binaries[i].push_back({p, model.AddVariable(0.0, 1.0, 0.0,
                                                  VarType::kBinary)});
    }
  }
  const OpponentValues v = AddOpponentValues(team, model);
  const VsfSystem vsf = VsfConstraints(*index);
  for (int i = 0; i < n; ++i) {
    AddVsfRows(vsf, w_offset[i], model, lambda[i]);
    const SequenceIndex& seqs = deterministic(i) == PlayerRole::kTeamTwo
                                    ? team.team_two()
                                    : team.team_one();
    // The binaries form a pure sequence-form strategy.
    for (int infoset : seqs.infosets()) {
      std::vector<Term> terms;
      const int first = seqs.first_sequence(infoset);
      for (int a = 0; a < seqs.num_actions(infoset); ++a) {
        terms.push_back({binaries[i][first + a - 1].second, 1.0});
      }
      const int parent = seqs.parent_sequence(infoset);
      double rhs = 1.0;
      if (parent != 0) {
        terms.push_back({binaries[i][parent - 1].second, -1.0});
        rhs = 0.0;
      }
      model.AddConstraint(std::move(terms), Relation::kEqual, rhs);
    }
    for (const auto& [p, b] : binaries[i]) {
      const int w = w_offset[i] + p;
      model.AddConstraint({{w, 1.0}, {b, -1.0}}, Relation::kLessEqual, 0.0);
      model.AddConstraint({{w, 1.0}, {lambda[i], -1.0}}, Relation::kLessEqual,
                          0.0);
      model.AddConstraint({{w, 1.0}, {lambda[i], -1.0}, {b, -1.0}},
                          Relation::kGreaterEqual, -1.0);
    }
  }
  std::vector<Term> convexity;
  for (int i = 0; i < n; ++i) convexity.push_back({lambda[i], 1.0});
  const int convexity_row =
      model.AddConstraint(std::move(convexity), Relation::kEqual, 1.0);
  const auto leaf_terms = LeafTermsByOpponentSequence(*index);
  const SequenceIndex& opp = team.opponent();
  std::vector<int> opponent_rows(opp.size());
  for (int s = 0; s < opp.size(); ++s) {
    std::vector<Term> terms = OpponentRowBase(opp, v, s);
    for (int i = 0; i < n; ++i) {
      for (const Term& t : leaf_terms[s]) {
        terms.push_back({w_offset[i] + t.var, -t.coef});
      }
    }
    opponent_rows[s] =
        model.AddConstraint(std::move(terms), Relation::kLessEqual, 0.0);
  }

  SolverOptions solver = options.solver;
  solver.branch_priority.assign(model.num_vars(), 0);
  for (int i = 0; i < n; ++i) {
    const SequenceIndex& seqs = deterministic(i) == PlayerRole::kTeamTwo
                                    ? team.team_two()
                                    : team.team_one();
    for (int s = 1; s < seqs.size(); ++s) {
      solver.branch_priority[binaries[i][s - 1].second] =
          SequenceDepth(seqs, s);
    }
  }
  auto member_seqs = [&](int i) -> const SequenceIndex& {
    return deterministic(i) == PlayerRole::kTeamTwo ? team.team_two()
                                                    : team.team_one();
  };
  // Writes the greedy pure plan of plan i's deterministic member.
  auto round_plan = [&](int i, const std::vector<double>& primal,
                        std::vector<double>& fixes) {
    const SequenceIndex& seqs = member_seqs(i);
    std::vector<double> marginal(seqs.size());
    marginal[0] = primal[lambda[i]];
    for (int s = 1; s < seqs.size(); ++s) {
      marginal[s] = primal[w_offset[i] + binaries[i][s - 1].first];
    }
    const std::vector<double> pure = GreedyPure(seqs, marginal);
    for (int s = 1; s < seqs.size(); ++s) {
      fixes[binaries[i][s - 1].second] = pure[s];
    }
  };
  // Prices a replacement for plan i from the duals of a fixed-binary solve.
  Pricer pricer(index, options);
  auto priced_plan = [&](int i, const Solution& lp,
                         std::vector<double>& fixes) {
    MasterDuals duals;
    duals.gamma.resize(opponent_rows.size());
    for (std::size_t s = 0; s < opponent_rows.size(); ++s) {
      duals.gamma[s] = lp.duals[opponent_rows[s]];
    }
    duals.gamma_convexity = lp.duals[convexity_row];
    const bool two = deterministic(i) == PlayerRole::kTeamTwo;
    const PricingResult priced = pricer.Price(
        duals, two ? PlayerRole::kTeamOne : PlayerRole::kTeamTwo);
    const std::vector<double> pure = two ? TeamTwoMarginal(priced.candidate)
                                         : TeamOneMarginal(priced.candidate);
    for (int s = 1; s < member_seqs(i).size(); ++s) {
      fixes[binaries[i][s - 1].second] = pure[s];
    }
  };
  // Rounds every plan, then improves one plan at a time, either by the column
  // its duals price best or by re-optimizing it freely and rounding.
  solver.heuristic = [&](const std::vector<double>& primal,
                         const SolverOptions::HeuristicSolve& solve) {
    std::vector<double> fixes(primal.size(), kNaN);
    for (int i = 0; i < n; ++i) round_plan(i, primal, fixes);
    Solution current = solve(fixes);
    if (!current.optimal()) return;
    auto accept = [&](std::vector<double>& trial) {
      Solution s = solve(trial);
      if (!s.optimal() || s.objective <= current.objective + 1e-12) {
        return false;
      }
      fixes = trial;
      current = std::move(s);
      return true;
    };
    for (int pass = 0; pass < kHeuristicPasses; ++pass) {
      bool improved = false;
      for (int i = 0; i < n; ++i) {
        std::vector<double> trial = fixes;
        priced_plan(i, current, trial);
        if (accept(trial)) {
          improved = true;
          continue;
        }
        trial = fixes;
        for (const auto& [p, b] : binaries[i]) trial[b] = kNaN;
        const Solution relaxed = solve(trial);
        if (!relaxed.optimal()) continue;
        round_plan(i, relaxed.primal, trial);
        improved |= accept(trial);
      }
      if (!improved) break;
    }
  };
  std::unique_ptr<Backend> backend = MakeBackend(options.backend);
  const MipResult mip = backend->SolveMip(model, solver);
  if (!mip.solution.optimal()) {
    throw Error(ErrorCode::kSolverFailure,
                std::string("fixed-support MIP ended with status ") +
                    SolveStatusName(mip.solution.status));
  }
  TmecorSolution sol;
  sol.value = mip.solution.objective;
  for (int i = 0; i < n; ++i) {
    const double weight = mip.solution.primal[lambda[i]];
    if (weight <= kSupportThreshold) continue;
    std::vector<double> values(num_pairs);
    for (int p = 0; p < num_pairs; ++p) {
      values[p] = mip.solution.primal[w_offset[i] + p] / weight;
    }
    sol.support.push_back(
        {weight, CleanSemiRandomized(index, values, deterministic(i))});
  }
  sol.stats.iterations = 1;
  sol.stats.columns = n;
  sol.stats.lp_iterations = mip.solution.iterations;
  sol.stats.mip_nodes = mip.solution.nodes;
  sol.stats.master_values.push_back(sol.value);
  Finish(sol, index);
  sol.stats.seconds = SecondsSince(start);
  return sol;
}

std::vector<DecomposedPlan> DecomposeSolution(const TmecorSolution& solution) {
  std::vector<DecomposedPlan> out;
  for (const SupportPlan& s : solution.support) {
    const TeamGame& team = s.plan.index->team();
    DecomposedPlan d;
    d.weight = s.weight;
    std::vector<double> one = TeamOneMarginal(s.plan);
    std::vector<double> two = TeamTwoMarginal(s.plan);
    if (IsSemiRandomized(s.plan, PlayerRole::kTeamTwo, kSemiRandomizedTol)) {
      d.deterministic_member = PlayerRole::kTeamTwo;
      for (double& x : two) x = std::round(x);
      d.deterministic = {team.assignment().team_two(), std::move(two)};
      d.randomized = {team.assignment().team_one(), std::move(one)};
    } else if (IsSemiRandomized(s.plan, PlayerRole::kTeamOne,
                                kSemiRandomizedTol)) {
      d.deterministic_member = PlayerRole::kTeamOne;
      for (double& x : one) x = std::round(x);
      d.deterministic = {team.assignment().team_one(), std::move(one)};
      d.randomized = {team.assignment().team_two(), std::move(two)};
    } else {
      throw Error(ErrorCode::kNotSemiRandomized,
                  "support plan is not semi-randomized for either member");
    }
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace teamsolve
