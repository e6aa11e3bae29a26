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

#ifndef TEAMSOLVE_TMECOR_H_
#define TEAMSOLVE_TMECOR_H_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "teamsolve/cfr_seed.h"
#include "teamsolve/correlation.h"
#include "teamsolve/efg.h"
#include "teamsolve/linsolve.h"

namespace teamsolve {

struct TmecorOptions {
  std::string backend = "embedded";
  SolverOptions solver;
  // Column generation stops once no plan has reduced cost above this.
  double tolerance = 1e-6;
  int max_iterations = 10000;
  int seed_iterations = 1000;
  std::uint64_t rng_seed = kDefaultRngSeed;
  // Alternate the pricing set between the two team members.
  bool alternate_pricing = false;
  // Fixed-support programs with more variables than this are refused.
  std::int64_t max_variables = 4'000'000;
  bool verbose = false;
};

enum class PricingMethod { kRelaxation, kMip };

const char* PricingMethodName(PricingMethod method);

struct SupportPlan {
  double weight = 0.0;
  CorrelationPlan plan;
};

struct TmecorStats {
  int iterations = 0;
  int relaxation_count = 0;
  int mip_count = 0;
  int seed_plans = 0;
  int columns = 0;
  // Master LP value after every solve, in order.
  std::vector<double> master_values;
  std::int64_t lp_iterations = 0;
  std::int64_t mip_nodes = 0;
  double seconds = 0.0;
};

struct MasterDuals {
  std::vector<double> gamma;  // over opponent sequences
  double gamma_convexity = 0.0;
};

struct TmecorSolution {
  double value = 0.0;
  std::vector<SupportPlan> support;
  CorrelationPlan combined;
  // Team utility against a best-responding opponent.
  double certificate = 0.0;
  // Duals of the last master solve (column generation only).
  MasterDuals duals;
  TmecorStats stats;
};

// Triangle-free games only; throws kNotTriangleFree otherwise.
TmecorSolution DirectLp(std::shared_ptr<const RelevantPairIndex> index,
                        const TmecorOptions& options = {});

// beta[sigma_O] = sum over leaves z with sigma_O(z) = sigma_O of
// team_payoff(z) * plan[pair(z)].
std::vector<double> BetaCoefficients(const CorrelationPlan& plan);

// Maximize v_root subject to one row per opponent sequence and the
// convexity row. Variables are lambda_0..lambda_{k-1}, then v_root, then one
// value per opponent infoset in increasing id; rows are the opponent
// sequences in index order, then the convexity row.
Model BuildMaster(const TeamGame& team,
                  const std::vector<std::vector<double>>& betas);

struct PricingResult {
  CorrelationPlan candidate;
  double reduced_cost = 0.0;
  // Upper bound from the relaxation over the VSF system.
  double relaxation_value = 0.0;
  std::vector<CorrelationPlan> extras;
  PricingMethod resolved_by = PricingMethod::kRelaxation;
  // The member that plays a pure strategy in the candidate.
  PlayerRole deterministic_member = PlayerRole::kTeamTwo;
};

// Reusable pricing oracle; keeps one model and warm-start basis per member.
class Pricer {
 public:
  Pricer(std::shared_ptr<const RelevantPairIndex> index,
         const TmecorOptions& options);
  ~Pricer();

  // `member` selects the semi-randomized set: for kTeamOne the other member
  // is deterministic, and vice versa.
  PricingResult Price(const MasterDuals& duals, PlayerRole member);

  double ReducedCost(const MasterDuals& duals,
                     const CorrelationPlan& plan) const;

  std::int64_t lp_iterations() const { return lp_iterations_; }
  std::int64_t mip_nodes() const { return mip_nodes_; }

 private:
  struct MemberModel;
  MemberModel& ModelFor(PlayerRole member);

  std::shared_ptr<const RelevantPairIndex> index_;
  TmecorOptions options_;
  std::unique_ptr<Backend> backend_;
  std::unique_ptr<MemberModel> models_[2];
  std::int64_t lp_iterations_ = 0;
  std::int64_t mip_nodes_ = 0;
};

PricingResult Pricing(std::shared_ptr<const RelevantPairIndex> index,
                      const MasterDuals& duals, PlayerRole member,
                      const TmecorOptions& options = {});

// Semi-randomized plan in which `deterministic_member` plays the greedy pure
// strategy read off its marginal and the other member its marginal.
CorrelationPlan CleanSemiRandomized(
    std::shared_ptr<const RelevantPairIndex> index,
    std::span<const double> values, PlayerRole deterministic_member);

// Solves the master over `initial` plus priced columns until no column has
// reduced cost above the tolerance. An empty `initial` seeds with CFR+.
TmecorSolution ColumnGeneration(std::shared_ptr<const RelevantPairIndex> index,
                                const TmecorOptions& options = {},
                                std::vector<CorrelationPlan> initial = {});

// Best mixture of at most n semi-randomized plans, plan i deterministic in
// TeamTwo for odd i and in TeamOne for even i (1-based).
TmecorSolution FixedSupportMip(std::shared_ptr<const RelevantPairIndex> index,
                               int n, const TmecorOptions& options = {});

struct DecomposedPlan {
  double weight = 0.0;
  PlayerRole deterministic_member = PlayerRole::kTeamTwo;
  SequenceFormStrategy deterministic;
  SequenceFormStrategy randomized;
};

// Throws kNotSemiRandomized if a support plan is semi-randomized in neither
// member within 1e-6.
std::vector<DecomposedPlan> DecomposeSolution(const TmecorSolution& solution);

}  // namespace teamsolve

#endif  // TEAMSOLVE_TMECOR_H_
