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

#ifndef TEAMSOLVE_CORRELATION_H_
#define TEAMSOLVE_CORRELATION_H_

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "teamsolve/efg.h"

namespace teamsolve {

// Which team infosets share a root-to-leaf path. A node and any of its
// ancestors (inclusive) count as being on a common path.
class Connectivity {
 public:
  explicit Connectivity(const TeamGame& team);

  // `i` is a team-one infoset id, `j` a team-two infoset id (global ids).
  bool Connected(int i, int j) const;
  // Sorted team-two infosets connected to team-one infoset `i`.
  const std::vector<int>& TeamTwoNeighbors(int i) const { return t1_adj_[i]; }
  // Sorted team-one infosets connected to team-two infoset `j`.
  const std::vector<int>& TeamOneNeighbors(int j) const { return t2_adj_[j]; }
  std::int64_t num_connected_pairs() const { return num_edges_; }

 private:
  std::vector<std::vector<int>> t1_adj_;
  std::vector<std::vector<int>> t2_adj_;
  std::int64_t num_edges_ = 0;
};

// Per-leaf data used by every solver: dense index of (sigma_T1(z),
// sigma_T2(z)), the opponent's sequence, and (u_T1 + u_T2) * p_c(z).
struct LeafTriple {
  int pair = -1;
  int seq_opp = 0;
  double team_payoff = 0.0;
};

// Dense index over the relevant sequence pairs of the two team members.
// Pairs are sorted by (sigma_T1, sigma_T2), so (empty, empty) is pair 0.
class RelevantPairIndex {
 public:
  static std::shared_ptr<const RelevantPairIndex> Build(
      std::shared_ptr<const TeamGame> team);

  const TeamGame& team() const { return *team_; }
  const std::shared_ptr<const TeamGame>& team_ptr() const { return team_; }
  const Connectivity& connectivity() const { return connectivity_; }

  int size() const { return static_cast<int>(seq_one_.size()); }
  int seq_one(int pair) const { return seq_one_[pair]; }
  int seq_two(int pair) const { return seq_two_[pair]; }

  // Dense index of (s1, s2), or -1 if the pair is not relevant.
  int Find(int s1, int s2) const;
  // Pairs (s1, .) occupy [RowBegin(s1), RowEnd(s1)), sorted by s2.
  int RowBegin(int s1) const { return row_start_[s1]; }
  int RowEnd(int s1) const { return row_start_[s1 + 1]; }
  // Dense index of (empty, s2).
  int EmptyOnePair(int s2) const { return s2; }

  const std::vector<LeafTriple>& leaves() const { return leaves_; }

  // Identifies the game, seat assignment and pair layout. Plans built over
  // indexes with different fingerprints cannot be mixed.
  std::uint64_t fingerprint() const { return fingerprint_; }

  explicit RelevantPairIndex(std::shared_ptr<const TeamGame> team);

 private:
  std::shared_ptr<const TeamGame> team_;
  Connectivity connectivity_;
  std::vector<int> row_start_;
  std::vector<int> seq_one_;
  std::vector<int> seq_two_;
  std::vector<LeafTriple> leaves_;
  std::uint64_t fingerprint_ = 0;
};

inline std::shared_ptr<const RelevantPairIndex> RelevantPairs(
    std::shared_ptr<const TeamGame> team) {
  return RelevantPairIndex::Build(std::move(team));
}

// Sparse equality rows over correlation-plan coordinates, in CSR form.
// Row 0 fixes the (empty, empty) entry to one; then one row per
// (team-one infoset, relevant team-two sequence) and one per
// (relevant team-one sequence, team-two infoset). All coordinates are >= 0.
struct VsfSystem {
  int num_cols = 0;
  std::vector<int> row_start = {0};
  std::vector<int> cols;
  std::vector<double> coefs;
  std::vector<double> rhs;
  int num_team_one_rows = 0;
  int num_team_two_rows = 0;

  int num_rows() const { return static_cast<int>(rhs.size()); }
  // Largest absolute row residual or negative entry.
  double MaxViolation(std::span<const double> values) const;
};

VsfSystem VsfConstraints(const RelevantPairIndex& index);

bool IsTriangleFree(const TeamGame& team, const Connectivity& connectivity);
bool IsTriangleFree(const TeamGame& team);

struct CorrelationPlan {
  std::shared_ptr<const RelevantPairIndex> index;
  std::vector<double> values;

  double at(int s1, int s2) const;
};

// Throws kIndexMismatch unless the plan was built over `index` (or an
// index with the same fingerprint) and has one value per pair.
void CheckPlanIndex(const CorrelationPlan& plan, const RelevantPairIndex& index);

// A reduced plan assigns an action to every infoset it reaches. Indexed by
// global infoset id; entries for other infosets are ignored, -1 means none.
using ReducedPlan = std::vector<int>;

// Sequence-form 0/1 vector of a reduced plan. Throws kPlanIncomplete if a
// reached infoset has no action.
std::vector<double> PureSequenceForm(const SequenceIndex& index,
                                     const ReducedPlan& plan);

CorrelationPlan PlanFromPureProfile(
    std::shared_ptr<const RelevantPairIndex> index, const ReducedPlan& t1,
    const ReducedPlan& t2);

CorrelationPlan PlanFromProduct(std::shared_ptr<const RelevantPairIndex> index,
                                std::span<const double> y1,
                                std::span<const double> y2);

bool IsProductPlan(const CorrelationPlan& plan, double tol);

// True if the marginal of `deterministic_member` is integral within `tol`.
bool IsSemiRandomized(const CorrelationPlan& plan,
                      PlayerRole deterministic_member, double tol);

// xi[., empty] and xi[empty, .].
std::vector<double> TeamOneMarginal(const CorrelationPlan& plan);
std::vector<double> TeamTwoMarginal(const CorrelationPlan& plan);

// Weight of each leaf (in TeamGame::terminals() order) under the plan.
std::vector<double> LeafWeights(const CorrelationPlan& plan);

// Team value of the plan against a best-responding opponent.
double PlanValue(const CorrelationPlan& plan);

}  // namespace teamsolve

#endif  // TEAMSOLVE_CORRELATION_H_
