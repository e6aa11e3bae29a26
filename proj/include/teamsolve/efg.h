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

// Three-seat zero-sum extensive-form games with chance, and the sequence-form
// structure derived from them.

#ifndef TEAMSOLVE_EFG_H_
#define TEAMSOLVE_EFG_H_

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "teamsolve/common.h"

namespace teamsolve {

inline constexpr int kNumSeats = 3;

enum class NodeKind : std::uint8_t { kDecision, kChance, kTerminal };

// Roles are assigned to seats at solve time, so one game tree serves every
// choice of opponent seat.
enum class PlayerRole : std::uint8_t { kTeamOne, kTeamTwo, kOpponent, kChance };

const char* PlayerRoleName(PlayerRole role);

// Seats are 0-based internally; the CLI and file formats use 1..3.
class SeatAssignment {
 public:
  // The team members are the two remaining seats, lower seat first.
  static SeatAssignment WithOpponent(int opponent_seat);

  int opponent() const { return opponent_; }
  int team_one() const { return opponent_ == 0 ? 1 : 0; }
  int team_two() const { return opponent_ == 2 ? 1 : 2; }
  int seat_of(PlayerRole role) const;
  PlayerRole role_of(int seat) const;

  friend bool operator==(const SeatAssignment&, const SeatAssignment&) = default;

 private:
  explicit SeatAssignment(int opponent) : opponent_(opponent) {}
  int opponent_;
};

struct Node {
  NodeKind kind = NodeKind::kTerminal;
  int seat = -1;     // decision nodes
  int infoset = -1;  // decision nodes
  int action_list = -1;  // decision nodes; index into Game::action_labels()
  int parent = -1;
  int parent_branch = -1;  // index of this node among the parent's children
  std::vector<int> children;
  std::vector<double> chance_probs;  // chance nodes, parallel to children
  std::array<double, kNumSeats> payoffs{};  // terminal nodes
  double chance_reach = 1.0;  // product of chance probabilities on root path
};

struct Infoset {
  int id = -1;
  int seat = -1;
  std::string label;
  std::vector<int> members;
  int action_list = -1;  // taken from the first member
};

class Game {
 public:
  Game(std::vector<Node> nodes, std::vector<Infoset> infosets,
       std::vector<std::vector<std::string>> action_labels);

  int root() const { return 0; }
  int num_nodes() const { return static_cast<int>(nodes_.size()); }
  const Node& node(int id) const { return nodes_[id]; }
  const std::vector<Node>& nodes() const { return nodes_; }

  int num_infosets() const { return static_cast<int>(infosets_.size()); }
  const Infoset& infoset(int id) const { return infosets_[id]; }
  const std::vector<Infoset>& infosets() const { return infosets_; }
  int num_actions(int infoset) const;
  const std::vector<std::string>& actions(int infoset) const;

  const std::vector<std::vector<std::string>>& action_labels() const {
    return action_labels_;
  }

  // Reachable node ids in depth-first preorder (children in branch order).
  const std::vector<int>& preorder() const { return preorder_; }
  // Terminal node ids in depth-first order.
  const std::vector<int>& leaves() const { return leaves_; }
  // False when some node is unreachable, shared, or references a missing
  // child; Validate reports these as kMalformed.
  bool well_formed() const { return well_formed_; }
  int num_leaves() const { return static_cast<int>(leaves_.size()); }

 private:
  std::vector<Node> nodes_;
  std::vector<Infoset> infosets_;
  std::vector<std::vector<std::string>> action_labels_;
  std::vector<int> preorder_;
  std::vector<int> leaves_;
  bool well_formed_ = true;
};

// Incremental construction. Node 0 is the root. Infosets are grouped by
// (seat, label) in order of first appearance.
class GameBuilder {
 public:
  int AddChance(std::vector<double> probs);
  int AddDecision(int seat, const std::string& infoset_label,
                  const std::vector<std::string>& actions);
  int AddTerminal(const std::array<double, kNumSeats>& payoffs);
  void SetChild(int node, int branch, int child);

  int num_nodes() const { return static_cast<int>(nodes_.size()); }

  // Links parents and computes chance reaches; does not validate.
  std::shared_ptr<const Game> BuildUnchecked() &&;
  // As above, then throws kInvalidGame if validation reports any defect.
  std::shared_ptr<const Game> Build() &&;

 private:
  int InternActions(const std::vector<std::string>& actions);

  std::vector<Node> nodes_;
  std::vector<Infoset> infosets_;
  std::map<std::pair<int, std::string>, int> infoset_lookup_;
  std::vector<std::vector<std::string>> action_labels_;
  std::map<std::vector<std::string>, int> action_lookup_;
};

enum class DefectCategory {
  kNonNormalizedChance,
  kActionMismatch,
  kPerfectRecallViolation,
  kNotZeroSum,
  kBadChanceReach,
  kMalformed,
};

const char* DefectCategoryName(DefectCategory category);

struct Defect {
  DefectCategory category;
  int node = -1;
  int infoset = -1;
  std::string message;
};

struct ValidationReport {
  std::vector<Defect> defects;
  bool ok() const { return defects.empty(); }
  bool Has(DefectCategory category) const;
  std::string Summary() const;
};

ValidationReport Validate(const Game& game);

// Sequences of one seat. Index 0 is the empty sequence; the sequence of
// action a at infoset I is first_sequence(I) + a.
class SequenceIndex {
 public:
  SequenceIndex(const Game& game, int seat);

  int seat() const { return seat_; }
  int size() const { return static_cast<int>(seq_infoset_.size()); }

  // Owning infoset and action of a sequence; -1 for the empty sequence.
  int infoset_of(int seq) const { return seq_infoset_[seq]; }
  int action_of(int seq) const { return seq_action_[seq]; }
  // Parent sequence of the sequence's infoset, i.e. sigma(I).
  int parent(int seq) const;

  // Infosets of this seat, in increasing global id.
  const std::vector<int>& infosets() const { return infosets_; }
  // Infosets ordered so that every infoset follows the one owning its
  // parent sequence.
  const std::vector<int>& infosets_topological() const { return topo_; }
  bool owns(int infoset) const { return first_seq_[infoset] >= 0; }
  int first_sequence(int infoset) const { return first_seq_[infoset]; }
  int num_actions(int infoset) const { return num_actions_[infoset]; }
  int parent_sequence(int infoset) const { return parent_seq_[infoset]; }
  // Infosets whose parent sequence is `seq`.
  const std::vector<int>& child_infosets(int seq) const {
    return child_infosets_[seq];
  }

 private:
  int seat_;
  std::vector<int> infosets_;
  std::vector<int> topo_;
  // Indexed by global infoset id; -1 for infosets of other seats.
  std::vector<int> first_seq_;
  std::vector<int> num_actions_;
  std::vector<int> parent_seq_;
  std::vector<int> seq_infoset_;
  std::vector<int> seq_action_;
  std::vector<std::vector<int>> child_infosets_;
};

// Last sequence of `seat` on the path from the root to each node (the node's
// own action not included).
std::vector<int> SequencesAtNodes(const Game& game, const SequenceIndex& index);

struct TerminalRecord {
  int leaf = -1;
  int seq_t1 = 0;
  int seq_t2 = 0;
  int seq_opp = 0;
  // (u_T1 + u_T2) * p_c(z)
  double team_payoff = 0.0;
};

// A game viewed from a fixed seat assignment: per-role sequence indices and
// terminal records. Immutable; shared by every solver component.
class TeamGame {
 public:
  TeamGame(std::shared_ptr<const Game> game, SeatAssignment assignment);

  const Game& game() const { return *game_; }
  const std::shared_ptr<const Game>& game_ptr() const { return game_; }
  const SeatAssignment& assignment() const { return assignment_; }

  const SequenceIndex& sequences(PlayerRole role) const;
  const SequenceIndex& team_one() const { return t1_; }
  const SequenceIndex& team_two() const { return t2_; }
  const SequenceIndex& opponent() const { return opp_; }

  const std::vector<TerminalRecord>& terminals() const { return terminals_; }

 private:
  std::shared_ptr<const Game> game_;
  SeatAssignment assignment_;
  SequenceIndex t1_, t2_, opp_;
  std::vector<TerminalRecord> terminals_;
};

// A vector over one seat's sequences satisfying the sequence-form flow
// constraints.
struct SequenceFormStrategy {
  int seat = -1;
  std::vector<double> values;
};

// Largest violation of the flow constraints (and nonnegativity).
double SequenceFormViolation(const SequenceIndex& index,
                             std::span<const double> values);

// min over opponent sequence-form strategies y of
//   sum_z  team_payoff(z) * leaf_weight[z] * y[seq_opp(z)],
// where leaf_weight is parallel to team.terminals(). Bottom-up dynamic
// programming over the opponent's sequences.
double OpponentBestResponseValue(const TeamGame& team,
                                 std::span<const double> leaf_weights);

// Same, but returns the minimizing pure sequence-form strategy as well.
double OpponentBestResponse(const TeamGame& team,
                            std::span<const double> leaf_weights,
                            std::vector<double>* opponent_strategy);

}  // namespace teamsolve

#endif  // TEAMSOLVE_EFG_H_
