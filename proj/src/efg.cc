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

#include "teamsolve/efg.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace teamsolve {
namespace {

constexpr double kChanceSumTol = 1e-12;
constexpr double kZeroSumTol = 1e-9;
constexpr double kReachTol = 1e-12;

}  // namespace

const char* PlayerRoleName(PlayerRole role) {
  switch (role) {
    case PlayerRole::kTeamOne: return "T1";
    case PlayerRole::kTeamTwo: return "T2";
    case PlayerRole::kOpponent: return "O";
    case PlayerRole::kChance: return "chance";
  }
  return "?";
}

SeatAssignment SeatAssignment::WithOpponent(int opponent_seat) {
  if (opponent_seat < 0 || opponent_seat >= kNumSeats) {
    throw Error(ErrorCode::kInvalidArgument,
                "opponent seat must be in [0, 3), got " +
                    std::to_string(opponent_seat));
  }
  return SeatAssignment(opponent_seat);
}

int SeatAssignment::seat_of(PlayerRole role) const {
  switch (role) {
    case PlayerRole::kTeamOne: return team_one();
    case PlayerRole::kTeamTwo: return team_two();
    case PlayerRole::kOpponent: return opponent();
    case PlayerRole::kChance: return -1;
  }
  return -1;
}

PlayerRole SeatAssignment::role_of(int seat) const {
  if (seat == opponent_) return PlayerRole::kOpponent;
  if (seat == team_one()) return PlayerRole::kTeamOne;
  if (seat == team_two()) return PlayerRole::kTeamTwo;
  return PlayerRole::kChance;
}

// ---------------------------------------------------------------------------
// Game

Game::Game(std::vector<Node> nodes, std::vector<Infoset> infosets,
           std::vector<std::vector<std::string>> action_labels)
    : nodes_(std::move(nodes)),
      infosets_(std::move(infosets)),
      action_labels_(std::move(action_labels)) {
  if (nodes_.empty()) {
    well_formed_ = false;
    return;
  }
  std::vector<char> seen(nodes_.size(), 0);
  std::vector<int> stack = {0};
  preorder_.reserve(nodes_.size());
  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    if (seen[id]) {
      well_formed_ = false;
      continue;
    }
    seen[id] = 1;
    preorder_.push_back(id);
    const Node& n = nodes_[id];
    if (n.kind == NodeKind::kTerminal) {
      leaves_.push_back(id);
      continue;
    }
    for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) {
      if (*it < 0 || *it >= static_cast<int>(nodes_.size())) {
        well_formed_ = false;
        continue;
      }
      stack.push_back(*it);
    }
  }
  if (preorder_.size() != nodes_.size()) well_formed_ = false;
}

int Game::num_actions(int infoset) const {
  return static_cast<int>(actions(infoset).size());
}

const std::vector<std::string>& Game::actions(int infoset) const {
  return action_labels_[infosets_[infoset].action_list];
}

// ---------------------------------------------------------------------------
// GameBuilder

int GameBuilder::InternActions(const std::vector<std::string>& actions) {
  auto [it, inserted] = action_lookup_.try_emplace(
      actions, static_cast<int>(action_labels_.size()));
  if (inserted) action_labels_.push_back(actions);
  return it->second;
}

int GameBuilder::AddChance(std::vector<double> probs) {
  Node n;
  n.kind = NodeKind::kChance;
  n.children.assign(probs.size(), -1);
  n.chance_probs = std::move(probs);
  nodes_.push_back(std::move(n));
  return static_cast<int>(nodes_.size()) - 1;
}

int GameBuilder::AddDecision(int seat, const std::string& infoset_label,
                             const std::vector<std::string>& actions) {
  if (seat < 0 || seat >= kNumSeats) {
    throw Error(ErrorCode::kInvalidGame, "decision seat out of range");
  }
  if (actions.empty()) {
    throw Error(ErrorCode::kInvalidGame, "decision node without actions");
  }
  const int id = static_cast<int>(nodes_.size());
  Node n;
  n.kind = NodeKind::kDecision;
  n.seat = seat;
  n.action_list = InternActions(actions);
  n.children.assign(actions.size(), -1);
  auto [it, inserted] = infoset_lookup_.try_emplace(
      std::make_pair(seat, infoset_label),
      static_cast<int>(infosets_.size()));
  if (inserted) {
    Infoset info;
    info.id = it->second;
    info.seat = seat;
    info.label = infoset_label;
    info.action_list = n.action_list;
    infosets_.push_back(std::move(info));
  }
  n.infoset = it->second;
  infosets_[n.infoset].members.push_back(id);
  nodes_.push_back(std::move(n));
  return id;
}

int GameBuilder::AddTerminal(const std::array<double, kNumSeats>& payoffs) {
  Node n;
  n.kind = NodeKind::kTerminal;
  n.payoffs = payoffs;
  nodes_.push_back(std::move(n));
  return static_cast<int>(nodes_.size()) - 1;
}

void GameBuilder::SetChild(int node, int branch, int child) {
  nodes_.at(node).children.at(branch) = child;
}

std::shared_ptr<const Game> GameBuilder::BuildUnchecked() && {
  for (int id = 0; id < static_cast<int>(nodes_.size()); ++id) {
    const Node& n = nodes_[id];
    for (int b = 0; b < static_cast<int>(n.children.size()); ++b) {
      const int c = n.children[b];
      if (c < 0 || c >= static_cast<int>(nodes_.size())) continue;
      nodes_[c].parent = id;
      nodes_[c].parent_branch = b;
    }
  }
  // Chance reach, parents before children.
  std::vector<char> seen(nodes_.size(), 0);
  std::vector<int> stack;
  if (!nodes_.empty()) stack.push_back(0);
  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    if (seen[id]) continue;
    seen[id] = 1;
    const Node& n = nodes_[id];
    for (int b = 0; b < static_cast<int>(n.children.size()); ++b) {
      const int c = n.children[b];
      if (c < 0 || c >= static_cast<int>(nodes_.size())) continue;
      double p = n.chance_reach;
      if (n.kind == NodeKind::kChance) p *= n.chance_probs[b];
      nodes_[c].chance_reach = p;
      stack.push_back(c);
    }
  }
  auto game = std::make_shared<Game>(std::move(nodes_), std::move(infosets_),
                                     std::move(action_labels_));
  return game;
}

std::shared_ptr<const Game> GameBuilder::Build() && {
  auto game = std::move(*this).BuildUnchecked();
  ValidationReport report = Validate(*game);
  if (!report.ok()) {
    throw Error(ErrorCode::kInvalidGame, report.Summary());
  }
  return game;
}

// ---------------------------------------------------------------------------
// Validation

const char* DefectCategoryName(DefectCategory category) {
  switch (category) {
    case DefectCategory::kNonNormalizedChance: return "NonNormalizedChance";
    case DefectCategory::kActionMismatch: return "ActionMismatch";
    case DefectCategory::kPerfectRecallViolation:
      return "PerfectRecallViolation";
    case DefectCategory::kNotZeroSum: return "NotZeroSum";
    case DefectCategory::kBadChanceReach: return "BadChanceReach";
    case DefectCategory::kMalformed: return "Malformed";
  }
  return "?";
}

bool ValidationReport::Has(DefectCategory category) const {
  return std::any_of(defects.begin(), defects.end(),
                     [&](const Defect& d) { return d.category == category; });
}

std::string ValidationReport::Summary() const {
  if (defects.empty()) return "no defects";
  std::ostringstream out;
  out << defects.size() << " defect(s); first: "
      << DefectCategoryName(defects.front().category);
  if (defects.front().node >= 0) out << " at node " << defects.front().node;
  if (defects.front().infoset >= 0) {
    out << " in infoset " << defects.front().infoset;
  }
  if (!defects.front().message.empty()) {
    out << " (" << defects.front().message << ")";
  }
  return out.str();
}

ValidationReport Validate(const Game& game) {
  ValidationReport report;
  auto add = [&](DefectCategory c, int node, int infoset, std::string msg) {
    report.defects.push_back({c, node, infoset, std::move(msg)});
  };
  if (!game.well_formed()) {
    add(DefectCategory::kMalformed, -1, -1,
        "tree has unreachable, shared, or dangling nodes");
    return report;
  }

  const int num_nodes = game.num_nodes();
  // Owner's last (infoset, action) on the path, encoded as infoset * 2^20 +
  // action + 1 (0 = empty sequence); one entry per seat per node.
  std::vector<std::array<std::int64_t, kNumSeats>> last_seq(num_nodes);
  std::vector<double> reach(num_nodes, 1.0);
  for (int id : game.preorder()) {
    const Node& n = game.node(id);
    if (n.parent < 0) {
      last_seq[id] = {0, 0, 0};
      reach[id] = 1.0;
    }
    switch (n.kind) {
      case NodeKind::kChance: {
        double sum = 0.0;
        bool negative = false;
        for (double p : n.chance_probs) {
          sum += p;
          negative |= p < 0.0;
        }
        if (negative || std::abs(sum - 1.0) > kChanceSumTol ||
            n.chance_probs.size() != n.children.size()) {
          add(DefectCategory::kNonNormalizedChance, id, -1,
              "probabilities sum to " + std::to_string(sum));
        }
        for (int b = 0; b < static_cast<int>(n.children.size()); ++b) {
          const int c = n.children[b];
          last_seq[c] = last_seq[id];
          reach[c] = reach[id] *
                     (b < static_cast<int>(n.chance_probs.size())
                          ? n.chance_probs[b]
                          : 0.0);
        }
        break;
      }
      case NodeKind::kDecision: {
        if (n.infoset < 0 || n.infoset >= game.num_infosets()) {
          add(DefectCategory::kMalformed, id, n.infoset, "bad infoset id");
          break;
        }
        const Infoset& info = game.infoset(n.infoset);
        if (info.seat != n.seat) {
          add(DefectCategory::kMalformed, id, n.infoset,
              "node seat differs from infoset owner");
        }
        if (n.action_list != info.action_list ||
            n.children.size() != game.actions(n.infoset).size()) {
          add(DefectCategory::kActionMismatch, id, n.infoset,
              "member action list differs from the infoset's");
        }
        for (int b = 0; b < static_cast<int>(n.children.size()); ++b) {
          const int c = n.children[b];
          last_seq[c] = last_seq[id];
          last_seq[c][n.seat] =
              (static_cast<std::int64_t>(n.infoset) << 20) + b + 1;
          reach[c] = reach[id];
        }
        break;
      }
      case NodeKind::kTerminal: {
        const double total = n.payoffs[0] + n.payoffs[1] + n.payoffs[2];
        if (std::abs(total) > kZeroSumTol) {
          add(DefectCategory::kNotZeroSum, id, -1,
              "payoffs sum to " + std::to_string(total));
        }
        if (std::abs(reach[id] - n.chance_reach) > kReachTol) {
          add(DefectCategory::kBadChanceReach, id, -1,
              "stored " + std::to_string(n.chance_reach) + ", path gives " +
                  std::to_string(reach[id]));
        }
        break;
      }
    }
  }

  for (const Infoset& info : game.infosets()) {
    if (info.members.empty()) continue;
    const int first = info.members.front();
    for (int m : info.members) {
      if (game.node(m).kind != NodeKind::kDecision || game.node(m).seat < 0) {
        continue;
      }
      if (last_seq[m][info.seat] != last_seq[first][info.seat]) {
        add(DefectCategory::kPerfectRecallViolation, m, info.id,
            "members disagree on the owner's previous sequence");
        break;
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Sequences

SequenceIndex::SequenceIndex(const Game& game, int seat)
    : seat_(seat),
      first_seq_(game.num_infosets(), -1),
      num_actions_(game.num_infosets(), 0),
      parent_seq_(game.num_infosets(), -1) {
  seq_infoset_.push_back(-1);
  seq_action_.push_back(-1);
  for (const Infoset& info : game.infosets()) {
    if (info.seat != seat) continue;
    infosets_.push_back(info.id);
    first_seq_[info.id] = static_cast<int>(seq_infoset_.size());
    num_actions_[info.id] = game.num_actions(info.id);
    for (int a = 0; a < num_actions_[info.id]; ++a) {
      seq_infoset_.push_back(info.id);
      seq_action_.push_back(a);
    }
  }

  std::vector<int> current(game.num_nodes(), 0);
  for (int id : game.preorder()) {
    const Node& n = game.node(id);
    const bool own = n.kind == NodeKind::kDecision && n.seat == seat;
    if (own && parent_seq_[n.infoset] < 0) {
      parent_seq_[n.infoset] = current[id];
    }
    for (int b = 0; b < static_cast<int>(n.children.size()); ++b) {
      current[n.children[b]] = own ? first_seq_[n.infoset] + b : current[id];
    }
  }

  child_infosets_.resize(seq_infoset_.size());
  std::vector<int> depth(game.num_infosets(), -1);
  for (int info : infosets_) {
    if (parent_seq_[info] < 0) parent_seq_[info] = 0;  // unreachable infoset
    child_infosets_[parent_seq_[info]].push_back(info);
  }
  // Depth via memoized walk up the parent-sequence chain.
  for (int info : infosets_) {
    std::vector<int> chain;
    int cur = info;
    while (cur >= 0 && depth[cur] < 0) {
      chain.push_back(cur);
      const int p = parent_seq_[cur];
      cur = p == 0 ? -1 : seq_infoset_[p];
    }
    int d = cur < 0 ? -1 : depth[cur];
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) depth[*it] = ++d;
  }
  topo_ = infosets_;
  std::stable_sort(topo_.begin(), topo_.end(),
                   [&](int a, int b) { return depth[a] < depth[b]; });
}

int SequenceIndex::parent(int seq) const {
  if (seq == 0) return -1;
  return parent_seq_[seq_infoset_[seq]];
}

std::vector<int> SequencesAtNodes(const Game& game,
                                  const SequenceIndex& index) {
  std::vector<int> current(game.num_nodes(), 0);
  for (int id : game.preorder()) {
    const Node& n = game.node(id);
    const bool own = n.kind == NodeKind::kDecision && n.seat == index.seat();
    for (int b = 0; b < static_cast<int>(n.children.size()); ++b) {
      current[n.children[b]] =
          own ? index.first_sequence(n.infoset) + b : current[id];
    }
  }
  return current;
}

TeamGame::TeamGame(std::shared_ptr<const Game> game,
                   SeatAssignment assignment)
    : game_(std::move(game)),
      assignment_(assignment),
      t1_(*game_, assignment.team_one()),
      t2_(*game_, assignment.team_two()),
      opp_(*game_, assignment.opponent()) {
  const std::vector<int> s1 = SequencesAtNodes(*game_, t1_);
  const std::vector<int> s2 = SequencesAtNodes(*game_, t2_);
  const std::vector<int> so = SequencesAtNodes(*game_, opp_);
  terminals_.reserve(game_->num_leaves());
  for (int leaf : game_->leaves()) {
    const Node& n = game_->node(leaf);
    TerminalRecord r;
    r.leaf = leaf;
    r.seq_t1 = s1[leaf];
    r.seq_t2 = s2[leaf];
    r.seq_opp = so[leaf];
    r.team_payoff = (n.payoffs[assignment.team_one()] +
                     n.payoffs[assignment.team_two()]) *
                    n.chance_reach;
    terminals_.push_back(r);
  }
}

const SequenceIndex& TeamGame::sequences(PlayerRole role) const {
  switch (role) {
    case PlayerRole::kTeamOne: return t1_;
    case PlayerRole::kTeamTwo: return t2_;
    case PlayerRole::kOpponent: return opp_;
    case PlayerRole::kChance: break;
  }
  throw Error(ErrorCode::kInvalidArgument, "chance has no sequences");
}

double SequenceFormViolation(const SequenceIndex& index,
                             std::span<const double> values) {
  if (static_cast<int>(values.size()) != index.size()) {
    return std::numeric_limits<double>::infinity();
  }
  double worst = std::abs(values[0] - 1.0);
  for (double v : values) worst = std::max(worst, -v);
  for (int info : index.infosets()) {
    double sum = 0.0;
    const int first = index.first_sequence(info);
    for (int a = 0; a < index.num_actions(info); ++a) sum += values[first + a];
    worst = std::max(worst,
                     std::abs(sum - values[index.parent_sequence(info)]));
  }
  return worst;
}

double OpponentBestResponse(const TeamGame& team,
                            std::span<const double> leaf_weights,
                            std::vector<double>* opponent_strategy) {
  const SequenceIndex& opp = team.opponent();
  const auto& terminals = team.terminals();
  if (leaf_weights.size() != terminals.size()) {
    throw Error(ErrorCode::kIndexMismatch,
                "leaf weight vector does not match the terminal records");
  }
  std::vector<double> value(opp.size(), 0.0);
  for (std::size_t k = 0; k < terminals.size(); ++k) {
    value[terminals[k].seq_opp] +=
        terminals[k].team_payoff * leaf_weights[k];
  }
  const auto& topo = opp.infosets_topological();
  std::vector<int> best_action(team.game().num_infosets(), 0);
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    const int info = *it;
    const int first = opp.first_sequence(info);
    int best = 0;
    for (int a = 1; a < opp.num_actions(info); ++a) {
      if (value[first + a] < value[first + best]) best = a;
    }
    best_action[info] = best;
    value[opp.parent_sequence(info)] += value[first + best];
  }
  if (opponent_strategy != nullptr) {
    std::vector<double>& y = *opponent_strategy;
    y.assign(opp.size(), 0.0);
    y[0] = 1.0;
    for (int info : topo) {
      const double mass = y[opp.parent_sequence(info)];
      y[opp.first_sequence(info) + best_action[info]] = mass;
    }
  }
  return value[0];
}

double OpponentBestResponseValue(const TeamGame& team,
                                 std::span<const double> leaf_weights) {
  return OpponentBestResponse(team, leaf_weights, nullptr);
}

}  // namespace teamsolve
