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

#include "teamsolve/correlation.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <unordered_map>

namespace teamsolve {
namespace {

void SortUnique(std::vector<int>* v) {
  std::sort(v->begin(), v->end());
  v->erase(std::unique(v->begin(), v->end()), v->end());
}

std::uint64_t Mix(std::uint64_t h, std::uint64_t x) {
  h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

}  // namespace

Connectivity::Connectivity(const TeamGame& team) {
  const Game& g = team.game();
  const int one = team.assignment().team_one();
  const int two = team.assignment().team_two();
  t1_adj_.assign(g.num_infosets(), {});
  t2_adj_.assign(g.num_infosets(), {});
  std::vector<int> stack_one, stack_two;
  std::function<void(int)> visit = [&](int id) {
    const Node& n = g.node(id);
    if (n.kind == NodeKind::kTerminal) return;
    bool pushed_one = false, pushed_two = false;
    if (n.kind == NodeKind::kDecision && n.seat == one) {
      auto& adj = t1_adj_[n.infoset];
      adj.insert(adj.end(), stack_two.begin(), stack_two.end());
      stack_one.push_back(n.infoset);
      pushed_one = true;
    } else if (n.kind == NodeKind::kDecision && n.seat == two) {
      auto& adj = t2_adj_[n.infoset];
      adj.insert(adj.end(), stack_one.begin(), stack_one.end());
      stack_two.push_back(n.infoset);
      pushed_two = true;
    }
    for (int c : n.children) visit(c);
    if (pushed_one) stack_one.pop_back();
    if (pushed_two) stack_two.pop_back();
  };
  visit(g.root());
  // Each recorded edge is directed (descendant -> ancestor); symmetrize.
  for (int i = 0; i < g.num_infosets(); ++i) {
    for (int j : t1_adj_[i]) t2_adj_[j].push_back(i);
  }
  for (int j = 0; j < g.num_infosets(); ++j) {
    SortUnique(&t2_adj_[j]);
    for (int i : t2_adj_[j]) t1_adj_[i].push_back(j);
  }
  for (int i = 0; i < g.num_infosets(); ++i) {
    SortUnique(&t1_adj_[i]);
    num_edges_ += static_cast<std::int64_t>(t1_adj_[i].size());
  }
}

bool Connectivity::Connected(int i, int j) const {
  if (i < 0 || i >= static_cast<int>(t1_adj_.size())) return false;
  return std::binary_search(t1_adj_[i].begin(), t1_adj_[i].end(), j);
}

std::shared_ptr<const RelevantPairIndex> RelevantPairIndex::Build(
    std::shared_ptr<const TeamGame> team) {
  return std::make_shared<const RelevantPairIndex>(std::move(team));
}

RelevantPairIndex::RelevantPairIndex(std::shared_ptr<const TeamGame> team)
    : team_(std::move(team)), connectivity_(*team_) {
  const SequenceIndex& s1 = team_->team_one();
  const SequenceIndex& s2 = team_->team_two();
  row_start_.assign(s1.size() + 1, 0);
  std::vector<int> cols;
  for (int a = 0; a < s1.size(); ++a) {
    cols.clear();
    if (a == 0) {
      for (int b = 0; b < s2.size(); ++b) cols.push_back(b);
    } else {
      cols.push_back(0);
      for (int j : connectivity_.TeamTwoNeighbors(s1.infoset_of(a))) {
        const int first = s2.first_sequence(j);
        for (int k = 0; k < s2.num_actions(j); ++k) cols.push_back(first + k);
      }
      std::sort(cols.begin(), cols.end());
    }
    for (int b : cols) {
      seq_one_.push_back(a);
      seq_two_.push_back(b);
    }
    row_start_[a + 1] = static_cast<int>(seq_one_.size());
  }

  for (const TerminalRecord& r : team_->terminals()) {
    LeafTriple t;
    t.pair = Find(r.seq_t1, r.seq_t2);
    if (t.pair < 0) {
      throw Error(ErrorCode::kInvalidGame,
                  "leaf " + std::to_string(r.leaf) +
                      " has an irrelevant team sequence pair");
    }
    t.seq_opp = r.seq_opp;
    t.team_payoff = r.team_payoff;
    leaves_.push_back(t);
  }

  std::uint64_t h = reinterpret_cast<std::uintptr_t>(&team_->game());
  h = Mix(h, static_cast<std::uint64_t>(team_->assignment().opponent()));
  h = Mix(h, static_cast<std::uint64_t>(size()));
  for (int x : row_start_) h = Mix(h, static_cast<std::uint64_t>(x));
  for (int x : seq_two_) h = Mix(h, static_cast<std::uint64_t>(x));
  fingerprint_ = h;
}

int RelevantPairIndex::Find(int s1, int s2) const {
  if (s1 < 0 || s1 + 1 >= static_cast<int>(row_start_.size())) return -1;
  auto begin = seq_two_.begin() + row_start_[s1];
  auto end = seq_two_.begin() + row_start_[s1 + 1];
  auto it = std::lower_bound(begin, end, s2);
  if (it == end || *it != s2) return -1;
  return static_cast<int>(it - seq_two_.begin());
}

double VsfSystem::MaxViolation(std::span<const double> values) const {
  double worst = 0.0;
  for (double v : values) worst = std::max(worst, -v);
  for (int r = 0; r < num_rows(); ++r) {
    double lhs = 0.0;
    for (int k = row_start[r]; k < row_start[r + 1]; ++k) {
      lhs += coefs[k] * values[cols[k]];
    }
    worst = std::max(worst, std::abs(lhs - rhs[r]));
  }
  return worst;
}

VsfSystem VsfConstraints(const RelevantPairIndex& index) {
  const SequenceIndex& s1 = index.team().team_one();
  const SequenceIndex& s2 = index.team().team_two();
  const Connectivity& conn = index.connectivity();
  VsfSystem sys;
  sys.num_cols = index.size();
  auto add_term = [&](int col, double coef) {
    if (col < 0) {
      throw Error(ErrorCode::kInvalidGame,
                  "sequence-form row references an irrelevant pair");
    }
    sys.cols.push_back(col);
    sys.coefs.push_back(coef);
  };
  auto end_row = [&](double rhs) {
    sys.rhs.push_back(rhs);
    sys.row_start.push_back(static_cast<int>(sys.cols.size()));
  };

  add_term(0, 1.0);
  end_row(1.0);

  std::vector<int> partners;
  for (int i : s1.infosets()) {
    partners.assign(1, 0);
    for (int j : conn.TeamTwoNeighbors(i)) {
      for (int k = 0; k < s2.num_actions(j); ++k) {
        partners.push_back(s2.first_sequence(j) + k);
      }
    }
    for (int b : partners) {
      for (int a = 0; a < s1.num_actions(i); ++a) {
        add_term(index.Find(s1.first_sequence(i) + a, b), 1.0);
      }
      add_term(index.Find(s1.parent_sequence(i), b), -1.0);
      end_row(0.0);
      ++sys.num_team_one_rows;
    }
  }
  for (int j : s2.infosets()) {
    partners.assign(1, 0);
    for (int i : conn.TeamOneNeighbors(j)) {
      for (int k = 0; k < s1.num_actions(i); ++k) {
        partners.push_back(s1.first_sequence(i) + k);
      }
    }
    for (int a : partners) {
      for (int b = 0; b < s2.num_actions(j); ++b) {
        add_term(index.Find(a, s2.first_sequence(j) + b), 1.0);
      }
      add_term(index.Find(a, s2.parent_sequence(j)), -1.0);
      end_row(0.0);
      ++sys.num_team_two_rows;
    }
  }
  return sys;
}

bool IsTriangleFree(const TeamGame& team, const Connectivity& connectivity) {
  const SequenceIndex& s1 = team.team_one();
  const SequenceIndex& s2 = team.team_two();
  // Sibling groups are keyed by parent sequence; only groups with at least
  // two infosets can host a triangle.
  auto group_sizes = [](const SequenceIndex& s) {
    std::vector<int> sizes(s.size(), 0);
    for (int i : s.infosets()) ++sizes[s.parent_sequence(i)];
    return sizes;
  };
  const std::vector<int> size1 = group_sizes(s1);
  const std::vector<int> size2 = group_sizes(s2);
  auto key = [](int infoset, int group) {
    return (static_cast<std::uint64_t>(infoset) << 32) |
           static_cast<std::uint32_t>(group);
  };
  // Degree of an infoset into a sibling group of the other member.
  std::unordered_map<std::uint64_t, int> deg1, deg2;
  for (int i : s1.infosets()) {
    const int gi = s1.parent_sequence(i);
    if (size1[gi] < 2) continue;
    for (int j : connectivity.TeamTwoNeighbors(i)) {
      const int gj = s2.parent_sequence(j);
      if (size2[gj] < 2) continue;
      ++deg1[key(i, gj)];
      ++deg2[key(j, gi)];
    }
  }
  for (int i : s1.infosets()) {
    const int gi = s1.parent_sequence(i);
    if (size1[gi] < 2) continue;
    for (int j : connectivity.TeamTwoNeighbors(i)) {
      const int gj = s2.parent_sequence(j);
      if (size2[gj] < 2) continue;
      // i plays I1, j plays J2: I1 reaches another J1 and J2 another I2.
      if (deg1[key(i, gj)] >= 2 && deg2[key(j, gi)] >= 2) return false;
    }
  }
  return true;
}

bool IsTriangleFree(const TeamGame& team) {
  return IsTriangleFree(team, Connectivity(team));
}

double CorrelationPlan::at(int s1, int s2) const {
  const int p = index->Find(s1, s2);
  return p < 0 ? 0.0 : values[p];
}

void CheckPlanIndex(const CorrelationPlan& plan,
                    const RelevantPairIndex& index) {
  if (plan.index == nullptr ||
      plan.index->fingerprint() != index.fingerprint() ||
      static_cast<int>(plan.values.size()) != index.size()) {
    throw Error(ErrorCode::kIndexMismatch,
                "correlation plan was built over a different pair index");
  }
}

std::vector<double> PureSequenceForm(const SequenceIndex& index,
                                     const ReducedPlan& plan) {
  std::vector<double> y(index.size(), 0.0);
  y[0] = 1.0;
  for (int i : index.infosets_topological()) {
    if (y[index.parent_sequence(i)] == 0.0) continue;
    const int a = i < static_cast<int>(plan.size()) ? plan[i] : -1;
    if (a < 0 || a >= index.num_actions(i)) {
      throw Error(ErrorCode::kPlanIncomplete,
                  "reduced plan has no valid action at reached infoset " +
                      std::to_string(i));
    }
    y[index.first_sequence(i) + a] = 1.0;
  }
  return y;
}

CorrelationPlan PlanFromPureProfile(
    std::shared_ptr<const RelevantPairIndex> index, const ReducedPlan& t1,
    const ReducedPlan& t2) {
  const std::vector<double> y1 = PureSequenceForm(index->team().team_one(), t1);
  const std::vector<double> y2 = PureSequenceForm(index->team().team_two(), t2);
  return PlanFromProduct(std::move(index), y1, y2);
}

CorrelationPlan PlanFromProduct(std::shared_ptr<const RelevantPairIndex> index,
                                std::span<const double> y1,
                                std::span<const double> y2) {
  if (static_cast<int>(y1.size()) != index->team().team_one().size() ||
      static_cast<int>(y2.size()) != index->team().team_two().size()) {
    throw Error(ErrorCode::kIndexMismatch,
                "strategy sizes do not match the team members' sequences");
  }
  CorrelationPlan plan;
  plan.values.resize(index->size());
  for (int p = 0; p < index->size(); ++p) {
    plan.values[p] = y1[index->seq_one(p)] * y2[index->seq_two(p)];
  }
  plan.index = std::move(index);
  return plan;
}

bool IsProductPlan(const CorrelationPlan& plan, double tol) {
  const RelevantPairIndex& index = *plan.index;
  for (int p = 0; p < index.size(); ++p) {
    const double m1 = plan.values[index.RowBegin(index.seq_one(p))];
    const double m2 = plan.values[index.EmptyOnePair(index.seq_two(p))];
    if (std::abs(plan.values[p] - m1 * m2) > tol) return false;
  }
  return true;
}

bool IsSemiRandomized(const CorrelationPlan& plan,
                      PlayerRole deterministic_member, double tol) {
  std::vector<double> m;
  if (deterministic_member == PlayerRole::kTeamOne) {
    m = TeamOneMarginal(plan);
  } else if (deterministic_member == PlayerRole::kTeamTwo) {
    m = TeamTwoMarginal(plan);
  } else {
    throw Error(ErrorCode::kInvalidArgument,
                "deterministic member must be a team member");
  }
  for (double v : m) {
    if (std::min(std::abs(v), std::abs(v - 1.0)) > tol) return false;
  }
  return true;
}

std::vector<double> TeamOneMarginal(const CorrelationPlan& plan) {
  const RelevantPairIndex& index = *plan.index;
  std::vector<double> m(index.team().team_one().size());
  // Row s1 always starts with (s1, empty).
  for (int s = 0; s < static_cast<int>(m.size()); ++s) {
    m[s] = plan.values[index.RowBegin(s)];
  }
  return m;
}

std::vector<double> TeamTwoMarginal(const CorrelationPlan& plan) {
  const RelevantPairIndex& index = *plan.index;
  std::vector<double> m(index.team().team_two().size());
  for (int s = 0; s < static_cast<int>(m.size()); ++s) {
    m[s] = plan.values[index.EmptyOnePair(s)];
  }
  return m;
}

std::vector<double> LeafWeights(const CorrelationPlan& plan) {
  std::vector<double> w;
  w.reserve(plan.index->leaves().size());
  for (const LeafTriple& t : plan.index->leaves()) w.push_back(plan.values[t.pair]);
  return w;
}

double PlanValue(const CorrelationPlan& plan) {
  return OpponentBestResponseValue(plan.index->team(), LeafWeights(plan));
}

}  // namespace teamsolve
