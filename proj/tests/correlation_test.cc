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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <set>

#include "teamsolve/correlation.h"
#include "teamsolve/games.h"

namespace teamsolve {
namespace {

std::shared_ptr<const TeamGame> MakeTeam(const char* name, int opponent) {
  return std::make_shared<const TeamGame>(BuildGame(LookupGame(name).spec),
                                          SeatAssignment::WithOpponent(opponent));
}

// Connected infoset pairs by checking every (team-one node, team-two node)
// pair for an ancestor relation.
std::set<std::pair<int, int>> NaiveConnectivity(const TeamGame& team) {
  const Game& g = team.game();
  const int one = team.assignment().team_one();
  const int two = team.assignment().team_two();
  auto is_ancestor = [&](int a, int n) {
    for (; n >= 0; n = g.node(n).parent) {
      if (n == a) return true;
    }
    return false;
  };
  std::vector<int> ones, twos;
  for (int n = 0; n < g.num_nodes(); ++n) {
    if (g.node(n).kind != NodeKind::kDecision) continue;
    if (g.node(n).seat == one) ones.push_back(n);
    if (g.node(n).seat == two) twos.push_back(n);
  }
  std::set<std::pair<int, int>> out;
  for (int u : ones) {
    for (int v : twos) {
      if (is_ancestor(u, v) || is_ancestor(v, u)) {
        out.insert({g.node(u).infoset, g.node(v).infoset});
      }
    }
  }
  return out;
}

int NaivePairCount(const TeamGame& team) {
  int count = team.team_one().size() + team.team_two().size() - 1;
  for (auto [i, j] : NaiveConnectivity(team)) {
    count += team.game().num_actions(i) * team.game().num_actions(j);
  }
  return count;
}

bool NaiveTriangleFree(const TeamGame& team) {
  const auto conn = NaiveConnectivity(team);
  const SequenceIndex& s1 = team.team_one();
  const SequenceIndex& s2 = team.team_two();
  for (int i1 : s1.infosets()) {
    for (int i2 : s1.infosets()) {
      if (i1 == i2 || s1.parent_sequence(i1) != s1.parent_sequence(i2)) continue;
      for (int j1 : s2.infosets()) {
        for (int j2 : s2.infosets()) {
          if (j1 == j2 || s2.parent_sequence(j1) != s2.parent_sequence(j2)) {
            continue;
          }
          if (conn.count({i1, j1}) && conn.count({i2, j2}) &&
              conn.count({i1, j2})) {
            return false;
          }
        }
      }
    }
  }
  return true;
}

ReducedPlan RandomPlan(const Game& g, std::mt19937_64& rng) {
  ReducedPlan plan(g.num_infosets());
  for (int i = 0; i < g.num_infosets(); ++i) {
    plan[i] = static_cast<int>(rng() % g.num_actions(i));
  }
  return plan;
}

TEST_CASE("relevant pairs of kuhn") {
  CHECK(RelevantPairs(MakeTeam("kuhn3", 2))->size() == 265);
  CHECK(RelevantPairs(MakeTeam("kuhn4", 2))->size() == 497);
}

TEST_CASE("relevant pairs match naive enumeration") {
  for (const char* name : {"kuhn3", "kuhn4"}) {
    for (int opp = 0; opp < kNumSeats; ++opp) {
      auto team = MakeTeam(name, opp);
      auto index = RelevantPairs(team);
      CHECK(index->size() == NaivePairCount(*team));
      CHECK(index->connectivity().num_connected_pairs() ==
            static_cast<std::int64_t>(NaiveConnectivity(*team).size()));
    }
  }
  GameSpec small = GameSpec::Leduc(2, 1);
  auto team = std::make_shared<const TeamGame>(BuildGame(small),
                                               SeatAssignment::WithOpponent(0));
  CHECK(RelevantPairs(team)->size() == NaivePairCount(*team));
}

TEST_CASE("pair index layout") {
  auto index = RelevantPairs(MakeTeam("kuhn3", 1));
  CHECK(index->seq_one(0) == 0);
  CHECK(index->seq_two(0) == 0);
  for (int p = 0; p < index->size(); ++p) {
    CHECK(index->Find(index->seq_one(p), index->seq_two(p)) == p);
  }
  for (int s = 0; s < index->team().team_two().size(); ++s) {
    CHECK(index->Find(0, s) == index->EmptyOnePair(s));
  }
  for (int s = 0; s < index->team().team_one().size(); ++s) {
    CHECK(index->seq_two(index->RowBegin(s)) == 0);
  }
  for (const LeafTriple& t : index->leaves()) CHECK(t.pair >= 0);
  CHECK(index->Find(99, 0) == -1);
}

TEST_CASE("all pairs relevant when both members act on every path") {
  GameBuilder b;
  const int root = b.AddDecision(0, "A", {"x", "y"});
  for (int a = 0; a < 2; ++a) {
    const int d = b.AddDecision(1, "B", {"l", "r"});
    b.SetChild(root, a, d);
    b.SetChild(d, 0, b.AddTerminal({1, 0, -1}));
    b.SetChild(d, 1, b.AddTerminal({0, 0, 0}));
  }
  auto team = std::make_shared<const TeamGame>(std::move(b).Build(),
                                               SeatAssignment::WithOpponent(2));
  auto index = RelevantPairs(team);
  CHECK(index->size() == 9);
  CHECK(IsTriangleFree(*team));
}

TEST_CASE("disjoint chance branches are not connected") {
  GameBuilder b;
  const int root = b.AddChance({0.5, 0.5});
  const int d0 = b.AddDecision(0, "A", {"x", "y"});
  const int d1 = b.AddDecision(1, "B", {"l", "r"});
  b.SetChild(root, 0, d0);
  b.SetChild(root, 1, d1);
  for (int node : {d0, d1}) {
    b.SetChild(node, 0, b.AddTerminal({0, 0, 0}));
    b.SetChild(node, 1, b.AddTerminal({0, 0, 0}));
  }
  auto team = std::make_shared<const TeamGame>(std::move(b).Build(),
                                               SeatAssignment::WithOpponent(2));
  auto index = RelevantPairs(team);
  CHECK_FALSE(index->connectivity().Connected(0, 1));
  CHECK(index->size() == 3 + 3 - 1);
}

TEST_CASE("vsf row count of kuhn3") {
  auto index = RelevantPairs(MakeTeam("kuhn3", 2));
  VsfSystem sys = VsfConstraints(*index);
  const TeamGame& team = index->team();
  int expect_one = 0, expect_two = 0;
  for (int i : team.team_one().infosets()) {
    ++expect_one;
    for (int j : index->connectivity().TeamTwoNeighbors(i)) {
      expect_one += team.game().num_actions(j);
    }
  }
  for (int j : team.team_two().infosets()) {
    ++expect_two;
    for (int i : index->connectivity().TeamOneNeighbors(j)) {
      expect_two += team.game().num_actions(i);
    }
  }
  CHECK(sys.num_team_one_rows == expect_one);
  CHECK(sys.num_team_two_rows == expect_two);
  CHECK(sys.num_rows() == 1 + expect_one + expect_two);
  CHECK(sys.num_rows() == 241);
}

TEST_CASE("pure profile plans satisfy the vsf system exactly") {
  std::mt19937_64 rng(7);
  for (const char* name : {"kuhn3", "goofspiel-limited", "leduc31"}) {
    auto index = RelevantPairs(MakeTeam(name, 2));
    VsfSystem sys = VsfConstraints(*index);
    const Game& g = index->team().game();
    for (int trial = 0; trial < 5; ++trial) {
      CorrelationPlan plan =
          PlanFromPureProfile(index, RandomPlan(g, rng), RandomPlan(g, rng));
      CHECK(plan.values[0] == 1.0);
      CHECK(sys.MaxViolation(plan.values) == 0.0);
      for (double v : plan.values) CHECK((v == 0.0 || v == 1.0));
      CHECK(IsSemiRandomized(plan, PlayerRole::kTeamOne, 0.0));
      CHECK(IsSemiRandomized(plan, PlayerRole::kTeamTwo, 0.0));
      CHECK(IsProductPlan(plan, 0.0));
    }
  }
}

TEST_CASE("violation detects scaled empty entry") {
  auto index = RelevantPairs(MakeTeam("kuhn3", 2));
  VsfSystem sys = VsfConstraints(*index);
  CorrelationPlan plan = PlanFromPureProfile(
      index, ReducedPlan(36, 0), ReducedPlan(36, 0));
  plan.values[0] = 0.9;
  CHECK(sys.MaxViolation(plan.values) >= 0.1 - 1e-12);
}

TEST_CASE("check-fold plan never bets") {
  auto index = RelevantPairs(MakeTeam("kuhn3", 2));
  const TeamGame& team = index->team();
  std::mt19937_64 rng(3);
  CorrelationPlan plan = PlanFromPureProfile(
      index, ReducedPlan(36, 0), RandomPlan(team.game(), rng));
  int bets = 0;
  for (int p = 0; p < index->size(); ++p) {
    const int s1 = index->seq_one(p);
    if (s1 == 0) continue;
    const int info = team.team_one().infoset_of(s1);
    if (team.game().actions(info)[team.team_one().action_of(s1)] == "bet") {
      ++bets;
      CHECK(plan.values[p] == 0.0);
    }
  }
  CHECK(bets > 0);
}

TEST_CASE("incomplete plan is rejected") {
  auto index = RelevantPairs(MakeTeam("kuhn3", 2));
  ReducedPlan partial(36, 0);
  partial[index->team().team_one().infosets().front()] = -1;
  try {
    PlanFromPureProfile(index, partial, ReducedPlan(36, 0));
    FAIL("expected kPlanIncomplete");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kPlanIncomplete);
  }
}

TEST_CASE("mixture of pure plans is their average") {
  auto index = RelevantPairs(MakeTeam("kuhn3", 0));
  const Game& g = index->team().game();
  std::mt19937_64 rng(11);
  const ReducedPlan a1 = RandomPlan(g, rng), a2 = RandomPlan(g, rng);
  const ReducedPlan b1 = RandomPlan(g, rng), b2 = RandomPlan(g, rng);
  CorrelationPlan pa = PlanFromPureProfile(index, a1, a2);
  CorrelationPlan pb = PlanFromPureProfile(index, b1, b2);
  // Mixture by definition: probability both sequences are played.
  std::vector<double> ya1 = PureSequenceForm(index->team().team_one(), a1);
  std::vector<double> ya2 = PureSequenceForm(index->team().team_two(), a2);
  std::vector<double> yb1 = PureSequenceForm(index->team().team_one(), b1);
  std::vector<double> yb2 = PureSequenceForm(index->team().team_two(), b2);
  for (int p = 0; p < index->size(); ++p) {
    const int s1 = index->seq_one(p), s2 = index->seq_two(p);
    const double mix = 0.5 * ya1[s1] * ya2[s2] + 0.5 * yb1[s1] * yb2[s2];
    CHECK(mix == 0.5 * pa.values[p] + 0.5 * pb.values[p]);
  }
}

TEST_CASE("mixture differing for both members is not a product") {
  auto index = RelevantPairs(MakeTeam("kuhn3", 2));
  const TeamGame& team = index->team();
  // Both members bet everywhere vs. both check/fold everywhere; the first
  // member's bet and the second member's response share a path.
  ReducedPlan zeros(36, 0), ones(36, 0);
  for (int i = 0; i < 36; ++i) {
    ones[i] = team.game().num_actions(i) > 1 ? 1 : 0;
  }
  CorrelationPlan a = PlanFromPureProfile(index, zeros, zeros);
  CorrelationPlan b = PlanFromPureProfile(index, ones, ones);
  CorrelationPlan mix = a;
  for (int p = 0; p < index->size(); ++p) {
    mix.values[p] = 0.5 * a.values[p] + 0.5 * b.values[p];
  }
  CHECK(VsfConstraints(*index).MaxViolation(mix.values) < 1e-15);
  CHECK_FALSE(IsProductPlan(mix, 1e-3));
  CHECK_FALSE(IsSemiRandomized(mix, PlayerRole::kTeamOne, 1e-3));
  CHECK_FALSE(IsSemiRandomized(mix, PlayerRole::kTeamTwo, 1e-3));
}

// Sequence-form vector of uniform behavior.
std::vector<double> UniformSequenceForm(const Game& g, const SequenceIndex& s) {
  std::vector<double> y(s.size(), 0.0);
  y[0] = 1.0;
  for (int i : s.infosets_topological()) {
    for (int a = 0; a < s.num_actions(i); ++a) {
      y[s.first_sequence(i) + a] =
          y[s.parent_sequence(i)] / static_cast<double>(g.num_actions(i));
    }
  }
  return y;
}

TEST_CASE("uniform product plan") {
  auto index = RelevantPairs(MakeTeam("kuhn3", 2));
  const TeamGame& team = index->team();
  const auto y1 = UniformSequenceForm(team.game(), team.team_one());
  const auto y2 = UniformSequenceForm(team.game(), team.team_two());
  CorrelationPlan plan = PlanFromProduct(index, y1, y2);
  for (int p = 0; p < index->size(); ++p) {
    // Path probability: 1/2 per own decision on the sequence's path.
    auto depth = [](const SequenceIndex& s, int seq) {
      int d = 0;
      for (; seq != 0; seq = s.parent(seq)) ++d;
      return d;
    };
    const double expect = std::pow(0.5, depth(team.team_one(), index->seq_one(p)) +
                                            depth(team.team_two(), index->seq_two(p)));
    CHECK(plan.values[p] == doctest::Approx(expect).epsilon(1e-15));
  }
  CHECK(VsfConstraints(*index).MaxViolation(plan.values) < 1e-9);
  CHECK(IsProductPlan(plan, 1e-9));
  CHECK_FALSE(IsSemiRandomized(plan, PlayerRole::kTeamTwo, 1e-6));

  std::mt19937_64 rng(5);
  const auto pure2 = PureSequenceForm(team.team_two(), RandomPlan(team.game(), rng));
  CorrelationPlan semi = PlanFromProduct(index, y1, pure2);
  CHECK(IsSemiRandomized(semi, PlayerRole::kTeamTwo, 0.0));
  CHECK_FALSE(IsSemiRandomized(semi, PlayerRole::kTeamOne, 1e-6));
  CHECK(VsfConstraints(*index).MaxViolation(semi.values) < 1e-9);
}

TEST_CASE("pure product equals pure profile") {
  auto index = RelevantPairs(MakeTeam("leduc31", 1));
  const TeamGame& team = index->team();
  std::mt19937_64 rng(9);
  const ReducedPlan p1 = RandomPlan(team.game(), rng);
  const ReducedPlan p2 = RandomPlan(team.game(), rng);
  CorrelationPlan a = PlanFromPureProfile(index, p1, p2);
  CorrelationPlan b = PlanFromProduct(index, PureSequenceForm(team.team_one(), p1),
                                      PureSequenceForm(team.team_two(), p2));
  CHECK(a.values == b.values);
}

TEST_CASE("plans over a different index are rejected") {
  auto a = RelevantPairs(MakeTeam("kuhn3", 2));
  auto b = RelevantPairs(MakeTeam("kuhn3", 1));
  CorrelationPlan plan = PlanFromPureProfile(a, ReducedPlan(36, 0),
                                             ReducedPlan(36, 0));
  CHECK_NOTHROW(CheckPlanIndex(plan, *a));
  try {
    CheckPlanIndex(plan, *b);
    FAIL("expected kIndexMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kIndexMismatch);
  }
}

TEST_CASE("triangle freeness matches definition") {
  for (const char* name : {"kuhn3", "kuhn4"}) {
    for (int opp = 0; opp < kNumSeats; ++opp) {
      auto team = MakeTeam(name, opp);
      CHECK(IsTriangleFree(*team) == NaiveTriangleFree(*team));
      CHECK_FALSE(IsTriangleFree(*team));
    }
  }
  auto leduc = std::make_shared<const TeamGame>(
      BuildGame(GameSpec::Leduc(2, 1)), SeatAssignment::WithOpponent(1));
  CHECK(IsTriangleFree(*leduc) == NaiveTriangleFree(*leduc));
}

TEST_CASE("triangle freeness of benchmark families") {
  for (int opp = 0; opp < kNumSeats; ++opp) {
    CHECK(IsTriangleFree(*MakeTeam("goofspiel-limited", opp)));
    CHECK(IsTriangleFree(*MakeTeam("goofspiel", opp)));
    CHECK_FALSE(IsTriangleFree(*MakeTeam("leduc31", opp)));
  }
}

TEST_CASE("plan value of a pure profile") {
  auto index = RelevantPairs(MakeTeam("kuhn3", 2));
  CorrelationPlan plan = PlanFromPureProfile(index, ReducedPlan(36, 0),
                                             ReducedPlan(36, 0));
  // Both team members check and fold; the opponent bets last to act and
  // collects both antes on every deal.
  CHECK(PlanValue(plan) == doctest::Approx(-2.0).epsilon(1e-12));
}

}  // namespace
}  // namespace teamsolve
