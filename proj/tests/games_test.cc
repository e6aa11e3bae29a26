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

#include <array>
#include <cmath>
#include <cstdlib>
#include <set>

#include "teamsolve/efg.h"
#include "teamsolve/games.h"

namespace teamsolve {
namespace {

struct Sizes {
  const char* name;
  int sequences;
  int leaves;
};

// Reference sizes of the benchmark suite.
constexpr Sizes kReferenceSizes[] = {
    {"kuhn3", 25, 78},
    {"kuhn4", 33, 312},
    {"kuhn12", 97, 17160},
    {"goofspiel-limited", 934, 1296},
    {"goofspiel", 1630, 1296},
    {"leduc31", 457, 4500},
    {"leduc22", 1443, 3786},
};

TEST_CASE("benchmark games match the reference sizes") {
  for (const Sizes& row : kReferenceSizes) {
    CAPTURE(row.name);
    auto game = BuildGame(LookupGame(row.name).spec);
    CHECK(Validate(*game).ok());
    CHECK(game->num_leaves() == row.leaves);
    for (int seat = 0; seat < kNumSeats; ++seat) {
      CHECK(SequenceIndex(*game, seat).size() == row.sequences);
    }
  }
}

TEST_CASE("large instances match the reference sizes") {
  // About a million nodes between them; opt out with TEAMSOLVE_SKIP_LARGE.
  if (std::getenv("TEAMSOLVE_SKIP_LARGE") != nullptr) return;
  const Sizes large[] = {{"liars4", 10921, 262080}, {"leduc41", 801, 16908}};
  for (const Sizes& row : large) {
    CAPTURE(row.name);
    auto game = BuildGame(LookupGame(row.name).spec);
    CHECK(game->num_leaves() == row.leaves);
    for (int seat = 0; seat < kNumSeats; ++seat) {
      CHECK(SequenceIndex(*game, seat).size() == row.sequences);
    }
  }
}

TEST_CASE("kuhn3 has 13 betting lines per deal") {
  auto game = BuildGame(GameSpec::Kuhn(3));
  const Node& root = game->node(game->root());
  REQUIRE(root.kind == NodeKind::kChance);
  REQUIRE(root.children.size() == 6);
  for (double p : root.chance_probs) CHECK(p == doctest::Approx(1.0 / 6));
  CHECK(game->num_leaves() / 6 == 13);
}

TEST_CASE("liars3 has 2^9 - 1 bid histories per roll") {
  auto game = BuildGame(GameSpec::LiarsDice(3));
  CHECK(game->node(game->root()).children.size() == 27);
  CHECK(game->num_leaves() == 27 * 511);
}

TEST_CASE("kuhn3 all-check line pays the highest card") {
  // Deal (1, 2, 3): every seat checks and seat 3 takes the 3-chip pot.
  auto game = BuildGame(GameSpec::Kuhn(3));
  const Node& root = game->node(game->root());
  int deal = -1;
  for (int d = 0; d < static_cast<int>(root.children.size()); ++d) {
    const Infoset& first = game->infoset(game->node(root.children[d]).infoset);
    if (first.label.rfind("0|", 0) == 0) {
      // Seat 1 holds rank 0; pick the deal where seat 2 holds rank 1.
      const Node& n1 = game->node(game->node(root.children[d]).children[0]);
      if (game->infoset(n1.infoset).label.rfind("1|", 0) == 0) deal = d;
    }
  }
  REQUIRE(deal >= 0);
  int node = root.children[deal];
  for (int step = 0; step < 3; ++step) node = game->node(node).children[0];
  const Node& leaf = game->node(node);
  REQUIRE(leaf.kind == NodeKind::kTerminal);
  CHECK(leaf.payoffs[0] == -1.0);
  CHECK(leaf.payoffs[1] == -1.0);
  CHECK(leaf.payoffs[2] == 2.0);
  CHECK(leaf.chance_reach == doctest::Approx(1.0 / 6));
}

TEST_CASE("goofspiel splits tied prizes") {
  auto game = BuildGame(GameSpec::Goofspiel(false));
  std::set<double> payoffs;
  for (int leaf : game->leaves()) {
    for (double u : game->node(leaf).payoffs) payoffs.insert(u);
  }
  // Some payoff must be a third or a half of a prize.
  bool fractional = false;
  for (double u : payoffs) {
    if (std::abs(u * 6 - std::round(u * 6)) < 1e-9 &&
        std::abs(u - std::round(u)) > 1e-9) {
      fractional = true;
    }
  }
  CHECK(fractional);
}

TEST_CASE("goofspiel prizes are worth 1 to 3 and payoffs are centred") {
  auto game = BuildGame(GameSpec::Goofspiel(true));
  double best = -1e9, worst = 1e9;
  for (int leaf : game->leaves()) {
    const auto& u = game->node(leaf).payoffs;
    CHECK(u[0] + u[1] + u[2] == doctest::Approx(0.0));
    best = std::max(best, u[0]);
    worst = std::min(worst, u[0]);
  }
  // Scores are centred on 2. The best a seat can do is win prizes 3 and 2
  // alone; the worst is half of prize 1 (its top card always ties or wins).
  CHECK(best == doctest::Approx(3.0));
  CHECK(worst == doctest::Approx(-1.5));
}

TEST_CASE("generated games are seat symmetric in size") {
  for (const char* name : {"kuhn4", "goofspiel-limited", "leduc31"}) {
    auto game = BuildGame(LookupGame(name).spec);
    const int s0 = SequenceIndex(*game, 0).size();
    CHECK(SequenceIndex(*game, 1).size() == s0);
    CHECK(SequenceIndex(*game, 2).size() == s0);
  }
}

TEST_CASE("liar's dice sequence counts follow the public bid tree") {
  // A history is an increasing run of bids closed by a challenge. The run of
  // length j arrives on a bid by seat (j - 1) % 3 and is challenged by j % 3.
  const int faces = 3;
  const int bids = kNumSeats * faces;
  std::array<int, kNumSeats> edges{};
  std::int64_t choose = 1;
  for (int j = 1; j <= bids; ++j) {
    choose = choose * (bids - j + 1) / j;
    edges[(j - 1) % kNumSeats] += static_cast<int>(choose);
    edges[j % kNumSeats] += static_cast<int>(choose);
  }
  auto game = BuildGame(LookupGame("liars3").spec);
  CHECK(game->num_leaves() == faces * faces * faces * ((1 << bids) - 1));
  CHECK(game->num_leaves() == 13797);
  for (int seat = 0; seat < kNumSeats; ++seat) {
    CAPTURE(seat);
    CHECK(SequenceIndex(*game, seat).size() == 1 + faces * edges[seat]);
  }
  CHECK(SequenceIndex(*game, 0).size() == 1021);
  CHECK(SequenceIndex(*game, 2).size() == 1021);
}

TEST_CASE("unsupported parameters are rejected") {
  CHECK_THROWS_AS(BuildGame(GameSpec::Kuhn(2)), Error);
  GameSpec goof = GameSpec::Goofspiel(false);
  goof.ranks = 4;
  try {
    BuildGame(goof);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kUnsupportedParameters);
  }
  CHECK_THROWS_AS(LookupGame("chess"), Error);
}

}  // namespace
}  // namespace teamsolve
