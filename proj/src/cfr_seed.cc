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

#include "teamsolve/cfr_seed.h"

#include <algorithm>
#include <array>
#include <functional>
#include <unordered_map>

namespace teamsolve {
namespace {

void RegretMatch(const std::vector<double>& regrets,
                 std::vector<double>& strategy) {
  double total = 0.0;
  for (double r : regrets) total += r;
  for (std::size_t a = 0; a < regrets.size(); ++a) {
    strategy[a] = total > 0.0 ? regrets[a] / total
                              : 1.0 / static_cast<double>(regrets.size());
  }
}

std::uint64_t HashValues(const std::vector<double>& values) {
  std::uint64_t h = 1469598103934665603ULL;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] == 0.0) continue;
    h ^= i + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

ReducedPlan SampleMember(const SequenceIndex& seqs, const RegretState& state,
                         PortableRng& rng) {
  ReducedPlan plan(state.strategy.size(), -1);
  for (int i : seqs.infosets()) plan[i] = rng.Sample(state.strategy[i]);
  std::vector<char> reached(seqs.size(), 0);
  reached[0] = 1;
  for (int i : seqs.infosets_topological()) {
    if (!reached[seqs.parent_sequence(i)]) {
      plan[i] = -1;
      continue;
    }
    reached[seqs.first_sequence(i) + plan[i]] = 1;
  }
  return plan;
}

}  // namespace

int PortableRng::Sample(const std::vector<double>& probs) {
  const double u = Uniform();
  double cum = 0.0;
  for (std::size_t a = 0; a < probs.size(); ++a) {
    cum += probs[a];
    if (u < cum) return static_cast<int>(a);
  }
  for (int a = static_cast<int>(probs.size()) - 1; a >= 0; --a) {
    if (probs[a] > 0.0) return a;
  }
  return 0;
}

RegretState InitialRegretState(const Game& game) {
  RegretState state;
  state.regrets.resize(game.num_infosets());
  state.strategy.resize(game.num_infosets());
  for (int i = 0; i < game.num_infosets(); ++i) {
    const int k = game.num_actions(i);
    state.regrets[i].assign(k, 0.0);
    state.strategy[i].assign(k, 1.0 / k);
  }
  return state;
}

void CfrPlusStep(const TeamGame& team, RegretState& state) {
  const Game& g = team.game();
  const SeatAssignment& sa = team.assignment();
  std::vector<std::vector<double>> delta(g.num_infosets());
  for (int i = 0; i < g.num_infosets(); ++i) {
    delta[i].assign(g.num_actions(i), 0.0);
  }
  using Utility = std::array<double, kNumSeats>;
  std::function<Utility(int, const Utility&)> walk =
      [&](int id, const Utility& reach) -> Utility {
    const Node& n = g.node(id);
    if (n.kind == NodeKind::kTerminal) {
      const double team_u = n.payoffs[sa.team_one()] + n.payoffs[sa.team_two()];
      Utility u;
      for (int s = 0; s < kNumSeats; ++s) {
        u[s] = s == sa.opponent() ? n.payoffs[s] : team_u;
      }
      return u;
    }
    Utility value{};
    if (n.kind == NodeKind::kChance) {
      for (std::size_t b = 0; b < n.children.size(); ++b) {
        Utility r = reach;
        const Utility cu = walk(n.children[b], r);
        for (int s = 0; s < kNumSeats; ++s) value[s] += n.chance_probs[b] * cu[s];
      }
      return value;
    }
    const int p = n.seat;
    const std::vector<double>& sigma = state.strategy[n.infoset];
    std::vector<double> own(n.children.size());
    for (std::size_t b = 0; b < n.children.size(); ++b) {
      Utility r = reach;
      r[p] *= sigma[b];
      const Utility cu = walk(n.children[b], r);
      own[b] = cu[p];
      for (int s = 0; s < kNumSeats; ++s) value[s] += sigma[b] * cu[s];
    }
    double cf = n.chance_reach;
    for (int s = 0; s < kNumSeats; ++s) {
      if (s != p) cf *= reach[s];
    }
    if (cf != 0.0) {
      for (std::size_t b = 0; b < n.children.size(); ++b) {
        delta[n.infoset][b] += cf * (own[b] - value[p]);
      }
    }
    return value;
  };
  walk(g.root(), Utility{1.0, 1.0, 1.0});
  for (int i = 0; i < g.num_infosets(); ++i) {
    for (std::size_t a = 0; a < delta[i].size(); ++a) {
      state.regrets[i][a] = std::max(0.0, state.regrets[i][a] + delta[i][a]);
    }
    RegretMatch(state.regrets[i], state.strategy[i]);
  }
  ++state.iterations;
}

std::pair<ReducedPlan, ReducedPlan> SampleProfile(const TeamGame& team,
                                                  const RegretState& state,
                                                  PortableRng& rng) {
  ReducedPlan one = SampleMember(team.team_one(), state, rng);
  ReducedPlan two = SampleMember(team.team_two(), state, rng);
  return {std::move(one), std::move(two)};
}

SeedBatch Seed(std::shared_ptr<const RelevantPairIndex> index, int iterations,
               std::uint64_t rng_seed) {
  if (iterations < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "seeding needs at least one iteration");
  }
  const TeamGame& team = index->team();
  SeedBatch batch;
  batch.rng_seed = rng_seed;
  PortableRng rng(rng_seed);
  RegretState state = InitialRegretState(team.game());
  std::unordered_multimap<std::uint64_t, int> seen;
  for (int t = 0; t < iterations; ++t) {
    CfrPlusStep(team, state);
    auto [one, two] = SampleProfile(team, state, rng);
    CorrelationPlan plan = PlanFromPureProfile(index, one, two);
    const std::uint64_t h = HashValues(plan.values);
    bool duplicate = false;
    auto range = seen.equal_range(h);
    for (auto it = range.first; it != range.second; ++it) {
      if (batch.plans[it->second].values == plan.values) {
        duplicate = true;
        break;
      }
    }
    if (duplicate) continue;
    seen.emplace(h, static_cast<int>(batch.plans.size()));
    batch.plans.push_back(std::move(plan));
  }
  return batch;
}

}  // namespace teamsolve
