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

#ifndef TEAMSOLVE_CFR_SEED_H_
#define TEAMSOLVE_CFR_SEED_H_

#include <cstdint>
#include <memory>
#include <random>
#include <utility>
#include <vector>

#include "teamsolve/correlation.h"
#include "teamsolve/efg.h"

namespace teamsolve {

inline constexpr std::uint64_t kDefaultRngSeed = 20211213;

// std::mt19937_64 with uniforms taken from the top 53 bits, so streams are
// identical across platforms and standard libraries.
class PortableRng {
 public:
  explicit PortableRng(std::uint64_t seed) : engine_(seed) {}
  double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  // Index drawn from a distribution that sums to one.
  int Sample(const std::vector<double>& probs);

 private:
  std::mt19937_64 engine_;
};

// Regret-matching+ state for every infoset of the game (all three seats).
struct RegretState {
  std::vector<std::vector<double>> regrets;
  std::vector<std::vector<double>> strategy;
  int iterations = 0;
};

RegretState InitialRegretState(const Game& game);

// One simultaneous CFR+ iteration. Team seats use u_T1 + u_T2, the
// opponent its own payoff.
void CfrPlusStep(const TeamGame& team, RegretState& state);

// Samples one action per infoset of each team member from the current
// strategies and keeps only the infosets the member's own choices reach.
std::pair<ReducedPlan, ReducedPlan> SampleProfile(const TeamGame& team,
                                                  const RegretState& state,
                                                  PortableRng& rng);

struct SeedBatch {
  std::vector<CorrelationPlan> plans;
  std::uint64_t rng_seed = kDefaultRngSeed;
};

// Runs `iterations` CFR+ steps, sampling one profile after each; identical
// plans are kept once, in order of first appearance.
SeedBatch Seed(std::shared_ptr<const RelevantPairIndex> index, int iterations,
               std::uint64_t rng_seed = kDefaultRngSeed);

}  // namespace teamsolve

#endif  // TEAMSOLVE_CFR_SEED_H_
