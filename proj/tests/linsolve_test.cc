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

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "teamsolve/linsolve.h"

namespace teamsolve {
namespace {

double Uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Small LP with integer data around a known feasible point; an extra row
// sometimes makes it infeasible, and free columns make it unbounded often.
Model RandomModel(std::uint64_t seed, int num_binaries = 0) {
  std::mt19937_64 rng(seed);
  const int n = 2 + static_cast<int>(rng() % 12);
  const int m = 1 + static_cast<int>(rng() % 10);
  Model model;
  model.set_sense(rng() % 2 ? Sense::kMaximize : Sense::kMinimize);
  std::vector<double> x0(n);
  for (int j = 0; j < n; ++j) {
    if (j < num_binaries) {
      x0[j] = static_cast<double>(rng() % 2);
      model.AddVariable(0.0, 1.0, std::round(Uniform(rng) * 6 - 3),
                        VarType::kBinary);
      continue;
    }
    const int kind = static_cast<int>(rng() % 4);
    x0[j] = std::round(Uniform(rng) * 4 - 1);
    double lo = kind == 1 || kind == 3 ? -kInfinity
                                       : x0[j] - std::round(Uniform(rng) * 2);
    const double hi = kind == 2 || kind == 3
                          ? kInfinity
                          : x0[j] + std::round(Uniform(rng) * 2);
    if (kind == 3 && rng() % 2) lo = x0[j] - 1;
    model.AddVariable(lo, hi, std::round(Uniform(rng) * 6 - 3));
  }
  for (int i = 0; i < m; ++i) {
    std::vector<Term> terms;
    double activity = 0.0;
    for (int j = 0; j < n; ++j) {
      if (rng() % 3 != 0) continue;
      const double c = std::round(Uniform(rng) * 6 - 3);
      if (c == 0.0) continue;
      terms.push_back({j, c});
      activity += c * x0[j];
    }
    const int r = static_cast<int>(rng() % 3);
    if (r == 0) {
      model.AddConstraint(terms, Relation::kLessEqual,
                          activity + std::round(Uniform(rng) * 2));
    } else if (r == 1) {
      model.AddConstraint(terms, Relation::kEqual, activity);
    } else {
      model.AddConstraint(terms, Relation::kGreaterEqual,
                          activity - std::round(Uniform(rng) * 2));
    }
  }
  if (rng() % 5 == 0) {
    model.AddConstraint({{n - 1, 1.0}}, Relation::kGreaterEqual, 1e3);
  }
  return model;
}

void CheckOptimal(const Model& model, const Solution& s) {
  REQUIRE(s.optimal());
  CHECK(model.MaxViolation(s.primal) <= 1e-8);
  CHECK(s.objective == doctest::Approx(model.ObjectiveValue(s.primal)));
  CHECK(std::abs(DualObjective(model, s) - s.objective) <= 1e-7);
}

TEST_CASE("two bounded variables") {
  Model model;
  model.set_sense(Sense::kMaximize);
  const int x = model.AddVariable(0.0, kInfinity, 1.0);
  const int y = model.AddVariable(0.0, kInfinity, 1.0);
  model.AddConstraint({{x, 1.0}}, Relation::kLessEqual, 1.0);
  model.AddConstraint({{y, 1.0}}, Relation::kLessEqual, 2.0);
  for (const std::string& name : BackendNames()) {
    CAPTURE(name);
    const Solution s = MakeBackend(name)->SolveLp(model, {});
    CheckOptimal(model, s);
    CHECK(s.objective == doctest::Approx(3.0));
    CHECK(s.primal[x] == doctest::Approx(1.0));
    CHECK(s.primal[y] == doctest::Approx(2.0));
    CHECK(s.duals[0] == doctest::Approx(1.0));
    CHECK(s.duals[1] == doctest::Approx(1.0));
  }
}

TEST_CASE("duals follow the objective direction") {
  // min x + 2y  s.t.  x + y >= 3, y >= 1: optimum 4 at (2, 1).
  Model model;
  model.set_sense(Sense::kMinimize);
  const int x = model.AddVariable(0.0, kInfinity, 1.0);
  const int y = model.AddVariable(0.0, kInfinity, 2.0);
  model.AddConstraint({{x, 1.0}, {y, 1.0}}, Relation::kGreaterEqual, 3.0);
  model.AddConstraint({{y, 1.0}}, Relation::kGreaterEqual, 1.0);
  const Solution s = SolveLp(model);
  CheckOptimal(model, s);
  CHECK(s.objective == doctest::Approx(4.0));
  CHECK(s.duals[0] == doctest::Approx(1.0));
  CHECK(s.duals[1] == doctest::Approx(1.0));
  CHECK(s.reduced_costs[x] == doctest::Approx(0.0));
}

TEST_CASE("infeasible and unbounded models") {
  Model infeasible;
  const int x = infeasible.AddVariable(-kInfinity, kInfinity, 1.0);
  infeasible.AddConstraint({{x, 1.0}}, Relation::kGreaterEqual, 1.0);
  infeasible.AddConstraint({{x, 1.0}}, Relation::kLessEqual, 0.0);
  Model unbounded;
  unbounded.set_sense(Sense::kMaximize);
  unbounded.AddVariable(0.0, kInfinity, 1.0);
  for (const std::string& name : BackendNames()) {
    CAPTURE(name);
    CHECK(MakeBackend(name)->SolveLp(infeasible, {}).status ==
          SolveStatus::kInfeasible);
    CHECK(MakeBackend(name)->SolveLp(unbounded, {}).status ==
          SolveStatus::kUnbounded);
  }
}

TEST_CASE("embedded simplex agrees with the dense tableau") {
  int optimal = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    CAPTURE(seed);
    const Model model = RandomModel(seed);
    const Solution a = MakeBackend("embedded")->SolveLp(model, {});
    const Solution b = MakeBackend("dense")->SolveLp(model, {});
    REQUIRE(a.status == b.status);
    if (!a.optimal()) continue;
    ++optimal;
    CheckOptimal(model, a);
    CheckOptimal(model, b);
    CHECK(std::abs(a.objective - b.objective) <= 1e-7);
  }
  CHECK(optimal > 50);
}

TEST_CASE("warm starts reproduce cold solves") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    CAPTURE(seed);
    Model model = RandomModel(seed);
    auto backend = MakeBackend("embedded");
    Basis basis;
    const Solution cold = backend->SolveLp(model, {}, nullptr, &basis);
    if (!cold.optimal()) continue;
    for (int j = 0; j < model.num_vars(); ++j) {
      model.set_objective(j, model.objective(j) + (j % 2 ? 0.5 : -0.5));
    }
    const Solution warm = backend->SolveLp(model, {}, &basis, nullptr);
    const Solution fresh = backend->SolveLp(model, {});
    REQUIRE(warm.status == fresh.status);
    if (warm.optimal()) {
      CheckOptimal(model, warm);
      CHECK(std::abs(warm.objective - fresh.objective) <= 1e-7);
    }
  }
}

TEST_CASE("solves are deterministic") {
  const Model model = RandomModel(7);
  const Solution a = SolveLp(model);
  const Solution b = SolveLp(model);
  CHECK(a.status == b.status);
  CHECK(a.primal == b.primal);
  CHECK(a.duals == b.duals);
  CHECK(a.iterations == b.iterations);
}

TEST_CASE("binary knapsack with a pool") {
  Model model;
  model.set_sense(Sense::kMaximize);
  const int a = model.AddVariable(0.0, 1.0, 1.0, VarType::kBinary);
  const int b = model.AddVariable(0.0, 1.0, 1.0, VarType::kBinary);
  model.AddConstraint({{a, 1.0}, {b, 1.0}}, Relation::kLessEqual, 1.5);
  const MipResult r = SolveMip(model);
  REQUIRE(r.solution.optimal());
  CHECK(r.solution.objective == doctest::Approx(1.0));
  bool has_a = false, has_b = false;
  for (const PoolEntry& e : r.pool.entries()) {
    CHECK(model.MaxViolation(e.primal) <= 1e-6);
    CHECK(model.MaxIntegralityViolation(e.primal) == 0.0);
    if (e.primal[a] == 1.0 && e.primal[b] == 0.0) has_a = true;
    if (e.primal[a] == 0.0 && e.primal[b] == 1.0) has_b = true;
  }
  CHECK(has_a);
  CHECK(has_b);
  CHECK(r.pool.entries().front().objective == doctest::Approx(1.0));
}

TEST_CASE("constant objective still fills the pool") {
  Model model;
  model.AddVariable(0.0, 1.0, 0.0, VarType::kBinary);
  const MipResult r = SolveMip(model);
  REQUIRE(r.solution.optimal());
  CHECK(r.solution.objective == 0.0);
  CHECK(!r.pool.empty());
}

// Enumerates every binary assignment and solves the remaining LP.
double EnumerateMip(const Model& model, int num_binaries, bool* feasible) {
  const bool maximize = model.sense() == Sense::kMaximize;
  double best = maximize ? -kInfinity : kInfinity;
  *feasible = false;
  for (int mask = 0; mask < (1 << num_binaries); ++mask) {
    Model fixed = model;
    for (int j = 0; j < num_binaries; ++j) {
      const double v = (mask >> j) & 1;
      fixed.set_bounds(j, v, v);
    }
    const Solution s = MakeBackend("dense")->SolveLp(fixed, {});
    if (s.status == SolveStatus::kUnbounded) {
      *feasible = true;
      return maximize ? kInfinity : -kInfinity;
    }
    if (!s.optimal()) continue;
    *feasible = true;
    best = maximize ? std::max(best, s.objective) : std::min(best, s.objective);
  }
  return best;
}

TEST_CASE("branch and bound matches enumeration") {
  int solved = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    CAPTURE(seed);
    const Model model = RandomModel(seed, 4);
    const int binaries = std::min(4, model.num_vars());
    bool feasible = false;
    const double expected = EnumerateMip(model, binaries, &feasible);
    const MipResult r = SolveMip(model);
    if (!feasible) {
      CHECK(r.solution.status == SolveStatus::kInfeasible);
      continue;
    }
    if (std::isinf(expected)) {
      CHECK(r.solution.status == SolveStatus::kUnbounded);
      continue;
    }
    REQUIRE(r.solution.optimal());
    ++solved;
    CHECK(std::abs(r.solution.objective - expected) <= 1e-7);
    CHECK(model.MaxViolation(r.solution.primal) <= 1e-8);
    CHECK(model.MaxIntegralityViolation(r.solution.primal) <= 1e-6);
    for (const PoolEntry& e : r.pool.entries()) {
      CHECK(model.MaxViolation(e.primal) <= 1e-6);
      CHECK(e.objective == doctest::Approx(model.ObjectiveValue(e.primal)));
    }
  }
  CHECK(solved > 20);
}

TEST_CASE("branching order and heuristics do not change the optimum") {
  int solved = 0, heuristic_calls = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    CAPTURE(seed);
    const Model model = RandomModel(seed, 4);
    const int binaries = std::min(4, model.num_vars());
    bool feasible = false;
    const double expected = EnumerateMip(model, binaries, &feasible);
    if (!feasible || std::isinf(expected)) continue;
    SolverOptions options;
    options.branch_priority.assign(model.num_vars(), 0);
    for (int j = 0; j < binaries; ++j) {
      options.branch_priority[j] = binaries - j;
    }
    // Fixes the first binary by rounding and leaves the others free, then
    // rounds everything.
    options.heuristic_frequency = 1;
    options.heuristic = [&](const std::vector<double>& primal,
                            const SolverOptions::HeuristicSolve& solve) {
      ++heuristic_calls;
      std::vector<double> fixes(primal.size(),
                                std::numeric_limits<double>::quiet_NaN());
      fixes[0] = std::round(primal[0]);
      const Solution partial = solve(fixes);
      if (!partial.optimal()) return;
      for (int j = 0; j < binaries; ++j) {
        fixes[j] = std::round(partial.primal[j]);
      }
      const Solution full = solve(fixes);
      if (full.optimal()) CHECK(model.MaxViolation(full.primal) <= 1e-8);
    };
    const MipResult r = SolveMip(model, options);
    REQUIRE(r.solution.optimal());
    ++solved;
    CHECK(std::abs(r.solution.objective - expected) <= 1e-7);
    CHECK(model.MaxIntegralityViolation(r.solution.primal) <= 1e-6);
  }
  CHECK(solved > 20);
  CHECK(heuristic_calls > 0);
  SolverOptions bad;
  bad.branch_priority = {0};
  CHECK_THROWS_AS(SolveMip(RandomModel(3, 4), bad), Error);
}

TEST_CASE("unknown backends are unavailable") {
  try {
    MakeBackend("no-such-solver");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kBackendUnavailable);
  }
}

TEST_CASE("registered backends may wrap other backends") {
  RegisterBackend("wrapped-embedded", [] { return MakeBackend("embedded"); });
  auto backend = MakeBackend("wrapped-embedded");
  CHECK(backend->name() == "embedded");
  const auto names = BackendNames();
  CHECK(std::find(names.begin(), names.end(), "wrapped-embedded") !=
        names.end());
}

TEST_CASE("invalid models are rejected") {
  Model model;
  model.AddVariable(1.0, 0.0);
  CHECK_THROWS_AS(model.Validate(), Error);
  Model dangling;
  dangling.AddVariable(0.0, 1.0);
  dangling.AddConstraint({{3, 1.0}}, Relation::kLessEqual, 1.0);
  CHECK_THROWS_AS(dangling.Validate(), Error);
}

TEST_CASE("lp dump") {
  Model model;
  model.set_sense(Sense::kMaximize);
  const int x = model.AddVariable(0.0, 4.0, 2.0, VarType::kContinuous, "x");
  const int b = model.AddVariable(0.0, 1.0, 1.0, VarType::kBinary, "b");
  model.AddConstraint({{x, 1.0}, {b, -3.0}}, Relation::kLessEqual, 1.0, "link");
  std::ostringstream out;
  WriteLp(model, out);
  const std::string text = out.str();
  CHECK(text.find("Maximize") != std::string::npos);
  CHECK(text.find("link:") != std::string::npos);
  CHECK(text.find("Binaries") != std::string::npos);
  CHECK(text.find("End") != std::string::npos);
}

}  // namespace
}  // namespace teamsolve
