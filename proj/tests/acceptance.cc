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

// Acceptance run: prints one PASS/FAIL line per check, grouped by criterion,
// then a summary. Exits 0 once every check has run; with --strict any FAIL
// makes the exit status 1.
//
//   acceptance [--strict] [--stretch] [--quick]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "oracles.h"
#include "teamsolve/cfr_seed.h"
#include "teamsolve/correlation.h"
#include "teamsolve/games.h"
#include "teamsolve/linsolve.h"
#include "teamsolve/tmecor.h"

namespace teamsolve {
namespace {

constexpr char kAudited[] = "audited";

// Tallies of the property checks that span many solves.
struct Ledger {
  int lp_solves = 0;
  double worst_duality_gap = 0.0;
  int plans = 0;
  double worst_vsf = 0.0;
  int pricing_outputs = 0;
  int pricing_failures = 0;
  int certificates = 0;
  double worst_certificate = 0.0;
  int master_sequences = 0;
  int master_drops = 0;
};

Ledger ledger;
std::mutex ledger_mu;

// Delegates to the embedded engine and checks strong duality on every
// optimal LP.
class AuditedBackend : public Backend {
 public:
  AuditedBackend() : inner_(MakeBackend("embedded")) {}
  std::string name() const override { return kAudited; }
  Solution SolveLp(const Model& model, const SolverOptions& options,
                   const Basis* warm_start, Basis* final_basis) override {
    Solution s = inner_->SolveLp(model, options, warm_start, final_basis);
    if (s.optimal()) {
      const double gap = std::abs(s.objective - DualObjective(model, s)) /
                         std::max(1.0, std::abs(s.objective));
      std::lock_guard<std::mutex> lock(ledger_mu);
      ++ledger.lp_solves;
      ledger.worst_duality_gap = std::max(ledger.worst_duality_gap, gap);
    }
    return s;
  }
  MipResult SolveMip(const Model& model, const SolverOptions& options) override {
    return inner_->SolveMip(model, options);
  }

 private:
  std::unique_ptr<Backend> inner_;
};

int passes = 0;
int failures = 0;

void Report(int criterion, const std::string& what, bool ok,
            const std::string& detail) {
  std::printf("%s [%d] %s: %s\n", ok ? "PASS" : "FAIL", criterion,
              what.c_str(), detail.c_str());
  std::fflush(stdout);
  (ok ? passes : failures)++;
}

std::string Format(const char* fmt, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), fmt, a, b, c);
  return buf;
}

std::string Seat(int opponent) { return "O=" + std::to_string(opponent + 1); }

std::shared_ptr<const Game> Instance(const std::string& name) {
  static std::map<std::string, std::shared_ptr<const Game>> cache;
  auto it = cache.find(name);
  if (it != cache.end()) return it->second;
  auto game = BuildGame(LookupGame(name).spec);
  cache[name] = game;
  return game;
}

std::shared_ptr<const RelevantPairIndex> Index(const std::string& name,
                                               int opponent) {
  return RelevantPairs(std::make_shared<const TeamGame>(
      Instance(name), SeatAssignment::WithOpponent(opponent)));
}

TmecorOptions Audited() {
  TmecorOptions o;
  o.backend = kAudited;
  return o;
}

void AuditPlan(const VsfSystem& vsf, const CorrelationPlan& plan) {
  ledger.plans++;
  ledger.worst_vsf = std::max(ledger.worst_vsf, vsf.MaxViolation(plan.values));
}

void AuditSolution(const TmecorSolution& sol) {
  const VsfSystem vsf = VsfConstraints(*sol.combined.index);
  AuditPlan(vsf, sol.combined);
  for (const SupportPlan& s : sol.support) AuditPlan(vsf, s.plan);
  ledger.certificates++;
  ledger.worst_certificate =
      std::max(ledger.worst_certificate, std::abs(sol.value - sol.certificate));
  if (!sol.stats.master_values.empty()) {
    ledger.master_sequences++;
    for (std::size_t k = 1; k < sol.stats.master_values.size(); ++k) {
      if (sol.stats.master_values[k] < sol.stats.master_values[k - 1] - 1e-9) {
        ledger.master_drops++;
      }
    }
  }
}

bool PricingOutputOk(const CorrelationPlan& plan, PlayerRole deterministic) {
  return IsSemiRandomized(plan, deterministic, 1e-6) &&
         IsProductPlan(plan, 1e-6);
}

void AuditPricing(const PricingResult& r) {
  const VsfSystem vsf = VsfConstraints(*r.candidate.index);
  AuditPlan(vsf, r.candidate);
  ledger.pricing_outputs++;
  if (!PricingOutputOk(r.candidate, r.deterministic_member)) {
    ledger.pricing_failures++;
  }
  for (const CorrelationPlan& e : r.extras) {
    AuditPlan(vsf, e);
    ledger.pricing_outputs++;
    if (!PricingOutputOk(e, r.deterministic_member)) ledger.pricing_failures++;
  }
}

// Prices the final duals of a column generation run plus a few random dual
// vectors, for both choices of the deterministic member.
void ExercisePricer(const TmecorSolution& sol, std::uint64_t seed) {
  const auto& index = sol.combined.index;
  Pricer pricer(index, Audited());
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<MasterDuals> duals = {sol.duals};
  for (int k = 0; k < 3; ++k) {
    MasterDuals d;
    d.gamma.resize(sol.duals.gamma.size());
    for (double& g : d.gamma) g = unit(rng) < 0.5 ? 0.0 : unit(rng);
    d.gamma_convexity = -1.0;
    duals.push_back(d);
  }
  for (const MasterDuals& d : duals) {
    for (PlayerRole member : {PlayerRole::kTeamOne, PlayerRole::kTeamTwo}) {
      AuditPricing(pricer.Price(d, member));
    }
  }
  for (const DecomposedPlan& part : DecomposeSolution(sol)) {
    ledger.pricing_outputs++;
    if (part.deterministic.values.empty()) ledger.pricing_failures++;
  }
}

double Seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

// Criterion 1-3.

struct StructureRow {
  const char* name;
  const char* letter;
  int sequences;
  int leaves;
  double pairs_per_leaf;  // 0 when not checked
  double product_per_pair;
  bool triangle_free;
  int ratio_opponent;  // seat used for the ratios
};

constexpr StructureRow kReferenceSizes[] = {
    {"kuhn3", "A", 25, 78, 3.3974, 2.358, false, 2},
    {"kuhn4", "B", 33, 312, 1.5929, 2.1911, false, 2},
    {"kuhn12", "C", 97, 17160, 0.288, 1.9027, false, 2},
    {"goofspiel-limited", "D", 934, 1296, 9.5355, 70.588, true, 2},
    {"goofspiel", "E", 1630, 1296, 15.53, 131.96, true, 2},
    {"liars3", "F", 1021, 13797, 5.26, 14.42, false, 2},
    {"liars4", "G", 10921, 262080, 0.0, 0.0, false, 2},
    {"leduc31", "H", 457, 4500, 2.6215, 17.703568703907773, false, 2},
    {"leduc41", "I", 801, 16908, 0.0, 0.0, false, 2},
    {"leduc22", "J", 1443, 3786, 7.275488642366614, 75.594445452895262, false,
     0},
};

void CheckStructure() {
  for (const StructureRow& row : kReferenceSizes) {
    const auto game = Instance(row.name);
    const std::string tag = std::string("[") + row.letter + "] " + row.name;
    int seqs[kNumSeats];
    for (int seat = 0; seat < kNumSeats; ++seat) {
      seqs[seat] = SequenceIndex(*game, seat).size();
    }
    const bool structure_only = row.pairs_per_leaf == 0.0;
    const std::string got = Format("sequences %.0f/%.0f/%.0f", seqs[0], seqs[1],
                                   seqs[2]) +
                            Format(", leaves %.0f", game->num_leaves());
    const std::string want = Format(" (expected %.0f each, %.0f)",
                                    row.sequences, row.leaves);
    const bool ok = seqs[0] == row.sequences && seqs[1] == row.sequences &&
                    seqs[2] == row.sequences && game->num_leaves() == row.leaves;
    Report(1, tag + (structure_only ? " structure-only" : " structure"), ok,
           got + want);

    for (int opp = 0; opp < kNumSeats; ++opp) {
      const auto index = Index(row.name, opp);
      const bool flag = IsTriangleFree(index->team(), index->connectivity());
      Report(2, tag + " triangle-free " + Seat(opp), flag == row.triangle_free,
             std::string(flag ? "yes" : "no") + " (expected " +
                 (row.triangle_free ? "yes" : "no") + ")");
      if (opp != row.ratio_opponent || structure_only) continue;
      const auto& a = index->team().assignment();
      const double pairs = index->size();
      const double r1 = pairs / game->num_leaves();
      const double r2 = static_cast<double>(seqs[a.team_one()]) *
                        seqs[a.team_two()] / pairs;
      const bool ratios_ok = std::abs(r1 - row.pairs_per_leaf) < 0.01 &&
                             std::abs(r2 - row.product_per_pair) < 0.01;
      Report(3, tag + " ratios " + Seat(opp), ratios_ok,
             Format("%.4f / %.4f", r1, r2) +
                 Format(" (expected %.4f / %.4f)", row.pairs_per_leaf,
                        row.product_per_pair));
    }
  }
}

// Criterion 4, 6, 8.

void CheckValues(bool quick) {
  const double kuhn4[] = {0.0379, 0.0265, -0.0417};
  for (int opp = 0; opp < kNumSeats; ++opp) {
    const auto index = Index("kuhn3", opp);
    const TmecorSolution cg = ColumnGeneration(index, Audited());
    AuditSolution(cg);
    ExercisePricer(cg, 100 + opp);
    Report(4, "[A] kuhn3 cg " + Seat(opp), std::abs(cg.value) <= 1e-6,
           Format("%.9f (expected 0 +- 1e-6)", cg.value));
    const double oracle = oracle::BruteForceTmecor(index->team());
    Report(6, "[A] kuhn3 normal-form oracle vs cg " + Seat(opp),
           std::abs(oracle - cg.value) <= 1e-6,
           Format("oracle %.9f, cg %.9f", oracle, cg.value));
  }
  for (int opp = 0; opp < kNumSeats; ++opp) {
    const TmecorSolution cg = ColumnGeneration(Index("kuhn4", opp), Audited());
    AuditSolution(cg);
    ExercisePricer(cg, 200 + opp);
    Report(4, "[B] kuhn4 cg " + Seat(opp),
           std::abs(cg.value - kuhn4[opp]) <= 1e-4,
           Format("%.6f (expected %.4f)", cg.value, kuhn4[opp]));
  }
  struct Goof {
    const char* name;
    const char* letter;
    double expected;
  };
  for (const Goof& g : {Goof{"goofspiel-limited", "D", 0.2524},
                        Goof{"goofspiel", "E", 0.2534}}) {
    for (int opp = 0; opp < kNumSeats; ++opp) {
      if (quick && opp > 0) break;
      const std::string tag =
          std::string("[") + g.letter + "] " + g.name + " " + Seat(opp);
      const auto index = Index(g.name, opp);
      auto start = std::chrono::steady_clock::now();
      const TmecorSolution lp = DirectLp(index, Audited());
      AuditSolution(lp);
      Report(4, tag + " direct-lp", std::abs(lp.value - g.expected) <= 1e-4,
             Format("%.7f (expected %.4f, %.0f s)", lp.value, g.expected,
                    Seconds(start)));
      start = std::chrono::steady_clock::now();
      const TmecorSolution cg = ColumnGeneration(index, Audited());
      AuditSolution(cg);
      Report(4, tag + " cg agrees with direct-lp",
             std::abs(cg.value - lp.value) <= 1e-5,
             Format("cg %.7f, lp %.7f (%.0f s)", cg.value, lp.value,
                    Seconds(start)));
      Report(8, tag + " mip pricing count", cg.stats.mip_count == 0,
             Format("relaxation %.0f, mip %.0f (expected mip 0)",
                    cg.stats.relaxation_count, cg.stats.mip_count));
    }
  }
}

// Criterion 5.

struct FixedCell {
  const char* name;
  const char* letter;
  int opponent;
  int n;
  double expected;
};

void CheckFixedSupport(bool quick) {
  std::vector<FixedCell> cells = {
      {"kuhn4", "B", 0, 1, 0.02083},  {"kuhn4", "B", 0, 2, 0.03788},
      {"kuhn4", "B", 1, 1, 0.00181},  {"kuhn4", "B", 1, 2, 0.02457},
      {"kuhn4", "B", 1, 3, 0.02652},  {"kuhn4", "B", 2, 1, -0.04167},
  };
  for (int opp = 0; opp < kNumSeats; ++opp) {
    if (quick && opp > 0) break;
    cells.push_back({"goofspiel-limited", "D", opp, 1, 0.23889});
    cells.push_back({"goofspiel-limited", "D", opp, 2, 0.25242});
  }
  std::map<std::pair<std::string, int>, double> previous;
  int monotone_checks = 0, monotone_failures = 0;
  for (const FixedCell& c : cells) {
    const auto start = std::chrono::steady_clock::now();
    const TmecorSolution sol =
        FixedSupportMip(Index(c.name, c.opponent), c.n, Audited());
    AuditSolution(sol);
    Report(5,
           std::string("[") + c.letter + "] " + c.name + " " +
               Seat(c.opponent) + " fixed-support n=" + std::to_string(c.n),
           std::abs(sol.value - c.expected) <= 1e-4,
           Format("%.6f (expected %.5f, %.0f s)", sol.value, c.expected,
                  Seconds(start)));
    const auto key = std::make_pair(std::string(c.name), c.opponent);
    auto it = previous.find(key);
    if (it != previous.end()) {
      ++monotone_checks;
      if (sol.value < it->second - 1e-9) ++monotone_failures;
    }
    previous[key] = sol.value;
  }
  Report(7, "(e) fixed-support values monotone in n", monotone_failures == 0,
         Format("%.0f consecutive pairs, %.0f decreases", monotone_checks,
                monotone_failures));
}

// Criterion 7 checks fed by the solves above, plus the seeding plans.

void CheckSeedPlans() {
  for (const char* name : {"kuhn3", "kuhn4"}) {
    for (int opp = 0; opp < kNumSeats; ++opp) {
      const auto index = Index(name, opp);
      const VsfSystem vsf = VsfConstraints(*index);
      for (const CorrelationPlan& p : Seed(index, 200).plans) AuditPlan(vsf, p);
    }
  }
}

void CheckProperties() {
  Report(7, "(a) correlation plans satisfy the VSF system",
         ledger.worst_vsf <= 1e-8,
         Format("%.0f plans, worst violation %.2e", ledger.plans,
                ledger.worst_vsf));
  Report(7, "(b) pricing outputs semi-randomized with product identity",
         ledger.pricing_outputs > 0 && ledger.pricing_failures == 0,
         Format("%.0f outputs, %.0f failures", ledger.pricing_outputs,
                ledger.pricing_failures));
  Report(7, "(c) values match best-response certificates",
         ledger.worst_certificate <= 1e-5,
         Format("%.0f solutions, worst gap %.2e", ledger.certificates,
                ledger.worst_certificate));
  Report(7, "(d) master values monotone across iterations",
         ledger.master_drops == 0,
         Format("%.0f runs, %.0f decreases", ledger.master_sequences,
                ledger.master_drops));
  Report(7, "(f) strong duality on optimal LP solves",
         ledger.lp_solves > 0 && ledger.worst_duality_gap <= 1e-7,
         Format("%.0f solves, worst relative gap %.2e", ledger.lp_solves,
                ledger.worst_duality_gap));
}

// Criterion 9-10.

void CheckStretch() {
  const double kuhn12[] = {0.0664, 0.0380, -0.0140};
  const double liars3[] = {0.0, 0.2562, 0.2840};
  for (int opp = 0; opp < kNumSeats; ++opp) {
    auto start = std::chrono::steady_clock::now();
    TmecorSolution sol = ColumnGeneration(Index("kuhn12", opp), Audited());
    Report(9, "[C] kuhn12 cg " + Seat(opp),
           std::abs(sol.value - kuhn12[opp]) <= 1e-3,
           Format("%.6f (expected %.4f, %.0f s)", sol.value, kuhn12[opp],
                  Seconds(start)));
  }
  for (int opp = 0; opp < kNumSeats; ++opp) {
    auto start = std::chrono::steady_clock::now();
    TmecorSolution sol = ColumnGeneration(Index("liars3", opp), Audited());
    Report(10, "[F] liars3 cg " + Seat(opp),
           std::abs(sol.value - liars3[opp]) <= 1e-3,
           Format("%.6f (expected %.4f, %.0f s)", sol.value, liars3[opp],
                  Seconds(start)));
  }
}

}  // namespace
}  // namespace teamsolve

int main(int argc, char** argv) {
  using namespace teamsolve;
  CLI::App app{"teamsolve acceptance checks"};
  bool strict = false, stretch = false, quick = false;
  app.add_flag("--strict", strict, "Exit with status 1 if any check fails");
  app.add_flag("--stretch", stretch, "Also run the Kuhn-12 and Liar's dice values");
  app.add_flag("--quick", quick, "Run the Goofspiel cells for O=1 only");
  CLI11_PARSE(app, argc, argv);

  RegisterBackend(kAudited, [] { return std::make_unique<AuditedBackend>(); });
  const auto start = std::chrono::steady_clock::now();
  try {
    CheckStructure();
    CheckValues(quick);
    CheckFixedSupport(quick);
    CheckSeedPlans();
    CheckProperties();
    if (stretch) CheckStretch();
  } catch (const std::exception& e) {
    std::printf("FAIL aborted: %s\n", e.what());
    ++failures;
    std::printf("\n%d passed, %d failed\n", passes, failures);
    return 1;
  }
  std::printf("\n%d passed, %d failed (%.0f s)\n", passes, failures,
              Seconds(start));
  return strict && failures > 0 ? 1 : 0;
}
