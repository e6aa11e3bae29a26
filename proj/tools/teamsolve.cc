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

// teamsolve: TMECor solver for three-player zero-sum games.
//
//   teamsolve --game kuhn4 --opponent 3 --algorithm cg
//   teamsolve --game goofspiel --algorithm direct-lp --output out.json
//   teamsolve --game liars3 --report-structure
//   teamsolve reproduce-tables --jobs 2

#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "teamsolve/correlation.h"
#include "teamsolve/game_json.h"
#include "teamsolve/games.h"
#include "teamsolve/tmecor.h"

namespace teamsolve {
namespace {

using nlohmann::ordered_json;

constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;

struct RunConfig {
  std::string game;
  std::string game_file;
  int opponent = 3;
  std::string algorithm = "cg";
  std::optional<int> n;
  int seed_iterations = 1000;
  std::uint64_t rng_seed = kDefaultRngSeed;
  double tolerance = 1e-6;
  int max_iterations = 10000;
  std::string backend = "embedded";
  bool alternate_pricing = false;
  std::string output;
  bool report_structure = false;
  bool verbose = false;
};

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNonConvergence:
    case ErrorCode::kSolverFailure:
    case ErrorCode::kNotSemiRandomized:
      return kExitSolver;
    default:
      return kExitConfig;
  }
}

std::shared_ptr<const Game> LoadConfiguredGame(const RunConfig& c,
                                               std::string* label) {
  if (!c.game_file.empty()) {
    *label = c.game_file;
    return LoadGameJson(c.game_file);
  }
  *label = c.game;
  return BuildGame(LookupGame(c.game).spec);
}

TmecorOptions OptionsFor(const RunConfig& c) {
  TmecorOptions o;
  o.backend = c.backend;
  o.tolerance = c.tolerance;
  o.max_iterations = c.max_iterations;
  o.seed_iterations = c.seed_iterations;
  o.rng_seed = c.rng_seed;
  o.alternate_pricing = c.alternate_pricing;
  o.verbose = c.verbose;
  return o;
}

ordered_json StructureJson(const RelevantPairIndex& index) {
  const TeamGame& team = index.team();
  const Game& game = team.game();
  ordered_json s;
  std::vector<int> seqs;
  for (int seat = 0; seat < kNumSeats; ++seat) {
    seqs.push_back(SequenceIndex(game, seat).size());
  }
  s["num_sequences"] = seqs;
  s["num_leaves"] = game.num_leaves();
  s["relevant_pairs"] = index.size();
  s["triangle_free"] = IsTriangleFree(team, index.connectivity());
  return s;
}

ordered_json SolutionJson(const TmecorSolution& sol) {
  ordered_json support = ordered_json::array();
  std::vector<DecomposedPlan> parts;
  try {
    parts = DecomposeSolution(sol);
  } catch (const Error&) {
  }
  for (std::size_t k = 0; k < sol.support.size(); ++k) {
    const SupportPlan& s = sol.support[k];
    ordered_json entry;
    entry["lambda"] = s.weight;
    if (k < parts.size()) {
      entry["deterministic_member"] = parts[k].deterministic.seat + 1;
    } else {
      entry["deterministic_member"] = nullptr;
    }
    int nonzeros = 0;
    for (double v : s.plan.values) {
      if (v != 0.0) ++nonzeros;
    }
    entry["nonzeros"] = nonzeros;
    entry["integral"] = IsSemiRandomized(s.plan, PlayerRole::kTeamOne, 0.0) &&
                        IsSemiRandomized(s.plan, PlayerRole::kTeamTwo, 0.0);
    support.push_back(entry);
  }
  ordered_json j;
  j["value"] = sol.value;
  j["certificate"] = sol.certificate;
  j["support"] = support;
  j["iterations"] = sol.stats.iterations;
  j["pricing"] = {{"relaxation_count", sol.stats.relaxation_count},
                  {"mip_count", sol.stats.mip_count}};
  j["columns"] = sol.stats.columns;
  j["seed_plans"] = sol.stats.seed_plans;
  j["master_values"] = sol.stats.master_values;
  return j;
}

void Emit(const ordered_json& j, const std::string& path) {
  if (path.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path);
  out << j.dump(2) << "\n";
}

void PrintStructure(const std::string& label, const Game& game,
                    int opponent_seat) {
  std::vector<int> seqs;
  for (int seat = 0; seat < kNumSeats; ++seat) {
    seqs.push_back(SequenceIndex(game, seat).size());
  }
  auto game_ptr = std::shared_ptr<const Game>(&game, [](const Game*) {});
  std::string flags;
  int pairs = 0;
  for (int opp = 0; opp < kNumSeats; ++opp) {
    auto team = std::make_shared<const TeamGame>(
        game_ptr, SeatAssignment::WithOpponent(opp));
    auto index = RelevantPairs(team);
    flags += IsTriangleFree(*team, index->connectivity()) ? "Y" : "N";
    if (opp == opponent_seat) pairs = index->size();
  }
  const auto& a = SeatAssignment::WithOpponent(opponent_seat);
  const double product = static_cast<double>(seqs[a.team_one()]) *
                         static_cast<double>(seqs[a.team_two()]);
  std::printf("%-20s %7s %7s %7s %9s %10s %9s %9s %s\n", "game", "|S1|",
              "|S2|", "|S3|", "|Z|", "pairs", "pairs/Z", "SxS/pairs",
              "triangle-free(O=1,2,3)");
  std::printf("%-20s %7d %7d %7d %9d %10d %9.4f %9.4f %s\n", label.c_str(),
              seqs[0], seqs[1], seqs[2], game.num_leaves(), pairs,
              static_cast<double>(pairs) / game.num_leaves(), product / pairs,
              flags.c_str());
  std::printf("(team = seats %d,%d; opponent = seat %d)\n", a.team_one() + 1,
              a.team_two() + 1, opponent_seat + 1);
}

int Run(const RunConfig& c) {
  if (c.game.empty() == c.game_file.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "exactly one of --game and --game-file is required");
  }
  std::string label;
  auto game = LoadConfiguredGame(c, &label);
  const int opp = c.opponent - 1;
  if (c.report_structure) {
    PrintStructure(label, *game, opp);
    return 0;
  }
  if (c.algorithm == "fixed-support" && !c.n) {
    throw Error(ErrorCode::kInvalidArgument, "fixed-support requires --n");
  }
  MakeBackend(c.backend);
  const auto start = std::chrono::steady_clock::now();
  auto team = std::make_shared<const TeamGame>(
      game, SeatAssignment::WithOpponent(opp));
  auto index = RelevantPairs(team);
  const TmecorOptions options = OptionsFor(c);
  TmecorSolution sol;
  if (c.algorithm == "direct-lp") {
    sol = DirectLp(index, options);
  } else if (c.algorithm == "cg") {
    sol = ColumnGeneration(index, options);
  } else {
    sol = FixedSupportMip(index, *c.n, options);
  }
  ordered_json j;
  j["game"] = label;
  j["opponent"] = c.opponent;
  j["algorithm"] = c.algorithm;
  if (c.n) j["n"] = *c.n;
  j["rng_seed"] = c.rng_seed;
  j["seed_iterations"] = c.seed_iterations;
  j["backend"] = c.backend;
  const ordered_json solution = SolutionJson(sol);
  for (auto it = solution.begin(); it != solution.end(); ++it) j[it.key()] = it.value();
  j["structure"] = StructureJson(*index);
  j["timings"] = {
      {"solve_seconds", sol.stats.seconds},
      {"total_seconds", std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count()}};
  Emit(j, c.output);
  return 0;
}

// Acceptance-tier cells of the value table.
struct Cell {
  std::string game;
  int opponent;  // 1-based
  std::string algorithm;
  int n;  // fixed-support cap, 0 otherwise
  double expected;
  double tolerance;
};

std::vector<Cell> TableCells(bool stretch) {
  std::vector<Cell> cells;
  for (int o = 1; o <= 3; ++o) cells.push_back({"kuhn3", o, "cg", 0, 0.0, 1e-6});
  const double kuhn4[] = {0.0379, 0.0265, -0.0417};
  for (int o = 1; o <= 3; ++o) {
    cells.push_back({"kuhn4", o, "cg", 0, kuhn4[o - 1], 1e-4});
  }
  cells.push_back({"kuhn4", 1, "fixed-support", 1, 0.02083, 1e-4});
  cells.push_back({"kuhn4", 1, "fixed-support", 2, 0.03788, 1e-4});
  cells.push_back({"kuhn4", 2, "fixed-support", 1, 0.00181, 1e-4});
  cells.push_back({"kuhn4", 2, "fixed-support", 2, 0.02457, 1e-4});
  cells.push_back({"kuhn4", 2, "fixed-support", 3, 0.02652, 1e-4});
  cells.push_back({"kuhn4", 3, "fixed-support", 1, -0.04167, 1e-4});
  for (int o = 1; o <= 3; ++o) {
    cells.push_back({"goofspiel-limited", o, "direct-lp", 0, 0.2524, 1e-4});
    cells.push_back({"goofspiel-limited", o, "cg", 0, 0.2524, 1e-4});
    cells.push_back({"goofspiel-limited", o, "fixed-support", 1, 0.23889, 1e-4});
    cells.push_back({"goofspiel-limited", o, "fixed-support", 2, 0.25242, 1e-4});
    cells.push_back({"goofspiel", o, "direct-lp", 0, 0.2534, 1e-4});
    cells.push_back({"goofspiel", o, "cg", 0, 0.2534, 1e-4});
  }
  if (stretch) {
    const double kuhn12[] = {0.0664, 0.0380, -0.0140};
    const double liars3[] = {0.0, 0.2562, 0.2840};
    for (int o = 1; o <= 3; ++o) {
      cells.push_back({"kuhn12", o, "cg", 0, kuhn12[o - 1], 1e-3});
      cells.push_back({"liars3", o, "cg", 0, liars3[o - 1], 1e-3});
    }
  }
  return cells;
}

int ReproduceTables(int jobs, bool stretch, const RunConfig& base) {
  const std::vector<Cell> cells = TableCells(stretch);
  struct Outcome {
    double value = 0.0;
    double seconds = 0.0;
    std::string error;
  };
  std::vector<Outcome> outcomes(cells.size());
  std::atomic<std::size_t> next{0};
  std::mutex print;
  auto worker = [&]() {
    for (std::size_t k = next++; k < cells.size(); k = next++) {
      const Cell& cell = cells[k];
      Outcome& out = outcomes[k];
      try {
        auto team = std::make_shared<const TeamGame>(
            BuildGame(LookupGame(cell.game).spec),
            SeatAssignment::WithOpponent(cell.opponent - 1));
        auto index = RelevantPairs(team);
        TmecorOptions options = OptionsFor(base);
        options.verbose = false;
        TmecorSolution sol =
            cell.algorithm == "direct-lp" ? DirectLp(index, options)
            : cell.algorithm == "cg"      ? ColumnGeneration(index, options)
                                          : FixedSupportMip(index, cell.n, options);
        out.value = sol.value;
        out.seconds = sol.stats.seconds;
      } catch (const std::exception& e) {
        out.error = e.what();
      }
      std::lock_guard<std::mutex> lock(print);
      std::fprintf(stderr, "done %s O=%d %s%s\n", cell.game.c_str(),
                   cell.opponent, cell.algorithm.c_str(),
                   cell.n ? (" n=" + std::to_string(cell.n)).c_str() : "");
    }
  };
  std::vector<std::thread> threads;
  for (int t = 0; t < std::max(1, jobs); ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();

  int failures = 0;
  std::printf("%-18s %3s %-14s %3s %12s %12s %9s  %s\n", "game", "O",
              "algorithm", "n", "value", "expected", "seconds", "status");
  for (std::size_t k = 0; k < cells.size(); ++k) {
    const Cell& c = cells[k];
    const Outcome& o = outcomes[k];
    const bool ok =
        o.error.empty() && std::abs(o.value - c.expected) <= c.tolerance;
    if (!ok) ++failures;
    std::printf("%-18s %3d %-14s %3s %12.6f %12.6f %9.2f  %s%s\n",
                c.game.c_str(), c.opponent, c.algorithm.c_str(),
                c.n ? std::to_string(c.n).c_str() : "-", o.value, c.expected,
                o.seconds, ok ? "PASS" : "FAIL",
                o.error.empty() ? "" : (" (" + o.error + ")").c_str());
  }
  std::printf("%zu cells, %d failed\n", cells.size(), failures);
  return failures == 0 ? 0 : kExitSolver;
}

}  // namespace
}  // namespace teamsolve

int main(int argc, char** argv) {
  using namespace teamsolve;
  CLI::App app{"TMECor solver for three-player zero-sum extensive-form games"};
  app.require_subcommand(0, 1);
  RunConfig c;
  std::vector<std::string> names;
  for (const NamedGame& g : BenchmarkGames()) names.push_back(g.name);
  app.add_option("--game", c.game, "Benchmark game")
      ->check(CLI::IsMember(names));
  app.add_option("--game-file", c.game_file, "Game in the JSON format")
      ->check(CLI::ExistingFile);
  app.add_option("--opponent", c.opponent, "Opponent seat")
      ->check(CLI::Range(1, 3));
  app.add_option("--algorithm", c.algorithm, "Solver")
      ->check(CLI::IsMember({"direct-lp", "cg", "fixed-support"}));
  app.add_option("--n", c.n, "Support cap for fixed-support")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed-iterations", c.seed_iterations,
                 "CFR+ seeding iterations")
      ->check(CLI::PositiveNumber);
  app.add_option("--rng-seed", c.rng_seed, "Seed of the sampling stream");
  app.add_option("--tolerance", c.tolerance,
                 "Reduced-cost termination tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-iterations", c.max_iterations,
                 "Column-generation iteration cap")
      ->check(CLI::PositiveNumber);
  app.add_option("--backend", c.backend, "LP/MIP backend");
  app.add_flag("--alternate-pricing", c.alternate_pricing,
               "Alternate the pricing set between team members");
  app.add_option("--output", c.output, "Write the JSON report here");
  app.add_flag("--report-structure", c.report_structure,
               "Print sizes and triangle-freeness instead of solving");
  app.add_flag("-v,--verbose", c.verbose, "Log column-generation progress");

  int jobs = 1;
  bool stretch = false;
  CLI::App* tables =
      app.add_subcommand("reproduce-tables", "Solve the value-table matrix");
  tables->add_option("--jobs", jobs, "Cells solved in parallel")
      ->check(CLI::PositiveNumber);
  tables->add_flag("--stretch", stretch,
                   "Include Kuhn with 12 ranks and Liar's dice");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }
  try {
    if (tables->parsed()) return ReproduceTables(jobs, stretch, c);
    return Run(c);
  } catch (const Error& e) {
    std::cerr << "teamsolve: " << e.what() << "\n";
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    std::cerr << "teamsolve: " << e.what() << "\n";
    return kExitSolver;
  }
}
