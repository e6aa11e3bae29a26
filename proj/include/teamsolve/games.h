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

// Generators for the benchmark game families.

#ifndef TEAMSOLVE_GAMES_H_
#define TEAMSOLVE_GAMES_H_

#include <memory>
#include <string>
#include <vector>

#include "teamsolve/efg.h"

namespace teamsolve {

enum class GameFamily { kKuhn, kGoofspiel, kLiarsDice, kLeduc };

struct GameSpec {
  GameFamily family = GameFamily::kKuhn;
  int ranks = 3;             // Kuhn, Goofspiel, Leduc
  bool limited_info = false;  // Goofspiel
  int faces = 3;             // Liar's dice
  int max_raises = 1;        // Leduc; the opening bet counts as a raise

  static GameSpec Kuhn(int ranks);
  static GameSpec Goofspiel(bool limited_info);
  static GameSpec LiarsDice(int faces);
  static GameSpec Leduc(int ranks, int max_raises);

  std::string Describe() const;
};

// Builds and validates the game. Throws kUnsupportedParameters for
// parameters outside what the generators implement.
std::shared_ptr<const Game> BuildGame(const GameSpec& spec);

struct NamedGame {
  std::string name;    // CLI name, e.g. "kuhn3"
  std::string letter;  // instance tag A..J
  GameSpec spec;
};

// The ten benchmark instances in instance-tag order A..J.
const std::vector<NamedGame>& BenchmarkGames();

// Throws kInvalidArgument for unknown names.
const NamedGame& LookupGame(const std::string& name);

}  // namespace teamsolve

#endif  // TEAMSOLVE_GAMES_H_
