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

// JSON game format:
//   {"seats": 3, "nodes": [ ... ]}
// with node 0 the root and each node one of
//   {"kind": "decision", "seat": 1..3, "infoset": "<label>",
//    "actions": [{"label": "...", "child": <node index>}, ...]}
//   {"kind": "chance", "outcomes": [{"prob": p, "child": <node index>}, ...]}
//   {"kind": "terminal", "payoffs": [u1, u2, u3]}
// Infosets are grouped by (seat, label).

#ifndef TEAMSOLVE_GAME_JSON_H_
#define TEAMSOLVE_GAME_JSON_H_

#include <memory>
#include <string>

#include "teamsolve/efg.h"

namespace teamsolve {

// Parses and validates; throws kInvalidGame on malformed or defective input.
std::shared_ptr<const Game> ParseGameJson(const std::string& text);
std::shared_ptr<const Game> LoadGameJson(const std::string& path);

std::string GameToJson(const Game& game);

}  // namespace teamsolve

#endif  // TEAMSOLVE_GAME_JSON_H_
