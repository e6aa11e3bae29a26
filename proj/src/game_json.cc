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

#include "teamsolve/game_json.h"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace teamsolve {

using nlohmann::json;

std::shared_ptr<const Game> ParseGameJson(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidGame, std::string("bad JSON: ") + e.what());
  }
  try {
    if (doc.value("seats", 0) != kNumSeats) {
      throw Error(ErrorCode::kInvalidGame, "\"seats\" must be 3");
    }
    const json& nodes = doc.at("nodes");
    if (!nodes.is_array() || nodes.empty()) {
      throw Error(ErrorCode::kInvalidGame, "\"nodes\" must be non-empty");
    }
    const int count = static_cast<int>(nodes.size());
    auto check_child = [&](int child) {
      if (child < 0 || child >= count) {
        throw Error(ErrorCode::kInvalidGame,
                    "child index " + std::to_string(child) + " out of range");
      }
      return child;
    };

    GameBuilder builder;
    std::vector<std::vector<int>> children(count);
    for (int i = 0; i < count; ++i) {
      const json& n = nodes[i];
      const std::string kind = n.at("kind").get<std::string>();
      if (kind == "decision") {
        const int seat = n.at("seat").get<int>();
        if (seat < 1 || seat > kNumSeats) {
          throw Error(ErrorCode::kInvalidGame,
                      "node " + std::to_string(i) + ": seat must be 1..3");
        }
        std::vector<std::string> labels;
        for (const json& a : n.at("actions")) {
          labels.push_back(a.at("label").get<std::string>());
          children[i].push_back(check_child(a.at("child").get<int>()));
        }
        builder.AddDecision(seat - 1, n.at("infoset").get<std::string>(),
                            labels);
      } else if (kind == "chance") {
        std::vector<double> probs;
        for (const json& o : n.at("outcomes")) {
          probs.push_back(o.at("prob").get<double>());
          children[i].push_back(check_child(o.at("child").get<int>()));
        }
        builder.AddChance(std::move(probs));
      } else if (kind == "terminal") {
        const json& u = n.at("payoffs");
        if (!u.is_array() || u.size() != kNumSeats) {
          throw Error(ErrorCode::kInvalidGame,
                      "node " + std::to_string(i) + ": need three payoffs");
        }
        builder.AddTerminal(
            {u[0].get<double>(), u[1].get<double>(), u[2].get<double>()});
      } else {
        throw Error(ErrorCode::kInvalidGame,
                    "node " + std::to_string(i) + ": unknown kind " + kind);
      }
    }
    for (int i = 0; i < count; ++i) {
      for (int b = 0; b < static_cast<int>(children[i].size()); ++b) {
        builder.SetChild(i, b, children[i][b]);
      }
    }
    return std::move(builder).Build();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidGame, std::string("bad game: ") + e.what());
  }
}

std::shared_ptr<const Game> LoadGameJson(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidGame, "cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseGameJson(buffer.str());
}

std::string GameToJson(const Game& game) {
  json nodes = json::array();
  for (const Node& n : game.nodes()) {
    json j;
    switch (n.kind) {
      case NodeKind::kDecision: {
        j["kind"] = "decision";
        j["seat"] = n.seat + 1;
        j["infoset"] = game.infoset(n.infoset).label;
        json actions = json::array();
        const auto& labels = game.action_labels()[n.action_list];
        for (std::size_t b = 0; b < n.children.size(); ++b) {
          actions.push_back({{"label", labels[b]}, {"child", n.children[b]}});
        }
        j["actions"] = std::move(actions);
        break;
      }
      case NodeKind::kChance: {
        j["kind"] = "chance";
        json outcomes = json::array();
        for (std::size_t b = 0; b < n.children.size(); ++b) {
          outcomes.push_back(
              {{"prob", n.chance_probs[b]}, {"child", n.children[b]}});
        }
        j["outcomes"] = std::move(outcomes);
        break;
      }
      case NodeKind::kTerminal:
        j["kind"] = "terminal";
        j["payoffs"] = {n.payoffs[0], n.payoffs[1], n.payoffs[2]};
        break;
    }
    nodes.push_back(std::move(j));
  }
  return json{{"seats", kNumSeats}, {"nodes", std::move(nodes)}}.dump();
}

}  // namespace teamsolve
