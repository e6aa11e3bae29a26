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

#include "teamsolve/games.h"

#include <algorithm>
#include <array>
#include <numeric>
#include <sstream>

namespace teamsolve {
namespace {

using Payoffs = std::array<double, kNumSeats>;

// ---------------------------------------------------------------------------
// Limit poker (Kuhn is the one-round, one-bet special case of Leduc).

struct PokerRules {
  int num_rounds = 1;
  std::array<double, 2> bet_size = {1.0, 1.0};
  int max_bets = 1;
};

struct Table {
  std::array<double, kNumSeats> contrib = {1.0, 1.0, 1.0};  // ante
  std::array<double, kNumSeats> round_contrib{};
  std::array<bool, kNumSeats> active = {true, true, true};
  std::array<bool, kNumSeats> acted{};
  double level = 0.0;
  int bets = 0;
  std::string history;
};

class PokerBuilder {
 public:
  PokerBuilder(GameBuilder& builder, const PokerRules& rules, int ranks)
      : builder_(builder), rules_(rules), ranks_(ranks) {}

  // Builds the subtree starting at the first betting round for a deal.
  int Deal(const std::array<int, kNumSeats>& cards,
           const std::vector<double>* remaining_copies) {
    cards_ = cards;
    board_ = -1;
    remaining_ = remaining_copies;
    return Betting(Table{}, 0, FirstActive(Table{}.active, 0));
  }

 private:
  static int FirstActive(const std::array<bool, kNumSeats>& active,
                         int from) {
    for (int k = 0; k < kNumSeats; ++k) {
      const int p = (from + k) % kNumSeats;
      if (active[p]) return p;
    }
    return -1;
  }

  int Betting(const Table& t, int round, int seat) {
    const int num_active =
        static_cast<int>(std::count(t.active.begin(), t.active.end(), true));
    if (num_active == 1) return Showdown(t);
    bool all_acted = true;
    for (int p = 0; p < kNumSeats; ++p) {
      if (t.active[p] && !t.acted[p]) all_acted = false;
    }
    if (all_acted) {
      if (round + 1 < rules_.num_rounds) return DealBoard(t, round + 1);
      return Showdown(t);
    }

    std::vector<std::string> actions;
    std::vector<char> codes;
    if (t.bets == 0) {
      actions = {"check"};
      codes = {'c'};
      if (rules_.max_bets > 0) {
        actions.push_back("bet");
        codes.push_back('b');
      }
    } else {
      actions = {"fold", "call"};
      codes = {'f', 'k'};
      if (t.bets < rules_.max_bets) {
        actions.push_back("raise");
        codes.push_back('r');
      }
    }
    std::string label = std::to_string(cards_[seat]) + "|" +
                        (board_ < 0 ? std::string("-")
                                    : std::to_string(board_)) +
                        "|" + t.history;
    const int node = builder_.AddDecision(seat, label, actions);
    for (int b = 0; b < static_cast<int>(codes.size()); ++b) {
      Table next = t;
      next.history.push_back(codes[b]);
      switch (codes[b]) {
        case 'c':
          next.acted[seat] = true;
          break;
        case 'f':
          next.active[seat] = false;
          break;
        case 'k': {
          const double pay = next.level - next.round_contrib[seat];
          next.round_contrib[seat] += pay;
          next.contrib[seat] += pay;
          next.acted[seat] = true;
          break;
        }
        case 'b':
        case 'r': {
          next.level += rules_.bet_size[round];
          const double pay = next.level - next.round_contrib[seat];
          next.round_contrib[seat] += pay;
          next.contrib[seat] += pay;
          ++next.bets;
          next.acted = {};
          next.acted[seat] = true;
          break;
        }
      }
      const int child =
          Betting(next, round, FirstActive(next.active, (seat + 1) % 3));
      builder_.SetChild(node, b, child);
    }
    return node;
  }

  int DealBoard(const Table& t, int round) {
    std::vector<int> boards;
    std::vector<double> probs;
    double total = 0.0;
    for (int r = 0; r < ranks_; ++r) total += (*remaining_)[r];
    for (int r = 0; r < ranks_; ++r) {
      if ((*remaining_)[r] > 0) {
        boards.push_back(r);
        probs.push_back((*remaining_)[r] / total);
      }
    }
    const int node = builder_.AddChance(probs);
    for (int b = 0; b < static_cast<int>(boards.size()); ++b) {
      Table next = t;
      next.round_contrib = {};
      next.acted = {};
      next.level = 0.0;
      next.bets = 0;
      next.history.push_back('/');
      board_ = boards[b];
      const int child = Betting(next, round, FirstActive(next.active, 0));
      builder_.SetChild(node, b, child);
    }
    board_ = -1;
    return node;
  }

  int Strength(int seat) const {
    if (board_ >= 0 && cards_[seat] == board_) return ranks_ + cards_[seat];
    return cards_[seat];
  }

  int Showdown(const Table& t) {
    int best = -1;
    for (int p = 0; p < kNumSeats; ++p) {
      if (t.active[p]) best = std::max(best, Strength(p));
    }
    int winners = 0;
    for (int p = 0; p < kNumSeats; ++p) {
      if (t.active[p] && Strength(p) == best) ++winners;
    }
    const double pot = t.contrib[0] + t.contrib[1] + t.contrib[2];
    Payoffs payoffs{};
    for (int p = 0; p < kNumSeats; ++p) {
      const bool wins = t.active[p] && Strength(p) == best;
      payoffs[p] = (wins ? pot / winners : 0.0) - t.contrib[p];
    }
    return builder_.AddTerminal(payoffs);
  }

  GameBuilder& builder_;
  PokerRules rules_;
  int ranks_;
  std::array<int, kNumSeats> cards_{};
  int board_ = -1;
  const std::vector<double>* remaining_ = nullptr;
};

std::shared_ptr<const Game> BuildKuhn(int ranks) {
  GameBuilder builder;
  std::vector<std::array<int, kNumSeats>> deals;
  for (int a = 0; a < ranks; ++a) {
    for (int b = 0; b < ranks; ++b) {
      for (int c = 0; c < ranks; ++c) {
        if (a != b && b != c && a != c) deals.push_back({a, b, c});
      }
    }
  }
  const int root = builder.AddChance(
      std::vector<double>(deals.size(), 1.0 / static_cast<double>(deals.size())));
  PokerRules rules;
  PokerBuilder poker(builder, rules, ranks);
  for (int d = 0; d < static_cast<int>(deals.size()); ++d) {
    builder.SetChild(root, d, poker.Deal(deals[d], nullptr));
  }
  return std::move(builder).Build();
}

constexpr int kLeducCopies = 2;

std::shared_ptr<const Game> BuildLeduc(int ranks, int max_raises) {
  GameBuilder builder;
  const double deck = static_cast<double>(kLeducCopies * ranks);
  std::vector<std::array<int, kNumSeats>> deals;
  std::vector<double> probs;
  std::vector<std::vector<double>> remaining;
  for (int a = 0; a < ranks; ++a) {
    for (int b = 0; b < ranks; ++b) {
      for (int c = 0; c < ranks; ++c) {
        std::vector<double> left(ranks, kLeducCopies);
        double p = 1.0;
        double size = deck;
        bool possible = true;
        for (int card : {a, b, c}) {
          if (left[card] <= 0) {
            possible = false;
            break;
          }
          p *= left[card] / size;
          left[card] -= 1;
          size -= 1;
        }
        if (!possible) continue;
        deals.push_back({a, b, c});
        probs.push_back(p);
        remaining.push_back(std::move(left));
      }
    }
  }
  const int root = builder.AddChance(probs);
  PokerRules rules;
  rules.num_rounds = 2;
  rules.bet_size = {2.0, 4.0};
  rules.max_bets = max_raises;
  PokerBuilder poker(builder, rules, ranks);
  for (int d = 0; d < static_cast<int>(deals.size()); ++d) {
    builder.SetChild(root, d, poker.Deal(deals[d], &remaining[d]));
  }
  return std::move(builder).Build();
}

// ---------------------------------------------------------------------------
// Goofspiel, 3 ranks. Simultaneous bids are sequential moves whose infosets
// exclude the current turn's earlier bids.

constexpr int kGoofRanks = 3;
constexpr std::array<int, kGoofRanks> kGoofValues = {1, 2, 3};

class GoofspielBuilder {
 public:
  GoofspielBuilder(GameBuilder& builder, bool limited)
      : builder_(builder), limited_(limited) {}

  int Play(const std::array<int, kGoofRanks>& prizes) {
    prizes_ = prizes;
    std::array<int, kNumSeats> hands = {7, 7, 7};
    return Bid(hands, 0, 0, {}, {});
  }

 private:
  // bids[t][seat] holds card indices of completed turns and the current one.
  int Bid(std::array<int, kNumSeats> hands, int turn, int seat,
          std::array<std::array<int, kNumSeats>, kGoofRanks> bids,
          std::array<double, kNumSeats> score) {
    if (seat == kNumSeats) {
      Resolve(turn, bids[turn], score);
      if (turn + 1 == kGoofRanks) {
        const double mean = (score[0] + score[1] + score[2]) / kNumSeats;
        return builder_.AddTerminal(
            {score[0] - mean, score[1] - mean, score[2] - mean});
      }
      return Bid(hands, turn + 1, 0, bids, score);
    }
    std::vector<int> cards;
    std::vector<std::string> labels;
    for (int c = 0; c < kGoofRanks; ++c) {
      if (hands[seat] & (1 << c)) {
        cards.push_back(c);
        labels.push_back(std::to_string(kGoofValues[c]));
      }
    }
    const int node =
        builder_.AddDecision(seat, Label(turn, seat, bids), labels);
    for (int b = 0; b < static_cast<int>(cards.size()); ++b) {
      auto next_hands = hands;
      next_hands[seat] &= ~(1 << cards[b]);
      auto next_bids = bids;
      next_bids[turn][seat] = cards[b];
      builder_.SetChild(node, b,
                        Bid(next_hands, turn, seat + 1, next_bids, score));
    }
    return node;
  }

  static int WinnerMask(const std::array<int, kNumSeats>& bid) {
    const int best = *std::max_element(bid.begin(), bid.end());
    int mask = 0;
    for (int p = 0; p < kNumSeats; ++p) {
      if (bid[p] == best) mask |= 1 << p;
    }
    return mask;
  }

  void Resolve(int turn, const std::array<int, kNumSeats>& bid,
               std::array<double, kNumSeats>& score) const {
    const int mask = WinnerMask(bid);
    const int winners = __builtin_popcount(static_cast<unsigned>(mask));
    const double share =
        static_cast<double>(kGoofValues[prizes_[turn]]) / winners;
    for (int p = 0; p < kNumSeats; ++p) {
      if (mask & (1 << p)) score[p] += share;
    }
  }

  std::string Label(
      int turn, int seat,
      const std::array<std::array<int, kNumSeats>, kGoofRanks>& bids) const {
    std::string s = "p";
    for (int t = 0; t <= turn; ++t) s += std::to_string(prizes_[t]);
    for (int t = 0; t < turn; ++t) {
      s += "|";
      s += std::to_string(bids[t][seat]);
      if (limited_) {
        s += "w" + std::to_string(WinnerMask(bids[t]));
      } else {
        for (int p = 0; p < kNumSeats; ++p) s += std::to_string(bids[t][p]);
      }
    }
    return s;
  }

  GameBuilder& builder_;
  bool limited_;
  std::array<int, kGoofRanks> prizes_{};
};

std::shared_ptr<const Game> BuildGoofspiel(bool limited) {
  GameBuilder builder;
  std::array<int, kGoofRanks> order = {0, 1, 2};
  std::vector<std::array<int, kGoofRanks>> orders;
  do {
    orders.push_back(order);
  } while (std::next_permutation(order.begin(), order.end()));
  const int root = builder.AddChance(std::vector<double>(
      orders.size(), 1.0 / static_cast<double>(orders.size())));
  GoofspielBuilder goof(builder, limited);
  for (int o = 0; o < static_cast<int>(orders.size()); ++o) {
    builder.SetChild(root, o, goof.Play(orders[o]));
  }
  return std::move(builder).Build();
}

// ---------------------------------------------------------------------------
// Liar's dice, one die per seat.

class LiarsDiceBuilder {
 public:
  LiarsDiceBuilder(GameBuilder& builder, int faces)
      : builder_(builder), faces_(faces), num_bids_(kNumSeats * faces) {}

  int Play(const std::array<int, kNumSeats>& dice) {
    dice_ = dice;
    return Turn(-1, 0, "");
  }

 private:
  int Turn(int last_bid, int num_bids, const std::string& history) {
    const int seat = num_bids % kNumSeats;
    std::vector<std::string> actions;
    for (int b = last_bid + 1; b < num_bids_; ++b) {
      actions.push_back(std::to_string(b / faces_ + 1) + "x" +
                        std::to_string(b % faces_ + 1));
    }
    if (num_bids > 0) actions.push_back("challenge");
    const int node = builder_.AddDecision(
        seat, std::to_string(dice_[seat] + 1) + "|" + history, actions);
    int branch = 0;
    for (int b = last_bid + 1; b < num_bids_; ++b, ++branch) {
      builder_.SetChild(
          node, branch,
          Turn(b, num_bids + 1,
               history + (history.empty() ? "" : ",") + std::to_string(b)));
    }
    if (num_bids > 0) {
      builder_.SetChild(node, branch, Challenge(last_bid, num_bids));
    }
    return node;
  }

  int Challenge(int bid, int num_bids) {
    const int count = bid / faces_ + 1;
    const int face = bid % faces_;
    const int showing =
        static_cast<int>(std::count(dice_.begin(), dice_.end(), face));
    const int bidder = (num_bids - 1) % kNumSeats;
    const int challenger = num_bids % kNumSeats;
    Payoffs payoffs{};
    const bool valid = showing >= count;
    payoffs[bidder] = valid ? 1.0 : -1.0;
    payoffs[challenger] = valid ? -1.0 : 1.0;
    return builder_.AddTerminal(payoffs);
  }

  GameBuilder& builder_;
  int faces_;
  int num_bids_;
  std::array<int, kNumSeats> dice_{};
};

std::shared_ptr<const Game> BuildLiarsDice(int faces) {
  GameBuilder builder;
  const int outcomes = faces * faces * faces;
  const int root = builder.AddChance(
      std::vector<double>(outcomes, 1.0 / static_cast<double>(outcomes)));
  LiarsDiceBuilder dice(builder, faces);
  for (int o = 0; o < outcomes; ++o) {
    builder.SetChild(root, o,
                     dice.Play({o / (faces * faces), (o / faces) % faces,
                                o % faces}));
  }
  return std::move(builder).Build();
}

}  // namespace

GameSpec GameSpec::Kuhn(int ranks) {
  GameSpec s;
  s.family = GameFamily::kKuhn;
  s.ranks = ranks;
  return s;
}

GameSpec GameSpec::Goofspiel(bool limited_info) {
  GameSpec s;
  s.family = GameFamily::kGoofspiel;
  s.ranks = kGoofRanks;
  s.limited_info = limited_info;
  return s;
}

GameSpec GameSpec::LiarsDice(int faces) {
  GameSpec s;
  s.family = GameFamily::kLiarsDice;
  s.faces = faces;
  return s;
}

GameSpec GameSpec::Leduc(int ranks, int max_raises) {
  GameSpec s;
  s.family = GameFamily::kLeduc;
  s.ranks = ranks;
  s.max_raises = max_raises;
  return s;
}

std::string GameSpec::Describe() const {
  std::ostringstream out;
  switch (family) {
    case GameFamily::kKuhn:
      out << "Kuhn poker (" << ranks << " ranks)";
      break;
    case GameFamily::kGoofspiel:
      out << "Goofspiel (" << ranks << " ranks"
          << (limited_info ? ", limited info)" : ")");
      break;
    case GameFamily::kLiarsDice:
      out << "Liar's dice (" << faces << " faces)";
      break;
    case GameFamily::kLeduc:
      out << "Leduc poker (" << ranks << " ranks, " << max_raises
          << (max_raises == 1 ? " raise)" : " raises)");
      break;
  }
  return out.str();
}

std::shared_ptr<const Game> BuildGame(const GameSpec& spec) {
  switch (spec.family) {
    case GameFamily::kKuhn:
      if (spec.ranks < 3 || spec.ranks > 26) break;
      return BuildKuhn(spec.ranks);
    case GameFamily::kGoofspiel:
      if (spec.ranks != kGoofRanks) break;
      return BuildGoofspiel(spec.limited_info);
    case GameFamily::kLiarsDice:
      if (spec.faces < 2 || spec.faces > 4) break;
      return BuildLiarsDice(spec.faces);
    case GameFamily::kLeduc:
      if (spec.ranks < 2 || spec.ranks > 6 || spec.max_raises < 1 ||
          spec.max_raises > 3) {
        break;
      }
      return BuildLeduc(spec.ranks, spec.max_raises);
  }
  throw Error(ErrorCode::kUnsupportedParameters, spec.Describe());
}

const std::vector<NamedGame>& BenchmarkGames() {
  static const std::vector<NamedGame> games = {
      {"kuhn3", "A", GameSpec::Kuhn(3)},
      {"kuhn4", "B", GameSpec::Kuhn(4)},
      {"kuhn12", "C", GameSpec::Kuhn(12)},
      {"goofspiel-limited", "D", GameSpec::Goofspiel(true)},
      {"goofspiel", "E", GameSpec::Goofspiel(false)},
      {"liars3", "F", GameSpec::LiarsDice(3)},
      {"liars4", "G", GameSpec::LiarsDice(4)},
      {"leduc31", "H", GameSpec::Leduc(3, 1)},
      {"leduc41", "I", GameSpec::Leduc(4, 1)},
      {"leduc22", "J", GameSpec::Leduc(2, 2)},
  };
  return games;
}

const NamedGame& LookupGame(const std::string& name) {
  for (const NamedGame& g : BenchmarkGames()) {
    if (g.name == name) return g;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown game '" + name + "'");
}

}  // namespace teamsolve
