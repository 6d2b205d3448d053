// Copyright 2026 The hosel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <random>

#include "hosel/core.hpp"
#include "hosel/parity.hpp"
#include "support.hpp"

using namespace hosel;

namespace {

ParityGame self_loop(Player owner, std::uint32_t priority) {
  ParityGame g;
  g.add_node(owner, priority);
  g.add_edge(0, 0);
  return g;
}

}  // namespace

TEST_CASE("single-node games") {
  for (auto solve : {zielonka, solve_brute}) {
    CHECK(solve(self_loop(Player::Eve, 2)).winner == std::vector<Player>{Player::Eve});
    CHECK(solve(self_loop(Player::Eve, 1)).winner == std::vector<Player>{Player::Adam});
    CHECK(solve(self_loop(Player::Adam, 4)).winner == std::vector<Player>{Player::Eve});
    ParityGame stuck;
    stuck.add_node(Player::Eve, 2);
    CHECK(solve(stuck).winner == std::vector<Player>{Player::Adam});
    ParityGame adam_stuck;
    adam_stuck.add_node(Player::Adam, 1);
    CHECK(solve(adam_stuck).winner == std::vector<Player>{Player::Eve});
  }
  Solution s = zielonka(self_loop(Player::Eve, 2));
  CHECK(s.strategy_eve.at(0) == 0);
  CHECK(s.region(Player::Eve) == std::vector<std::size_t>{0});
}

TEST_CASE("edges stay sorted and unique") {
  ParityGame g;
  for (int i = 0; i < 3; ++i) g.add_node(Player::Eve, 0);
  g.add_edge(0, 2);
  g.add_edge(0, 1);
  g.add_edge(0, 2);
  CHECK(g.successors[0] == std::vector<std::size_t>{1, 2});
}

TEST_CASE("a choice between an odd and an even cycle") {
  // 0 (Eve) -> 1 -> 0 with priority 3, or 0 -> 2 -> 0 with priority 4.
  ParityGame g;
  g.add_node(Player::Eve, 0);
  g.add_node(Player::Adam, 3);
  g.add_node(Player::Adam, 4);
  g.add_edge(0, 1);
  g.add_edge(0, 2);
  g.add_edge(1, 0);
  g.add_edge(2, 0);
  Solution s = zielonka(g);
  CHECK(s.winner == std::vector<Player>(3, Player::Eve));
  CHECK(s.strategy_eve.at(0) == 2);
  CHECK(s == solve_brute(g));
  CHECK_FALSE(check_strategy(g, s, Player::Eve));
  Solution wrong = s;
  wrong.strategy_eve[0] = 1;
  CHECK(check_strategy(g, wrong, Player::Eve));
  CHECK_FALSE(testing::strategy_cycles_ok(g, wrong, Player::Eve));
}

TEST_CASE("zielonka agrees with brute force on random games") {
  std::mt19937 rng(2026);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = 1 + rng() % 8;
    ParityGame g = testing::random_game(rng, n, 5, 2);
    Solution z = zielonka(g);
    Solution b = solve_brute(g);
    CHECK(z.winner == b.winner);
    for (Player p : {Player::Eve, Player::Adam}) {
      CHECK_FALSE(check_strategy(g, z, p));
      CHECK_FALSE(check_strategy(g, b, p));
      CHECK(testing::strategy_cycles_ok(g, z, p));
    }
    CHECK(zielonka(g) == z);
  }
}

TEST_CASE("brute force guard") {
  ParityGame g;
  for (std::size_t i = 0; i <= kBruteForceLimit; ++i) g.add_node(Player::Eve, 0);
  for (std::size_t i = 0; i <= kBruteForceLimit; ++i) g.add_edge(i, (i + 1) % g.size());
  CHECK_THROWS_AS(solve_brute(g), std::invalid_argument);
  CHECK(zielonka(g).winner == std::vector<Player>(g.size(), Player::Eve));
}

TEST_CASE("priority encoding of colors") {
  std::vector<Color> colors{Color::epsilon()};
  for (std::uint32_t c = 0; c < 8; ++c) colors.push_back(Color::of(c));
  CHECK(Color::epsilon().priority() == 1);
  for (std::size_t i = 1; i < colors.size(); ++i) {
    CHECK(colors[i].priority() % 2 == colors[i].value() % 2);
    CHECK(colors[i - 1].priority() < colors[i].priority());
  }
  // A branch's colors seen infinitely often: the largest non-eps one decides,
  // and an eps-only branch loses.  Same verdict through the encoding.
  std::mt19937 rng(1);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<Color> cycle;
    std::size_t len = 1 + rng() % 4;
    for (std::size_t i = 0; i < len; ++i) cycle.push_back(colors[rng() % 5]);
    std::optional<std::uint32_t> top;
    for (Color c : cycle)
      if (!c.is_epsilon()) top = std::max(top.value_or(0), c.value());
    bool direct = top && *top % 2 == 0;
    ParityGame g;
    for (Color c : cycle) g.add_node(Player::Eve, c.priority());
    for (std::size_t i = 0; i < len; ++i) g.add_edge(i, (i + 1) % len);
    CHECK((zielonka(g).winner[0] == Player::Eve) == direct);
  }
}
