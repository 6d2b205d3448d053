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

// Max-parity games: Eve wins an infinite play when the largest priority seen
// infinitely often is even.  A player stuck at a node without successors loses.

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hosel {

enum class Player { Eve, Adam };

inline Player opponent(Player p) { return p == Player::Eve ? Player::Adam : Player::Eve; }

struct ParityGame {
  std::vector<Player> owner;
  std::vector<std::uint32_t> priority;
  std::vector<std::vector<std::size_t>> successors;
  std::size_t initial = 0;

  std::size_t size() const { return owner.size(); }
  std::size_t add_node(Player p, std::uint32_t prio);
  /// Keeps successor lists sorted and duplicate-free.
  void add_edge(std::size_t from, std::size_t to);
};

struct Solution {
  std::vector<Player> winner;
  std::map<std::size_t, std::size_t> strategy_eve;
  std::map<std::size_t, std::size_t> strategy_adam;

  bool eve_wins(std::size_t v) const { return winner.at(v) == Player::Eve; }
  std::vector<std::size_t> region(Player p) const;

  friend bool operator==(const Solution&, const Solution&) = default;
};

/// Recursive attractor decomposition; ties go to the least successor.
Solution zielonka(const ParityGame& g);

inline constexpr std::size_t kBruteForceLimit = 12;

/// Enumerates memoryless strategy pairs.  Throws std::invalid_argument above
/// kBruteForceLimit nodes or when the pair count is unreasonable.
Solution solve_brute(const ParityGame& g);

/// Checks that `s` is a closed winning strategy for `p` on its region:
/// the region is closed under the strategy-restricted edges, and no node
/// whose priority has the opponent's parity lies on a cycle through nodes of
/// no larger priority.  Returns the first problem found.
std::optional<std::string> check_strategy(const ParityGame& g, const Solution& s, Player p);

}  // namespace hosel
