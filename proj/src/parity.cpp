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

#include "hosel/parity.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace hosel {

std::size_t ParityGame::add_node(Player p, std::uint32_t prio) {
  owner.push_back(p);
  priority.push_back(prio);
  successors.emplace_back();
  return owner.size() - 1;
}

void ParityGame::add_edge(std::size_t from, std::size_t to) {
  auto& succ = successors.at(from);
  auto it = std::lower_bound(succ.begin(), succ.end(), to);
  if (it == succ.end() || *it != to) succ.insert(it, to);
}

std::vector<std::size_t> Solution::region(Player p) const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < winner.size(); ++v)
    if (winner[v] == p) out.push_back(v);
  return out;
}

namespace {

using NodeSet = std::vector<bool>;

class Zielonka {
 public:
  explicit Zielonka(const ParityGame& g) : g_(g) {}

  Solution run() {
    const std::size_t n = g_.size();
    Solution s;
    s.winner.assign(n, Player::Eve);
    NodeSet all(n, true);

    NodeSet stuck_eve(n, false), stuck_adam(n, false);
    for (std::size_t v = 0; v < n; ++v)
      if (g_.successors[v].empty()) (g_.owner[v] == Player::Eve ? stuck_eve : stuck_adam)[v] = true;

    NodeSet lost = attractor(all, stuck_eve, Player::Adam, s);
    NodeSet rest = minus(all, lost);
    NodeSet won = attractor(rest, intersect(stuck_adam, rest), Player::Eve, s);
    rest = minus(rest, won);
    for (std::size_t v = 0; v < n; ++v)
      if (lost[v]) s.winner[v] = Player::Adam;
    solve(rest, s);
    return s;
  }

 private:
  static NodeSet minus(const NodeSet& a, const NodeSet& b) {
    NodeSet out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] && !b[i];
    return out;
  }
  static NodeSet intersect(const NodeSet& a, const NodeSet& b) {
    NodeSet out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] && b[i];
    return out;
  }
  static bool empty(const NodeSet& a) { return std::none_of(a.begin(), a.end(), [](bool b) { return b; }); }

  std::map<std::size_t, std::size_t>& strategy(Solution& s, Player p) {
    return p == Player::Eve ? s.strategy_eve : s.strategy_adam;
  }

  // Attractor for p of `target` inside `sub`, computed in rounds from a
  // snapshot.  Nodes of p added to the attractor record their least
  // successor already inside it.
  NodeSet attractor(const NodeSet& sub, const NodeSet& target, Player p, Solution& s) {
    NodeSet attr = target;
    for (bool changed = true; changed;) {
      changed = false;
      NodeSet next = attr;
      for (std::size_t v = 0; v < g_.size(); ++v) {
        if (!sub[v] || attr[v]) continue;
        std::optional<std::size_t> inside;
        bool all_inside = true, any_succ = false;
        for (std::size_t w : g_.successors[v]) {
          if (!sub[w]) continue;
          any_succ = true;
          if (attr[w]) {
            if (!inside) inside = w;
          } else {
            all_inside = false;
          }
        }
        if (g_.owner[v] == p && inside) {
          next[v] = true;
          strategy(s, p)[v] = *inside;
        } else if (g_.owner[v] != p && any_succ && all_inside) {
          next[v] = true;
        }
      }
      if (next != attr) {
        attr = std::move(next);
        changed = true;
      }
    }
    return attr;
  }

  std::size_t least_successor(std::size_t v, const NodeSet& sub) const {
    for (std::size_t w : g_.successors[v])
      if (sub[w]) return w;
    throw std::logic_error("zielonka: dead end inside a subgame");
  }

  // Solves the dead-end-free subgame `sub`, writing winners and strategies.
  void solve(const NodeSet& sub, Solution& s) {
    if (empty(sub)) return;
    std::uint32_t top = 0;
    for (std::size_t v = 0; v < g_.size(); ++v)
      if (sub[v]) top = std::max(top, g_.priority[v]);
    const Player p = top % 2 == 0 ? Player::Eve : Player::Adam;
    NodeSet heads(g_.size(), false);
    for (std::size_t v = 0; v < g_.size(); ++v) heads[v] = sub[v] && g_.priority[v] == top;

    Solution trial = s;
    NodeSet z = attractor(sub, heads, p, trial);
    NodeSet rest = minus(sub, z);
    solve(rest, trial);
    bool opponent_wins_somewhere = false;
    for (std::size_t v = 0; v < g_.size(); ++v)
      if (rest[v] && trial.winner[v] != p) opponent_wins_somewhere = true;

    if (!opponent_wins_somewhere) {
      for (std::size_t v = 0; v < g_.size(); ++v) {
        if (!sub[v]) continue;
        trial.winner[v] = p;
        if (heads[v] && g_.owner[v] == p) strategy(trial, p)[v] = least_successor(v, sub);
      }
      s = std::move(trial);
      return;
    }

    // The opponent's part of `rest` is a dominion in `sub`.
    NodeSet dominion(g_.size(), false);
    for (std::size_t v = 0; v < g_.size(); ++v) dominion[v] = rest[v] && trial.winner[v] != p;
    Solution kept = s;
    for (std::size_t v = 0; v < g_.size(); ++v)
      if (dominion[v]) {
        kept.winner[v] = opponent(p);
        if (g_.owner[v] == opponent(p)) {
          auto& from = strategy(trial, opponent(p));
          if (auto it = from.find(v); it != from.end()) strategy(kept, opponent(p))[v] = it->second;
        }
      }
    NodeSet b = attractor(sub, dominion, opponent(p), kept);
    for (std::size_t v = 0; v < g_.size(); ++v)
      if (b[v]) kept.winner[v] = opponent(p);
    solve(minus(sub, b), kept);
    s = std::move(kept);
  }

  const ParityGame& g_;
};

}  // namespace

Solution zielonka(const ParityGame& g) { return Zielonka(g).run(); }

// ---------------------------------------------------------------------------

namespace {

// Winner of the unique play from v under memoryless choices.
Player play(const ParityGame& g, std::size_t v, const std::vector<std::size_t>& choice) {
  std::vector<int> seen(g.size(), -1);
  std::vector<std::size_t> path;
  while (seen[v] < 0) {
    seen[v] = static_cast<int>(path.size());
    path.push_back(v);
    if (g.successors[v].empty()) return opponent(g.owner[v]);
    v = g.successors[v][choice[v]];
  }
  std::uint32_t top = 0;
  for (std::size_t i = static_cast<std::size_t>(seen[v]); i < path.size(); ++i) top = std::max(top, g.priority[path[i]]);
  return top % 2 == 0 ? Player::Eve : Player::Adam;
}

// Calls f for each choice vector over the nodes owned by p (others untouched).
void for_each_strategy(const ParityGame& g, Player p, std::vector<std::size_t>& choice,
                       const std::function<bool()>& f) {
  std::vector<std::size_t> owned;
  for (std::size_t v = 0; v < g.size(); ++v)
    if (g.owner[v] == p && !g.successors[v].empty()) owned.push_back(v);
  for (std::size_t v : owned) choice[v] = 0;
  while (true) {
    if (!f()) return;
    std::size_t i = 0;
    for (; i < owned.size(); ++i) {
      if (++choice[owned[i]] < g.successors[owned[i]].size()) break;
      choice[owned[i]] = 0;
    }
    if (i == owned.size()) return;
  }
}

}  // namespace

Solution solve_brute(const ParityGame& g) {
  if (g.size() > kBruteForceLimit)
    throw std::invalid_argument("solve_brute: " + std::to_string(g.size()) + " nodes exceed the limit of " +
                                std::to_string(kBruteForceLimit));
  double pairs = 1;
  for (std::size_t v = 0; v < g.size(); ++v) pairs *= std::max<std::size_t>(1, g.successors[v].size());
  if (pairs > 5e7) throw std::invalid_argument("solve_brute: too many strategy pairs");

  const std::size_t n = g.size();
  std::vector<std::size_t> choice(n, 0);
  Solution s;
  s.winner.assign(n, Player::Adam);
  // v is Eve's iff some Eve strategy wins v against every Adam strategy.
  for_each_strategy(g, Player::Eve, choice, [&] {
    std::vector<bool> beats(n, true);
    for_each_strategy(g, Player::Adam, choice, [&] {
      for (std::size_t v = 0; v < n; ++v)
        if (beats[v] && play(g, v, choice) != Player::Eve) beats[v] = false;
      return true;
    });
    for (std::size_t v = 0; v < n; ++v)
      if (beats[v]) s.winner[v] = Player::Eve;
    return true;
  });

  // Uniform strategies: the first one winning every node of its region.
  for (Player p : {Player::Eve, Player::Adam}) {
    bool found = false;
    for_each_strategy(g, p, choice, [&] {
      bool all = true;
      for_each_strategy(g, opponent(p), choice, [&] {
        for (std::size_t v = 0; v < n && all; ++v)
          if (s.winner[v] == p && play(g, v, choice) != p) all = false;
        return all;
      });
      if (all) {
        found = true;
        for (std::size_t v = 0; v < n; ++v)
          if (s.winner[v] == p && g.owner[v] == p && !g.successors[v].empty())
            (p == Player::Eve ? s.strategy_eve : s.strategy_adam)[v] = g.successors[v][choice[v]];
      }
      return !all;
    });
    if (!found) throw std::logic_error("solve_brute: no uniform memoryless strategy");
  }
  return s;
}

// ---------------------------------------------------------------------------

std::optional<std::string> check_strategy(const ParityGame& g, const Solution& s, Player p) {
  const std::size_t n = g.size();
  const auto& strat = p == Player::Eve ? s.strategy_eve : s.strategy_adam;
  std::vector<std::vector<std::size_t>> edges(n);
  std::vector<bool> in(n, false);
  for (std::size_t v = 0; v < n; ++v) in[v] = s.winner.at(v) == p;
  for (std::size_t v = 0; v < n; ++v) {
    if (!in[v]) continue;
    if (g.owner[v] == p) {
      if (g.successors[v].empty()) return "node " + std::to_string(v) + " is stuck but won by its owner";
      auto it = strat.find(v);
      if (it == strat.end()) return "no strategy at node " + std::to_string(v);
      if (!std::binary_search(g.successors[v].begin(), g.successors[v].end(), it->second))
        return "strategy at node " + std::to_string(v) + " is not a move";
      edges[v].push_back(it->second);
    } else {
      edges[v] = g.successors[v];
    }
    for (std::size_t w : edges[v])
      if (!in[w]) return "edge " + std::to_string(v) + "->" + std::to_string(w) + " leaves the region";
  }

  // A node of the opponent's parity must not reach itself through region
  // nodes of no larger priority.
  const std::uint32_t bad = p == Player::Eve ? 1 : 0;
  for (std::size_t v0 = 0; v0 < n; ++v0) {
    if (!in[v0] || g.priority[v0] % 2 != bad) continue;
    const std::uint32_t cap = g.priority[v0];
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack;
    for (std::size_t w : edges[v0])
      if (g.priority[w] <= cap && !seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      if (v == v0) return "cycle through priority " + std::to_string(cap) + " at node " + std::to_string(v0);
      for (std::size_t w : edges[v])
        if (g.priority[w] <= cap && !seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
    }
  }
  return std::nullopt;
}

}  // namespace hosel
