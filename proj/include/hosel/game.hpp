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

// The typing game of a recursion scheme against an automaton.
//
//   EveNode(F, t)        Eve names the assumptions D under which the body
//                        of F has type t
//   AdamNode(F, t, D)    Adam challenges one assumption (c, t') of some G
//   ColorNode(c, G, t')  carries priority c; leads to EveNode(G, t')

#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hosel/automata.hpp"
#include "hosel/itypes.hpp"
#include "hosel/parity.hpp"
#include "hosel/syntax.hpp"
#include "hosel/typing.hpp"

namespace hosel {

struct GameNode {
  enum class Kind { Eve, Adam, Color };

  Kind kind = Kind::Eve;
  std::string nonterminal;
  IType type;
  TypeEnv assumption;  // Adam only
  Color color;         // Color only

  static GameNode eve(std::string f, IType t) { return {Kind::Eve, std::move(f), std::move(t), {}, {}}; }
  static GameNode adam(std::string f, IType t, TypeEnv delta) {
    return {Kind::Adam, std::move(f), std::move(t), std::move(delta), {}};
  }
  static GameNode colored(Color c, std::string f, IType t) { return {Kind::Color, std::move(f), std::move(t), {}, c}; }

  friend std::strong_ordering operator<=>(const GameNode& a, const GameNode& b);
  friend bool operator==(const GameNode& a, const GameNode& b);
};

struct GameOptions {
  std::size_t node_limit = 200000;
  /// Bound on alternative assumption sets considered at one subterm.
  std::size_t alternative_limit = 1u << 14;
  std::uint64_t enumeration_limit = kEnumerationLimit;
};

struct SequentGame {
  ParityGame arena;
  std::vector<GameNode> nodes;  // discovery order, seeds first
  std::map<GameNode, std::size_t> index;

  std::optional<std::size_t> find(const GameNode& n) const;
  std::optional<std::size_t> eve_node(const std::string& f, const IType& t) const {
    return find(GameNode::eve(f, t));
  }
};

/// Explores the game from EveNode(start, q) for every state q.  Throws
/// SizeGuardError past the node limit and std::invalid_argument on an
/// ill-formed scheme or an automaton over a different alphabet.
SequentGame build_game(const Hors& h, const Apt& m, const GameOptions& options = {});

/// Environment binding the rule parameters of f according to t.
TypeEnv parameter_env(const Hors& h, const std::string& f, const IType& t);

/// Eve's candidate assumption maps at EveNode(f, t), canonically ordered;
/// each one is confirmed by derive.
std::vector<TypeEnv> eve_moves(const Hors& h, const Apt& m, const std::string& f, const IType& t,
                               const GameOptions& options = {});

/// States q with EveNode(start, q) won by Eve.
std::vector<StateId> accepted_states(const SequentGame& g, const Solution& s, const Hors& h);
std::vector<StateId> accepted_states(const Hors& h, const Apt& m, const GameOptions& options = {});

std::string to_string(const GameNode& n, const Apt& m);

/// Graphviz rendering.  Shape follows the owner (diamond for Eve, box for
/// Adam; color nodes belong to Eve); labels carry the sequent and priority.
/// Winners are colored when a solution is given.
std::string to_dot(const SequentGame& g, const Apt& m, const Solution* s = nullptr);

}  // namespace hosel
