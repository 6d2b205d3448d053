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


// Witness schemes: from Eve's strategy to a scheme over annotated symbols
// whose value tree is an accepting run-tree.
//
// Annotated names:
//   terminal     a@{k:c.q,...}->q'   directions 1-based, colors as numbers
//   nonterminal  F@<type>            type as printed by to_string(IType)
//
// The children of a@{...}->q' are the slots (k, c, q) in direction order,
// then canonical order within a direction.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hosel/automata.hpp"
#include "hosel/game.hpp"
#include "hosel/parity.hpp"
#include "hosel/syntax.hpp"
#include "hosel/tree.hpp"

namespace hosel {

struct AnnotatedHors {
  Hors scheme;
};

/// Decoded annotated terminal.
struct AnnotatedSymbol {
  std::string symbol;
  ColoredProfile profile;
  StateId state;
};

std::string annotated_terminal(const std::string& symbol, const ColoredProfile& profile, StateId q, const Apt& m);
std::string annotated_nonterminal(const std::string& f, const IType& t, const Apt& m);

/// Inverse of annotated_terminal.  `arity` is the underlying symbol's arity.
/// Throws std::invalid_argument on malformed names.
AnnotatedSymbol decode_terminal(const std::string& name, int arity, const Apt& m);

/// Simple sort of the annotated counterpart of a term typed t.
SimpleType annotated_sort(const IType& t);

/// Throws std::invalid_argument when EveNode(start, q) is not won by Eve.
AnnotatedHors extract_scheme(const Hors& h, const Apt& m, const SequentGame& game, const Solution& s, StateId q);

struct RunReport {
  std::size_t depth = 0;
  std::vector<std::string> projection_mismatches;
  std::vector<std::string> transition_violations;
  /// Largest color seen along each maximal path of the checked prefix.
  std::vector<Color> branch_max_colors;
  /// The underlying tree of the visited nodes; subtrees no state visits stay unresolved.
  TreePrefix projection;

  bool passed() const { return projection_mismatches.empty() && transition_violations.empty(); }
};

RunReport verify_runtree(const AnnotatedHors& g, const Hors& h, const Apt& m, StateId q, std::size_t depth);

std::string to_string(const RunReport& r);

}  // namespace hosel
