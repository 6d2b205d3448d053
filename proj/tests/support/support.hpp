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


// Test-only helpers and independent reference implementations.

#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "hosel/automata.hpp"
#include "hosel/itypes.hpp"
#include "hosel/parity.hpp"
#include "hosel/syntax.hpp"
#include "hosel/tree.hpp"
#include "hosel/typing.hpp"

namespace hosel::testing {

std::string fixture_path(const std::string& file);
std::string read_text(const std::string& path);
Hors load_scheme(const std::string& name);               // tests/fixtures/<name>.hors
Apt load_automaton(const std::string& name, const Hors& h);  // tests/fixtures/<name>.apt

struct FixturePair {
  std::string scheme;
  std::string automaton;
  std::vector<std::string> accepted;  // expected accepting states, sorted
};
const std::vector<FixturePair>& fixture_pairs();

/// Random game with owners, priorities in [0, max_priority] and
/// 0..max_degree successors per node.
ParityGame random_game(std::mt19937& rng, std::size_t nodes, std::uint32_t max_priority, std::size_t max_degree);

/// Every simple cycle of the subgraph induced by `region` under p's strategy
/// (p's nodes keep only their strategy edge) has a maximal priority of p's parity.
/// Enumerates cycles explicitly; intended for small games.
bool strategy_cycles_ok(const ParityGame& g, const Solution& s, Player p);

/// Subtyping read off the inference rules directly.
bool rule_subtype(const IType& a, const IType& b);
bool rule_subtype_set(const ColoredSet& u, const ColoredSet& v);

/// Provability with the exact context `env` in the literal type system: Ax
/// consumes only its own variable, the terminal rule an empty context, and
/// application splits the context into a union of colored parts.
/// Applicative terms only.  `sorts` gives the sorts of free names.
bool literal_provable(const TypeEnv& env, const TermPtr& t, const IType& target, const Apt& m,
                      const std::map<std::string, SimpleType>& sorts);

/// Some sub-context of env (pointwise subset) is literally provable.
bool provable_by_splitting(const TypeEnv& env, const TermPtr& t, const IType& target, const Apt& m,
                           const std::map<std::string, SimpleType>& sorts);

/// Depth-bounded Böhm tree prefix of a closed ground lambda-Y term, by
/// normal-order head reduction with its own substitution.
TreePrefix lambda_y_prefix(const TermPtr& t, std::size_t depth, std::size_t step_budget = 100000);

/// All well-sorted applicative terms of AST size <= max_size over `atoms`.
struct Atomic {
  TermPtr term;
  SimpleType sort;
};
std::vector<Atomic> applicative_terms(const std::vector<Atomic>& atoms, int max_size);

/// Tiny automata used across the tests.
Apt ex1_automaton(std::uint32_t color_q0 = 0, std::uint32_t color_q1 = 0);
Hors ex1_scheme();

}  // namespace hosel::testing
