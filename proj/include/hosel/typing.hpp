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

// Colored intersection type checking of abstraction-free terms.

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hosel/automata.hpp"
#include "hosel/itypes.hpp"
#include "hosel/syntax.hpp"

namespace hosel {

/// Variables and nonterminals alike; absent names stand for the empty set.
using TypeEnv = std::map<std::string, ColoredSet>;

/// x maps to {(c', a) | c' in color_set(m), (max(c, c'), a) in env(x)}: the
/// largest context whose c-coloring is contained in env.
TypeEnv residual(const TypeEnv& env, Color c, const Apt& m);

/// Pointwise coloring of a context.
TypeEnv box_env(Color c, const TypeEnv& env);

/// Pointwise subtype_set; names missing on the left are the empty set.
bool env_leq(const TypeEnv& a, const TypeEnv& b);

struct Derivation {
  enum class Rule { Ax, Delta, App, Lambda };

  Rule rule = Rule::Ax;
  TypeEnv env;
  TermPtr term;
  IType type;
  /// Ax: the context entry (eps, entry) the leaf was justified by.
  IType entry;
  /// App: the colored set the function consumes.
  ColoredSet chosen;
  /// App: function first, then one premise per element of `chosen` in order.
  /// Lambda: the body.
  std::vector<std::shared_ptr<const Derivation>> premises;
};

using DerivationPtr = std::shared_ptr<const Derivation>;

/// Backward search for env |- t : target.  t is a rule body (applicative) or
/// a lambda spine over one.  Throws std::invalid_argument on a free name
/// missing from both env and the alphabet of m, or on a fixpoint / redex.
DerivationPtr derive(const TypeEnv& env, const TermPtr& t, const IType& target, const Apt& m);

/// Independent local-correctness check; returns the first problem found.
std::optional<std::string> check_derivation(const Derivation& d, const Apt& m);

/// All (env, type) pairs over a fixed list of free names, by bottom-up
/// semantic evaluation.
class Denotation {
 public:
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<IType>& types() const { return types_; }
  /// Every environment of the domain, as one colored set per name.
  const std::vector<std::vector<ColoredSet>>& environments() const { return envs_; }

  bool contains(std::size_t env_index, std::size_t type_index) const;
  bool contains(const std::vector<ColoredSet>& env, const IType& alpha) const;
  std::size_t size() const;

  TypeEnv env_at(std::size_t env_index) const;

 private:
  friend Denotation denotation(const TermPtr&, const std::map<std::string, SimpleType>&, const Apt&,
                               const std::map<std::string, std::vector<ColoredSet>>&);
  std::vector<std::string> names_;
  std::vector<IType> types_;
  std::vector<std::vector<ColoredSet>> envs_;
  std::vector<std::vector<bool>> member_;  // [env][type]
};

/// `sorts` gives every free name of t (terminals come from m).  Each name
/// ranges over all colored sets of its sort unless `domains` overrides it;
/// an override is extended with the residuals of its members.
/// Throws SizeGuardError when a space is too large.
Denotation denotation(const TermPtr& t, const std::map<std::string, SimpleType>& sorts, const Apt& m,
                      const std::map<std::string, std::vector<ColoredSet>>& domains = {});

}  // namespace hosel
