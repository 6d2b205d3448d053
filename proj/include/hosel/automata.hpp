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

// Alternating parity tree automata over a ranked alphabet.

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hosel/core.hpp"
#include "hosel/tree.hpp"

namespace hosel {

/// A (direction, state) pair; directions are 1-based.
struct Atom {
  int direction = 1;
  StateId state;

  friend auto operator<=>(const Atom&, const Atom&) = default;
};

/// Positive boolean formula over atoms.
class Formula {
 public:
  enum class Kind { True, False, Atom, And, Or };

  static Formula truth();
  static Formula falsity();
  static Formula atom(int direction, StateId q);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);

  Kind kind() const { return node_->kind; }
  const Atom& atom() const { return node_->atom; }
  const Formula& left() const { return node_->children->first; }
  const Formula& right() const { return node_->children->second; }

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node {
    Kind kind;
    Atom atom;
    std::shared_ptr<const std::pair<Formula, Formula>> children;
  };
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

using Clause = std::set<Atom>;

/// One component of a colored profile: a finite set of (color, state) pairs.
using ColoredStates = std::set<std::pair<Color, StateId>>;
using ColoredProfile = std::vector<ColoredStates>;

class Apt {
 public:
  Apt() = default;
  Apt(std::vector<std::string> states, std::map<std::string, int> alphabet);

  const std::vector<std::string>& states() const { return states_; }
  std::size_t state_count() const { return states_.size(); }
  const std::map<std::string, int>& alphabet() const { return alphabet_; }

  std::optional<StateId> find_state(const std::string& name) const;
  StateId state(const std::string& name) const;  // throws std::out_of_range
  const std::string& name(StateId q) const { return states_.at(q.value); }
  int arity(const std::string& symbol) const;  // throws std::out_of_range

  /// Missing entries are False.
  const Formula& delta(StateId q, const std::string& symbol) const;
  void set_delta(StateId q, const std::string& symbol, Formula f);
  const std::map<std::pair<StateId, std::string>, Formula>& explicit_delta() const { return delta_; }

  Color omega(StateId q) const { return Color::of(omega_.at(q.value)); }
  std::uint32_t omega_value(StateId q) const { return omega_.at(q.value); }
  void set_omega(StateId q, std::uint32_t color);

  StateId initial() const { return initial_; }
  void set_initial(StateId q) { initial_ = q; }

  /// Cached dnf(delta(q, a)).
  const std::vector<Clause>& clauses(StateId q, const std::string& symbol) const;

  /// Directions out of range, unknown symbols; empty when consistent.
  std::vector<std::string> validate() const;

  friend bool operator==(const Apt& a, const Apt& b);

 private:
  std::vector<std::string> states_;
  std::map<std::string, int> alphabet_;
  std::map<std::pair<StateId, std::string>, Formula> delta_;
  std::vector<std::uint32_t> omega_;
  StateId initial_;
  mutable std::map<std::pair<StateId, std::string>, std::vector<Clause>> dnf_cache_;
};

/// Clauses of the disjunctive normal form, antichain-reduced, in canonical order.
std::vector<Clause> dnf(const Formula& f);

/// Truth of f when exactly the atoms in `assignment` hold.
bool evaluate(const Formula& f, const std::set<Atom>& assignment);

/// Some clause C of dnf(delta(q,a)) has (Omega(q'), q') in component k for all (k, q') in C.
/// Throws std::invalid_argument on arity mismatch.
bool satisfies(const ColoredProfile& alpha, StateId q, const std::string& symbol, const Apt& m);

/// Omega(Q) plus eps, ascending (eps first).
std::vector<Color> color_set(const Apt& m);

/// Finite-prefix acceptance ignoring parity; bottom nodes accept.
bool run_search(const Apt& m, const TreePrefix& t, StateId q);

std::string to_string(const Formula& f, const Apt& m);

}  // namespace hosel
