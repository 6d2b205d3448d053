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

#include "hosel/automata.hpp"

#include <algorithm>
#include <stdexcept>

namespace hosel {

Formula Formula::truth() { return Formula(std::make_shared<const Node>(Node{Kind::True, {}, {}})); }

Formula Formula::falsity() { return Formula(std::make_shared<const Node>(Node{Kind::False, {}, {}})); }

Formula Formula::atom(int direction, StateId q) {
  return Formula(std::make_shared<const Node>(Node{Kind::Atom, Atom{direction, q}, {}}));
}

Formula Formula::conj(Formula a, Formula b) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::And, {}, std::make_shared<const std::pair<Formula, Formula>>(std::move(a), std::move(b))}));
}

Formula Formula::disj(Formula a, Formula b) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::Or, {}, std::make_shared<const std::pair<Formula, Formula>>(std::move(a), std::move(b))}));
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False:
      return true;
    case Formula::Kind::Atom:
      return a.atom() == b.atom();
    default:
      return a.left() == b.left() && a.right() == b.right();
  }
}

namespace {

std::vector<Clause> minimize(std::vector<Clause> clauses) {
  std::sort(clauses.begin(), clauses.end(),
            [](const Clause& a, const Clause& b) { return a.size() != b.size() ? a.size() < b.size() : a < b; });
  std::vector<Clause> kept;
  for (auto& c : clauses) {
    bool subsumed = std::any_of(kept.begin(), kept.end(), [&](const Clause& k) {
      return std::includes(c.begin(), c.end(), k.begin(), k.end());
    });
    if (!subsumed) kept.push_back(std::move(c));
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

}  // namespace

std::vector<Clause> dnf(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::True:
      return {Clause{}};
    case Formula::Kind::False:
      return {};
    case Formula::Kind::Atom:
      return {Clause{f.atom()}};
    case Formula::Kind::Or: {
      auto l = dnf(f.left());
      auto r = dnf(f.right());
      l.insert(l.end(), r.begin(), r.end());
      return minimize(std::move(l));
    }
    case Formula::Kind::And: {
      auto l = dnf(f.left());
      auto r = dnf(f.right());
      std::vector<Clause> out;
      for (const auto& a : l)
        for (const auto& b : r) {
          Clause c = a;
          c.insert(b.begin(), b.end());
          out.push_back(std::move(c));
        }
      return minimize(std::move(out));
    }
  }
  return {};
}

bool evaluate(const Formula& f, const std::set<Atom>& assignment) {
  switch (f.kind()) {
    case Formula::Kind::True:
      return true;
    case Formula::Kind::False:
      return false;
    case Formula::Kind::Atom:
      return assignment.count(f.atom()) > 0;
    case Formula::Kind::And:
      return evaluate(f.left(), assignment) && evaluate(f.right(), assignment);
    case Formula::Kind::Or:
      return evaluate(f.left(), assignment) || evaluate(f.right(), assignment);
  }
  return false;
}

// ---------------------------------------------------------------------------

Apt::Apt(std::vector<std::string> states, std::map<std::string, int> alphabet)
    : states_(std::move(states)), alphabet_(std::move(alphabet)), omega_(states_.size(), 0) {}

std::optional<StateId> Apt::find_state(const std::string& name) const {
  for (std::size_t i = 0; i < states_.size(); ++i)
    if (states_[i] == name) return StateId{static_cast<std::uint32_t>(i)};
  return std::nullopt;
}

StateId Apt::state(const std::string& name) const {
  if (auto q = find_state(name)) return *q;
  throw std::out_of_range("unknown state " + name);
}

int Apt::arity(const std::string& symbol) const {
  auto it = alphabet_.find(symbol);
  if (it == alphabet_.end()) throw std::out_of_range("unknown symbol " + symbol);
  return it->second;
}

const Formula& Apt::delta(StateId q, const std::string& symbol) const {
  static const Formula kFalse = Formula::falsity();
  auto it = delta_.find({q, symbol});
  return it == delta_.end() ? kFalse : it->second;
}

void Apt::set_delta(StateId q, const std::string& symbol, Formula f) {
  delta_.insert_or_assign({q, symbol}, std::move(f));
  dnf_cache_.clear();
}

void Apt::set_omega(StateId q, std::uint32_t color) { omega_.at(q.value) = color; }

const std::vector<Clause>& Apt::clauses(StateId q, const std::string& symbol) const {
  auto key = std::make_pair(q, symbol);
  auto it = dnf_cache_.find(key);
  if (it == dnf_cache_.end()) it = dnf_cache_.emplace(key, dnf(delta(q, symbol))).first;
  return it->second;
}

std::vector<std::string> Apt::validate() const {
  std::vector<std::string> problems;
  if (states_.empty()) problems.push_back("automaton has no states");
  for (const auto& [key, f] : delta_) {
    auto sym = alphabet_.find(key.second);
    if (sym == alphabet_.end()) {
      problems.push_back("transition on unknown symbol " + key.second);
      continue;
    }
    std::vector<const Formula*> todo{&f};
    while (!todo.empty()) {
      const Formula* g = todo.back();
      todo.pop_back();
      if (g->kind() == Formula::Kind::And || g->kind() == Formula::Kind::Or) {
        todo.push_back(&g->left());
        todo.push_back(&g->right());
      } else if (g->kind() == Formula::Kind::Atom &&
                 (g->atom().direction < 1 || g->atom().direction > sym->second)) {
        problems.push_back("direction " + std::to_string(g->atom().direction) + " out of range for " + key.second +
                           "/" + std::to_string(sym->second));
      }
    }
  }
  return problems;
}

bool operator==(const Apt& a, const Apt& b) {
  if (a.states_ != b.states_ || a.alphabet_ != b.alphabet_ || a.omega_ != b.omega_ || a.initial_ != b.initial_)
    return false;
  for (std::uint32_t q = 0; q < a.states_.size(); ++q)
    for (const auto& [sym, arity] : a.alphabet_)
      if (!(a.delta(StateId{q}, sym) == b.delta(StateId{q}, sym))) return false;
  return true;
}

bool satisfies(const ColoredProfile& alpha, StateId q, const std::string& symbol, const Apt& m) {
  if (static_cast<int>(alpha.size()) != m.arity(symbol))
    throw std::invalid_argument("profile of length " + std::to_string(alpha.size()) + " for symbol " + symbol +
                                " of arity " + std::to_string(m.arity(symbol)));
  for (const auto& clause : m.clauses(q, symbol)) {
    bool ok = std::all_of(clause.begin(), clause.end(), [&](const Atom& a) {
      return alpha[static_cast<std::size_t>(a.direction - 1)].count({m.omega(a.state), a.state}) > 0;
    });
    if (ok) return true;
  }
  return false;
}

std::vector<Color> color_set(const Apt& m) {
  std::set<Color> cols{Color::epsilon()};
  for (std::uint32_t q = 0; q < m.state_count(); ++q) cols.insert(m.omega(StateId{q}));
  return {cols.begin(), cols.end()};
}

namespace {

bool accepts(const Apt& m, const TreePrefix& t, StateId q, std::map<std::pair<const TreePrefix*, StateId>, bool>& memo) {
  if (t.bottom) return true;
  auto key = std::make_pair(&t, q);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  bool result = false;
  for (const auto& clause : m.clauses(q, t.label)) {
    result = std::all_of(clause.begin(), clause.end(), [&](const Atom& a) {
      return accepts(m, t.children.at(static_cast<std::size_t>(a.direction - 1)), a.state, memo);
    });
    if (result) break;
  }
  memo[key] = result;
  return result;
}

void print(const Formula& f, const Apt& m, std::string& out) {
  auto child = [&](const Formula& c, Formula::Kind parent, bool right) {
    bool paren = (parent == Formula::Kind::And && c.kind() == Formula::Kind::Or) || (right && c.kind() == parent);
    if (paren) out += '(';
    print(c, m, out);
    if (paren) out += ')';
  };
  switch (f.kind()) {
    case Formula::Kind::True:
      out += "true";
      return;
    case Formula::Kind::False:
      out += "false";
      return;
    case Formula::Kind::Atom:
      out += "(" + std::to_string(f.atom().direction) + "," + m.name(f.atom().state) + ")";
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
      child(f.left(), f.kind(), false);
      out += f.kind() == Formula::Kind::And ? " /\\ " : " \\/ ";
      child(f.right(), f.kind(), true);
      return;
  }
}

}  // namespace

bool run_search(const Apt& m, const TreePrefix& t, StateId q) {
  std::map<std::pair<const TreePrefix*, StateId>, bool> memo;
  return accepts(m, t, q, memo);
}

std::string to_string(const Formula& f, const Apt& m) {
  std::string out;
  print(f, m, out);
  return out;
}

}  // namespace hosel
