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

// Simple types, applicative/lambda-Y terms and recursion schemes.

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace hosel {

/// o | sigma -> tau.  Immutable, cheap to copy.
class SimpleType {
 public:
  SimpleType() = default;  // ground

  static SimpleType ground() { return SimpleType(); }
  static SimpleType arrow(SimpleType domain, SimpleType codomain);
  /// o -> ... -> o with n arrows.
  static SimpleType terminal_sort(int arity);

  bool is_ground() const { return arrow_ == nullptr; }
  const SimpleType& domain() const { return arrow_->first; }
  const SimpleType& codomain() const { return arrow_->second; }

  int order() const;
  /// Number of arguments before reaching o.
  int arity() const;
  /// Argument sorts, left to right.
  std::vector<SimpleType> arguments() const;

  std::string str() const;

  friend bool operator==(const SimpleType& a, const SimpleType& b);
  friend std::strong_ordering operator<=>(const SimpleType& a, const SimpleType& b);

 private:
  std::shared_ptr<const std::pair<SimpleType, SimpleType>> arrow_;
};

struct Term;
using TermPtr = std::shared_ptr<const Term>;

/// Var | Terminal | NonTerminal | App | Lambda | Fix.
struct Term {
  enum class Kind { Var, Terminal, NonTerminal, App, Lambda, Fix };

  Kind kind = Kind::Var;
  std::string name;    // Var, Terminal, NonTerminal, Lambda binder
  SimpleType sort;     // Lambda binder sort, Fix sort
  TermPtr function;    // App
  TermPtr argument;    // App
  TermPtr body;        // Lambda, Fix

  bool is(Kind k) const { return kind == k; }
};

TermPtr var(std::string name);
TermPtr terminal(std::string name);
TermPtr nonterminal(std::string name);
TermPtr app(TermPtr function, TermPtr argument);
TermPtr app(TermPtr function, const std::vector<TermPtr>& arguments);
TermPtr lambda(std::string binder, SimpleType sort, TermPtr body);
TermPtr fix(SimpleType sort, TermPtr body);

/// Structural equality (binder names included).
bool equal(const TermPtr& a, const TermPtr& b);

/// Head and arguments of an application spine `h t1 ... tn`.
struct Spine {
  TermPtr head;
  std::vector<TermPtr> arguments;
};
Spine spine(const TermPtr& t);

/// Number of AST nodes.
int term_size(const TermPtr& t);

/// Free Var names and NonTerminal names occurring in t.
std::set<std::string> free_names(const TermPtr& t);

bool is_applicative(const TermPtr& t);

/// Replace every free Var `name` by `replacement`.  The replacement must be
/// closed with respect to Vars, so no capture can occur.
TermPtr substitute_var(const TermPtr& t, const std::string& name, const TermPtr& replacement);
TermPtr substitute_nonterminal(const TermPtr& t, const std::string& name, const TermPtr& replacement);

/// Applicative terms print as in scheme files; lambdas as `\x:o. M`, fixpoints as `Y[o] M`.
std::string to_string(const TermPtr& t);

struct Binder {
  std::string name;
  SimpleType sort;

  friend bool operator==(const Binder&, const Binder&) = default;
};

struct Rule {
  std::vector<Binder> binders;
  TermPtr body;
};

struct TerminalDecl {
  std::string name;
  int arity = 0;

  friend bool operator==(const TerminalDecl&, const TerminalDecl&) = default;
};

struct NonterminalDecl {
  std::string name;
  SimpleType sort;

  friend bool operator==(const NonterminalDecl&, const NonterminalDecl&) = default;
};

/// A higher-order recursion scheme.  Declaration order is kept.
struct Hors {
  std::vector<TerminalDecl> terminals;
  std::vector<NonterminalDecl> nonterminals;
  std::map<std::string, Rule> rules;
  std::string start;

  std::optional<int> arity_of(const std::string& terminal) const;
  std::optional<SimpleType> sort_of(const std::string& nonterminal) const;
  const Rule& rule(const std::string& nonterminal) const;

  /// Ranked alphabet as a map.
  std::map<std::string, int> alphabet() const;
};

bool operator==(const Hors& a, const Hors& b);

struct Diagnostic {
  std::string subject;  // offending rule or symbol
  std::string message;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

std::vector<Diagnostic> check_wellformed(const Hors& h);

/// Sort inference.  `names` maps Vars and NonTerminals to sorts; `alphabet`
/// gives terminal arities.  Returns nullopt and fills `error` when ill-typed.
std::optional<SimpleType> infer_sort(const TermPtr& t,
                                     const std::map<std::string, SimpleType>& names,
                                     const std::map<std::string, int>& alphabet,
                                     std::string* error = nullptr);

}  // namespace hosel
