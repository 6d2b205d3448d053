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

#include "hosel/syntax.hpp"

#include <algorithm>
#include <stdexcept>

namespace hosel {

SimpleType SimpleType::arrow(SimpleType domain, SimpleType codomain) {
  SimpleType t;
  t.arrow_ = std::make_shared<const std::pair<SimpleType, SimpleType>>(std::move(domain),
                                                                       std::move(codomain));
  return t;
}

SimpleType SimpleType::terminal_sort(int arity) {
  SimpleType t;
  for (int i = 0; i < arity; ++i) t = arrow(ground(), t);
  return t;
}

int SimpleType::order() const {
  if (is_ground()) return 0;
  return std::max(domain().order() + 1, codomain().order());
}

int SimpleType::arity() const {
  int n = 0;
  for (const SimpleType* t = this; !t->is_ground(); t = &t->codomain()) ++n;
  return n;
}

std::vector<SimpleType> SimpleType::arguments() const {
  std::vector<SimpleType> out;
  for (const SimpleType* t = this; !t->is_ground(); t = &t->codomain()) out.push_back(t->domain());
  return out;
}

std::string SimpleType::str() const {
  if (is_ground()) return "o";
  std::string d = domain().str();
  if (!domain().is_ground()) d = "(" + d + ")";
  return d + " -> " + codomain().str();
}

bool operator==(const SimpleType& a, const SimpleType& b) { return (a <=> b) == 0; }

std::strong_ordering operator<=>(const SimpleType& a, const SimpleType& b) {
  if (a.arrow_ == b.arrow_) return std::strong_ordering::equal;
  if (a.is_ground() != b.is_ground())
    return a.is_ground() ? std::strong_ordering::less : std::strong_ordering::greater;
  if (auto c = a.domain() <=> b.domain(); c != 0) return c;
  return a.codomain() <=> b.codomain();
}

// ---------------------------------------------------------------------------
// Terms

namespace {

TermPtr make(Term t) { return std::make_shared<const Term>(std::move(t)); }

}  // namespace

TermPtr var(std::string name) { return make(Term{Term::Kind::Var, std::move(name), {}, {}, {}, {}}); }

TermPtr terminal(std::string name) {
  return make(Term{Term::Kind::Terminal, std::move(name), {}, {}, {}, {}});
}

TermPtr nonterminal(std::string name) {
  return make(Term{Term::Kind::NonTerminal, std::move(name), {}, {}, {}, {}});
}

TermPtr app(TermPtr function, TermPtr argument) {
  return make(Term{Term::Kind::App, {}, {}, std::move(function), std::move(argument), {}});
}

TermPtr app(TermPtr function, const std::vector<TermPtr>& arguments) {
  for (const auto& a : arguments) function = app(std::move(function), a);
  return function;
}

TermPtr lambda(std::string binder, SimpleType sort, TermPtr body) {
  return make(Term{Term::Kind::Lambda, std::move(binder), std::move(sort), {}, {}, std::move(body)});
}

TermPtr fix(SimpleType sort, TermPtr body) {
  return make(Term{Term::Kind::Fix, {}, std::move(sort), {}, {}, std::move(body)});
}

bool equal(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case Term::Kind::Var:
    case Term::Kind::Terminal:
    case Term::Kind::NonTerminal:
      return a->name == b->name;
    case Term::Kind::App:
      return equal(a->function, b->function) && equal(a->argument, b->argument);
    case Term::Kind::Lambda:
      return a->name == b->name && a->sort == b->sort && equal(a->body, b->body);
    case Term::Kind::Fix:
      return a->sort == b->sort && equal(a->body, b->body);
  }
  return false;
}

Spine spine(const TermPtr& t) {
  Spine s;
  TermPtr cur = t;
  while (cur->is(Term::Kind::App)) {
    s.arguments.push_back(cur->argument);
    cur = cur->function;
  }
  std::reverse(s.arguments.begin(), s.arguments.end());
  s.head = cur;
  return s;
}

int term_size(const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::App:
      return 1 + term_size(t->function) + term_size(t->argument);
    case Term::Kind::Lambda:
    case Term::Kind::Fix:
      return 1 + term_size(t->body);
    default:
      return 1;
  }
}

namespace {

void collect_free(const TermPtr& t, std::vector<std::string>& bound, std::set<std::string>& out) {
  switch (t->kind) {
    case Term::Kind::Var:
      if (std::find(bound.begin(), bound.end(), t->name) == bound.end()) out.insert(t->name);
      break;
    case Term::Kind::NonTerminal:
      out.insert(t->name);
      break;
    case Term::Kind::Terminal:
      break;
    case Term::Kind::App:
      collect_free(t->function, bound, out);
      collect_free(t->argument, bound, out);
      break;
    case Term::Kind::Lambda:
      bound.push_back(t->name);
      collect_free(t->body, bound, out);
      bound.pop_back();
      break;
    case Term::Kind::Fix:
      collect_free(t->body, bound, out);
      break;
  }
}

}  // namespace

std::set<std::string> free_names(const TermPtr& t) {
  std::vector<std::string> bound;
  std::set<std::string> out;
  collect_free(t, bound, out);
  return out;
}

bool is_applicative(const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::App:
      return is_applicative(t->function) && is_applicative(t->argument);
    case Term::Kind::Lambda:
    case Term::Kind::Fix:
      return false;
    default:
      return true;
  }
}

TermPtr substitute_var(const TermPtr& t, const std::string& name, const TermPtr& replacement) {
  switch (t->kind) {
    case Term::Kind::Var:
      return t->name == name ? replacement : t;
    case Term::Kind::Terminal:
    case Term::Kind::NonTerminal:
      return t;
    case Term::Kind::App: {
      auto f = substitute_var(t->function, name, replacement);
      auto a = substitute_var(t->argument, name, replacement);
      if (f == t->function && a == t->argument) return t;
      return app(std::move(f), std::move(a));
    }
    case Term::Kind::Lambda: {
      if (t->name == name) return t;
      auto b = substitute_var(t->body, name, replacement);
      return b == t->body ? t : lambda(t->name, t->sort, std::move(b));
    }
    case Term::Kind::Fix: {
      auto b = substitute_var(t->body, name, replacement);
      return b == t->body ? t : fix(t->sort, std::move(b));
    }
  }
  return t;
}

TermPtr substitute_nonterminal(const TermPtr& t, const std::string& name, const TermPtr& replacement) {
  switch (t->kind) {
    case Term::Kind::NonTerminal:
      return t->name == name ? replacement : t;
    case Term::Kind::Var:
    case Term::Kind::Terminal:
      return t;
    case Term::Kind::App: {
      auto f = substitute_nonterminal(t->function, name, replacement);
      auto a = substitute_nonterminal(t->argument, name, replacement);
      if (f == t->function && a == t->argument) return t;
      return app(std::move(f), std::move(a));
    }
    case Term::Kind::Lambda: {
      auto b = substitute_nonterminal(t->body, name, replacement);
      return b == t->body ? t : lambda(t->name, t->sort, std::move(b));
    }
    case Term::Kind::Fix: {
      auto b = substitute_nonterminal(t->body, name, replacement);
      return b == t->body ? t : fix(t->sort, std::move(b));
    }
  }
  return t;
}

namespace {

void print(const TermPtr& t, bool as_argument, std::string& out) {
  switch (t->kind) {
    case Term::Kind::Var:
    case Term::Kind::Terminal:
    case Term::Kind::NonTerminal:
      out += t->name;
      return;
    case Term::Kind::App:
      if (as_argument) out += '(';
      print(t->function, false, out);
      out += ' ';
      print(t->argument, true, out);
      if (as_argument) out += ')';
      return;
    case Term::Kind::Lambda:
      out += "(\\" + t->name + ":" + t->sort.str() + ". ";
      print(t->body, false, out);
      out += ')';
      return;
    case Term::Kind::Fix:
      out += "(Y[" + t->sort.str() + "] ";
      print(t->body, true, out);
      out += ')';
      return;
  }
}

}  // namespace

std::string to_string(const TermPtr& t) {
  std::string out;
  print(t, false, out);
  return out;
}

// ---------------------------------------------------------------------------
// Schemes

std::optional<int> Hors::arity_of(const std::string& name) const {
  for (const auto& t : terminals)
    if (t.name == name) return t.arity;
  return std::nullopt;
}

std::optional<SimpleType> Hors::sort_of(const std::string& name) const {
  for (const auto& n : nonterminals)
    if (n.name == name) return n.sort;
  return std::nullopt;
}

const Rule& Hors::rule(const std::string& name) const {
  auto it = rules.find(name);
  if (it == rules.end()) throw std::out_of_range("no rule for nonterminal " + name);
  return it->second;
}

std::map<std::string, int> Hors::alphabet() const {
  std::map<std::string, int> out;
  for (const auto& t : terminals) out.emplace(t.name, t.arity);
  return out;
}

bool operator==(const Hors& a, const Hors& b) {
  if (a.terminals != b.terminals || a.nonterminals != b.nonterminals || a.start != b.start ||
      a.rules.size() != b.rules.size())
    return false;
  for (const auto& [name, rule] : a.rules) {
    auto it = b.rules.find(name);
    if (it == b.rules.end() || it->second.binders != rule.binders || !equal(it->second.body, rule.body))
      return false;
  }
  return true;
}

std::optional<SimpleType> infer_sort(const TermPtr& t, const std::map<std::string, SimpleType>& names,
                                     const std::map<std::string, int>& alphabet, std::string* error) {
  auto fail = [&](std::string msg) -> std::optional<SimpleType> {
    if (error && error->empty()) *error = std::move(msg);
    return std::nullopt;
  };
  switch (t->kind) {
    case Term::Kind::Var:
    case Term::Kind::NonTerminal: {
      auto it = names.find(t->name);
      if (it == names.end())
        return fail((t->is(Term::Kind::Var) ? "unbound variable " : "undeclared nonterminal ") + t->name);
      return it->second;
    }
    case Term::Kind::Terminal: {
      auto it = alphabet.find(t->name);
      if (it == alphabet.end()) return fail("undeclared terminal " + t->name);
      return SimpleType::terminal_sort(it->second);
    }
    case Term::Kind::App: {
      auto f = infer_sort(t->function, names, alphabet, error);
      if (!f) return std::nullopt;
      auto a = infer_sort(t->argument, names, alphabet, error);
      if (!a) return std::nullopt;
      if (f->is_ground()) return fail("application of ground term " + to_string(t->function));
      if (f->domain() != *a)
        return fail("argument " + to_string(t->argument) + " has sort " + a->str() + ", expected " +
                    f->domain().str());
      return f->codomain();
    }
    case Term::Kind::Lambda: {
      auto inner = names;
      inner[t->name] = t->sort;
      auto b = infer_sort(t->body, inner, alphabet, error);
      if (!b) return std::nullopt;
      return SimpleType::arrow(t->sort, *b);
    }
    case Term::Kind::Fix: {
      auto b = infer_sort(t->body, names, alphabet, error);
      if (!b) return std::nullopt;
      if (*b != SimpleType::arrow(t->sort, t->sort))
        return fail("fixpoint body has sort " + b->str() + ", expected " +
                    SimpleType::arrow(t->sort, t->sort).str());
      return t->sort;
    }
  }
  return std::nullopt;
}

std::vector<Diagnostic> check_wellformed(const Hors& h) {
  std::vector<Diagnostic> out;
  auto report = [&](std::string subject, std::string message) {
    out.push_back({std::move(subject), std::move(message)});
  };

  std::map<std::string, int> alphabet;
  for (const auto& t : h.terminals) {
    if (t.arity < 0) report(t.name, "negative arity");
    if (!alphabet.emplace(t.name, t.arity).second) report(t.name, "duplicate terminal");
  }
  std::map<std::string, SimpleType> sorts;
  for (const auto& n : h.nonterminals) {
    if (alphabet.count(n.name)) report(n.name, "name used both as terminal and nonterminal");
    if (!sorts.emplace(n.name, n.sort).second) report(n.name, "duplicate nonterminal");
  }

  auto start = sorts.find(h.start);
  if (start == sorts.end())
    report(h.start, "start symbol not declared");
  else if (!start->second.is_ground())
    report(h.start, "start not ground");

  for (const auto& n : h.nonterminals)
    if (!h.rules.count(n.name)) report(n.name, "missing rule");

  for (const auto& [name, rule] : h.rules) {
    auto declared = sorts.find(name);
    if (declared == sorts.end()) {
      report(name, "rule for undeclared nonterminal");
      continue;
    }
    SimpleType abstracted = SimpleType::ground();
    for (auto it = rule.binders.rbegin(); it != rule.binders.rend(); ++it)
      abstracted = SimpleType::arrow(it->sort, abstracted);
    if (abstracted != declared->second) {
      report(name, "binders do not match declared sort " + declared->second.str());
      continue;
    }
    auto names = sorts;
    bool clash = false;
    std::set<std::string> seen;
    for (const auto& b : rule.binders) {
      if (!seen.insert(b.name).second) {
        report(name, "duplicate binder " + b.name);
        clash = true;
      }
      if (alphabet.count(b.name) || sorts.count(b.name)) {
        report(name, "binder " + b.name + " shadows a terminal or nonterminal");
        clash = true;
      }
      names[b.name] = b.sort;
    }
    if (clash) continue;
    if (!is_applicative(rule.body)) {
      report(name, "body not abstraction-free");
      continue;
    }
    std::string error;
    auto s = infer_sort(rule.body, names, alphabet, &error);
    if (!s)
      report(name, "ill-typed body: " + error);
    else if (!s->is_ground())
      report(name, "body not ground (sort " + s->str() + ")");
  }
  return out;
}

}  // namespace hosel
