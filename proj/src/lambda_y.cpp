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

#include "hosel/lambda_y.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace hosel {

TermPtr to_lambda_y(const Hors& h) {
  if (auto diags = check_wellformed(h); !diags.empty())
    throw std::invalid_argument("ill-formed scheme: " + diags.front().subject + ": " + diags.front().message);

  const std::size_t n = h.nonterminals.size();
  std::vector<TermPtr> eqs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Rule& r = h.rule(h.nonterminals[i].name);
    TermPtr t = r.body;
    for (auto it = r.binders.rbegin(); it != r.binders.rend(); ++it) t = lambda(it->name, it->sort, t);
    eqs[i] = t;
  }

  std::vector<TermPtr> solved(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& decl = h.nonterminals[i];
    solved[i] = fix(decl.sort, lambda(decl.name, decl.sort, substitute_nonterminal(eqs[i], decl.name, var(decl.name))));
    for (std::size_t j = i + 1; j < n; ++j) eqs[j] = substitute_nonterminal(eqs[j], decl.name, solved[i]);
  }
  // solved[i] mentions only nonterminals declared after i.
  for (std::size_t i = n; i-- > 0;)
    for (std::size_t j = i + 1; j < n; ++j)
      solved[i] = substitute_nonterminal(solved[i], h.nonterminals[j].name, solved[j]);

  for (std::size_t i = 0; i < n; ++i)
    if (h.nonterminals[i].name == h.start) return solved[i];
  throw std::logic_error("start symbol vanished");
}

namespace {

class Lifter {
 public:
  explicit Lifter(const std::vector<TerminalDecl>& alphabet) {
    out_.terminals = alphabet;
    for (const auto& t : alphabet) {
      alphabet_map_.emplace(t.name, t.arity);
      taken_.insert(t.name);
    }
  }

  Hors run(const TermPtr& t) {
    std::string error;
    auto s = infer_sort(t, {}, alphabet_map_, &error);
    if (!s) throw std::invalid_argument("from_lambda_y: " + error);
    if (!s->is_ground()) throw std::invalid_argument("from_lambda_y: term has sort " + s->str());
    out_.start = fresh("S");
    TermPtr renamed = rename(t, {});
    out_.nonterminals.push_back({out_.start, SimpleType::ground()});
    out_.rules[out_.start] = Rule{{}, lift(renamed, {}, {})};
    return std::move(out_);
  }

 private:
  // Binders in scope, outermost first.  Fixpoint binders are never in scope:
  // they are substituted away.
  using Scope = std::vector<Binder>;
  using Subst = std::map<std::string, TermPtr>;

  std::string fresh(const std::string& base) {
    for (int k = 0;; ++k) {
      std::string candidate = k == 0 && base == "S" ? base : base + std::to_string(k);
      if (taken_.insert(candidate).second) return candidate;
    }
  }

  // Gives every binder a globally unique name so sorts can be looked up by name.
  TermPtr rename(const TermPtr& t, const std::map<std::string, std::string>& names) {
    switch (t->kind) {
      case Term::Kind::Var: {
        auto it = names.find(t->name);
        return it == names.end() ? t : var(it->second);
      }
      case Term::Kind::Terminal:
      case Term::Kind::NonTerminal:
        return t;
      case Term::Kind::App:
        return app(rename(t->function, names), rename(t->argument, names));
      case Term::Kind::Lambda: {
        auto inner = names;
        inner[t->name] = fresh("x");
        sorts_[inner[t->name]] = t->sort;
        return lambda(inner[t->name], t->sort, rename(t->body, inner));
      }
      case Term::Kind::Fix:
        return fix(t->sort, rename(t->body, names));
    }
    return t;
  }

  SimpleType sort_of(const TermPtr& t) const {
    std::string error;
    auto s = infer_sort(t, sorts_, alphabet_map_, &error);
    if (!s) throw std::logic_error("lambda lifting lost typing: " + error);
    return *s;
  }

  // Variables of `scope` that t depends on once `subst` is applied, in scope order.
  static std::vector<Binder> captured(const TermPtr& t, const Scope& scope, const Subst& subst) {
    std::set<std::string> needed;
    for (const auto& name : free_names(t)) {
      auto it = subst.find(name);
      if (it != subst.end()) {
        for (const auto& inner : free_names(it->second)) needed.insert(inner);
      } else {
        needed.insert(name);
      }
    }
    std::vector<Binder> out;
    for (const auto& b : scope)
      if (needed.count(b.name)) out.push_back(b);
    return out;
  }

  // Emits `name ys xs zs = lift(body) zs` where `abstraction` is the sort of
  // `\xs. body`, and returns `name ys`.
  TermPtr emit(const std::string& name, const std::vector<Binder>& ys, const std::vector<Binder>& xs,
               const TermPtr& body, const SimpleType& abstraction, const Scope& scope, const Subst& subst) {
    SimpleType sort = abstraction;
    for (auto it = ys.rbegin(); it != ys.rend(); ++it) sort = SimpleType::arrow(it->sort, sort);
    out_.nonterminals.push_back({name, sort});
    sorts_[name] = sort;

    Scope inner = scope;
    inner.insert(inner.end(), xs.begin(), xs.end());
    std::vector<Binder> params = ys;
    params.insert(params.end(), xs.begin(), xs.end());
    std::vector<TermPtr> etas;
    for (const auto& s : sort_of(body).arguments()) {
      Binder z{fresh("z"), s};
      params.push_back(z);
      etas.push_back(var(z.name));
    }
    out_.rules[name] = Rule{params, app(lift(body, inner, subst), etas)};

    std::vector<TermPtr> args;
    for (const auto& y : ys) args.push_back(var(y.name));
    return app(nonterminal(name), args);
  }

  static TermPtr strip(TermPtr body, std::vector<Binder>& xs) {
    while (body->is(Term::Kind::Lambda)) {
      xs.push_back({body->name, body->sort});
      body = body->body;
    }
    return body;
  }

  TermPtr lift(const TermPtr& t, const Scope& scope, const Subst& subst) {
    switch (t->kind) {
      case Term::Kind::Var: {
        auto it = subst.find(t->name);
        return it == subst.end() ? t : it->second;
      }
      case Term::Kind::Terminal:
      case Term::Kind::NonTerminal:
        return t;
      case Term::Kind::App:
        return app(lift(t->function, scope, subst), lift(t->argument, scope, subst));
      case Term::Kind::Lambda: {
        std::vector<Binder> xs;
        TermPtr body = strip(t, xs);
        return emit(fresh("F"), captured(t, scope, subst), xs, body, sort_of(t), scope, subst);
      }
      case Term::Kind::Fix: {
        std::string name = fresh("F");
        auto ys = captured(t, scope, subst);
        std::vector<TermPtr> yargs;
        for (const auto& y : ys) yargs.push_back(var(y.name));
        TermPtr self = app(nonterminal(name), yargs);
        Subst inner = subst;
        if (t->body->is(Term::Kind::Lambda)) {
          // Y (\b. \xs. M)  ~>  G ys xs = M[b := G ys]
          inner[t->body->name] = self;
          std::vector<Binder> xs;
          TermPtr body = strip(t->body->body, xs);
          return emit(name, ys, xs, body, t->sort, scope, inner);
        }
        // Y M  ~>  G ys = M (G ys)
        std::string self_var = fresh("self");
        sorts_[self_var] = t->sort;
        inner[self_var] = self;
        return emit(name, ys, {}, app(t->body, var(self_var)), t->sort, scope, inner);
      }
    }
    return t;
  }

  Hors out_;
  std::map<std::string, int> alphabet_map_;
  std::map<std::string, SimpleType> sorts_;
  std::set<std::string> taken_;
};

}  // namespace

Hors from_lambda_y(const TermPtr& t, const std::vector<TerminalDecl>& alphabet) {
  return Lifter(alphabet).run(t);
}

}  // namespace hosel
