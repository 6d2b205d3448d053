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

#include "hosel/typing.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace hosel {

TypeEnv residual(const TypeEnv& env, Color c, const Apt& m) {
  const auto colors = color_set(m);
  TypeEnv out;
  for (const auto& [name, u] : env) {
    std::vector<ColoredPair> kept;
    for (const auto& [d, alpha] : u) {
      if (c < d) {
        kept.emplace_back(d, alpha);
      } else if (d == c) {
        for (Color below : colors)
          if (below <= c) kept.emplace_back(below, alpha);
      }
    }
    out.emplace(name, ColoredSet(std::move(kept)));
  }
  return out;
}

TypeEnv box_env(Color c, const TypeEnv& env) {
  TypeEnv out;
  for (const auto& [name, u] : env) out.emplace(name, box_color(c, u));
  return out;
}

bool env_leq(const TypeEnv& a, const TypeEnv& b) {
  static const ColoredSet kEmpty;
  for (const auto& [name, u] : a) {
    auto it = b.find(name);
    if (!subtype_set(u, it == b.end() ? kEmpty : it->second)) return false;
  }
  return true;
}

namespace {

class Deriver {
 public:
  Deriver(const Apt& m) : m_(m) {}

  DerivationPtr run(const TypeEnv& env, const TermPtr& t, const IType& target) {
    if (t->is(Term::Kind::Lambda)) {
      if (target.is_state()) return nullptr;
      TypeEnv inner = env;
      inner[t->name] = target.argument();
      auto body = run(inner, t->body, target.result());
      if (!body) return nullptr;
      auto d = std::make_shared<Derivation>();
      d->rule = Derivation::Rule::Lambda;
      d->env = env;
      d->term = t;
      d->type = target;
      d->premises.push_back(body);
      return d;
    }
    return applicative(env, t, target);
  }

 private:
  using Key = std::tuple<const Term*, TypeEnv, IType>;

  const std::set<std::string>& names_of(const TermPtr& t) {
    auto it = free_.find(t.get());
    if (it == free_.end()) it = free_.emplace(t.get(), free_names(t)).first;
    return it->second;
  }

  // Nodes record the context restricted to the term's free names.
  DerivationPtr applicative(const TypeEnv& env, const TermPtr& t, const IType& target) {
    TypeEnv restricted;
    for (const auto& name : names_of(t)) {
      auto it = env.find(name);
      if (it != env.end()) restricted.emplace(name, it->second);
    }
    Key key{t.get(), restricted, target};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    keep_.push_back(t);
    DerivationPtr result = search(restricted, t, target);
    memo_.emplace(std::move(key), result);
    return result;
  }

  DerivationPtr search(const TypeEnv& env, const TermPtr& t, const IType& target) {
    Spine s = spine(t);
    const int k = static_cast<int>(s.arguments.size());
    switch (s.head->kind) {
      case Term::Kind::Var:
      case Term::Kind::NonTerminal:
        return by_axiom(env, s, target);
      case Term::Kind::Terminal:
        return by_delta(env, s, target);
      default:
        throw std::invalid_argument("derive: cannot type " + to_string(t) + (k > 0 ? " (redex or fixpoint)" : ""));
    }
  }

  DerivationPtr by_axiom(const TypeEnv& env, const Spine& s, const IType& target) {
    const int k = static_cast<int>(s.arguments.size());
    auto it = env.find(s.head->name);
    if (it == env.end()) {
      if (s.head->is(Term::Kind::Var)) throw std::invalid_argument("derive: free variable " + s.head->name + " not in env");
      return nullptr;
    }
    std::vector<IType> candidates;
    for (const auto& [c, entry] : it->second) {
      if (!c.is_epsilon() || entry.arity() < k) continue;
      if (entry.drop(k) == target) candidates.push_back(entry);
    }
    // exact matches first, then proper supertypes, each in canonical order
    for (const auto& [c, entry] : it->second) {
      if (!c.is_epsilon() || entry.arity() < k) continue;
      IType rest = entry.drop(k);
      if (rest.is_state() != target.is_state() || rest == target) continue;
      if (subtype(target, rest)) candidates.push_back(entry);
    }
    for (const auto& entry : candidates) {
      auto args = entry.arguments();
      args.resize(static_cast<std::size_t>(k));
      auto leaf = std::make_shared<Derivation>();
      leaf->rule = Derivation::Rule::Ax;
      leaf->env = env;
      leaf->term = s.head;
      leaf->type = IType::arrows(args, target);
      leaf->entry = entry;
      if (auto d = apply(env, s, leaf, args)) return d;
    }
    return nullptr;
  }

  DerivationPtr by_delta(const TypeEnv& env, const Spine& s, const IType& target) {
    const std::string& a = s.head->name;
    const int n = m_.arity(a);
    const int k = static_cast<int>(s.arguments.size());
    if (k > n || target.arity() != n - k) return nullptr;
    const auto remaining = target.arguments();
    const StateId q = target.target();
    std::map<std::pair<int, StateId>, DerivationPtr> premise;
    auto argument = [&](int d, StateId q2) -> DerivationPtr {
      auto key = std::make_pair(d, q2);
      if (auto it = premise.find(key); it != premise.end()) return it->second;
      auto r = run(residual(env, m_.omega(q2), m_), s.arguments[static_cast<std::size_t>(d - 1)], IType::state(q2));
      premise.emplace(key, r);
      return r;
    };
    for (const auto& clause : m_.clauses(q, a)) {
      std::vector<ColoredSet> profile(static_cast<std::size_t>(k));
      bool ok = true;
      for (const auto& atom : clause) {
        ColoredPair pair{m_.omega(atom.state), IType::state(atom.state)};
        if (atom.direction <= k) {
          if (!argument(atom.direction, atom.state)) {
            ok = false;
            break;
          }
          profile[static_cast<std::size_t>(atom.direction - 1)].insert(pair);
        } else if (!remaining[static_cast<std::size_t>(atom.direction - k - 1)].contains(pair)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      auto leaf = std::make_shared<Derivation>();
      leaf->rule = Derivation::Rule::Delta;
      leaf->env = env;
      leaf->term = s.head;
      leaf->type = IType::arrows(profile, target);
      return apply(env, s, leaf, profile);
    }
    return nullptr;
  }

  // Stacks App nodes over `head`, typing argument j at every pair of sets[j].
  DerivationPtr apply(const TypeEnv& env, const Spine& s, DerivationPtr head, const std::vector<ColoredSet>& sets) {
    DerivationPtr current = std::move(head);
    TermPtr term = s.head;
    for (std::size_t j = 0; j < sets.size(); ++j) {
      auto node = std::make_shared<Derivation>();
      node->rule = Derivation::Rule::App;
      node->env = env;
      term = app(term, s.arguments[j]);
      node->term = term;
      node->type = current->type.result();
      node->chosen = sets[j];
      node->premises.push_back(current);
      for (const auto& [c, beta] : sets[j]) {
        auto p = run(residual(env, c, m_), s.arguments[j], beta);
        if (!p) return nullptr;
        node->premises.push_back(p);
      }
      current = node;
    }
    return current;
  }

  const Apt& m_;
  std::map<Key, DerivationPtr> memo_;
  std::map<const Term*, std::set<std::string>> free_;
  std::vector<TermPtr> keep_;  // pins memoized term addresses
};

}  // namespace

DerivationPtr derive(const TypeEnv& env, const TermPtr& t, const IType& target, const Apt& m) {
  return Deriver(m).run(env, t, target);
}

std::optional<std::string> check_derivation(const Derivation& d, const Apt& m) {
  auto fail = [&](const std::string& why) -> std::optional<std::string> {
    return why + " at " + to_string(d.term) + " : " + to_string(d.type, m);
  };
  switch (d.rule) {
    case Derivation::Rule::Ax: {
      if (!d.premises.empty()) return fail("axiom with premises");
      if (!d.term->is(Term::Kind::Var) && !d.term->is(Term::Kind::NonTerminal)) return fail("axiom on non-name");
      auto it = d.env.find(d.term->name);
      if (it == d.env.end() || !it->second.contains({Color::epsilon(), d.entry})) return fail("missing eps entry");
      if (!subtype(d.type, d.entry)) return fail("type above its entry");
      return std::nullopt;
    }
    case Derivation::Rule::Delta:
      if (!d.premises.empty()) return fail("delta with premises");
      if (!d.term->is(Term::Kind::Terminal)) return fail("delta on non-terminal");
      if (!is_terminal_type(d.term->name, d.type, m)) return fail("profile does not satisfy the transition");
      return std::nullopt;
    case Derivation::Rule::Lambda: {
      if (!d.term->is(Term::Kind::Lambda) || d.premises.size() != 1 || d.type.is_state())
        return fail("malformed abstraction");
      const Derivation& body = *d.premises[0];
      TypeEnv inner = d.env;
      inner[d.term->name] = d.type.argument();
      if (!env_leq(body.env, inner) || !equal(body.term, d.term->body) || !(body.type == d.type.result()))
        return fail("abstraction premise mismatch");
      return check_derivation(body, m);
    }
    case Derivation::Rule::App: {
      if (!d.term->is(Term::Kind::App) || d.premises.size() != d.chosen.size() + 1) return fail("malformed application");
      const Derivation& fn = *d.premises[0];
      if (!equal(fn.term, d.term->function) || !(fn.type == IType::arrow(d.chosen, d.type)))
        return fail("function premise mismatch");
      if (!env_leq(fn.env, d.env)) return fail("function context too large");
      std::size_t i = 1;
      for (const auto& [c, beta] : d.chosen) {
        const Derivation& arg = *d.premises[i++];
        if (!equal(arg.term, d.term->argument) || !(arg.type == beta)) return fail("argument premise mismatch");
        if (!env_leq(box_env(c, arg.env), d.env)) return fail("colored argument context too large");
      }
      for (const auto& p : d.premises)
        if (auto e = check_derivation(*p, m)) return e;
      return std::nullopt;
    }
  }
  return fail("unknown rule");
}

// ---------------------------------------------------------------------------

bool Denotation::contains(std::size_t env_index, std::size_t type_index) const {
  return member_.at(env_index).at(type_index);
}

bool Denotation::contains(const std::vector<ColoredSet>& env, const IType& alpha) const {
  auto e = std::find(envs_.begin(), envs_.end(), env);
  auto t = std::find(types_.begin(), types_.end(), alpha);
  if (e == envs_.end() || t == types_.end()) throw std::out_of_range("point outside the denotation's domain");
  return contains(static_cast<std::size_t>(e - envs_.begin()), static_cast<std::size_t>(t - types_.begin()));
}

std::size_t Denotation::size() const {
  std::size_t n = 0;
  for (const auto& row : member_) n += static_cast<std::size_t>(std::count(row.begin(), row.end(), true));
  return n;
}

TypeEnv Denotation::env_at(std::size_t env_index) const {
  TypeEnv env;
  for (std::size_t i = 0; i < names_.size(); ++i) env.emplace(names_[i], envs_.at(env_index)[i]);
  return env;
}

namespace {

using Matrix = std::vector<std::vector<bool>>;

// Names in scope with their value domains; environments are mixed-radix indices.
struct Scope {
  std::vector<std::string> names;
  std::vector<SimpleType> sorts;
  std::vector<std::vector<ColoredSet>> domains;
  std::size_t size = 1;

  std::size_t digit(std::size_t env, std::size_t position) const {
    for (std::size_t i = names.size(); i-- > position + 1;) env /= domains[i].size();
    return env % domains[position].size();
  }
  std::vector<ColoredSet> values(std::size_t env) const {
    std::vector<ColoredSet> out(names.size());
    for (std::size_t i = names.size(); i-- > 0;) {
      out[i] = domains[i][env % domains[i].size()];
      env /= domains[i].size();
    }
    return out;
  }
};

class Evaluator {
 public:
  Evaluator(const Apt& m, const std::map<std::string, std::vector<ColoredSet>>& overrides)
      : m_(m), overrides_(overrides), alphabet_(m.alphabet()), colors_(color_set(m)) {}

  const std::vector<IType>& types(const SimpleType& sigma) {
    auto it = types_.find(sigma);
    if (it == types_.end()) it = types_.emplace(sigma, enumerate(sigma, m_)).first;
    return it->second;
  }

  std::vector<ColoredSet> domain(const std::string& name, const SimpleType& sigma) {
    auto it = overrides_.find(name);
    if (it == overrides_.end()) return enumerate_sets(types(sigma), m_);
    // Closed under residuals: those are the largest contexts an argument may use.
    std::vector<ColoredSet> out = it->second;
    std::set<ColoredSet> seen(out.begin(), out.end());
    for (std::size_t i = 0; i < out.size(); ++i)
      for (Color c : colors_) {
        ColoredSet r = residual({{name, out[i]}}, c, m_).at(name);
        if (seen.insert(r).second) out.push_back(r);
      }
    return out;
  }

  SimpleType sort_of(const TermPtr& t, const Scope& scope) {
    std::map<std::string, SimpleType> names;
    for (std::size_t i = 0; i < scope.names.size(); ++i) names[scope.names[i]] = scope.sorts[i];
    std::string error;
    auto s = infer_sort(t, names, alphabet_, &error);
    if (!s) throw std::invalid_argument("denotation: " + error);
    return *s;
  }

  Matrix eval(const TermPtr& t, const Scope& scope) {
    const auto& ts = types(sort_of(t, scope));
    Matrix out(scope.size, std::vector<bool>(ts.size(), false));
    switch (t->kind) {
      case Term::Kind::Var:
      case Term::Kind::NonTerminal: {
        auto pos = std::find(scope.names.begin(), scope.names.end(), t->name);
        if (pos == scope.names.end()) throw std::invalid_argument("denotation: no sort for " + t->name);
        auto p = static_cast<std::size_t>(pos - scope.names.begin());
        for (std::size_t e = 0; e < scope.size; ++e) {
          const ColoredSet& u = scope.domains[p][scope.digit(e, p)];
          for (std::size_t i = 0; i < ts.size(); ++i)
            for (const auto& [c, entry] : u)
              if (c.is_epsilon() && subtype(ts[i], entry)) {
                out[e][i] = true;
                break;
              }
        }
        return out;
      }
      case Term::Kind::Terminal: {
        for (std::size_t i = 0; i < ts.size(); ++i)
          if (is_terminal_type(t->name, ts[i], m_))
            for (std::size_t e = 0; e < scope.size; ++e) out[e][i] = true;
        return out;
      }
      case Term::Kind::App: {
        Matrix fn = eval(t->function, scope);
        Matrix arg = eval(t->argument, scope);
        const auto& fn_types = types(sort_of(t->function, scope));
        const auto& arg_types = types(sort_of(t->argument, scope));
        std::map<IType, std::size_t> arg_index, res_index;
        for (std::size_t i = 0; i < arg_types.size(); ++i) arg_index.emplace(arg_types[i], i);
        for (std::size_t i = 0; i < ts.size(); ++i) res_index.emplace(ts[i], i);
        // reachable[c][e][b]: some e' with box(c, e') <= e has b in the argument's
        // denotation.  The order is pointwise, so the search runs one name at a time.
        const auto& below = boxed_below(scope);
        std::vector<Matrix> reachable;
        for (std::size_t ci = 0; ci < colors_.size(); ++ci) {
          Matrix cur = arg;
          std::size_t stride = scope.size;
          for (std::size_t p = 0; p < scope.names.size(); ++p) {
            stride /= scope.domains[p].size();
            Matrix next(scope.size, std::vector<bool>(arg_types.size(), false));
            for (std::size_t e = 0; e < scope.size; ++e) {
              std::size_t d = scope.digit(e, p);
              std::size_t base = e - d * stride;
              for (std::size_t a : below[ci][p][d])
                for (std::size_t b = 0; b < arg_types.size(); ++b)
                  if (cur[base + a * stride][b]) next[e][b] = true;
            }
            cur = std::move(next);
          }
          reachable.push_back(std::move(cur));
        }
        for (std::size_t e = 0; e < scope.size; ++e)
          for (std::size_t i = 0; i < fn_types.size(); ++i) {
            if (!fn[e][i]) continue;
            bool ok = true;
            for (const auto& [c, beta] : fn_types[i].argument()) {
              auto ci = static_cast<std::size_t>(std::find(colors_.begin(), colors_.end(), c) - colors_.begin());
              if (ci == colors_.size() || !reachable[ci][e][arg_index.at(beta)]) {
                ok = false;
                break;
              }
            }
            if (ok) out[e][res_index.at(fn_types[i].result())] = true;
          }
        return out;
      }
      case Term::Kind::Lambda: {
        Scope inner = scope;
        inner.names.push_back(t->name);
        inner.sorts.push_back(t->sort);
        inner.domains.push_back(domain(t->name, t->sort));
        inner.size = scope.size * inner.domains.back().size();
        Matrix body = eval(t->body, inner);
        const auto& body_types = types(sort_of(t->body, inner));
        std::map<IType, std::size_t> index;
        for (std::size_t i = 0; i < ts.size(); ++i) index.emplace(ts[i], i);
        const auto& dom = inner.domains.back();
        for (std::size_t e = 0; e < scope.size; ++e)
          for (std::size_t u = 0; u < dom.size(); ++u)
            for (std::size_t b = 0; b < body_types.size(); ++b)
              if (body[e * dom.size() + u][b]) {
                auto it = index.find(IType::arrow(dom[u], body_types[b]));
                if (it != index.end()) out[e][it->second] = true;
              }
        // an override domain may omit sets; the relation is still closed downward in the type
        for (std::size_t e = 0; e < scope.size; ++e)
          for (std::size_t i = 0; i < ts.size(); ++i)
            if (!out[e][i])
              for (std::size_t j = 0; j < ts.size(); ++j)
                if (out[e][j] && subtype(ts[i], ts[j])) {
                  out[e][i] = true;
                  break;
                }
        return out;
      }
      case Term::Kind::Fix:
        throw std::invalid_argument("denotation: fixpoints are not supported");
    }
    return out;
  }

 private:
  // below[c][p][b] = indices a into the domain of name p with box(c, a) <= b
  using Below = std::vector<std::vector<std::vector<std::vector<std::size_t>>>>;
  const Below& boxed_below(const Scope& scope) {
    auto key = std::make_pair(scope.names, scope.size);
    auto it = below_.find(key);
    if (it != below_.end()) return it->second;
    Below out(colors_.size(), std::vector<std::vector<std::vector<std::size_t>>>(scope.names.size()));
    for (std::size_t ci = 0; ci < colors_.size(); ++ci)
      for (std::size_t p = 0; p < scope.names.size(); ++p) {
        const auto& dom = scope.domains[p];
        out[ci][p].resize(dom.size());
        for (std::size_t a = 0; a < dom.size(); ++a) {
          ColoredSet boxed = box_color(colors_[ci], dom[a]);
          for (std::size_t b = 0; b < dom.size(); ++b)
            if (subtype_set(boxed, dom[b])) out[ci][p][b].push_back(a);
        }
      }
    return below_.emplace(key, std::move(out)).first->second;
  }

  const Apt& m_;
  const std::map<std::string, std::vector<ColoredSet>>& overrides_;
  std::map<std::string, int> alphabet_;
  std::vector<Color> colors_;
  std::map<SimpleType, std::vector<IType>> types_;
  std::map<std::pair<std::vector<std::string>, std::size_t>, Below> below_;
};

}  // namespace

Denotation denotation(const TermPtr& t, const std::map<std::string, SimpleType>& sorts, const Apt& m,
                      const std::map<std::string, std::vector<ColoredSet>>& domains) {
  Evaluator ev(m, domains);
  Scope scope;
  for (const auto& [name, sigma] : sorts) {
    scope.names.push_back(name);
    scope.sorts.push_back(sigma);
    scope.domains.push_back(ev.domain(name, sigma));
    scope.size *= scope.domains.back().size();
  }
  Denotation d;
  d.names_ = scope.names;
  d.types_ = ev.types(ev.sort_of(t, scope));
  d.member_ = ev.eval(t, scope);
  for (std::size_t e = 0; e < scope.size; ++e) d.envs_.push_back(scope.values(e));
  return d;
}

}  // namespace hosel
