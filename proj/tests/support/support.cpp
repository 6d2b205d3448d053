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

#include "support.hpp"

#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "hosel/text_format.hpp"

#ifndef HOSEL_FIXTURE_DIR
#error "HOSEL_FIXTURE_DIR must be defined"
#endif

namespace hosel::testing {

std::string fixture_path(const std::string& file) { return std::string(HOSEL_FIXTURE_DIR) + "/" + file; }

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Hors load_scheme(const std::string& name) { return parse_hors(read_text(fixture_path(name + ".hors"))); }

Apt load_automaton(const std::string& name, const Hors& h) {
  return parse_apt(read_text(fixture_path(name + ".apt")), h.alphabet());
}

const std::vector<FixturePair>& fixture_pairs() {
  static const std::vector<FixturePair> pairs = {
      {"ex1", "ex1", {"q0", "q1"}},     {"const", "const", {"q"}},      {"loop", "loop_odd", {}},
      {"loop", "loop_even", {"q"}},     {"twice", "twice", {"q"}},      {"alternate", "buchi", {"qa"}},
      {"reach", "reach", {"q"}},
  };
  return pairs;
}

ParityGame random_game(std::mt19937& rng, std::size_t nodes, std::uint32_t max_priority, std::size_t max_degree) {
  ParityGame g;
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<std::uint32_t> prio(0, max_priority);
  std::uniform_int_distribution<std::size_t> degree(0, max_degree);
  std::uniform_int_distribution<std::size_t> target(0, nodes - 1);
  for (std::size_t i = 0; i < nodes; ++i) g.add_node(coin(rng) ? Player::Eve : Player::Adam, prio(rng));
  for (std::size_t i = 0; i < nodes; ++i) {
    std::size_t d = degree(rng);
    for (std::size_t k = 0; k < d; ++k) g.add_edge(i, target(rng));
  }
  return g;
}

bool strategy_cycles_ok(const ParityGame& g, const Solution& s, Player p) {
  const auto& strategy = p == Player::Eve ? s.strategy_eve : s.strategy_adam;
  const std::uint32_t parity = p == Player::Eve ? 0 : 1;
  std::vector<std::vector<std::size_t>> edges(g.size());
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (s.winner[v] != p) continue;
    if (g.owner[v] == p) {
      auto it = strategy.find(v);
      if (it == strategy.end() || s.winner[it->second] != p) return false;
      edges[v] = {it->second};
    } else {
      for (std::size_t w : g.successors[v]) {
        if (s.winner[w] != p) return false;
        edges[v].push_back(w);
      }
    }
  }
  // Simple cycles whose least node is `root`.
  bool ok = true;
  std::vector<bool> on_path(g.size(), false);
  std::function<void(std::size_t, std::size_t, std::uint32_t)> walk = [&](std::size_t root, std::size_t v,
                                                                          std::uint32_t top) {
    for (std::size_t w : edges[v]) {
      if (w == root) {
        if (top % 2 != parity) ok = false;
      } else if (w > root && !on_path[w]) {
        on_path[w] = true;
        walk(root, w, std::max(top, g.priority[w]));
        on_path[w] = false;
      }
    }
  };
  for (std::size_t v = 0; v < g.size() && ok; ++v)
    if (s.winner[v] == p) {
      on_path[v] = true;
      walk(v, v, g.priority[v]);
      on_path[v] = false;
    }
  return ok;
}

bool rule_subtype(const IType& a, const IType& b) {
  if (a.is_state() && b.is_state()) return a.state_id() == b.state_id();
  if (a.is_state() || b.is_state()) throw std::invalid_argument("sorts differ");
  return rule_subtype_set(b.argument(), a.argument()) && rule_subtype(a.result(), b.result());
}

bool rule_subtype_set(const ColoredSet& u, const ColoredSet& v) {
  for (const auto& [c, alpha] : u.items()) {
    bool found = false;
    for (const auto& [d, beta] : v.items())
      if (c == d && rule_subtype(alpha, beta)) found = true;
    if (!found) return false;
  }
  return true;
}

namespace {

struct Entry {
  std::string name;
  Color color;
  IType type;
  friend auto operator<=>(const Entry&, const Entry&) = default;
};

std::vector<Entry> flatten(const TypeEnv& env) {
  std::vector<Entry> out;
  for (const auto& [x, u] : env)
    for (const auto& [c, t] : u.items()) out.push_back({x, c, t});
  return out;
}

TypeEnv gather(const std::vector<Entry>& entries, std::uint32_t mask) {
  TypeEnv env;
  for (std::size_t i = 0; i < entries.size(); ++i)
    if (mask >> i & 1) env[entries[i].name].insert({entries[i].color, entries[i].type});
  return env;
}

bool empty_env(const TypeEnv& env) {
  for (const auto& [x, u] : env)
    if (!u.empty()) return false;
  return true;
}

class Literal {
 public:
  Literal(const Apt& m, const std::map<std::string, SimpleType>& sorts) : m_(m), sorts_(sorts), cols_(color_set(m)) {}

  bool provable(const TypeEnv& raw, const TermPtr& t, const IType& target) {
    TypeEnv env;
    for (const auto& [x, u] : raw)
      if (!u.empty()) env[x] = u;
    auto key = std::make_tuple(env, t.get(), target);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool r = compute(env, t, target);
    memo_[key] = r;
    return r;
  }

 private:
  bool compute(const TypeEnv& env, const TermPtr& t, const IType& target) {
    switch (t->kind) {
      case Term::Kind::Var:
      case Term::Kind::NonTerminal: {
        for (const auto& [x, u] : env)
          if (x != t->name) return false;
        auto it = env.find(t->name);
        if (it == env.end()) return false;
        for (const auto& [c, alpha] : it->second.items())
          if (c.is_epsilon() && rule_subtype(target, alpha)) return true;
        return false;
      }
      case Term::Kind::Terminal: {
        if (!empty_env(env)) return false;
        ColoredProfile profile;
        IType cur = target;
        while (!cur.is_state()) {
          ColoredStates s;
          for (const auto& [c, beta] : cur.argument().items()) s.insert({c, beta.state_id()});
          profile.push_back(s);
          cur = cur.result();
        }
        return satisfies(profile, cur.state_id(), t->name, m_);
      }
      case Term::Kind::App:
        return application(env, t, target);
      default:
        throw std::invalid_argument("literal checker handles applicative terms only");
    }
  }

  SimpleType sort_of(const TermPtr& t) {
    auto s = infer_sort(t, sorts_, m_.alphabet());
    if (!s) throw std::invalid_argument("ill-sorted term " + to_string(t));
    return *s;
  }

  bool application(const TypeEnv& env, const TermPtr& t, const IType& target) {
    const std::vector<Entry> whole = flatten(env);
    if (whole.size() > 16) throw std::invalid_argument("context too large for the literal checker");
    const std::uint32_t full = (std::uint32_t{1} << whole.size()) - 1;

    std::vector<ColoredPair> pairs;
    for (const auto& beta : enumerate(sort_of(t->argument), m_))
      for (Color c : cols_) pairs.push_back({c, beta});
    if (pairs.size() > 12) throw std::invalid_argument("argument sort too large for the literal checker");

    for (std::uint32_t wmask = 0; wmask < (std::uint32_t{1} << pairs.size()); ++wmask) {
      std::vector<ColoredPair> chosen;
      for (std::size_t i = 0; i < pairs.size(); ++i)
        if (wmask >> i & 1) chosen.push_back(pairs[i]);
      ColoredSet w(chosen);

      // Masks of `whole` reachable as Gamma_0 ∪ box(c_1) Gamma_1 ∪ ...
      std::set<std::uint32_t> reach;
      for (std::uint32_t s = full;; s = (s - 1) & full) {
        if (provable(gather(whole, s), t->function, IType::arrow(w, target))) reach.insert(s);
        if (s == 0) break;
      }
      for (const auto& [ci, beta] : w.items()) {
        if (reach.empty()) break;
        // Preimages under box(ci) of entries of env.
        std::vector<Entry> pre;
        std::vector<int> image;
        for (std::size_t k = 0; k < whole.size(); ++k)
          for (Color c : cols_)
            if (max(ci, c) == whole[k].color) {
              pre.push_back({whole[k].name, c, whole[k].type});
              image.push_back(static_cast<int>(k));
            }
        if (pre.size() > 16) throw std::invalid_argument("preimage too large for the literal checker");
        std::set<std::uint32_t> images;
        for (std::uint32_t s = 0; s < (std::uint32_t{1} << pre.size()); ++s) {
          if (!provable(gather(pre, s), t->argument, beta)) continue;
          std::uint32_t img = 0;
          for (std::size_t k = 0; k < pre.size(); ++k)
            if (s >> k & 1) img |= std::uint32_t{1} << image[k];
          images.insert(img);
        }
        std::set<std::uint32_t> next;
        for (auto a : reach)
          for (auto b : images) next.insert(a | b);
        reach = std::move(next);
      }
      if (reach.count(full)) return true;
    }
    return false;
  }

  const Apt& m_;
  const std::map<std::string, SimpleType>& sorts_;
  std::vector<Color> cols_;
  std::map<std::tuple<TypeEnv, const Term*, IType>, bool> memo_;
};

}  // namespace

bool literal_provable(const TypeEnv& env, const TermPtr& t, const IType& target, const Apt& m,
                      const std::map<std::string, SimpleType>& sorts) {
  return Literal(m, sorts).provable(env, t, target);
}

bool provable_by_splitting(const TypeEnv& env, const TermPtr& t, const IType& target, const Apt& m,
                           const std::map<std::string, SimpleType>& sorts) {
  Literal lit(m, sorts);
  auto whole = flatten(env);
  if (whole.size() > 16) throw std::invalid_argument("context too large for the literal checker");
  for (std::uint32_t s = 0; s < (std::uint32_t{1} << whole.size()); ++s)
    if (lit.provable(gather(whole, s), t, target)) return true;
  return false;
}

namespace {

TermPtr replace(const TermPtr& t, const std::string& x, const TermPtr& value) {
  switch (t->kind) {
    case Term::Kind::Var:
      return t->name == x ? value : t;
    case Term::Kind::Terminal:
    case Term::Kind::NonTerminal:
      return t;
    case Term::Kind::App:
      return app(replace(t->function, x, value), replace(t->argument, x, value));
    case Term::Kind::Lambda:
      return t->name == x ? t : lambda(t->name, t->sort, replace(t->body, x, value));
    case Term::Kind::Fix:
      return fix(t->sort, replace(t->body, x, value));
  }
  return t;
}

bool head_reduce(TermPtr t, std::size_t budget, std::string& label, std::vector<TermPtr>& args) {
  for (std::size_t step = 0; step <= budget; ++step) {
    std::vector<TermPtr> rev;
    TermPtr head = t;
    while (head->is(Term::Kind::App)) {
      rev.push_back(head->argument);
      head = head->function;
    }
    std::vector<TermPtr> spine_args(rev.rbegin(), rev.rend());
    if (head->is(Term::Kind::Terminal)) {
      label = head->name;
      args = std::move(spine_args);
      return true;
    }
    TermPtr reduced;
    std::size_t used = 0;
    if (head->is(Term::Kind::Lambda)) {
      if (spine_args.empty()) throw std::invalid_argument("abstraction at ground position");
      reduced = replace(head->body, head->name, spine_args[0]);
      used = 1;
    } else if (head->is(Term::Kind::Fix)) {
      reduced = app(head->body, head);
    } else {
      throw std::invalid_argument("open term: " + to_string(head));
    }
    for (std::size_t i = used; i < spine_args.size(); ++i) reduced = app(reduced, spine_args[i]);
    t = reduced;
  }
  return false;
}

}  // namespace

TreePrefix lambda_y_prefix(const TermPtr& t, std::size_t depth, std::size_t step_budget) {
  if (depth == 0) return TreePrefix::unresolved();
  std::string label;
  std::vector<TermPtr> args;
  if (!head_reduce(t, step_budget, label, args)) return TreePrefix::unresolved();
  std::vector<TreePrefix> children;
  for (const auto& a : args) children.push_back(lambda_y_prefix(a, depth - 1, step_budget));
  return TreePrefix::node(label, std::move(children));
}

std::vector<Atomic> applicative_terms(const std::vector<Atomic>& atoms, int max_size) {
  std::vector<std::vector<Atomic>> by_size(static_cast<std::size_t>(max_size) + 1);
  if (max_size >= 1) by_size[1] = atoms;
  for (int s = 3; s <= max_size; ++s)
    for (int fs = 1; fs + 1 < s; ++fs) {
      int as = s - 1 - fs;
      for (const auto& f : by_size[static_cast<std::size_t>(fs)]) {
        if (f.sort.is_ground()) continue;
        for (const auto& a : by_size[static_cast<std::size_t>(as)])
          if (a.sort == f.sort.domain()) by_size[static_cast<std::size_t>(s)].push_back({app(f.term, a.term), f.sort.codomain()});
      }
    }
  std::vector<Atomic> out;
  for (auto& level : by_size) out.insert(out.end(), level.begin(), level.end());
  return out;
}

Apt ex1_automaton(std::uint32_t color_q0, std::uint32_t color_q1) {
  Apt m({"q0", "q1"}, {{"if", 2}, {"data", 1}, {"Nil", 0}});
  StateId q0{0}, q1{1};
  m.set_delta(q0, "if", Formula::conj(Formula::atom(2, q0), Formula::atom(2, q1)));
  m.set_delta(q1, "if", Formula::conj(Formula::atom(1, q1), Formula::atom(2, q0)));
  m.set_delta(q1, "data", Formula::atom(1, q1));
  m.set_delta(q0, "Nil", Formula::truth());
  m.set_delta(q1, "Nil", Formula::truth());
  m.set_omega(q0, color_q0);
  m.set_omega(q1, color_q1);
  m.set_initial(q0);
  return m;
}

Hors ex1_scheme() {
  Hors h;
  h.terminals = {{"if", 2}, {"data", 1}, {"Nil", 0}};
  SimpleType o = SimpleType::ground();
  h.nonterminals = {{"S", o}, {"L", SimpleType::arrow(o, o)}};
  h.rules["S"] = Rule{{}, app(nonterminal("L"), terminal("Nil"))};
  h.rules["L"] = Rule{{{"x", o}},
                      app(terminal("if"), {var("x"), app(nonterminal("L"), app(terminal("data"), var("x")))})};
  h.start = "S";
  return h;
}

}  // namespace hosel::testing
