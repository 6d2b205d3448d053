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

#include "hosel/game.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <tuple>

namespace hosel {

std::strong_ordering operator<=>(const GameNode& a, const GameNode& b) {
  if (auto c = a.kind <=> b.kind; c != 0) return c;
  if (auto c = a.nonterminal <=> b.nonterminal; c != 0) return c;
  if (auto c = a.type <=> b.type; c != 0) return c;
  if (auto c = a.color <=> b.color; c != 0) return c;
  return std::lexicographical_compare_three_way(a.assumption.begin(), a.assumption.end(), b.assumption.begin(),
                                                b.assumption.end());
}

bool operator==(const GameNode& a, const GameNode& b) { return (a <=> b) == 0; }

std::optional<std::size_t> SequentGame::find(const GameNode& n) const {
  auto it = index.find(n);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

TypeEnv parameter_env(const Hors& h, const std::string& f, const IType& t) {
  const Rule& rule = h.rule(f);
  if (t.arity() != static_cast<int>(rule.binders.size()))
    throw std::invalid_argument("type " + std::to_string(t.arity()) + "-ary for a rule with " +
                                std::to_string(rule.binders.size()) + " parameters");
  TypeEnv env;
  auto sets = t.arguments();
  for (std::size_t i = 0; i < sets.size(); ++i) env[rule.binders[i].name] = sets[i];
  return env;
}

namespace {

// A nonterminal assumption (color, type) the body relies on.
struct Requirement {
  std::string nonterminal;
  Color color;
  IType type;

  friend auto operator<=>(const Requirement&, const Requirement&) = default;
};

using RequirementSet = std::set<Requirement>;
// Alternative requirement sets, none contained in another.
using Alternatives = std::vector<RequirementSet>;

Alternatives minimize(Alternatives alts) {
  std::sort(alts.begin(), alts.end(), [](const RequirementSet& a, const RequirementSet& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  Alternatives kept;
  for (auto& a : alts) {
    bool covered = std::any_of(kept.begin(), kept.end(), [&](const RequirementSet& k) {
      return std::includes(a.begin(), a.end(), k.begin(), k.end());
    });
    if (!covered) kept.push_back(std::move(a));
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

class MoveFinder {
 public:
  MoveFinder(const Hors& h, const Apt& m, TypeEnv params, const GameOptions& options)
      : h_(h), m_(m), params_(std::move(params)), options_(options), colors_(color_set(m)) {}

  Alternatives search(const TermPtr& t, Color at, const IType& target) {
    Key key{t.get(), at, target};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Alternatives out = compute(t, at, target);
    if (out.size() > options_.alternative_limit)
      throw SizeGuardError("more than " + std::to_string(options_.alternative_limit) +
                           " assumption sets for one subterm");
    memo_.emplace(key, out);
    return out;
  }

 private:
  using Key = std::tuple<const Term*, Color, IType>;

  Alternatives product(const Alternatives& a, const Alternatives& b) const {
    Alternatives out;
    for (const auto& x : a)
      for (const auto& y : b) {
        RequirementSet u = x;
        u.insert(y.begin(), y.end());
        out.push_back(std::move(u));
        if (out.size() > options_.alternative_limit * 4)
          throw SizeGuardError("assumption-set product exceeds " + std::to_string(options_.alternative_limit * 4));
      }
    return minimize(std::move(out));
  }

  const std::vector<IType>& types(const SimpleType& sigma) {
    auto it = types_.find(sigma);
    if (it == types_.end()) it = types_.emplace(sigma, enumerate(sigma, m_, options_.enumeration_limit)).first;
    return it->second;
  }

  // Every pair of `sets` must be met by the matching argument.
  Alternatives arguments(const Spine& s, const std::vector<ColoredSet>& sets, Color at) {
    Alternatives acc{RequirementSet{}};
    for (std::size_t j = 0; j < sets.size() && !acc.empty(); ++j)
      for (const auto& [c, beta] : sets[j]) {
        acc = product(acc, search(s.arguments[j], max(at, c), beta));
        if (acc.empty()) break;
      }
    return acc;
  }

  Alternatives compute(const TermPtr& t, Color at, const IType& target) {
    Spine s = spine(t);
    const int k = static_cast<int>(s.arguments.size());
    Alternatives out;
    switch (s.head->kind) {
      case Term::Kind::Var: {
        auto it = params_.find(s.head->name);
        if (it == params_.end()) throw std::invalid_argument("unbound variable " + s.head->name);
        for (const auto& [c, entry] : it->second) {
          if (c != at || entry.arity() < k) continue;
          IType rest = entry.drop(k);
          if (rest.is_state() != target.is_state() || !subtype(target, rest)) continue;
          auto sets = entry.arguments();
          sets.resize(static_cast<std::size_t>(k));
          auto alts = arguments(s, sets, at);
          out.insert(out.end(), alts.begin(), alts.end());
        }
        return minimize(std::move(out));
      }
      case Term::Kind::Terminal: {
        const int n = m_.arity(s.head->name);
        if (k > n || target.arity() != n - k) return {};
        const auto remaining = target.arguments();
        for (const auto& clause : m_.clauses(target.target(), s.head->name)) {
          Alternatives acc{RequirementSet{}};
          for (const auto& atom : clause) {
            if (atom.direction <= k) {
              acc = product(acc, search(s.arguments[static_cast<std::size_t>(atom.direction - 1)],
                                        max(at, m_.omega(atom.state)), IType::state(atom.state)));
            } else if (!remaining[static_cast<std::size_t>(atom.direction - k - 1)].contains(
                           {m_.omega(atom.state), IType::state(atom.state)})) {
              acc.clear();
            }
            if (acc.empty()) break;
          }
          out.insert(out.end(), acc.begin(), acc.end());
        }
        return minimize(std::move(out));
      }
      case Term::Kind::NonTerminal:
        return nonterminal(s, at, target);
      default:
        throw std::invalid_argument("rule body is not applicative: " + to_string(t));
    }
  }

  struct Choice {
    ColoredSet set;
    Alternatives needs;
  };

  // Candidate colored sets for argument j of a nonterminal head.  Pairs the
  // argument meets with no assumption are always included (reduced to their
  // maximal elements); every antichain of the remaining pairs is an option.
  std::vector<Choice> argument_choices(const TermPtr& arg, const SimpleType& sigma, Color at) {
    std::vector<ColoredPair> free;
    std::vector<std::pair<ColoredPair, Alternatives>> costly;
    for (Color c : colors_)
      for (const auto& gamma : types(sigma)) {
        auto alts = search(arg, max(at, c), gamma);
        if (alts.empty()) continue;
        if (alts.front().empty())
          free.emplace_back(c, gamma);
        else
          costly.push_back({{c, gamma}, std::move(alts)});
      }
    auto dominated = [](const ColoredPair& p, const ColoredPair& q) {
      // p strictly below q, with ties between equivalent types broken canonically
      return p.first == q.first && !(p == q) && subtype(p.second, q.second) &&
             (!subtype(q.second, p.second) || q.second < p.second);
    };
    ColoredSet base;
    for (const auto& p : free)
      if (std::none_of(free.begin(), free.end(), [&](const ColoredPair& q) { return dominated(p, q); })) base.insert(p);
    std::erase_if(costly, [&](const auto& entry) {
      return std::any_of(free.begin(), free.end(), [&](const ColoredPair& q) {
        return entry.first.first == q.first && subtype(entry.first.second, q.second);
      });
    });
    if (costly.size() > 16)
      throw SizeGuardError(std::to_string(costly.size()) + " optional argument types for " + to_string(arg));

    std::vector<Choice> out;
    for (std::uint32_t mask = 0; mask < (1u << costly.size()); ++mask) {
      bool antichain = true;
      for (std::size_t i = 0; i < costly.size() && antichain; ++i)
        for (std::size_t j = 0; j < costly.size() && antichain; ++j)
          if (i != j && (mask >> i & 1) && (mask >> j & 1) && dominated(costly[i].first, costly[j].first))
            antichain = false;
      if (!antichain) continue;
      Choice ch{base, Alternatives{RequirementSet{}}};
      for (std::size_t i = 0; i < costly.size() && !ch.needs.empty(); ++i)
        if (mask >> i & 1) {
          ch.set.insert(costly[i].first);
          ch.needs = product(ch.needs, costly[i].second);
        }
      if (!ch.needs.empty()) out.push_back(std::move(ch));
    }
    return out;
  }

  Alternatives nonterminal(const Spine& s, Color at, const IType& target) {
    auto sort = h_.sort_of(s.head->name);
    if (!sort) throw std::invalid_argument("undeclared nonterminal " + s.head->name);
    auto sorts = sort->arguments();
    const std::size_t k = s.arguments.size();
    if (k > sorts.size()) throw std::invalid_argument("over-applied nonterminal " + s.head->name);
    std::vector<std::vector<Choice>> choices;
    for (std::size_t j = 0; j < k; ++j) {
      choices.push_back(argument_choices(s.arguments[j], sorts[j], at));
      if (choices.back().empty()) return {};
    }
    Alternatives out;
    std::vector<std::size_t> pick(k, 0);
    while (true) {
      std::vector<ColoredSet> sets;
      Alternatives acc{RequirementSet{}};
      for (std::size_t j = 0; j < k; ++j) {
        sets.push_back(choices[j][pick[j]].set);
        acc = product(acc, choices[j][pick[j]].needs);
      }
      for (auto& alt : acc) {
        alt.insert({s.head->name, at, IType::arrows(sets, target)});
        out.push_back(std::move(alt));
      }
      std::size_t j = 0;
      for (; j < k; ++j) {
        if (++pick[j] < choices[j].size()) break;
        pick[j] = 0;
      }
      if (j == k) break;
      if (out.size() > options_.alternative_limit * 4)
        throw SizeGuardError("too many assumption sets at " + s.head->name);
    }
    return minimize(std::move(out));
  }

  const Hors& h_;
  const Apt& m_;
  TypeEnv params_;
  const GameOptions& options_;
  std::vector<Color> colors_;
  std::map<Key, Alternatives> memo_;
  std::map<SimpleType, std::vector<IType>> types_;
};

void check_inputs(const Hors& h, const Apt& m) {
  if (auto diags = check_wellformed(h); !diags.empty())
    throw std::invalid_argument("ill-formed scheme: " + diags.front().subject + ": " + diags.front().message);
  for (const auto& t : h.terminals) {
    auto it = m.alphabet().find(t.name);
    if (it == m.alphabet().end() || it->second != t.arity)
      throw std::invalid_argument("automaton alphabet lacks " + t.name + "/" + std::to_string(t.arity));
  }
  if (m.state_count() == 0) throw std::invalid_argument("automaton has no states");
}

}  // namespace

std::vector<TypeEnv> eve_moves(const Hors& h, const Apt& m, const std::string& f, const IType& t,
                               const GameOptions& options) {
  TypeEnv params = parameter_env(h, f, t);
  const TermPtr& body = h.rule(f).body;
  const IType goal = IType::state(t.target());
  MoveFinder finder(h, m, params, options);
  std::vector<TypeEnv> moves;
  for (const auto& alt : finder.search(body, Color::epsilon(), goal)) {
    TypeEnv delta;
    for (const auto& r : alt) delta[r.nonterminal].insert({r.color, r.type});
    TypeEnv env = params;
    for (const auto& [g, u] : delta) env[g] = u;
    if (!derive(env, body, goal, m))
      throw std::logic_error("assumption set for " + f + " : " + to_string(t, m) + " not confirmed by derive");
    moves.push_back(std::move(delta));
  }
  std::sort(moves.begin(), moves.end());
  moves.erase(std::unique(moves.begin(), moves.end()), moves.end());
  return moves;
}

SequentGame build_game(const Hors& h, const Apt& m, const GameOptions& options) {
  check_inputs(h, m);
  SequentGame g;
  auto intern = [&](const GameNode& n) -> std::size_t {
    if (auto it = g.index.find(n); it != g.index.end()) return it->second;
    if (g.nodes.size() >= options.node_limit)
      throw SizeGuardError("game exceeds " + std::to_string(options.node_limit) + " nodes");
    Player owner = n.kind == GameNode::Kind::Adam ? Player::Adam : Player::Eve;
    std::uint32_t prio = n.kind == GameNode::Kind::Color ? n.color.priority() : 1;
    std::size_t id = g.arena.add_node(owner, prio);
    g.nodes.push_back(n);
    g.index.emplace(n, id);
    return id;
  };

  for (std::uint32_t q = 0; q < m.state_count(); ++q) intern(GameNode::eve(h.start, IType::state(StateId{q})));
  g.arena.initial = *g.eve_node(h.start, IType::state(m.initial()));

  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const GameNode n = g.nodes[i];
    switch (n.kind) {
      case GameNode::Kind::Eve:
        for (auto& delta : eve_moves(h, m, n.nonterminal, n.type, options))
          g.arena.add_edge(i, intern(GameNode::adam(n.nonterminal, n.type, std::move(delta))));
        break;
      case GameNode::Kind::Adam:
        for (const auto& [f, u] : n.assumption)
          for (const auto& [c, t] : u) g.arena.add_edge(i, intern(GameNode::colored(c, f, t)));
        break;
      case GameNode::Kind::Color:
        g.arena.add_edge(i, intern(GameNode::eve(n.nonterminal, n.type)));
        break;
    }
  }
  return g;
}

std::vector<StateId> accepted_states(const SequentGame& g, const Solution& s, const Hors& h) {
  std::vector<StateId> out;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const GameNode& n = g.nodes[i];
    if (n.kind == GameNode::Kind::Eve && n.nonterminal == h.start && n.type.is_state() && s.eve_wins(i))
      out.push_back(n.type.state_id());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<StateId> accepted_states(const Hors& h, const Apt& m, const GameOptions& options) {
  SequentGame g = build_game(h, m, options);
  return accepted_states(g, zielonka(g.arena), h);
}

std::string to_string(const GameNode& n, const Apt& m) {
  switch (n.kind) {
    case GameNode::Kind::Eve:
      return n.nonterminal + " : " + to_string(n.type, m);
    case GameNode::Kind::Adam: {
      std::string out = n.nonterminal + " : " + to_string(n.type, m) + " |";
      if (n.assumption.empty()) out += " -";
      for (const auto& [f, u] : n.assumption) out += " " + f + " : " + to_string(u, m);
      return out;
    }
    case GameNode::Kind::Color:
      return n.color.str() + " | " + n.nonterminal + " : " + to_string(n.type, m);
  }
  return {};
}

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out;
}

}  // namespace

std::string to_dot(const SequentGame& g, const Apt& m, const Solution* s) {
  std::string out = "digraph game {\n";
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const char* shape = g.arena.owner[i] == Player::Eve ? "diamond" : "box";
    out += "  n" + std::to_string(i) + " [shape=" + shape + ", label=\"" + escape(to_string(g.nodes[i], m)) +
           "\\npriority " + std::to_string(g.arena.priority[i]) + "\"";
    if (s) out += s->eve_wins(i) ? ", color=blue" : ", color=red";
    if (i == g.arena.initial) out += ", penwidth=2";
    out += "];\n";
  }
  for (std::size_t i = 0; i < g.nodes.size(); ++i)
    for (std::size_t j : g.arena.successors[i]) {
      out += "  n" + std::to_string(i) + " -> n" + std::to_string(j);
      if (s && g.arena.owner[i] == Player::Eve) {
        auto it = s->strategy_eve.find(i);
        if (it != s->strategy_eve.end() && it->second == j) out += " [style=bold]";
      }
      out += ";\n";
    }
  out += "}\n";
  return out;
}

}  // namespace hosel
