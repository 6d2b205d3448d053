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

#include "hosel/selection.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "hosel/typing.hpp"

namespace hosel {

std::string annotated_terminal(const std::string& symbol, const ColoredProfile& profile, StateId q, const Apt& m) {
  std::string out = symbol + "@{";
  bool first = true;
  for (std::size_t k = 0; k < profile.size(); ++k)
    for (const auto& [c, p] : profile[k]) {
      if (!first) out += ',';
      first = false;
      out += std::to_string(k + 1) + ":" + c.str() + "." + m.name(p);
    }
  return out + "}->" + m.name(q);
}

std::string annotated_nonterminal(const std::string& f, const IType& t, const Apt& m) {
  return f + "@" + to_string(t, m);
}

namespace {

Color parse_color(const std::string& s, const std::string& name) {
  if (s == "eps") return Color::epsilon();
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
    throw std::invalid_argument("bad color in " + name);
  return Color::of(static_cast<std::uint32_t>(std::stoul(s)));
}

StateId parse_state(const std::string& s, const std::string& name, const Apt& m) {
  auto q = m.find_state(s);
  if (!q) throw std::invalid_argument("unknown state '" + s + "' in " + name);
  return *q;
}

}  // namespace

AnnotatedSymbol decode_terminal(const std::string& name, int arity, const Apt& m) {
  auto at = name.find("@{");
  auto close = name.find("}->", at == std::string::npos ? 0 : at);
  if (at == std::string::npos || close == std::string::npos)
    throw std::invalid_argument("not an annotated terminal: " + name);
  AnnotatedSymbol out{name.substr(0, at), ColoredProfile(static_cast<std::size_t>(arity)), {}};
  std::string body = name.substr(at + 2, close - at - 2);
  std::stringstream entries(body);
  std::string entry;
  while (!body.empty() && std::getline(entries, entry, ',')) {
    auto colon = entry.find(':');
    auto dot = entry.find('.', colon == std::string::npos ? 0 : colon);
    if (colon == std::string::npos || dot == std::string::npos) throw std::invalid_argument("bad slot in " + name);
    int k = 0;
    try {
      k = std::stoi(entry.substr(0, colon));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad direction in " + name);
    }
    if (k < 1 || k > arity) throw std::invalid_argument("direction out of range in " + name);
    out.profile[k - 1].insert({parse_color(entry.substr(colon + 1, dot - colon - 1), name),
                               parse_state(entry.substr(dot + 1), name, m)});
  }
  out.state = parse_state(name.substr(close + 3), name, m);
  return out;
}

SimpleType annotated_sort(const IType& t) {
  if (t.is_state()) return SimpleType::ground();
  SimpleType out = annotated_sort(t.result());
  const auto& items = t.argument().items();
  for (auto it = items.rbegin(); it != items.rend(); ++it) out = SimpleType::arrow(annotated_sort(it->second), out);
  return out;
}

namespace {

class Extractor {
 public:
  Extractor(const Hors& h, const Apt& m, const SequentGame& game, const Solution& s)
      : h_(h), m_(m), game_(game), s_(s) {}

  AnnotatedHors run(StateId q) {
    const IType root = IType::state(q);
    auto start = game_.eve_node(h_.start, root);
    if (!start || !s_.eve_wins(*start))
      throw std::invalid_argument("state " + m_.name(q) + " is not accepted");
    std::deque<std::size_t> queue{*start};
    std::set<std::size_t> seen{*start};
    while (!queue.empty()) {
      std::size_t v = queue.front();
      queue.pop_front();
      auto move = s_.strategy_eve.find(v);
      if (move == s_.strategy_eve.end()) throw std::logic_error("no strategy at a won node");
      const GameNode& node = game_.nodes[v];
      const GameNode& adam = game_.nodes[move->second];
      emit_rule(node.nonterminal, node.type, adam.assumption);
      for (const auto& [g, u] : adam.assumption)
        for (const auto& [c, t] : u) {
          auto next = game_.eve_node(g, t);
          if (!next || !s_.eve_wins(*next)) throw std::logic_error("strategy leaves the winning region");
          if (seen.insert(*next).second) queue.push_back(*next);
        }
    }
    AnnotatedHors out;
    out.scheme.start = annotated_nonterminal(h_.start, root, m_);
    out.scheme.nonterminals = std::move(nonterminals_);
    out.scheme.rules = std::move(rules_);
    for (const auto& [name, arity] : terminals_) out.scheme.terminals.push_back({name, arity});
    if (auto diags = check_wellformed(out.scheme); !diags.empty())
      throw std::logic_error("witness scheme ill-formed: " + diags.front().subject + ": " + diags.front().message);
    return out;
  }

 private:
  void emit_rule(const std::string& f, const IType& t, const TypeEnv& delta) {
    const std::string name = annotated_nonterminal(f, t, m_);
    nonterminals_.push_back({name, annotated_sort(t)});

    params_ = parameter_env(h_, f, t);
    binders_.clear();
    Rule rule;
    std::set<std::string> taken;
    for (const auto& b : h_.rule(f).binders) taken.insert(b.name);
    for (const auto& b : h_.rule(f).binders) {
      const ColoredSet& u = params_[b.name];
      auto& names = binders_[b.name];
      for (std::size_t i = 0; i < u.size(); ++i) {
        std::string n = b.name + "_" + std::to_string(i);
        while (taken.count(n)) n += "_";
        taken.insert(n);
        names.push_back(n);
        rule.binders.push_back({n, annotated_sort(u.items()[i].second)});
      }
    }
    TypeEnv env = params_;
    for (const auto& [g, u] : delta) env[g] = u;
    const TermPtr& body = h_.rule(f).body;
    auto d = derive(env, body, IType::state(t.target()), m_);
    if (!d) throw std::logic_error("derivation for " + name + " could not be rebuilt");
    rule.body = translate(*d, Color::epsilon());
    rules_.emplace(name, std::move(rule));
  }

  TermPtr translate(const Derivation& d, Color acc) {
    switch (d.rule) {
      case Derivation::Rule::Ax: {
        if (d.type != d.entry)
          throw std::runtime_error("coercion unsupported: " + to_string(d.entry, m_) + " used at " +
                                   to_string(d.type, m_));
        const Term& head = *d.term;
        if (head.is(Term::Kind::NonTerminal)) return nonterminal(annotated_nonterminal(head.name, d.entry, m_));
        int i = params_.at(head.name).index_of({acc, d.entry});
        if (i < 0) throw std::logic_error("variable entry missing from the parameter set");
        return var(binders_.at(head.name)[static_cast<std::size_t>(i)]);
      }
      case Derivation::Rule::Delta: {
        auto sets = d.type.arguments();
        ColoredProfile profile(sets.size());
        int arity = 0;
        for (std::size_t k = 0; k < sets.size(); ++k)
          for (const auto& [c, beta] : sets[k]) {
            profile[k].insert({c, beta.state_id()});
            ++arity;
          }
        std::string name = annotated_terminal(d.term->name, profile, d.type.target(), m_);
        terminals_.emplace(name, arity);
        return terminal(name);
      }
      case Derivation::Rule::App: {
        TermPtr out = translate(*d.premises.at(0), acc);
        for (std::size_t i = 0; i < d.chosen.size(); ++i)
          out = app(out, translate(*d.premises.at(i + 1), max(acc, d.chosen.items()[i].first)));
        return out;
      }
      case Derivation::Rule::Lambda:
        break;
    }
    throw std::logic_error("unexpected abstraction in a rule body");
  }

  const Hors& h_;
  const Apt& m_;
  const SequentGame& game_;
  const Solution& s_;

  std::vector<NonterminalDecl> nonterminals_;
  std::map<std::string, Rule> rules_;
  std::map<std::string, int> terminals_;

  TypeEnv params_;
  std::map<std::string, std::vector<std::string>> binders_;
};

std::string path_string(const TreePath& p) {
  std::string out = "[";
  for (std::size_t i = 0; i < p.size(); ++i) out += (i ? "," : "") + std::to_string(p[i] + 1);
  return out + "]";
}

struct Verifier {
  const Hors& h;
  const Apt& m;
  const TreePrefix& value;
  RunReport& report;

  // Finds the value-tree node at `path`; nullptr when unexplored.
  const TreePrefix* lookup(const TreePath& path) const {
    const TreePrefix* t = &value;
    for (std::size_t k : path) {
      if (t->bottom || k >= t->children.size()) return nullptr;
      t = &t->children[k];
    }
    return t->bottom ? nullptr : t;
  }

  // Makes sure the projection has a node at `path`, creating bottoms on the way.
  TreePrefix& slot(const TreePath& path) {
    TreePrefix* t = &report.projection;
    for (std::size_t k : path) {
      if (t->bottom) throw std::logic_error("projection path through an unlabelled node");
      t = &t->children.at(k);
    }
    return *t;
  }

  void visit(const TreePrefix& node, const TreePath& annotated, const TreePath& original, Color seen) {
    if (node.bottom) {
      report.branch_max_colors.push_back(seen);
      return;
    }
    const std::string where = path_string(annotated);
    const TreePrefix* under = lookup(original);
    const std::string symbol = node.label.substr(0, node.label.find('@'));
    auto arity = h.arity_of(symbol);
    if (!arity) {
      report.projection_mismatches.push_back(where + ": unknown symbol " + node.label);
      return;
    }
    AnnotatedSymbol a;
    try {
      a = decode_terminal(node.label, *arity, m);
    } catch (const std::invalid_argument& e) {
      report.projection_mismatches.push_back(where + ": " + e.what());
      return;
    }
    if (under && under->label != a.symbol)
      report.projection_mismatches.push_back(where + ": " + a.symbol + " where the value tree has " + under->label);
    TreePrefix& proj = slot(original);
    if (proj.bottom) {
      proj = TreePrefix::node(a.symbol, std::vector<TreePrefix>(static_cast<std::size_t>(*arity)));
    } else if (proj.label != a.symbol) {
      report.projection_mismatches.push_back(where + ": copies disagree on " + proj.label);
      return;
    }
    if (!satisfies(a.profile, a.state, a.symbol, m))
      report.transition_violations.push_back(where + ": " + node.label + " does not satisfy the transition of " +
                                             m.name(a.state));

    std::size_t slots = 0;
    for (const auto& s : a.profile) slots += s.size();
    if (slots != node.children.size()) {
      report.transition_violations.push_back(where + ": " + std::to_string(node.children.size()) +
                                             " children for " + std::to_string(slots) + " slots");
      return;
    }
    std::size_t j = 0;
    for (std::size_t k = 0; k < a.profile.size(); ++k)
      for (const auto& [c, p] : a.profile[k]) {
        const TreePrefix& child = node.children[j];
        TreePath next = annotated, below = original;
        next.push_back(j);
        below.push_back(k);
        ++j;
        if (c != m.omega(p))
          report.transition_violations.push_back(where + ": slot color " + c.str() + " is not the color of " +
                                                 m.name(p));
        if (!child.bottom) {
          auto at = child.label.find("}->");
          std::string state = at == std::string::npos ? "" : child.label.substr(at + 3);
          if (state != m.name(p))
            report.transition_violations.push_back(path_string(next) + ": state " + state + " where the parent sent " +
                                                   m.name(p));
        }
        visit(child, next, below, max(seen, c));
      }
    if (slots == 0) report.branch_max_colors.push_back(seen);
  }
};

}  // namespace

AnnotatedHors extract_scheme(const Hors& h, const Apt& m, const SequentGame& game, const Solution& s, StateId q) {
  return Extractor(h, m, game, s).run(q);
}

RunReport verify_runtree(const AnnotatedHors& g, const Hors& h, const Apt& m, StateId q, std::size_t depth) {
  RunReport report;
  report.depth = depth;
  TreePrefix annotated;
  TreePrefix value;
  try {
    annotated = unfold(g.scheme, depth).tree;
    value = unfold(h, depth).tree;
  } catch (const std::exception& e) {
    report.projection_mismatches.push_back(std::string("cannot unfold: ") + e.what());
    return report;
  }
  if (!annotated.bottom) {
    auto at = annotated.label.find("}->");
    if (at == std::string::npos || annotated.label.substr(at + 3) != m.name(q))
      report.transition_violations.push_back("[]: root is not annotated with " + m.name(q));
  }
  Verifier{h, m, value, report}.visit(annotated, {}, {}, Color::epsilon());
  return report;
}

std::string to_string(const RunReport& r) {
  std::ostringstream out;
  out << "depth: " << r.depth << "\n";
  out << "projection mismatches: " << r.projection_mismatches.size() << "\n";
  for (const auto& s : r.projection_mismatches) out << "  " << s << "\n";
  out << "transition violations: " << r.transition_violations.size() << "\n";
  for (const auto& s : r.transition_violations) out << "  " << s << "\n";
  std::map<Color, std::size_t> counts;
  for (Color c : r.branch_max_colors) ++counts[c];
  out << "branch max colors:";
  for (const auto& [c, n] : counts) out << " " << c.str() << "x" << n;
  out << "\nprojection: " << to_sexpr(r.projection) << "\n";
  out << (r.passed() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

}  // namespace hosel
