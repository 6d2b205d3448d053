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

#include "hosel/tree.hpp"

#include <stdexcept>

namespace hosel {

namespace {

void sexpr(const TreePrefix& t, std::string& out) {
  if (t.bottom) {
    out += "_|_";
    return;
  }
  out += '(';
  out += t.label;
  for (const auto& c : t.children) {
    out += ' ';
    sexpr(c, out);
  }
  out += ')';
}

}  // namespace

std::string to_sexpr(const TreePrefix& t) {
  std::string out;
  sexpr(t, out);
  return out;
}

bool is_prefix_of(const TreePrefix& t, const TreePrefix& refined) {
  if (t.bottom) return true;
  if (refined.bottom || t.label != refined.label || t.children.size() != refined.children.size())
    return false;
  for (std::size_t i = 0; i < t.children.size(); ++i)
    if (!is_prefix_of(t.children[i], refined.children[i])) return false;
  return true;
}

std::size_t node_count(const TreePrefix& t) {
  std::size_t n = 1;
  for (const auto& c : t.children) n += node_count(c);
  return n;
}

bool head_normalize(const Hors& h, const TermPtr& t, std::size_t budget, HeadNormalForm& out) {
  TermPtr cur = t;
  for (std::size_t steps = 0;; ++steps) {
    Spine s = spine(cur);
    switch (s.head->kind) {
      case Term::Kind::Terminal:
        out.terminal = s.head->name;
        out.arguments = std::move(s.arguments);
        return true;
      case Term::Kind::NonTerminal: {
        if (steps >= budget) return false;
        const Rule& rule = h.rule(s.head->name);
        if (s.arguments.size() < rule.binders.size())
          throw std::invalid_argument("partially applied nonterminal in ground position: " + to_string(cur));
        TermPtr body = rule.body;
        // Arguments are closed, so sequential substitution cannot capture.
        for (std::size_t i = 0; i < rule.binders.size(); ++i)
          body = substitute_var(body, rule.binders[i].name, s.arguments[i]);
        std::vector<TermPtr> rest(s.arguments.begin() + static_cast<std::ptrdiff_t>(rule.binders.size()),
                                  s.arguments.end());
        cur = app(body, rest);
        break;
      }
      default:
        throw std::invalid_argument("cannot head-normalize " + to_string(cur));
    }
  }
}

namespace {

TreePrefix unfold_term(const Hors& h, const TermPtr& t, std::size_t depth, const UnfoldOptions& options,
                       TreePath& path, std::vector<TreePath>& unresolved) {
  if (depth == 0) return TreePrefix::unresolved();
  HeadNormalForm hnf;
  if (!head_normalize(h, t, options.step_budget, hnf)) {
    unresolved.push_back(path);
    return TreePrefix::unresolved();
  }
  std::vector<TreePrefix> children;
  children.reserve(hnf.arguments.size());
  for (std::size_t i = 0; i < hnf.arguments.size(); ++i) {
    path.push_back(i);
    children.push_back(unfold_term(h, hnf.arguments[i], depth - 1, options, path, unresolved));
    path.pop_back();
  }
  return TreePrefix::node(hnf.terminal, std::move(children));
}

}  // namespace

UnfoldResult unfold(const Hors& h, std::size_t depth, const UnfoldOptions& options) {
  UnfoldResult r;
  TreePath path;
  r.tree = unfold_term(h, nonterminal(h.start), depth, options, path, r.unresolved);
  return r;
}

}  // namespace hosel
