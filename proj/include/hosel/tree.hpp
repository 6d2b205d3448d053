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

// Finite prefixes of value trees.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hosel/syntax.hpp"

namespace hosel {

/// A finite ordered tree; a node is either labelled by a terminal (with
/// arity-many children) or the unresolved marker (no children).
struct TreePrefix {
  bool bottom = true;
  std::string label;
  std::vector<TreePrefix> children;

  static TreePrefix unresolved() { return {}; }
  static TreePrefix node(std::string label, std::vector<TreePrefix> children = {}) {
    return {false, std::move(label), std::move(children)};
  }

  friend bool operator==(const TreePrefix&, const TreePrefix&) = default;
};

/// Child indices (0-based) from the root.
using TreePath = std::vector<std::size_t>;

/// `(if (Nil) (if _|_ _|_))`
std::string to_sexpr(const TreePrefix& t);

/// True when `refined` is obtained from `t` by replacing some bottom leaves.
bool is_prefix_of(const TreePrefix& t, const TreePrefix& refined);

std::size_t node_count(const TreePrefix& t);

struct UnfoldOptions {
  /// Head rewrite steps allowed per node before it is declared unresolved.
  std::size_t step_budget = 10000;
};

struct UnfoldResult {
  TreePrefix tree;
  /// Nodes left at bottom because the step budget ran out, as opposed to
  /// the depth cutoff.
  std::vector<TreePath> unresolved;
};

/// Depth-`depth` prefix of the value tree, by outermost rewriting per node.
/// Precondition: h is well-formed.
UnfoldResult unfold(const Hors& h, std::size_t depth, const UnfoldOptions& options = {});

/// Head-normalize a closed ground applicative term against h's rules.
/// Returns the head terminal and its arguments, or nothing if the budget runs out.
struct HeadNormalForm {
  std::string terminal;
  std::vector<TermPtr> arguments;
};
bool head_normalize(const Hors& h, const TermPtr& t, std::size_t budget, HeadNormalForm& out);

}  // namespace hosel
