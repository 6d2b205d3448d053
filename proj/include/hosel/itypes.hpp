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

// Colored intersection types: the finite preorder interpreting a simple type.

#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "hosel/automata.hpp"
#include "hosel/core.hpp"
#include "hosel/syntax.hpp"

namespace hosel {

class ColoredSet;

/// A state at ground sort, or an arrow from a colored set to a result.
class IType {
 public:
  IType();  // state 0

  static IType state(StateId q);
  static IType arrow(ColoredSet argument, IType result);
  /// u1 -> ... -> un -> target
  static IType arrows(const std::vector<ColoredSet>& arguments, IType target);

  bool is_state() const;
  StateId state_id() const;
  const ColoredSet& argument() const;
  const IType& result() const;

  /// Number of arrows before the final state.
  int arity() const;
  std::vector<ColoredSet> arguments() const;
  /// The final state.
  StateId target() const;
  /// Result after dropping the first n arguments.
  IType drop(int n) const;

  friend std::strong_ordering operator<=>(const IType& a, const IType& b);
  friend bool operator==(const IType& a, const IType& b);

 private:
  struct Node;
  explicit IType(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

using ColoredPair = std::pair<Color, IType>;

/// Canonical finite set of (color, type) pairs: sorted and duplicate-free.
class ColoredSet {
 public:
  ColoredSet() = default;
  ColoredSet(std::initializer_list<ColoredPair> items);
  explicit ColoredSet(std::vector<ColoredPair> items);

  const std::vector<ColoredPair>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  bool contains(const ColoredPair& p) const;
  /// Position of p in canonical order, or -1.
  int index_of(const ColoredPair& p) const;
  void insert(ColoredPair p);

  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }

  friend std::strong_ordering operator<=>(const ColoredSet& a, const ColoredSet& b);
  friend bool operator==(const ColoredSet& a, const ColoredSet& b);

 private:
  std::vector<ColoredPair> items_;
};

ColoredSet set_union(const ColoredSet& a, const ColoredSet& b);

/// Default bound on the number of types enumerate() will produce.
inline constexpr std::uint64_t kEnumerationLimit = std::uint64_t{1} << 20;

/// |enumerate(sigma, m)|, saturating at UINT64_MAX.
std::uint64_t type_count(const SimpleType& sigma, const Apt& m);

/// All canonical types of sort sigma in a deterministic order.
/// Throws SizeGuardError when the count exceeds `limit`.
std::vector<IType> enumerate(const SimpleType& sigma, const Apt& m, std::uint64_t limit = kEnumerationLimit);

/// All subsets of color_set(m) x types, smallest first.  Throws SizeGuardError
/// when there would be more than `limit` of them.
std::vector<ColoredSet> enumerate_sets(const std::vector<IType>& types, const Apt& m,
                                       std::uint64_t limit = kEnumerationLimit);

/// Throws std::invalid_argument on shape mismatch.
bool subtype(const IType& a, const IType& b);
bool subtype_set(const ColoredSet& u, const ColoredSet& v);

ColoredSet box_color(Color c, const ColoredSet& u);

bool has_sort(const IType& t, const SimpleType& sigma);

/// Throws std::invalid_argument if t does not have the sort of `symbol`.
bool is_terminal_type(const std::string& symbol, const IType& t, const Apt& m);

/// `q`, `{c.T,...}->R`; arrows inside sets are parenthesized.
std::string to_string(const IType& t, const Apt& m);
std::string to_string(const ColoredSet& u, const Apt& m);

}  // namespace hosel
