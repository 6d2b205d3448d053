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

#include "hosel/itypes.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <stdexcept>

namespace hosel {

struct IType::Node {
  bool ground = true;
  StateId q;
  ColoredSet argument;
  std::optional<IType> result;  // optional so that a state node never builds an IType
};

IType::IType() {
  static const auto zero = std::make_shared<const Node>();
  node_ = zero;
}

IType IType::state(StateId q) {
  auto n = std::make_shared<Node>();
  n->q = q;
  return IType(std::move(n));
}

IType IType::arrow(ColoredSet argument, IType result) {
  auto n = std::make_shared<Node>();
  n->ground = false;
  n->argument = std::move(argument);
  n->result = std::move(result);
  return IType(std::move(n));
}

IType IType::arrows(const std::vector<ColoredSet>& arguments, IType target) {
  for (auto it = arguments.rbegin(); it != arguments.rend(); ++it) target = arrow(*it, std::move(target));
  return target;
}

bool IType::is_state() const { return node_->ground; }

StateId IType::state_id() const {
  if (!node_->ground) throw std::logic_error("state_id of an arrow type");
  return node_->q;
}

const ColoredSet& IType::argument() const {
  if (node_->ground) throw std::logic_error("argument of a state");
  return node_->argument;
}

const IType& IType::result() const {
  if (node_->ground) throw std::logic_error("result of a state");
  return *node_->result;
}

int IType::arity() const {
  int n = 0;
  for (const IType* t = this; !t->is_state(); t = &t->result()) ++n;
  return n;
}

std::vector<ColoredSet> IType::arguments() const {
  std::vector<ColoredSet> out;
  for (const IType* t = this; !t->is_state(); t = &t->result()) out.push_back(t->argument());
  return out;
}

StateId IType::target() const {
  const IType* t = this;
  while (!t->is_state()) t = &t->result();
  return t->state_id();
}

IType IType::drop(int n) const {
  IType t = *this;
  for (int i = 0; i < n; ++i) t = t.result();
  return t;
}

std::strong_ordering operator<=>(const IType& a, const IType& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (a.is_state() != b.is_state()) return a.is_state() ? std::strong_ordering::less : std::strong_ordering::greater;
  if (a.is_state()) return a.state_id() <=> b.state_id();
  if (auto c = a.argument() <=> b.argument(); c != 0) return c;
  return a.result() <=> b.result();
}

bool operator==(const IType& a, const IType& b) { return (a <=> b) == 0; }

// ---------------------------------------------------------------------------

ColoredSet::ColoredSet(std::initializer_list<ColoredPair> items) : ColoredSet(std::vector<ColoredPair>(items)) {}

ColoredSet::ColoredSet(std::vector<ColoredPair> items) : items_(std::move(items)) {
  std::sort(items_.begin(), items_.end());
  items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
}

bool ColoredSet::contains(const ColoredPair& p) const { return std::binary_search(items_.begin(), items_.end(), p); }

int ColoredSet::index_of(const ColoredPair& p) const {
  auto it = std::lower_bound(items_.begin(), items_.end(), p);
  if (it == items_.end() || !(*it == p)) return -1;
  return static_cast<int>(it - items_.begin());
}

void ColoredSet::insert(ColoredPair p) {
  auto it = std::lower_bound(items_.begin(), items_.end(), p);
  if (it == items_.end() || !(*it == p)) items_.insert(it, std::move(p));
}

std::strong_ordering operator<=>(const ColoredSet& a, const ColoredSet& b) {
  return std::lexicographical_compare_three_way(a.items_.begin(), a.items_.end(), b.items_.begin(), b.items_.end());
}

bool operator==(const ColoredSet& a, const ColoredSet& b) { return a.items_ == b.items_; }

ColoredSet set_union(const ColoredSet& a, const ColoredSet& b) {
  std::vector<ColoredPair> all = a.items();
  all.insert(all.end(), b.begin(), b.end());
  return ColoredSet(std::move(all));
}

// ---------------------------------------------------------------------------

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a > kSaturated / b ? kSaturated : a * b;
}

std::uint64_t pow2(std::uint64_t n) { return n >= 64 ? kSaturated : std::uint64_t{1} << n; }

}  // namespace

std::uint64_t type_count(const SimpleType& sigma, const Apt& m) {
  if (sigma.is_ground()) return m.state_count();
  std::uint64_t pairs = mul(color_set(m).size(), type_count(sigma.domain(), m));
  return mul(pow2(pairs), type_count(sigma.codomain(), m));
}

std::vector<ColoredSet> enumerate_sets(const std::vector<IType>& types, const Apt& m, std::uint64_t limit) {
  std::vector<ColoredPair> pairs;
  for (Color c : color_set(m))
    for (const auto& t : types) pairs.emplace_back(c, t);
  std::uint64_t count = pow2(pairs.size());
  if (count > limit)
    throw SizeGuardError("colored-set enumeration needs " +
                         (count == kSaturated ? "2^" + std::to_string(pairs.size()) : std::to_string(count)) +
                         " sets, limit " + std::to_string(limit));
  std::vector<ColoredSet> out;
  out.reserve(count);
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    std::vector<ColoredPair> chosen;
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (mask >> i & 1) chosen.push_back(pairs[i]);
    out.emplace_back(std::move(chosen));
  }
  return out;
}

std::vector<IType> enumerate(const SimpleType& sigma, const Apt& m, std::uint64_t limit) {
  std::uint64_t count = type_count(sigma, m);
  if (count > limit)
    throw SizeGuardError("sort " + sigma.str() + " has " + (count == kSaturated ? "more than 2^64" : std::to_string(count)) +
                         " types, limit " + std::to_string(limit));
  if (sigma.is_ground()) {
    std::vector<IType> out;
    for (std::uint32_t q = 0; q < m.state_count(); ++q) out.push_back(IType::state(StateId{q}));
    return out;
  }
  auto domain = enumerate(sigma.domain(), m, limit);
  auto codomain = enumerate(sigma.codomain(), m, limit);
  std::vector<IType> out;
  out.reserve(count);
  for (auto& u : enumerate_sets(domain, m, limit))
    for (const auto& r : codomain) out.push_back(IType::arrow(u, r));
  return out;
}

bool subtype(const IType& a, const IType& b) {
  if (a.is_state() != b.is_state()) throw std::invalid_argument("subtype: sort mismatch");
  if (a.is_state()) return a.state_id() == b.state_id();
  return subtype_set(b.argument(), a.argument()) && subtype(a.result(), b.result());
}

bool subtype_set(const ColoredSet& u, const ColoredSet& v) {
  for (const auto& [c, alpha] : u) {
    bool found = false;
    for (const auto& [d, beta] : v)
      if (c == d && subtype(alpha, beta)) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

ColoredSet box_color(Color c, const ColoredSet& u) {
  std::vector<ColoredPair> out;
  out.reserve(u.size());
  for (const auto& [d, alpha] : u) out.emplace_back(max(c, d), alpha);
  return ColoredSet(std::move(out));
}

bool has_sort(const IType& t, const SimpleType& sigma) {
  if (sigma.is_ground()) return t.is_state();
  if (t.is_state()) return false;
  for (const auto& [c, beta] : t.argument())
    if (!has_sort(beta, sigma.domain())) return false;
  return has_sort(t.result(), sigma.codomain());
}

bool is_terminal_type(const std::string& symbol, const IType& t, const Apt& m) {
  if (!has_sort(t, SimpleType::terminal_sort(m.arity(symbol))))
    throw std::invalid_argument("type does not have the sort of terminal " + symbol);
  ColoredProfile profile;
  for (const auto& u : t.arguments()) {
    ColoredStates states;
    for (const auto& [c, beta] : u) states.emplace(c, beta.state_id());
    profile.push_back(std::move(states));
  }
  return satisfies(profile, t.target(), symbol, m);
}

namespace {

void print(const IType& t, const Apt& m, std::string& out);

void print(const ColoredSet& u, const Apt& m, std::string& out) {
  out += '{';
  bool first = true;
  for (const auto& [c, beta] : u) {
    if (!first) out += ',';
    first = false;
    out += c.str();
    out += '.';
    if (!beta.is_state()) out += '(';
    print(beta, m, out);
    if (!beta.is_state()) out += ')';
  }
  out += '}';
}

void print(const IType& t, const Apt& m, std::string& out) {
  if (t.is_state()) {
    out += m.name(t.state_id());
    return;
  }
  print(t.argument(), m, out);
  out += "->";
  print(t.result(), m, out);
}

}  // namespace

std::string to_string(const IType& t, const Apt& m) {
  std::string out;
  print(t, m, out);
  return out;
}

std::string to_string(const ColoredSet& u, const Apt& m) {
  std::string out;
  print(u, m, out);
  return out;
}

}  // namespace hosel
