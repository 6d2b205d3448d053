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

#include <doctest.h>

#include <random>
#include <set>

#include "hosel/itypes.hpp"
#include "support.hpp"

using namespace hosel;
using hosel::testing::ex1_automaton;
using hosel::testing::rule_subtype;
using hosel::testing::rule_subtype_set;

namespace {

const SimpleType o = SimpleType::ground();
const StateId q0{0}, q1{1};
const Color eps = Color::epsilon();

SimpleType arrow(SimpleType a, SimpleType b) { return SimpleType::arrow(std::move(a), std::move(b)); }

Apt one_state() {
  Apt m({"q"}, {{"a", 1}});
  m.set_omega(StateId{0}, 0);
  return m;
}

IType st(StateId q) { return IType::state(q); }

}  // namespace

TEST_CASE("enumeration sizes") {
  Apt m = ex1_automaton();
  CHECK(enumerate(o, m) == std::vector<IType>{st(q0), st(q1)});
  CHECK(enumerate(arrow(o, o), one_state()).size() == 4);
  auto oo = enumerate(arrow(o, o), m);
  CHECK(oo.size() == 32);
  CHECK(std::set<IType>(oo.begin(), oo.end()).size() == 32);
  for (const auto& t : oo) CHECK(has_sort(t, arrow(o, o)));
  CHECK(type_count(arrow(o, arrow(o, o)), m) == 512);
  CHECK(enumerate(arrow(o, arrow(o, o)), m) == enumerate(arrow(o, arrow(o, o)), m));
  CHECK(type_count(arrow(arrow(o, o), o), one_state()) == 256);
  CHECK(type_count(arrow(arrow(o, o), o), m) > kEnumerationLimit);
  try {
    enumerate(arrow(arrow(o, o), o), m);
    FAIL("expected a size guard");
  } catch (const SizeGuardError& e) {
    CHECK(std::string(e.what()).find("types, limit") != std::string::npos);
  }
  CHECK_THROWS_AS(enumerate(arrow(o, arrow(o, o)), m, 100), SizeGuardError);
}

TEST_CASE("canonical colored sets") {
  ColoredSet u{{Color::of(1), st(q1)}, {eps, st(q0)}, {Color::of(1), st(q1)}};
  CHECK(u.size() == 2);
  CHECK(u.items()[0].first == eps);
  CHECK(u.index_of({Color::of(1), st(q1)}) == 1);
  CHECK(u.index_of({Color::of(0), st(q1)}) == -1);
  CHECK(u == ColoredSet{{eps, st(q0)}, {Color::of(1), st(q1)}});
  IType t = IType::arrows({u, {}}, st(q0));
  CHECK(t.arity() == 2);
  CHECK(t.drop(1) == IType::arrow({}, st(q0)));
  CHECK(t.target() == q0);
  CHECK(to_string(t, ex1_automaton()) == "{eps.q0,1.q1}->{}->q0");
}

TEST_CASE("subtyping examples") {
  CHECK(subtype(st(q0), st(q0)));
  CHECK_FALSE(subtype(st(q0), st(q1)));
  ColoredSet u{{Color::of(0), st(q0)}};
  CHECK(subtype(IType::arrow(u, st(q0)), IType::arrow({}, st(q0))));
  CHECK_FALSE(subtype(IType::arrow({}, st(q0)), IType::arrow(u, st(q0))));
  CHECK(subtype_set({}, u));
  CHECK(subtype_set({{Color::of(0), st(q0)}}, {{Color::of(0), st(q0)}, {Color::of(1), st(q1)}}));
  CHECK_FALSE(subtype_set({{Color::of(0), st(q0)}}, {{Color::of(1), st(q0)}}));
  CHECK_THROWS_AS(subtype(st(q0), IType::arrow({}, st(q0))), std::invalid_argument);
}

TEST_CASE("subtyping agrees with the rules and is a preorder") {
  Apt m = ex1_automaton();
  auto all = enumerate(arrow(o, o), m);
  for (const auto& a : all) {
    CHECK(subtype(a, a));
    for (const auto& b : all) {
      bool ab = subtype(a, b);
      CHECK(ab == rule_subtype(a, b));
      if (ab)
        for (const auto& c : all)
          if (subtype(b, c)) CHECK(subtype(a, c));
    }
  }
  std::mt19937 rng(5);
  auto sets = enumerate_sets(enumerate(o, m), m);
  for (int i = 0; i < 2000; ++i) {
    const auto& u = sets[rng() % sets.size()];
    const auto& v = sets[rng() % sets.size()];
    bool brute = true;
    for (const auto& [c, a] : u.items()) {
      bool found = false;
      for (const auto& [d, b] : v.items()) found = found || (c == d && a == b);
      brute = brute && found;
    }
    CHECK(subtype_set(u, v) == brute);
    CHECK(subtype_set(u, v) == rule_subtype_set(u, v));
  }
}

TEST_CASE("coloring") {
  ColoredSet u{{Color::of(1), st(q0)}, {Color::of(3), st(q1)}};
  CHECK(box_color(Color::of(2), u) == ColoredSet{{Color::of(2), st(q0)}, {Color::of(3), st(q1)}});
  CHECK(box_color(eps, u) == u);
  // Composition and monotonicity over |u| <= 2, colors <= 3.
  std::vector<Color> colors{eps, Color::of(0), Color::of(1), Color::of(2), Color::of(3)};
  std::vector<ColoredSet> small{{}};
  for (Color c : colors)
    for (StateId q : {q0, q1}) {
      small.push_back({{c, st(q)}});
      for (Color d : colors)
        for (StateId r : {q0, q1})
          if (std::make_pair(c, q) < std::make_pair(d, r)) small.push_back({{c, st(q)}, {d, st(r)}});
    }
  for (const auto& v : small)
    for (Color c : colors)
      for (Color d : colors) CHECK(box_color(c, box_color(d, v)) == box_color(max(c, d), v));
  for (const auto& a : small)
    for (const auto& b : small)
      if (subtype_set(a, b))
        for (Color c : colors) CHECK(subtype_set(box_color(c, a), box_color(c, b)));
}

TEST_CASE("terminal types") {
  Apt m = ex1_automaton(0, 1);
  const Color c0 = m.omega(q0), c1 = m.omega(q1);
  IType if_type = IType::arrows({{}, {{c0, st(q0)}, {c1, st(q1)}, {eps, st(q1)}}}, st(q0));
  CHECK(is_terminal_type("if", if_type, m));
  CHECK(is_terminal_type("Nil", st(q1), m));
  CHECK_FALSE(is_terminal_type("if", IType::arrows({{}, {{c0, st(q0)}}}, st(q0)), m));
  CHECK_THROWS_AS(is_terminal_type("if", st(q0), m), std::invalid_argument);

  // Downward closure over the whole space of the fixture.
  for (const auto& [sym, arity] : m.alphabet()) {
    auto all = enumerate(SimpleType::terminal_sort(arity), m);
    for (const auto& t : all)
      if (is_terminal_type(sym, t, m))
        for (const auto& s : all)
          if (subtype(s, t)) CHECK(is_terminal_type(sym, s, m));
  }
}
