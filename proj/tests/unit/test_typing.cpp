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

#include "hosel/typing.hpp"
#include "support.hpp"

using namespace hosel;
using hosel::testing::Atomic;
using hosel::testing::ex1_automaton;

namespace {

const SimpleType o = SimpleType::ground();
const SimpleType oo = SimpleType::arrow(o, o);
const StateId q0{0}, q1{1};
const Color eps = Color::epsilon();
const Color c0 = Color::of(0);

IType st(StateId q) { return IType::state(q); }

// The running example's body for L.
TermPtr l_body() { return app(terminal("if"), {var("x"), app(nonterminal("L"), app(terminal("data"), var("x")))}); }

void check_all(const DerivationPtr& d, const Apt& m) {
  REQUIRE(d);
  auto problem = check_derivation(*d, m);
  CHECK_MESSAGE(!problem, (problem ? *problem : ""));
}

}  // namespace

TEST_CASE("residual and colored contexts") {
  Apt m = ex1_automaton(0, 1);
  TypeEnv env{{"x", {{eps, st(q0)}, {c0, st(q1)}, {Color::of(1), st(q0)}}}};
  TypeEnv r0 = residual(env, c0, m);
  CHECK(r0.at("x") == ColoredSet{{eps, st(q1)}, {c0, st(q1)}, {Color::of(1), st(q0)}});
  // box(c) of the residual stays below the original.
  for (Color c : color_set(m)) CHECK(env_leq(box_env(c, residual(env, c, m)), env));
  CHECK(residual(env, eps, m) == env);
  CHECK(env_leq({}, env));
  CHECK_FALSE(env_leq(env, {}));
}

TEST_CASE("axiom") {
  Apt m = ex1_automaton();
  auto d = derive({{"x", {{eps, st(q0)}}}}, var("x"), st(q0), m);
  REQUIRE(d);
  CHECK(d->rule == Derivation::Rule::Ax);
  check_all(d, m);
  CHECK_FALSE(derive({{"x", {{c0, st(q0)}}}}, var("x"), st(q0), m));
  CHECK_FALSE(derive({{"x", {{eps, st(q1)}}}}, var("x"), st(q0), m));
  CHECK_THROWS_AS(derive({}, var("x"), st(q0), m), std::invalid_argument);
  // An absent nonterminal carries no assumption.
  CHECK_FALSE(derive({}, nonterminal("F"), st(q0), m));
}

TEST_CASE("the running example's body") {
  Apt m = ex1_automaton();
  IType l_q0 = IType::arrow({{c0, st(q1)}}, st(q0));
  IType l_q1 = IType::arrow({{c0, st(q1)}}, st(q1));
  // Direction 2 of `if` is entered with color 0, so L must be assumed at 0.
  TypeEnv env{{"x", {{eps, st(q1)}, {c0, st(q1)}}}, {"L", {{eps, l_q0}, {eps, l_q1}}}};
  CHECK_FALSE(derive(env, l_body(), st(q0), m));
  env["L"] = {{c0, l_q0}, {c0, l_q1}};
  auto d0 = derive(env, l_body(), st(q0), m);
  check_all(d0, m);
  auto d1 = derive(env, l_body(), st(q1), m);
  check_all(d1, m);
  CHECK_FALSE(derive({{"x", {}}, {"L", env["L"]}}, l_body(), st(q1), m));

  // Against the bottom-up denotation with L restricted to a few sets.
  std::vector<ColoredSet> l_sets{{}, env["L"], {{eps, l_q0}}, {{c0, l_q1}}, {{c0, IType::arrow({}, st(q0))}}};
  auto den = denotation(l_body(), {{"x", o}, {"L", oo}}, m, {{"L", l_sets}});
  std::size_t members = 0;
  for (std::size_t e = 0; e < den.environments().size(); ++e)
    for (std::size_t t = 0; t < den.types().size(); ++t) {
      TypeEnv point = den.env_at(e);
      bool by_derive = derive(point, l_body(), den.types()[t], m) != nullptr;
      CHECK(den.contains(e, t) == by_derive);
      members += by_derive;
    }
  CHECK(members > 0);
}

TEST_CASE("denotation examples") {
  Apt m = ex1_automaton();
  auto nil = denotation(terminal("Nil"), {}, m);
  CHECK(nil.environments().size() == 1);
  CHECK(nil.contains(std::vector<ColoredSet>{}, st(q0)));
  CHECK(nil.contains(std::vector<ColoredSet>{}, st(q1)));

  auto x = denotation(var("x"), {{"x", o}}, m);
  CHECK(x.environments().size() == 16);
  for (std::size_t e = 0; e < 16; ++e)
    for (std::size_t t = 0; t < 2; ++t)
      CHECK(x.contains(e, t) == x.environments()[e][0].contains({eps, x.types()[t]}));

  // An abstraction over the body, checked against derive on every point.
  std::vector<ColoredSet> l_sets{{}, {{c0, IType::arrow({{c0, st(q1)}}, st(q0))}},
                                 {{c0, IType::arrow({{c0, st(q1)}}, st(q1))}, {c0, IType::arrow({}, st(q0))}}};
  TermPtr abs = lambda("x", o, l_body());
  auto den = denotation(abs, {{"L", oo}}, m, {{"L", l_sets}});
  CHECK(den.types().size() == 32);
  for (std::size_t e = 0; e < den.environments().size(); ++e)
    for (std::size_t t = 0; t < den.types().size(); ++t) {
      auto d = derive(den.env_at(e), abs, den.types()[t], m);
      CHECK(den.contains(e, t) == (d != nullptr));
      if (d) check_all(d, m);
    }
  CHECK_THROWS(denotation(fix(o, lambda("s", o, var("s"))), {}, m));
}

TEST_CASE("residual propagation agrees with literal context splitting") {
  Apt m = ex1_automaton(0, 0);
  std::map<std::string, SimpleType> sorts{{"x", o}, {"y", o}};
  std::vector<Atomic> atoms{{terminal("if"), SimpleType::terminal_sort(2)},
                            {terminal("data"), oo},
                            {terminal("Nil"), o},
                            {var("x"), o},
                            {var("y"), o}};
  auto terms = testing::applicative_terms(atoms, 5);
  std::vector<ColoredPair> pool;
  for (Color c : color_set(m))
    for (StateId q : {q0, q1}) pool.push_back({c, st(q)});
  std::mt19937 rng(17);
  int agreements = 0, positive = 0;
  for (const auto& t : terms) {
    auto types = enumerate(t.sort, m);
    for (int trial = 0; trial < 12; ++trial) {
      TypeEnv env;
      for (const char* name : {"x", "y"}) {
        ColoredSet u;
        for (int k = 0; k < 2; ++k)
          if (rng() % 3 != 0) u.insert(pool[rng() % pool.size()]);
        env[name] = u;
      }
      const IType& target = types[rng() % types.size()];
      bool fast = derive(env, t.term, target, m) != nullptr;
      bool literal = testing::provable_by_splitting(env, t.term, target, m, sorts);
      CHECK_MESSAGE(fast == literal, to_string(t.term) << " : " << to_string(target, m));
      agreements += fast == literal;
      positive += fast;
    }
  }
  CHECK(positive > 50);
  MESSAGE("terms: " << terms.size() << ", agreements: " << agreements << ", derivable: " << positive);
}

TEST_CASE("derivations are locally correct and the relation is downward closed") {
  Apt m = ex1_automaton(0, 1);
  std::vector<Atomic> atoms{{terminal("if"), SimpleType::terminal_sort(2)},
                            {terminal("data"), oo},
                            {terminal("Nil"), o},
                            {var("x"), o},
                            {var("f"), oo}};
  auto terms = testing::applicative_terms(atoms, 6);
  auto oo_types = enumerate(oo, m);
  std::vector<ColoredPair> xs, fs;
  for (Color c : color_set(m)) {
    for (StateId q : {q0, q1}) xs.push_back({c, st(q)});
    for (const auto& t : oo_types) fs.push_back({c, t});
  }
  std::mt19937 rng(23);
  auto random_set = [&](const std::vector<ColoredPair>& from, int n) {
    ColoredSet u;
    for (int k = 0; k < n; ++k) u.insert(from[rng() % from.size()]);
    return u;
  };
  int checked = 0;
  for (int trial = 0; trial < 4000 && checked < 300; ++trial) {
    const auto& t = terms[rng() % terms.size()];
    auto types = enumerate(t.sort, m);
    TypeEnv env{{"x", random_set(xs, 3)}, {"f", random_set(fs, 3)}};
    const IType& target = types[rng() % types.size()];
    auto d = derive(env, t.term, target, m);
    if (!d) continue;
    ++checked;
    check_all(d, m);
    TypeEnv bigger = env;
    bigger["x"] = set_union(bigger["x"], random_set(xs, 2));
    bigger["f"] = set_union(bigger["f"], random_set(fs, 2));
    for (const auto& smaller : types)
      if (subtype(smaller, target)) CHECK(derive(bigger, t.term, smaller, m));
  }
  CHECK(checked >= 300);
}
