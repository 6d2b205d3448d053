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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hosel/cli.hpp"
#include "hosel/selection.hpp"
#include "hosel/text_format.hpp"
#include "support.hpp"

using namespace hosel;
using namespace hosel::testing;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fx(const std::string& file) { return fixture_path(file); }

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "hosel_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

void write(const std::filesystem::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST_CASE("check") {
  auto r = call({"check", fx("ex1.hors"), fx("ex1.apt"), "-q", "q0"});
  CHECK(r.code == 0);
  CHECK(r.out == "ACCEPT\n");
  CHECK(call({"check", fx("ex1.hors"), fx("ex1.apt")}).out == "ACCEPT\n");
  r = call({"check", fx("loop.hors"), fx("loop_odd.apt")});
  CHECK(r.code == 1);
  CHECK(r.out == "REJECT\n");
  r = call({"check", fx("loop.hors"), fx("loop_odd.apt"), "--quiet"});
  CHECK(r.code == 1);
  CHECK(r.out.empty());
  CHECK(call({"check", fx("ex1.hors"), fx("ex1.apt"), "-q", "nope"}).code == 2);
}

TEST_CASE("states") {
  CHECK(call({"states", fx("ex1.hors"), fx("ex1.apt")}).out == "q0\nq1\n");
  auto r = call({"states", fx("loop.hors"), fx("loop_odd.apt")});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
}

TEST_CASE("unfold") {
  auto r = call({"unfold", fx("ex1.hors"), "-d", "2"});
  CHECK(r.code == 0);
  CHECK(r.out == "(if (Nil) (if _|_ _|_))\n");
  CHECK(call({"unfold", fx("ex1.hors")}).code == 2);
  CHECK(call({"unfold", fx("ex1.hors"), "-d", "x"}).code == 2);
}

TEST_CASE("select writes a witness that verify accepts") {
  auto r = call({"select", fx("ex1.hors"), fx("ex1.apt"), "-q", "q0"});
  CHECK(r.code == 0);
  Hors w = parse_hors(r.out);
  CHECK(w.start == "S@q0");
  auto file = scratch("ex1_witness.hors");
  CHECK(call({"select", fx("ex1.hors"), fx("ex1.apt"), "-o", file.string()}).code == 0);
  CHECK(parse_hors(read_text(file.string())) == w);
  auto v = call({"verify", fx("ex1.hors"), fx("ex1.apt"), "-w", file.string(), "-d", "6"});
  CHECK(v.code == 0);
  CHECK(v.out.find("PASS") != std::string::npos);
  CHECK(call({"select", fx("loop.hors"), fx("loop_odd.apt")}).code == 1);
}

TEST_CASE("verify reports a corrupted witness") {
  auto w = call({"select", fx("loop.hors"), fx("loop_even.apt")}).out;
  CHECK(call({"verify", fx("loop.hors"), fx("loop_even.apt")}).code == 0);
  std::string bad = w;
  // Claim color 0 for the child of a although the child state has color 2.
  for (std::size_t at; (at = bad.find("1:2.q")) != std::string::npos;) bad.replace(at, 5, "1:0.q");
  REQUIRE(bad != w);
  auto file = scratch("loop_bad.hors");
  write(file, bad);
  auto r = call({"verify", fx("loop.hors"), fx("loop_even.apt"), "-w", file.string(), "-d", "3"});
  CHECK(r.code == 1);
  CHECK(r.out.find("FAIL") != std::string::npos);
}

TEST_CASE("dump-game") {
  auto text = call({"dump-game", fx("loop.hors"), fx("loop_even.apt")});
  CHECK(text.code == 0);
  CHECK(text.out.rfind("0 E", 0) == 0);
  auto dot = call({"dump-game", fx("loop.hors"), fx("loop_even.apt"), "--dot"});
  CHECK(dot.out.rfind("digraph", 0) == 0);
  CHECK(call({"dump-game", fx("loop.hors"), fx("loop_even.apt"), "--format", "dot"}).out == dot.out);
  CHECK(call({"dump-game", fx("loop.hors"), fx("loop_even.apt"), "--format", "png"}).code == 2);
}

TEST_CASE("input errors") {
  auto r = call({"check", fx("missing.hors"), fx("ex1.apt")});
  CHECK(r.code == 2);
  auto file = scratch("broken.apt");
  write(file, "states: q\ninitial: q\ncolors: q -> 0\ndelta:\n  q if -> (3,q)\n");
  r = call({"check", fx("ex1.hors"), file.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("broken.apt:5:") != std::string::npos);
  CHECK(call({}).code == 2);
  CHECK(call({"frobnicate"}).code == 2);
  CHECK(call({"--help"}).code == 0);
}

TEST_CASE("size guard") {
  auto r = call({"check", fx("guard.hors"), fx("guard.apt")});
  CHECK(r.code == 3);
  CHECK(r.err.find("size guard") != std::string::npos);
}

TEST_CASE("repeated runs are byte-identical") {
  for (const auto& cmd : std::vector<std::vector<std::string>>{
           {"check", fx("ex1.hors"), fx("ex1.apt")},
           {"select", fx("ex1.hors"), fx("ex1.apt"), "-q", "q1"},
           {"dump-game", fx("ex1.hors"), fx("ex1.apt"), "--dot"}}) {
    auto a = call(cmd);
    auto b = call(cmd);
    CHECK(a.out == b.out);
    CHECK(a.code == b.code);
  }
}
