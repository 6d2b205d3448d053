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

// Line-oriented text formats for schemes and automata.
//
// Scheme:                         Automaton:
//   terminals:                      states: q0 q1
//     if : 2                        initial: q0
//   nonterminals:                   colors: q0 -> 0, q1 -> 0
//     L : o -> o                    delta:
//   start: S                          q0 if -> (2,q0) /\ (2,q1)
//   rules:
//     L x = if x (L (data x))
//
// `#` starts a comment.  Identifiers may carry an `@` suffix running up to
// the next blank (annotated schemes use it).

#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "hosel/automata.hpp"
#include "hosel/syntax.hpp"

namespace hosel {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& message)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

Hors parse_hors(const std::string& text);
std::string print_hors(const Hors& h);

/// `alphabet` supplies terminal arities (normally the scheme's).
Apt parse_apt(const std::string& text, const std::map<std::string, int>& alphabet);
std::string print_apt(const Apt& m);

SimpleType parse_sort(const std::string& text);

}  // namespace hosel
