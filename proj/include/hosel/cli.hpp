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


// Command-line frontend.
//
//   hosel check     SCHEME AUTOMATON [-q STATE] [--quiet]
//   hosel states    SCHEME AUTOMATON
//   hosel select    SCHEME AUTOMATON [-q STATE] [-o FILE]
//   hosel unfold    SCHEME -d DEPTH
//   hosel verify    SCHEME AUTOMATON [-q STATE] [-d DEPTH] [-w WITNESS]
//   hosel dump-game SCHEME AUTOMATON [--format text|dot | --dot] [-o FILE]
//
// Exit codes: 0 accepted / success, 1 rejected / verification failed,
// 2 usage or input error, 3 size guard, 4 internal error.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hosel {

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hosel
