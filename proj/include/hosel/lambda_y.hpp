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

// Translations between recursion schemes and closed lambda-Y terms.

#pragma once

#include <vector>

#include "hosel/syntax.hpp"

namespace hosel {

/// Closed ground term with one fixpoint per nonterminal.  Mutual recursion
/// is eliminated one nonterminal at a time in declaration order, then the
/// solutions are substituted back.  Throws std::invalid_argument if h is
/// not well-formed.
TermPtr to_lambda_y(const Hors& h);

/// Lambda-lifting: every abstraction spine and every fixpoint becomes a
/// fresh nonterminal abstracted over its free variables (eta-expanded to
/// ground).  Throws std::invalid_argument unless t is closed, ground and
/// well-sorted over `alphabet`.
Hors from_lambda_y(const TermPtr& t, const std::vector<TerminalDecl>& alphabet);

}  // namespace hosel
