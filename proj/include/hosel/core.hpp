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

#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace hosel {

/// Index of an automaton state.  Names live in the owning Apt.
struct StateId {
  std::uint32_t value = 0;

  friend auto operator<=>(StateId, StateId) = default;
};

/// A color of Col = Omega(Q) + {eps}.  The neutral color eps is strictly
/// below every natural, so `max` over colors treats it as a unit.
class Color {
 public:
  constexpr Color() = default;

  static constexpr Color epsilon() { return Color(); }
  static constexpr Color of(std::uint32_t n) { return Color(n); }

  constexpr bool is_epsilon() const { return raw_ == 0; }
  /// Undefined for eps.
  constexpr std::uint32_t value() const { return raw_ - 1; }

  /// Priority in the encoded parity game: c + 2 for naturals, 1 for eps.
  constexpr std::uint32_t priority() const { return is_epsilon() ? 1 : raw_ + 1; }

  friend constexpr auto operator<=>(Color, Color) = default;

  /// "eps" or the decimal value.
  std::string str() const { return is_epsilon() ? "eps" : std::to_string(value()); }

 private:
  explicit constexpr Color(std::uint32_t n) : raw_(n + 1) {}
  std::uint32_t raw_ = 0;
};

constexpr Color max(Color a, Color b) { return a < b ? b : a; }

/// Thrown when an enumeration or exploration would exceed its configured bound.
class SizeGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hosel
