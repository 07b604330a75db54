/*
   Copyright 2026 The expsum authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace expsum {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// Raised when a run would exceed its evaluation budget. Carries the work the
// run would have needed so callers can report it.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, uint64_t required, uint64_t budget)
      : std::runtime_error(what), required_steps(required), budget_steps(budget) {}
  uint64_t required_steps;
  uint64_t budget_steps;
};

// Raised on malformed polynomial text; `pos` is a 0-based character offset.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, size_t pos)
      : std::runtime_error(what + " (at position " + std::to_string(pos) + ")"),
        pos(pos) {}
  size_t pos;
};

// p^e as uint64, or nullopt on overflow past `cap`.
inline std::optional<uint64_t> checked_pow(uint64_t base, unsigned exp,
                                           uint64_t cap = std::numeric_limits<uint64_t>::max()) {
  uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && r > cap / base) return std::nullopt;
    r *= base;
    if (r > cap) return std::nullopt;
  }
  return r;
}

inline int64_t gcd64(int64_t a, int64_t b) {
  while (b != 0) {
    int64_t t = a % b;
    a = b;
    b = t;
  }
  return a < 0 ? -a : a;
}

}  // namespace expsum
