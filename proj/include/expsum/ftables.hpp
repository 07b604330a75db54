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
#include <vector>

#include "expsum/ff.hpp"

namespace expsum {

// Dense lookup tables for one finite field, powering the fast point
// enumeration: discrete logs with respect to a fixed generator, the inverse
// exponential table, and the absolute trace of every element. Element
// indices are the odometer indices of ff.hpp.
//
// Only built for fields of order at most kTableMaxOrder; larger fields fall
// back to the generic evaluation path.
struct FieldTables {
  const FieldDescriptor* F = nullptr;
  uint64_t Q = 0;                 // field order
  uint64_t gen_index = 0;         // odometer index of the chosen generator
  std::vector<uint32_t> logtab;   // element index -> log base g, size Q, [0] unused
  std::vector<uint32_t> exptab;   // l in [0, Q-1) -> element index of g^l
  std::vector<uint32_t> trtab;    // element index -> absolute trace in [0, p)
};

inline constexpr uint64_t kTableMaxOrder = uint64_t(1) << 22;

// Builds (or fetches from the cache) the tables for F. The generator is
// deterministic: the element of smallest odometer index whose multiplicative
// order is Q - 1. Throws std::invalid_argument when the order exceeds
// kTableMaxOrder.
const FieldTables* field_tables(const FieldDescriptor* F);

}  // namespace expsum
