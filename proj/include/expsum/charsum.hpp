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

#include "expsum/cyc.hpp"
#include "expsum/ff.hpp"
#include "expsum/mpoly.hpp"

namespace expsum {

// Options for exact point enumeration.
struct SumOptions {
  // Hard ceiling on the number of points a single histogram enumerates.
  uint64_t budget = uint64_t(1) << 40;
  // Worker thread count; 0 means hardware concurrency. The result is
  // byte-identical for every worker count: workers own disjoint index
  // ranges and partial histograms merge in worker order.
  int workers = 0;
  // Disables the log-table fast path; used by tests to cross-check the two
  // engines against each other.
  bool force_generic = false;
};

// Exact distribution of the absolute trace of f over E^n, where E is the
// degree-m extension of the coefficient field of f. counts[a] is the number
// of points x in E^n with Tr_{E/F_p}(f(x)) = a. The full character sum for
// any character index is a linear functional of this histogram.
struct TraceHistogram {
  int64_t p = 0;       // characteristic
  uint64_t q = 0;      // |E|, the field actually enumerated over
  int m = 1;           // extension degree used
  int n = 0;           // number of variables
  std::vector<BigInt> counts;  // length p

  BigInt total() const;        // sum of counts, equals q^n
};

// Enumerates E^n exactly and tallies traces. Throws BudgetExceeded when
// |E|^n exceeds opt.budget, std::invalid_argument for m < 1 or a
// zero-variable polynomial.
TraceHistogram trace_histogram(const FqPoly& f, int m, const SumOptions& opt = {});

// S(f) under the additive character indexed by b (nonzero mod p):
// sum over a of counts[a] * zeta^(a*b).
CycInt char_sum(const TraceHistogram& h, int64_t b = 1);

// The sums over the extension tower m = 1..M, each computed exactly.
std::vector<CycInt> extension_sums(const FqPoly& f, int M, int64_t b = 1,
                                   const SumOptions& opt = {});

}  // namespace expsum
