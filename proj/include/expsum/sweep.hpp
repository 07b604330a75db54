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
#include <map>
#include <string>
#include <vector>

#include "expsum/verifier.hpp"

namespace expsum {

struct SweepOptions {
  std::string preset;         // "binary-forms" | "line-arrangements" | "smooth-fermat"
  uint64_t seed = 12345;
  int cases = 20;
  uint64_t budget = uint64_t(1) << 24;  // per-histogram evaluation cap
  int m_max = 2;
  int workers = 0;
};

// One verification run plus the preset's own oracle columns. String-typed
// numeric fields hold decimal integers; empty means not applicable.
struct SweepRow {
  int index = 0;
  std::string f_text;
  int64_t p = 0;
  int s = 1;
  int n = 0;
  int d = 0;
  std::string verdict;
  std::string dimension;           // engine value
  std::string dimension_expected;  // generator's closed form, when it has one
  bool dimension_matches = true;
  std::string total_milnor;
  std::string milnor_expected;     // census-derived value, when it has one
  bool milnor_matches = true;
  // line arrangements: multiplicity census and the two documented example
  // terms it feeds; the generic-position term disagrees with the census on
  // most inputs, which the flag records rather than hides
  std::string census;                  // "i:count" pairs joined by spaces
  std::string example_term_general;    // sum over points of (lines through - 1)
  std::string example_term_generic;    // (d-1)(d-2)/2
  bool generic_term_disagrees = false;
  int m_computed = 0;
  double max_ratio = 0.0;
  bool bounds_ok = true;
  // recovery flags stay empty when recovery did not run
  std::string newton_ok, recurrence_ok, purity_ok;
  double max_rel_err = 0.0;
  std::string note;
};

struct SweepResult {
  std::string preset;
  uint64_t seed = 0;
  std::vector<SweepRow> rows;
};

// Runs the preset's generator with the given seed and verifies every case.
// Generation is a pure function of (preset, seed, cases), so reruns are
// reproducible. Throws std::invalid_argument on an unknown preset name.
SweepResult run_sweep(const SweepOptions& opt);

// Deterministic CSV rendering: fixed header, one line per row, strings
// double-quoted. The schema version rides in the first column.
std::string sweep_csv(const SweepResult& result);

// Multiplicity census of a line arrangement: for each point of the plane
// lying on at least two of the lines, the number of lines through it.
// Returns {multiplicity -> point count}. Lines are coefficient triples;
// duplicates are rejected with std::invalid_argument.
std::map<int, int> arrangement_census(const std::vector<std::vector<FieldElement>>& lines);

}  // namespace expsum
