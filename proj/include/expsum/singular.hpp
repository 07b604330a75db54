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
#include <optional>
#include <string>
#include <vector>

#include "expsum/groebner.hpp"
#include "expsum/mpoly.hpp"

namespace expsum {

struct SearchOptions {
  uint64_t scan_budget = uint64_t(1) << 26;  // point evaluations across all cells
  uint64_t groebner_steps = kGroebnerDefaultSteps;
  uint64_t quotient_cap = uint64_t(1) << 20;
  int plateau_cap = 64;  // largest m-adic exponent tried for local Milnor numbers
};

// A positive rational weight system normalized to coprime integers: every
// support monomial of the certified polynomial satisfies <a, weights> = delta.
struct WeightSystem {
  std::vector<int64_t> weights;
  int64_t delta = 0;
};

// Finds the weight system making `poly` weighted homogeneous, if one exists
// with strictly positive weights. A unique ray is detected exactly via the
// rational kernel of the exponent differences; degenerate support (kernel of
// dimension two or more) falls back to a bounded search minimizing delta
// with lexicographic tie-break.
std::optional<WeightSystem> detect_weights(const FqPoly& poly);

// The product over variables of (delta - w_j) / w_j, when it is a
// nonnegative integer; the classical dimension formula for the Jacobian
// quotient of a weighted homogeneous isolated singularity. Used as a
// cross-check; the Jacobian computation stays authoritative.
std::optional<BigInt> milnor_orlik(const WeightSystem& ws);

enum class GermStatus {
  kIsolated,      // the origin is an isolated critical point; milnor is exact
  kNotIsolated,   // certified non-isolated critical locus through the origin
  kUndetermined,  // analysis hit a budget or an unsupported shape
};

// Exact local data of an affine germ at the origin.
struct GermAnalysis {
  GermStatus status = GermStatus::kUndetermined;
  uint64_t milnor = 0;                // valid iff status == kIsolated
  bool weighted_homogeneous = false;  // a certified weighted homogeneous model exists
  bool via_tangent_cone = false;      // model is the lowest-degree form, not the germ
  WeightSystem ws;                    // valid iff weighted_homogeneous
  std::optional<BigInt> orlik;        // product formula value for the model, if defined
  std::string method;  // "univariate-order" | "graded-jacobian" | "local-plateau"
  std::string note;
};

// Analyzes the critical point of `germ` at the origin:
//   one variable      exact order of the derivative
//   weighted homog.   global graded Jacobian quotient (equals the local one)
//   otherwise         m-adic plateau, exact by Nakayama once it stabilizes;
//                     the lowest-degree form is adopted as the weighted
//                     homogeneous model only when its own Milnor number
//                     matches the local one.
GermAnalysis analyze_germ(const FqPoly& germ, const SearchOptions& opt = {});

// A closed point of projective space in canonical coordinates: first nonzero
// coordinate scaled to 1, entries in the field of definition.
struct ProjectivePointRep {
  const FieldDescriptor* E = nullptr;  // F_{q^degree}
  std::vector<FieldElement> coords;
  int degree = 1;  // residue degree over the coefficient field = orbit size

  std::string str() const;
};

struct SingularPointInfo {
  ProjectivePointRep rep;
  GermAnalysis germ;
};

// Everything the hypothesis checks need to know about the singular locus of
// one projective hypersurface.
struct SingularAnalysis {
  bool finite = false;    // singular locus certified finite (cellwise zero-dim)
  bool infinite_certified = false;  // some cell provably carries a positive-
                                    // dimensional singular locus; when both
                                    // flags are false the question hit a budget
  bool complete = false;  // every singular point below the proven degree bound found
  int e_bound = 0;        // proven residue degree bound (max cell quotient dimension)
  std::vector<SingularPointInfo> points;  // one entry per Frobenius orbit
  BigInt total_milnor = 0;  // sum over points of milnor * degree, isolated only
  bool all_isolated_wh = false;  // every point isolated with a certified model
  std::string note;
};

// Full singular locus analysis of the projective hypersurface cut out by the
// homogeneous form F over its coefficient field. Cells indexed by the first
// nonvanishing coordinate partition projective space, each cell's Jacobian
// system is tested for zero-dimensionality, its quotient dimension bounds
// the residue degree of any point in the cell, and each extension within the
// bound is scanned exhaustively. One representative per Frobenius orbit is
// analyzed. Throws std::invalid_argument unless F is homogeneous, nonzero,
// and has at least one variable.
SingularAnalysis analyze_singularities(const FqPoly& F, const SearchOptions& opt = {});

// Partial derivatives with respect to every variable.
std::vector<FqPoly> jacobian(const FqPoly& f);

}  // namespace expsum
