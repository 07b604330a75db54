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

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "expsum/charsum.hpp"
#include "expsum/singular.hpp"

namespace expsum {

// Three-valued answer for a hypothesis: certified true, certified false, or
// blocked by a budget / an uncertified germ.
enum class HypoState { kHolds, kFails, kUnknown };

enum class Verdict {
  kApplies,          // every hypothesis certified
  kFailsHypotheses,  // at least one hypothesis certified false
  kNotCertified,     // no failure found, but some certification is missing
  kNotApplicable,    // degenerate input shape (constant f, degree < 2)
};

const char* to_string(HypoState s);
const char* to_string(Verdict v);

// ---------------------------------------------------------------------------
// closed-form Euler characteristic arithmetic
// ---------------------------------------------------------------------------

// The vanishing-cycle sign relating the Euler characteristic of a singular
// degree-d form to its smooth deformation. Fixed by two point-count oracles
// (a rational nodal cubic has chi = 1, a triangle of lines has chi = 3); the
// dimension identity below only closes with this value.
inline constexpr int kVanishingCycleSign = -1;

// chi_c of a smooth degree-d hypersurface in P^n (the compactified generic
// fiber of an n-variable polynomial map).
BigInt euler_smooth_fiber(int d, int n);

// chi_c of the projective hypersurface in P^{n-1} cut out by the top form,
// with isolated singular points of the given total Milnor number:
// smooth part + (-1)^n * sign * total_milnor.
BigInt euler_singular_top_form(int d, int n, const BigInt& total_milnor);

// (d-1)^n - total_milnor. Throws std::invalid_argument when negative.
BigInt predicted_dimension(int d, int n, const BigInt& total_milnor);

// The same number derived through the Euler characteristic chain
// (generic fiber, top form, affine fiber). Throws std::logic_error when the
// chain disagrees with the closed form; they are provably equal, so a
// mismatch means a transcription bug.
BigInt dimension_via_chi(int d, int n, const BigInt& total_milnor);

// ---------------------------------------------------------------------------
// diagnostics
// ---------------------------------------------------------------------------

// Number of zeros of a homogeneous form on P^{nvars-1}(F_{q^m}), by
// exhaustive scan of canonical representatives. Oracle-grade; cost is about
// q^{m(nvars-1)} evaluations.
uint64_t projective_zero_count(const FqPoly& F, int m, uint64_t budget = uint64_t(1) << 32);

struct CriticalLocusReport {
  std::optional<bool> finite;  // nullopt when a budget blocked the answer
  uint64_t dimension_bound = 0;  // quotient dimension when finite
  std::string note;
};

// Exact finiteness test for the affine critical locus of f (common zeros of
// all partial derivatives in A^n), via the Jacobian ideal's dimension.
CriticalLocusReport critical_locus_finite(const FqPoly& f,
                                          const SearchOptions& opt = {});

struct TransversalReport {
  int e = 1;  // extension degree of the field the hyperplane lives over
  std::vector<FieldElement> hyperplane;  // canonical dual coordinates
  // invertible matrix M, over the same field, such that composing the form
  // with M moves the hyperplane to the last-coordinate hyperplane
  std::vector<std::vector<FieldElement>> change;
};

// Finds a hyperplane whose intersection with the top-form hypersurface is
// smooth, searching extensions of degree e <= e_max in a deterministic scan
// order. nullopt when none was found within the bound.
std::optional<TransversalReport> transversal_hyperplane(const FqPoly& top_form,
                                                        int e_max = 2,
                                                        const SearchOptions& opt = {});

// ---------------------------------------------------------------------------
// eigenvalue recovery
// ---------------------------------------------------------------------------

struct EigenvalueRecovery {
  uint64_t dim = 0;               // asserted eigenvalue count D
  int m_used = 0;                 // extension sums consumed
  std::vector<CycInt> power_sums; // P_m = (-1)^n S_m
  std::vector<CycInt> elementary; // e_1..e_D from the Newton identities
  bool newton_ok = false;         // every division was exact
  bool recurrence_ok = false;     // degree-D recurrence holds on all surplus terms
  std::string failure;            // first inconsistency, empty when none
  // root moduli of the recovered characteristic polynomial, one sorted list
  // per character index b = 1..p-1
  std::vector<std::vector<double>> moduli;
  bool purity_ok = false;         // all moduli within rtol of q^{n/2}
  double max_rel_err = 0.0;       // worst relative modulus deviation
};

// Recovers the elementary symmetric functions of the Frobenius eigenvalues
// from S_1..S_M by exact Newton identities, verifies the degree-D recurrence
// on the surplus sums, and checks every root modulus against q^{n/2}.
// Requires M >= D + 1 (at least one surplus term).
EigenvalueRecovery recover_eigenvalues(const std::vector<CycInt>& sums, uint64_t D,
                                       uint64_t q, int n, double rtol = 1e-6);

// ---------------------------------------------------------------------------
// the full pipeline
// ---------------------------------------------------------------------------

struct VerifyOptions {
  int64_t character = 1;   // index b of the additive character
  int m_max = 0;           // extension sums to compute; 0 picks max(2D, D+1)
                           // clipped to the evaluation budget
  uint64_t sum_budget = uint64_t(1) << 40;  // per-histogram evaluation cap
  int workers = 0;         // 0 = hardware concurrency
  SearchOptions search;    // singular-locus budgets
  double purity_rtol = 1e-6;
  bool recover = true;     // attempt eigenvalue recovery
  bool transversal = false;  // also search for a transversal hyperplane
  int transversal_e_max = 2;
};

struct BoundCheck {
  int m = 0;
  double abs_value = 0;  // max |S_m| over all character indices
  double bound = 0;      // D * q^{mn/2}
  double ratio = 0;
  bool ok = false;       // ratio <= 1 + 1e-9
};

struct EulerChain {
  int sign = kVanishingCycleSign;
  BigInt chi_smooth_fiber;
  BigInt chi_top_form;
  BigInt chi_affine_fiber;
  BigInt dim_via_chi;
};

struct VerificationReport {
  // input echo
  int64_t p = 0;
  int s = 1;
  uint64_t q = 0;
  int n = 0;
  int d = 0;
  std::string f_text;
  std::string top_form_text;
  std::string sub_form_text;

  // hypotheses
  SingularAnalysis sing;
  HypoState h1 = HypoState::kUnknown;
  HypoState h2 = HypoState::kUnknown;
  HypoState h3 = HypoState::kUnknown;
  std::string h1_note, h2_note, h3_note;
  std::vector<BigInt> h3_factors;  // d, d-1, then every certified delta
  Verdict verdict = Verdict::kNotApplicable;
  std::string verdict_note;

  // predictions (present when the Milnor data is fully certified)
  std::optional<BigInt> dimension;
  std::optional<EulerChain> euler;

  // diagnostics
  CriticalLocusReport critical;
  std::optional<TransversalReport> transversal;

  // sums
  int64_t character = 1;
  int m_requested = 0;
  std::optional<TraceHistogram> base_histogram;  // m = 1
  std::vector<CycInt> sums;                      // S_1..S_m
  std::vector<BoundCheck> bounds;
  std::string sums_note;

  // recovery
  std::optional<EigenvalueRecovery> recovery;
  std::string recovery_note;

  // deterministic provenance
  uint64_t sum_budget = 0;
  uint64_t scan_budget = 0;
};

// Runs the whole chain on f: hypothesis checks on the top form, dimension
// and Euler arithmetic, extension sums, bound checks, eigenvalue recovery.
// Degenerate inputs produce a kNotApplicable report, never a crash.
VerificationReport verify(const FqPoly& f, const VerifyOptions& opt = {});

}  // namespace expsum
