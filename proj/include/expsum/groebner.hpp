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
#include <vector>

#include "expsum/mpoly.hpp"

namespace expsum {

// Default ceiling on Buchberger S-pair reductions. A budget knob, not a
// correctness knob: hitting it raises BudgetExceeded instead of returning a
// partial basis.
inline constexpr uint64_t kGroebnerDefaultSteps = 200000;

// Fully reduces f modulo basis: every term of the result is outside the
// leading-term ideal of the basis. With a Groebner basis this is the unique
// normal form.
FqPoly normal_form(const FqPoly& f, const std::vector<FqPoly>& basis);

// The reduced Groebner basis (grevlex, monic, pairwise fully reduced,
// deterministically ordered by leading monomial descending) of the ideal
// generated by gens. All generators must share ring and variable count.
// In one variable this is the monic gcd.
std::vector<FqPoly> groebner_basis(std::vector<FqPoly> gens,
                                   uint64_t max_steps = kGroebnerDefaultSteps);

// True when the quotient by the ideal is a finite-dimensional vector space:
// every variable shows up as a pure power among the leading terms. gb must
// be a Groebner basis. The empty set (zero ideal) is zero-dimensional only
// with zero variables; the unit ideal is zero-dimensional with dimension 0.
bool is_zero_dimensional(const std::vector<FqPoly>& gb, int nvars);

// The monomials outside the leading-term ideal, the canonical basis of the
// quotient. Requires a zero-dimensional Groebner basis; throws
// BudgetExceeded when the count passes cap.
std::vector<Monomial> standard_monomials(const std::vector<FqPoly>& gb, int nvars,
                                         uint64_t cap = uint64_t(1) << 24);

// Dimension of the quotient algebra, or nullopt when it is not
// finite-dimensional.
std::optional<uint64_t> quotient_dimension(const std::vector<FqPoly>& gb, int nvars,
                                           uint64_t cap = uint64_t(1) << 24);

}  // namespace expsum
