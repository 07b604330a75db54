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
#include <string>
#include <vector>

#include "expsum/common.hpp"

namespace expsum {

// A concrete finite field F_{p^s} = F_p[t]/(m(t)) with a deterministic
// modulus: the lexicographically first monic irreducible polynomial of
// degree s, where candidate coefficient vectors (c_0, ..., c_{s-1}) are
// compared with the constant coefficient most significant. Prime fields are
// the s = 1 case with modulus t; there is no separate code path for them.
//
// Descriptors are interned in a process-wide registry (see field()) and are
// immutable, so raw pointers to them stay valid for the whole run.
struct FieldDescriptor {
  int64_t p = 0;                      // characteristic, prime
  int s = 0;                          // extension degree over F_p
  uint64_t q = 0;                     // p^s
  std::vector<int64_t> modulus;       // monic, modulus[i] = coeff of t^i, size s+1
  std::vector<int64_t> trace_basis;   // trace_basis[i] = Tr_{F_q/F_p}(t^i)
  std::vector<std::vector<int64_t>> frob;  // frob[i] = coeffs of (t^i)^p, s rows

  std::string name() const;           // "F_5", "F_{2^4}"
};

// Largest field order build_field accepts by default.
inline constexpr uint64_t kMaxFieldOrder = uint64_t(1) << 31;

// Builds (or fetches from the registry) the field F_{p^s}. Throws
// std::invalid_argument if p is not prime, s < 1, or p^s exceeds max_order.
const FieldDescriptor* field(int64_t p, int s, uint64_t max_order = kMaxFieldOrder);

// An element of a FieldDescriptor's field, stored as its coefficient vector
// of length s with entries in [0, p). Value type; the descriptor must
// outlive the element (guaranteed for interned descriptors).
class FieldElement {
 public:
  FieldElement() = default;  // detached zero-like placeholder; do not operate on it
  FieldElement(const FieldDescriptor* F, std::vector<int64_t> coeffs);

  static FieldElement zero(const FieldDescriptor* F);
  static FieldElement one(const FieldDescriptor* F);
  static FieldElement from_int(const FieldDescriptor* F, int64_t v);  // v mod p
  static FieldElement gen(const FieldDescriptor* F);                  // the class of t

  // Odometer enumeration: index() = sum c_i * p^i, so index 0, 1, ... walks
  // coefficient vectors with c_0 varying fastest. from_index is its inverse.
  static FieldElement from_index(const FieldDescriptor* F, uint64_t idx);
  uint64_t index() const;

  const FieldDescriptor* field_ptr() const { return F_; }
  const std::vector<int64_t>& coeffs() const { return c_; }

  bool is_zero() const;
  bool operator==(const FieldElement& o) const;
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;  // throws on zero divisor
  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

  FieldElement inverse() const;       // throws std::domain_error on zero
  FieldElement pow(uint64_t e) const;

  // Deterministic text form: "0", "3", "t", "t^2+2*t+1" (descending powers).
  std::string str() const;

 private:
  const FieldDescriptor* F_ = nullptr;
  std::vector<int64_t> c_;
};

// x^p, the arithmetic Frobenius. Bijective; fixes exactly the prime subfield.
FieldElement frobenius(const FieldElement& x);

// x^(p^k).
FieldElement frobenius_iter(const FieldElement& x, int k);

// Tr_{F_q/F_p}(x) = x + x^p + ... + x^(p^(s-1)), as an integer in [0, p).
int64_t trace_to_prime(const FieldElement& x);

// Embeds x into dst = F_{p^(s*k)} via the cached canonical embedding: the
// generator t of the source field maps to the root of the source modulus in
// dst whose coefficient vector is lexicographically smallest. Throws
// std::invalid_argument if src is not a subfield of dst (p differs or
// s does not divide dst->s).
FieldElement embed(const FieldElement& x, const FieldDescriptor* dst);

// Used by tests and tools that need the embedding images directly:
// powers r^0, ..., r^(src->s - 1) of the chosen root in dst.
const std::vector<FieldElement>& embedding_root_powers(const FieldDescriptor* src,
                                                       const FieldDescriptor* dst);

bool is_prime_int(int64_t v);

}  // namespace expsum
