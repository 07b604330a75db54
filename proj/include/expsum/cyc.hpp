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
#include <string>
#include <vector>

#include "expsum/common.hpp"

namespace expsum {

// An element of the cyclotomic integer ring Z[zeta] with zeta a primitive
// p-th root of unity, p prime. Stored as integer coordinates on the powers
// 1, zeta, ..., zeta^(p-1) and kept in the canonical form with the last
// coordinate zero (subtract c_{p-1} times 1 + zeta + ... + zeta^(p-1) = 0).
// On that form the first p-1 powers are a Z-basis, so equality, integrality
// and exact divisibility tests are coordinatewise.
//
// p = 2 works uniformly: zeta = -1 and the ring is Z.
class CycInt {
 public:
  CycInt() = default;                 // detached placeholder, prime() == 0
  explicit CycInt(int64_t p);         // zero of Z[zeta_p]
  static CycInt from_int(int64_t p, BigInt v);
  static CycInt root_power(int64_t p, int64_t j);  // zeta^(j mod p)
  // sum of raw[j] * zeta^j; raw may have any length up to p
  static CycInt from_coords(int64_t p, std::vector<BigInt> raw);

  int64_t prime() const { return p_; }
  // Canonical coordinates, length p, last entry always zero.
  const std::vector<BigInt>& coeffs() const { return c_; }

  bool is_zero() const;
  // True when the element lies in Z; the value is then written to *out.
  bool is_integer(BigInt* out = nullptr) const;

  bool operator==(const CycInt& o) const;
  bool operator!=(const CycInt& o) const { return !(*this == o); }

  CycInt operator+(const CycInt& o) const;
  CycInt operator-(const CycInt& o) const;
  CycInt operator-() const;
  CycInt operator*(const CycInt& o) const;
  CycInt& operator+=(const CycInt& o) { return *this = *this + o; }
  CycInt& operator-=(const CycInt& o) { return *this = *this - o; }
  CycInt& operator*=(const CycInt& o) { return *this = *this * o; }

  CycInt scaled(const BigInt& k) const;

  // Deterministic text form in the symbol z: "0", "3", "1 + 2*z - z^3".
  std::string str() const;

 private:
  void canonicalize();
  void check_same(const CycInt& o) const;

  int64_t p_ = 0;
  std::vector<BigInt> c_;
};

// The Galois automorphism zeta -> zeta^k; k must be nonzero mod p.
CycInt galois(const CycInt& a, int64_t k);

// a / d with d a rational integer, exact. Throws std::invalid_argument for
// d = 0 and std::domain_error when any canonical coordinate is not
// divisible (legitimate because the canonical coordinates are a Z-basis).
CycInt divide_exact(const CycInt& a, const BigInt& d);

// The complex embedding zeta -> exp(2*pi*i*b/p). Coordinates are converted
// to double, exact while they stay below 2^53.
std::complex<double> to_complex(const CycInt& a, int64_t b);

}  // namespace expsum
