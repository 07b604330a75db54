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

#include "expsum/cyc.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "expsum/ff.hpp"

namespace expsum {

namespace {
void check_prime(int64_t p) {
  if (!is_prime_int(p)) throw std::invalid_argument("cyclotomic order must be prime");
  if (p > (int64_t(1) << 20)) {
    throw std::invalid_argument("cyclotomic order too large for dense coordinates");
  }
}
}  // namespace

CycInt::CycInt(int64_t p) : p_(p) {
  check_prime(p);
  c_.assign(size_t(p), BigInt(0));
}

CycInt CycInt::from_int(int64_t p, BigInt v) {
  CycInt r(p);
  r.c_[0] = std::move(v);
  return r;
}

CycInt CycInt::root_power(int64_t p, int64_t j) {
  CycInt r(p);
  int64_t jj = j % p;
  if (jj < 0) jj += p;
  r.c_[size_t(jj)] = 1;
  r.canonicalize();
  return r;
}

CycInt CycInt::from_coords(int64_t p, std::vector<BigInt> raw) {
  if (int64_t(raw.size()) > p) throw std::invalid_argument("coordinate vector longer than p");
  CycInt r(p);
  for (size_t i = 0; i < raw.size(); ++i) r.c_[i] = std::move(raw[i]);
  r.canonicalize();
  return r;
}

void CycInt::canonicalize() {
  BigInt& last = c_[size_t(p_ - 1)];
  if (last == 0) return;
  BigInt t = last;  // copy; the loop writes through every entry
  for (auto& x : c_) x -= t;
}

void CycInt::check_same(const CycInt& o) const {
  if (p_ == 0 || o.p_ == 0) throw std::invalid_argument("operation on detached cyclotomic value");
  if (p_ != o.p_) throw std::invalid_argument("mixing cyclotomic rings of different order");
}

bool CycInt::is_zero() const {
  for (const auto& x : c_)
    if (x != 0) return false;
  return true;
}

bool CycInt::is_integer(BigInt* out) const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  if (out) *out = c_.empty() ? BigInt(0) : c_[0];
  return true;
}

bool CycInt::operator==(const CycInt& o) const { return p_ == o.p_ && c_ == o.c_; }

CycInt CycInt::operator+(const CycInt& o) const {
  check_same(o);
  CycInt r = *this;
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
  return r;  // sum of canonical forms has last coordinate zero already
}

CycInt CycInt::operator-(const CycInt& o) const {
  check_same(o);
  CycInt r = *this;
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
  return r;
}

CycInt CycInt::operator-() const {
  CycInt r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

CycInt CycInt::operator*(const CycInt& o) const {
  check_same(o);
  // cyclic convolution in Z[x]/(x^p - 1), then reduce to the canonical form;
  // the composite is exactly multiplication mod the p-th cyclotomic factor
  CycInt r(p_);
  size_t p = c_.size();
  for (size_t i = 0; i < p; ++i) {
    if (c_[i] == 0) continue;
    for (size_t j = 0; j < p; ++j) {
      if (o.c_[j] == 0) continue;
      size_t k = i + j;
      if (k >= p) k -= p;
      r.c_[k] += c_[i] * o.c_[j];
    }
  }
  r.canonicalize();
  return r;
}

CycInt CycInt::scaled(const BigInt& k) const {
  CycInt r = *this;
  for (auto& x : r.c_) x *= k;
  return r;
}

std::string CycInt::str() const {
  if (p_ == 0) return "<detached>";
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    BigInt a = c_[i];
    bool neg = a < 0;
    BigInt mag = neg ? BigInt(-a) : a;
    if (first) {
      if (neg) os << "-";
      first = false;
    } else {
      os << (neg ? " - " : " + ");
    }
    std::string ms = mag.str();
    if (i == 0) {
      os << ms;
    } else {
      if (ms != "1") os << ms << "*";
      os << "z";
      if (i > 1) os << "^" << i;
    }
  }
  if (first) return "0";
  return os.str();
}

CycInt galois(const CycInt& a, int64_t k) {
  int64_t p = a.prime();
  if (p == 0) throw std::invalid_argument("galois on detached cyclotomic value");
  int64_t kk = k % p;
  if (kk < 0) kk += p;
  if (kk == 0) throw std::invalid_argument("galois index must be nonzero mod p");
  // push coordinates through the exponent map i -> i*k, then re-canonicalize
  std::vector<BigInt> fresh(size_t(p), BigInt(0));
  const auto& c = a.coeffs();
  for (size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    fresh[size_t((int64_t(i) * kk) % p)] += c[i];
  }
  return CycInt::from_coords(p, std::move(fresh));
}

CycInt divide_exact(const CycInt& a, const BigInt& d) {
  if (d == 0) throw std::invalid_argument("division of cyclotomic value by zero");
  if (a.prime() == 0) throw std::invalid_argument("divide_exact on detached cyclotomic value");
  const auto& c = a.coeffs();
  std::vector<BigInt> q(c.size());
  for (size_t i = 0; i < c.size(); ++i) {
    if (c[i] % d != 0) {
      throw std::domain_error("cyclotomic coordinate not divisible by " + d.str());
    }
    q[i] = c[i] / d;
  }
  // canonical in, canonical out: dividing every coordinate keeps the last zero
  return CycInt::from_coords(a.prime(), std::move(q));
}

std::complex<double> to_complex(const CycInt& a, int64_t b) {
  int64_t p = a.prime();
  if (p == 0) throw std::invalid_argument("to_complex on detached cyclotomic value");
  int64_t bb = b % p;
  if (bb < 0) bb += p;
  const double tau = 6.283185307179586476925286766559;
  std::complex<double> acc(0.0, 0.0);
  const auto& c = a.coeffs();
  for (size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    double phase = tau * double((int64_t(i) * bb) % p) / double(p);
    acc += c[i].convert_to<double>() * std::complex<double>(std::cos(phase), std::sin(phase));
  }
  return acc;
}

}  // namespace expsum
