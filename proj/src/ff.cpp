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

#include "expsum/ff.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace expsum {

namespace {

// ---- dense univariate arithmetic over F_p (coefficient vectors, c[i] = coeff of t^i) ----

void trim(std::vector<int64_t>& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::vector<int64_t> poly_mul(const std::vector<int64_t>& a, const std::vector<int64_t>& b,
                              int64_t p) {
  if (a.empty() || b.empty()) return {};
  std::vector<int64_t> r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  trim(r);
  return r;
}

// Remainder of a modulo monic m.
std::vector<int64_t> poly_rem_monic(std::vector<int64_t> a, const std::vector<int64_t>& m,
                                    int64_t p) {
  size_t dm = m.size() - 1;
  while (a.size() > dm) {
    int64_t c = a.back();
    size_t shift = a.size() - 1 - dm;
    if (c != 0) {
      for (size_t i = 0; i < dm; ++i) {
        a[shift + i] = ((a[shift + i] - c * m[i]) % p + p) % p;
      }
    }
    a.pop_back();
    trim(a);
    if (a.size() <= dm) break;
  }
  trim(a);
  return a;
}

int64_t mod_inv_int(int64_t a, int64_t p) {
  int64_t t = 0, nt = 1, r = p, nr = a % p;
  while (nr != 0) {
    int64_t qq = r / nr;
    std::swap(t -= qq * nt, nt);
    std::swap(r -= qq * nr, nr);
  }
  if (r != 1) throw std::domain_error("not invertible mod p");
  return ((t % p) + p) % p;
}

// General remainder (divisor need not be monic).
std::vector<int64_t> poly_rem(std::vector<int64_t> a, const std::vector<int64_t>& b, int64_t p) {
  std::vector<int64_t> bb = b;
  trim(bb);
  if (bb.empty()) throw std::domain_error("division by zero polynomial");
  int64_t lc_inv = mod_inv_int(bb.back(), p);
  trim(a);
  while (a.size() >= bb.size()) {
    int64_t c = (a.back() * lc_inv) % p;
    size_t shift = a.size() - bb.size();
    for (size_t i = 0; i < bb.size(); ++i) {
      a[shift + i] = ((a[shift + i] - c * bb[i]) % p + p) % p;
    }
    trim(a);
  }
  return a;
}

// Extended Euclid: returns g (monic) and u with u*a = g (mod m). Used for
// inversion in F_p[t]/(m): if g == 1 then u is the inverse of a.
std::vector<int64_t> poly_inv_mod(const std::vector<int64_t>& a, const std::vector<int64_t>& m,
                                  int64_t p) {
  std::vector<int64_t> r0 = m, r1 = a, u0 = {}, u1 = {1};
  trim(r1);
  while (!r1.empty()) {
    // quotient of r0 by r1
    std::vector<int64_t> q;
    {
      std::vector<int64_t> rem = r0;
      trim(rem);
      std::vector<int64_t> b = r1;
      int64_t lc_inv = mod_inv_int(b.back(), p);
      if (rem.size() >= b.size()) q.assign(rem.size() - b.size() + 1, 0);
      while (rem.size() >= b.size() && !rem.empty()) {
        int64_t c = (rem.back() * lc_inv) % p;
        size_t shift = rem.size() - b.size();
        q[shift] = c;
        for (size_t i = 0; i < b.size(); ++i) {
          rem[shift + i] = ((rem[shift + i] - c * b[i]) % p + p) % p;
        }
        trim(rem);
      }
      r0 = std::move(rem);
    }
    std::swap(r0, r1);
    // u_{k+1} = u_{k-1} - q*u_k
    std::vector<int64_t> qu = poly_mul(q, u1, p);
    std::vector<int64_t> nu(std::max(u0.size(), qu.size()), 0);
    for (size_t i = 0; i < nu.size(); ++i) {
      int64_t x = (i < u0.size() ? u0[i] : 0) - (i < qu.size() ? qu[i] : 0);
      nu[i] = ((x % p) + p) % p;
    }
    trim(nu);
    u0 = std::move(u1);
    u1 = std::move(nu);
  }
  // r0 = gcd, u0 * a = r0 (mod m)
  if (r0.size() != 1) throw std::domain_error("element not invertible");
  int64_t ginv = mod_inv_int(r0[0], p);
  for (auto& c : u0) c = (c * ginv) % p;
  u0 = poly_rem_monic(std::move(u0), m, p);
  return u0;
}

bool is_irreducible(const std::vector<int64_t>& f, int64_t p) {
  // Trial division by every monic polynomial of degree 1..deg(f)/2.
  size_t d = f.size() - 1;
  for (size_t m = 1; 2 * m <= d; ++m) {
    uint64_t count = 1;
    for (size_t i = 0; i < m; ++i) count *= uint64_t(p);
    std::vector<int64_t> div(m + 1, 0);
    div[m] = 1;
    for (uint64_t idx = 0; idx < count; ++idx) {
      uint64_t v = idx;
      for (size_t i = 0; i < m; ++i) {
        div[i] = int64_t(v % uint64_t(p));
        v /= uint64_t(p);
      }
      if (poly_rem(f, div, p).empty()) return false;
    }
  }
  return true;
}

struct Registry {
  std::mutex mu;
  std::map<std::pair<int64_t, int>, std::unique_ptr<FieldDescriptor>> fields;
  // (p, s_src, s_dst) -> powers of the embedding root
  std::map<std::tuple<int64_t, int, int>, std::vector<FieldElement>> embeddings;
};

Registry& registry() {
  static Registry r;
  return r;
}

}  // namespace

bool is_prime_int(int64_t v) {
  if (v < 2) return false;
  for (int64_t d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

std::string FieldDescriptor::name() const {
  std::ostringstream os;
  if (s == 1)
    os << "F_" << p;
  else
    os << "F_{" << p << "^" << s << "}";
  return os.str();
}

const FieldDescriptor* field(int64_t p, int s, uint64_t max_order) {
  if (!is_prime_int(p)) throw std::invalid_argument("field characteristic must be prime");
  if (s < 1) throw std::invalid_argument("extension degree must be >= 1");
  auto q = checked_pow(uint64_t(p), unsigned(s), max_order);
  if (!q) {
    throw std::invalid_argument("field order p^s exceeds the configured bound " +
                                std::to_string(max_order));
  }

  Registry& reg = registry();
  std::lock_guard<std::mutex> lock(reg.mu);
  auto key = std::make_pair(p, s);
  auto it = reg.fields.find(key);
  if (it != reg.fields.end()) return it->second.get();

  auto F = std::make_unique<FieldDescriptor>();
  F->p = p;
  F->s = s;
  F->q = *q;

  // Deterministic modulus: first irreducible monic candidate where the
  // vector (c_0, ..., c_{s-1}) is scanned lexicographically, constant
  // coefficient most significant. For s = 1 this yields t itself.
  {
    std::vector<int64_t> cand(size_t(s) + 1, 0);
    cand[size_t(s)] = 1;
    uint64_t total = 1;
    for (int i = 0; i < s; ++i) total *= uint64_t(p);
    bool found = false;
    for (uint64_t big = 0; big < total; ++big) {
      uint64_t v = big;
      for (int i = s - 1; i >= 0; --i) {  // c_{s-1} least significant digit of the counter
        cand[size_t(i)] = int64_t(v % uint64_t(p));
        v /= uint64_t(p);
      }
      if (s == 1 || is_irreducible(cand, p)) {
        found = true;
        break;
      }
    }
    if (!found) throw std::logic_error("no irreducible modulus found");  // cannot happen
    F->modulus = cand;
  }

  // Frobenius matrix: images of the basis 1, t, ..., t^(s-1) under x -> x^p.
  {
    std::vector<int64_t> tp = {1};  // t^0
    {
      std::vector<int64_t> t = {0, 1};
      // t^p by square-and-multiply
      std::vector<int64_t> base = poly_rem_monic(t, F->modulus, p);
      std::vector<int64_t> acc = {1};
      int64_t e = p;
      while (e > 0) {
        if (e & 1) acc = poly_rem_monic(poly_mul(acc, base, p), F->modulus, p);
        base = poly_rem_monic(poly_mul(base, base, p), F->modulus, p);
        e >>= 1;
      }
      tp = acc;
    }
    F->frob.assign(size_t(s), {});
    std::vector<int64_t> row = {1};
    for (int i = 0; i < s; ++i) {
      std::vector<int64_t> padded(size_t(s), 0);
      for (size_t j = 0; j < row.size(); ++j) padded[j] = row[j];
      F->frob[size_t(i)] = padded;
      row = poly_rem_monic(poly_mul(row, tp, p), F->modulus, p);
    }
  }

  // Trace of each basis element: sum of its s Frobenius iterates. The result
  // must be a prime-field constant; anything else means a bug.
  {
    F->trace_basis.assign(size_t(s), 0);
    for (int i = 0; i < s; ++i) {
      std::vector<int64_t> x(size_t(s), 0);
      x[size_t(i)] = 1;
      std::vector<int64_t> total(size_t(s), 0);
      std::vector<int64_t> acc = x;
      for (int k = 0; k < s; ++k) {
        for (int j = 0; j < s; ++j) total[size_t(j)] = (total[size_t(j)] + acc[size_t(j)]) % p;
        if (k + 1 < s) {
          // acc <- frobenius(acc)
          std::vector<int64_t> next(size_t(s), 0);
          for (int j = 0; j < s; ++j) {
            if (acc[size_t(j)] == 0) continue;
            for (int l = 0; l < s; ++l) {
              next[size_t(l)] = (next[size_t(l)] + acc[size_t(j)] * F->frob[size_t(j)][size_t(l)]) % p;
            }
          }
          acc = std::move(next);
        }
      }
      for (int j = 1; j < s; ++j) {
        if (total[size_t(j)] != 0) throw std::logic_error("trace not in prime field");
      }
      F->trace_basis[size_t(i)] = total[0];
    }
  }

  const FieldDescriptor* out = F.get();
  reg.fields.emplace(key, std::move(F));
  return out;
}

// ---- FieldElement ----

FieldElement::FieldElement(const FieldDescriptor* F, std::vector<int64_t> coeffs) : F_(F) {
  if (!F) throw std::invalid_argument("null field descriptor");
  c_.assign(size_t(F->s), 0);
  for (size_t i = 0; i < coeffs.size() && i < c_.size(); ++i) {
    c_[i] = ((coeffs[i] % F->p) + F->p) % F->p;
  }
  for (size_t i = size_t(F->s); i < coeffs.size(); ++i) {
    if (coeffs[i] % F->p != 0) throw std::invalid_argument("coefficient vector too long");
  }
}

FieldElement FieldElement::zero(const FieldDescriptor* F) { return FieldElement(F, {}); }

FieldElement FieldElement::one(const FieldDescriptor* F) { return FieldElement(F, {1}); }

FieldElement FieldElement::from_int(const FieldDescriptor* F, int64_t v) {
  return FieldElement(F, {v});
}

FieldElement FieldElement::gen(const FieldDescriptor* F) {
  if (F->s == 1) return zero(F);  // t == 0 in F_p[t]/(t)
  return FieldElement(F, {0, 1});
}

FieldElement FieldElement::from_index(const FieldDescriptor* F, uint64_t idx) {
  std::vector<int64_t> c(size_t(F->s), 0);
  for (int i = 0; i < F->s; ++i) {
    c[size_t(i)] = int64_t(idx % uint64_t(F->p));
    idx /= uint64_t(F->p);
  }
  if (idx != 0) throw std::invalid_argument("element index out of range");
  return FieldElement(F, std::move(c));
}

uint64_t FieldElement::index() const {
  uint64_t idx = 0;
  for (int i = F_->s - 1; i >= 0; --i) idx = idx * uint64_t(F_->p) + uint64_t(c_[size_t(i)]);
  return idx;
}

bool FieldElement::is_zero() const {
  for (int64_t v : c_)
    if (v != 0) return false;
  return true;
}

bool FieldElement::operator==(const FieldElement& o) const {
  return F_ == o.F_ && c_ == o.c_;
}

static void check_same_field(const FieldDescriptor* a, const FieldDescriptor* b) {
  if (a != b) throw std::invalid_argument("field element arithmetic across different fields");
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  check_same_field(F_, o.F_);
  FieldElement r = *this;
  for (size_t i = 0; i < c_.size(); ++i) {
    r.c_[i] += o.c_[i];
    if (r.c_[i] >= F_->p) r.c_[i] -= F_->p;
  }
  return r;
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  check_same_field(F_, o.F_);
  FieldElement r = *this;
  for (size_t i = 0; i < c_.size(); ++i) {
    r.c_[i] -= o.c_[i];
    if (r.c_[i] < 0) r.c_[i] += F_->p;
  }
  return r;
}

FieldElement FieldElement::operator-() const {
  FieldElement r = *this;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (r.c_[i] != 0) r.c_[i] = F_->p - r.c_[i];
  }
  return r;
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  check_same_field(F_, o.F_);
  std::vector<int64_t> prod = poly_mul(c_, o.c_, F_->p);
  prod = poly_rem_monic(std::move(prod), F_->modulus, F_->p);
  FieldElement r;
  r.F_ = F_;
  r.c_.assign(size_t(F_->s), 0);
  for (size_t i = 0; i < prod.size(); ++i) r.c_[i] = prod[i];
  return r;
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  if (F_->s == 1) return from_int(F_, mod_inv_int(c_[0], F_->p));
  std::vector<int64_t> a = c_;
  trim(a);
  std::vector<int64_t> inv = poly_inv_mod(a, F_->modulus, F_->p);
  return FieldElement(F_, std::move(inv));
}

FieldElement FieldElement::operator/(const FieldElement& o) const { return *this * o.inverse(); }

FieldElement FieldElement::pow(uint64_t e) const {
  FieldElement acc = one(F_);
  FieldElement base = *this;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

std::string FieldElement::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = F_->s - 1; i >= 0; --i) {
    int64_t c = c_[size_t(i)];
    if (c == 0) continue;
    if (!first) os << "+";
    first = false;
    if (i == 0) {
      os << c;
    } else {
      if (c != 1) os << c << "*";
      os << "t";
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

FieldElement frobenius(const FieldElement& x) {
  const FieldDescriptor* F = x.field_ptr();
  std::vector<int64_t> next(size_t(F->s), 0);
  const auto& c = x.coeffs();
  for (int j = 0; j < F->s; ++j) {
    if (c[size_t(j)] == 0) continue;
    for (int l = 0; l < F->s; ++l) {
      next[size_t(l)] = (next[size_t(l)] + c[size_t(j)] * F->frob[size_t(j)][size_t(l)]) % F->p;
    }
  }
  return FieldElement(F, std::move(next));
}

FieldElement frobenius_iter(const FieldElement& x, int k) {
  FieldElement r = x;
  for (int i = 0; i < k; ++i) r = frobenius(r);
  return r;
}

int64_t trace_to_prime(const FieldElement& x) {
  const FieldDescriptor* F = x.field_ptr();
  int64_t t = 0;
  const auto& c = x.coeffs();
  for (int i = 0; i < F->s; ++i) t = (t + c[size_t(i)] * F->trace_basis[size_t(i)]) % F->p;
  return t;
}

const std::vector<FieldElement>& embedding_root_powers(const FieldDescriptor* src,
                                                       const FieldDescriptor* dst) {
  if (src->p != dst->p || dst->s % src->s != 0) {
    throw std::invalid_argument(src->name() + " is not a subfield of " + dst->name());
  }
  Registry& reg = registry();
  std::lock_guard<std::mutex> lock(reg.mu);
  auto key = std::make_tuple(src->p, src->s, dst->s);
  auto it = reg.embeddings.find(key);
  if (it != reg.embeddings.end()) return it->second;

  constexpr uint64_t kEmbedScanCap = uint64_t(1) << 24;
  if (dst->q > kEmbedScanCap) {
    throw BudgetExceeded("embedding root search too large for exhaustive scan", dst->q,
                         kEmbedScanCap);
  }

  // Lift the source modulus coefficients (prime-field integers) into dst and
  // scan all of dst for roots; among the src->s roots pick the one with the
  // lexicographically smallest coefficient vector.
  std::vector<FieldElement> mod_in_dst;
  mod_in_dst.reserve(src->modulus.size());
  for (int64_t mc : src->modulus) mod_in_dst.push_back(FieldElement::from_int(dst, mc));

  bool have_root = false;
  FieldElement best;
  for (uint64_t idx = 0; idx < dst->q; ++idx) {
    FieldElement x = FieldElement::from_index(dst, idx);
    FieldElement acc = mod_in_dst.back();
    for (int i = int(mod_in_dst.size()) - 2; i >= 0; --i) {
      acc = acc * x + mod_in_dst[size_t(i)];
    }
    if (acc.is_zero()) {
      if (!have_root || std::lexicographical_compare(x.coeffs().begin(), x.coeffs().end(),
                                                     best.coeffs().begin(), best.coeffs().end())) {
        best = x;
        have_root = true;
      }
    }
  }
  if (!have_root) throw std::logic_error("embedding root not found");  // cannot happen

  std::vector<FieldElement> powers;
  powers.reserve(size_t(src->s));
  FieldElement acc = FieldElement::one(dst);
  for (int i = 0; i < src->s; ++i) {
    powers.push_back(acc);
    acc = acc * best;
  }
  auto [pos, ok] = reg.embeddings.emplace(key, std::move(powers));
  (void)ok;
  return pos->second;
}

FieldElement embed(const FieldElement& x, const FieldDescriptor* dst) {
  const FieldDescriptor* src = x.field_ptr();
  if (src == dst) return x;
  const auto& powers = embedding_root_powers(src, dst);
  FieldElement r = FieldElement::zero(dst);
  for (int i = 0; i < src->s; ++i) {
    int64_t c = x.coeffs()[size_t(i)];
    if (c != 0) r = r + FieldElement::from_int(dst, c) * powers[size_t(i)];
  }
  return r;
}

}  // namespace expsum
