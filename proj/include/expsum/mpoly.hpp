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

#include <cctype>
#include <climits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "expsum/common.hpp"
#include "expsum/ff.hpp"
#include "expsum/linalg.hpp"

namespace expsum {

// ---------------------------------------------------------------------------
// Monomials under graded reverse lexicographic order
// ---------------------------------------------------------------------------

// Exponent vector with 16-bit entries. Exceeding 16 bits in a product is a
// hard error, never a silent wrap.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<uint16_t> e) : e_(std::move(e)) {}
  static Monomial unit(int nvars) { return Monomial(std::vector<uint16_t>(size_t(nvars), 0)); }
  static Monomial var(int nvars, int i, uint16_t exp = 1) {
    std::vector<uint16_t> e(size_t(nvars), 0);
    e.at(size_t(i)) = exp;
    return Monomial(std::move(e));
  }

  int nvars() const { return int(e_.size()); }
  const std::vector<uint16_t>& exps() const { return e_; }
  uint16_t operator[](int i) const { return e_[size_t(i)]; }
  int total_degree() const {
    int d = 0;
    for (uint16_t x : e_) d += x;
    return d;
  }
  bool is_unit() const {
    for (uint16_t x : e_)
      if (x) return false;
    return true;
  }

  Monomial operator*(const Monomial& o) const {
    Monomial r = *this;
    for (size_t i = 0; i < e_.size(); ++i) {
      uint32_t s = uint32_t(r.e_[i]) + uint32_t(o.e_[i]);
      if (s > 0xFFFF) throw std::overflow_error("monomial exponent exceeds 16 bits");
      r.e_[i] = uint16_t(s);
    }
    return r;
  }

  bool divides(const Monomial& o) const {
    for (size_t i = 0; i < e_.size(); ++i)
      if (e_[i] > o.e_[i]) return false;
    return true;
  }

  // o / this, requires divisibility.
  Monomial quotient_into(const Monomial& o) const {
    Monomial r = o;
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = uint16_t(o.e_[i] - e_[i]);
    return r;
  }

  Monomial lcm(const Monomial& o) const {
    Monomial r = *this;
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = std::max(r.e_[i], o.e_[i]);
    return r;
  }

  bool operator==(const Monomial& o) const { return e_ == o.e_; }
  bool operator!=(const Monomial& o) const { return e_ != o.e_; }

  std::string str(const std::string& prefix = "x") const {
    if (is_unit()) return "1";
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < e_.size(); ++i) {
      if (e_[i] == 0) continue;
      if (!first) os << "*";
      first = false;
      os << prefix << (i + 1);
      if (e_[i] > 1) os << "^" << e_[i];
    }
    return os.str();
  }

 private:
  std::vector<uint16_t> e_;
};

// a < b in graded reverse lex: lower total degree loses; on equal degree,
// a < b iff the last nonzero entry of a - b is positive. (Equivalent to the
// usual: a > b iff the last nonzero entry of a - b is negative.)
inline bool grevlex_less(const Monomial& a, const Monomial& b) {
  int da = a.total_degree(), db = b.total_degree();
  if (da != db) return da < db;
  for (int i = a.nvars() - 1; i >= 0; --i) {
    int d = int(a[i]) - int(b[i]);
    if (d != 0) return d > 0;
  }
  return false;
}

struct GrevlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return grevlex_less(b, a); }
};

// ---------------------------------------------------------------------------
// Coefficient contexts
// ---------------------------------------------------------------------------

// Prime or extension field coefficients.
struct FqCtx {
  const FieldDescriptor* F = nullptr;
  using Elem = FieldElement;

  FqCtx() = default;
  explicit FqCtx(const FieldDescriptor* f) : F(f) {}

  Elem zero() const { return FieldElement::zero(F); }
  Elem one() const { return FieldElement::one(F); }
  Elem from_int(int64_t v) const { return FieldElement::from_int(F, v); }
  bool is_zero(const Elem& x) const { return x.is_zero(); }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem inv(const Elem& a) const { return a.inverse(); }
  std::string str(const Elem& a) const { return a.str(); }
  bool compatible(const FqCtx& o) const { return F == o.F; }
};

// Exact rational coefficients (used by the weight-detection linear solves
// and available as a full polynomial domain).
struct QCtx {
  using Elem = BigRat;

  Elem zero() const { return BigRat(0); }
  Elem one() const { return BigRat(1); }
  Elem from_int(int64_t v) const { return BigRat(v); }
  bool is_zero(const Elem& x) const { return x == 0; }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem inv(const Elem& a) const {
    if (a == 0) throw std::domain_error("rational inverse of zero");
    return 1 / a;
  }
  std::string str(const Elem& a) const { return a.str(); }
  bool compatible(const QCtx&) const { return true; }
};

// ---------------------------------------------------------------------------
// Sparse multivariate polynomials
// ---------------------------------------------------------------------------

// Degree of the zero polynomial: a distinguished "minus infinity" sentinel,
// absorbing under degree arithmetic. Callers must treat it specially.
inline constexpr int kNegInfDeg = INT_MIN;

template <class Ctx>
class MultiPoly {
 public:
  using K = typename Ctx::Elem;
  using TermMap = std::map<Monomial, K, GrevlexGreater>;

  MultiPoly() = default;
  MultiPoly(Ctx ctx, int nvars) : ctx_(ctx), n_(nvars) {
    if (nvars < 0) throw std::invalid_argument("negative variable count");
  }

  static MultiPoly zero(Ctx ctx, int nvars) { return MultiPoly(ctx, nvars); }
  static MultiPoly constant(Ctx ctx, int nvars, const K& c) {
    MultiPoly r(ctx, nvars);
    r.add_term(Monomial::unit(nvars), c);
    return r;
  }
  static MultiPoly variable(Ctx ctx, int nvars, int i) {
    MultiPoly r(ctx, nvars);
    r.add_term(Monomial::var(nvars, i), ctx.one());
    return r;
  }

  const Ctx& ctx() const { return ctx_; }
  int nvars() const { return n_; }
  const TermMap& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  size_t term_count() const { return t_.size(); }

  int degree() const { return t_.empty() ? kNegInfDeg : t_.begin()->first.total_degree(); }

  const Monomial& leading_monomial() const {
    if (t_.empty()) throw std::domain_error("leading term of zero polynomial");
    return t_.begin()->first;
  }
  const K& leading_coeff() const {
    if (t_.empty()) throw std::domain_error("leading term of zero polynomial");
    return t_.begin()->second;
  }

  // Adds c * m, dropping the term if the total cancels. The only mutation
  // entry point, so the "no zero coefficients stored" invariant holds
  // everywhere.
  void add_term(const Monomial& m, const K& c) {
    if (int(m.exps().size()) != n_) throw std::invalid_argument("monomial arity mismatch");
    if (ctx_.is_zero(c)) return;
    auto it = t_.find(m);
    if (it == t_.end()) {
      t_.emplace(m, c);
    } else {
      K s = ctx_.add(it->second, c);
      if (ctx_.is_zero(s))
        t_.erase(it);
      else
        it->second = std::move(s);
    }
  }

  bool operator==(const MultiPoly& o) const {
    if (n_ != o.n_ || t_.size() != o.t_.size()) return false;
    auto a = t_.begin();
    auto b = o.t_.begin();
    for (; a != t_.end(); ++a, ++b) {
      if (a->first != b->first || !ctx_.eq(a->second, b->second)) return false;
    }
    return true;
  }
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }

  MultiPoly operator+(const MultiPoly& o) const {
    check_compat(o);
    MultiPoly r = *this;
    for (const auto& [m, c] : o.t_) r.add_term(m, c);
    return r;
  }
  MultiPoly operator-(const MultiPoly& o) const {
    check_compat(o);
    MultiPoly r = *this;
    for (const auto& [m, c] : o.t_) r.add_term(m, ctx_.neg(c));
    return r;
  }
  MultiPoly operator-() const {
    MultiPoly r(ctx_, n_);
    for (const auto& [m, c] : t_) r.t_.emplace(m, ctx_.neg(c));
    return r;
  }
  MultiPoly operator*(const MultiPoly& o) const {
    check_compat(o);
    MultiPoly r(ctx_, n_);
    for (const auto& [ma, ca] : t_) {
      for (const auto& [mb, cb] : o.t_) r.add_term(ma * mb, ctx_.mul(ca, cb));
    }
    return r;
  }
  MultiPoly scaled(const K& c) const {
    MultiPoly r(ctx_, n_);
    if (ctx_.is_zero(c)) return r;
    for (const auto& [m, cc] : t_) r.add_term(m, ctx_.mul(cc, c));
    return r;
  }
  MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
  MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  MultiPoly pow(unsigned e) const {
    MultiPoly acc = constant(ctx_, n_, ctx_.one());
    MultiPoly base = *this;
    while (e > 0) {
      if (e & 1) acc = acc * base;
      if (e >>= 1) base = base * base;
    }
    return acc;
  }

  // Evaluation with per-variable power caching. Matches the naive
  // term-by-term product (asserted in tests).
  K evaluate(const std::vector<K>& x) const {
    if (int(x.size()) != n_) throw std::invalid_argument("evaluate: wrong point arity");
    // max exponent per variable
    std::vector<uint16_t> maxe(size_t(n_), 0);
    for (const auto& [m, c] : t_) {
      for (int i = 0; i < n_; ++i) maxe[size_t(i)] = std::max(maxe[size_t(i)], m[i]);
    }
    std::vector<std::vector<K>> pw(static_cast<size_t>(n_));
    for (int i = 0; i < n_; ++i) {
      pw[size_t(i)].reserve(size_t(maxe[size_t(i)]) + 1);
      pw[size_t(i)].push_back(ctx_.one());
      for (uint16_t e = 1; e <= maxe[size_t(i)]; ++e)
        pw[size_t(i)].push_back(ctx_.mul(pw[size_t(i)].back(), x[size_t(i)]));
    }
    K acc = ctx_.zero();
    for (const auto& [m, c] : t_) {
      K v = c;
      for (int i = 0; i < n_; ++i) {
        if (m[i]) v = ctx_.mul(v, pw[size_t(i)][m[i]]);
      }
      acc = ctx_.add(acc, v);
    }
    return acc;
  }

  // Formal partial derivative; exponent multipliers reduce through the
  // context, so characteristic-p annihilation is automatic.
  MultiPoly partial(int var) const {
    if (var < 0 || var >= n_) throw std::invalid_argument("partial: variable out of range");
    MultiPoly r(ctx_, n_);
    for (const auto& [m, c] : t_) {
      uint16_t e = m[var];
      if (e == 0) continue;
      std::vector<uint16_t> ex = m.exps();
      ex[size_t(var)] = uint16_t(e - 1);
      r.add_term(Monomial(std::move(ex)), ctx_.mul(c, ctx_.from_int(int64_t(e))));
    }
    return r;
  }

  std::map<int, MultiPoly> homogeneous_components() const {
    std::map<int, MultiPoly> comps;
    for (const auto& [m, c] : t_) {
      int d = m.total_degree();
      auto it = comps.find(d);
      if (it == comps.end()) it = comps.emplace(d, MultiPoly(ctx_, n_)).first;
      it->second.add_term(m, c);
    }
    return comps;
  }

  MultiPoly homogeneous_component(int d) const {
    MultiPoly r(ctx_, n_);
    for (const auto& [m, c] : t_) {
      if (m.total_degree() == d) r.add_term(m, c);
    }
    return r;
  }

  bool is_homogeneous() const {
    if (t_.empty()) return true;
    int d = degree();
    for (const auto& [m, c] : t_) {
      if (m.total_degree() != d) return false;
    }
    return true;
  }

  // Simultaneous substitution x_i -> images[i]. Images live in their own
  // (common) variable count; variable powers are cached.
  MultiPoly substitute(const std::vector<MultiPoly>& images) const {
    if (int(images.size()) != n_) throw std::invalid_argument("substitute: arity mismatch");
    int out_n = n_ == 0 ? 0 : images[0].nvars();
    for (const auto& g : images) {
      if (!ctx_.compatible(g.ctx()) || g.nvars() != out_n) {
        throw std::invalid_argument("substitute: incompatible images");
      }
    }
    std::vector<uint16_t> maxe(size_t(n_), 0);
    for (const auto& [m, c] : t_) {
      for (int i = 0; i < n_; ++i) maxe[size_t(i)] = std::max(maxe[size_t(i)], m[i]);
    }
    std::vector<std::vector<MultiPoly>> pw(static_cast<size_t>(n_));
    for (int i = 0; i < n_; ++i) {
      pw[size_t(i)].push_back(constant(ctx_, out_n, ctx_.one()));
      for (uint16_t e = 1; e <= maxe[size_t(i)]; ++e)
        pw[size_t(i)].push_back(pw[size_t(i)].back() * images[size_t(i)]);
    }
    MultiPoly acc(ctx_, out_n);
    for (const auto& [m, c] : t_) {
      MultiPoly v = constant(ctx_, out_n, c);
      for (int i = 0; i < n_; ++i) {
        if (m[i]) v = v * pw[size_t(i)][m[i]];
      }
      acc += v;
    }
    return acc;
  }

  std::string str(const std::string& prefix = "x") const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : t_) {
      std::string cs = ctx_.str(c);
      if (!first) os << " + ";
      first = false;
      bool needs_paren = cs.find('+') != std::string::npos;
      if (m.is_unit()) {
        os << (needs_paren ? "(" + cs + ")" : cs);
      } else {
        if (cs == "1") {
          os << m.str(prefix);
        } else {
          os << (needs_paren ? "(" + cs + ")" : cs) << "*" << m.str(prefix);
        }
      }
    }
    return os.str();
  }

 private:
  void check_compat(const MultiPoly& o) const {
    if (n_ != o.n_ || !ctx_.compatible(o.ctx_)) {
      throw std::invalid_argument("polynomial arithmetic across different rings");
    }
  }

  Ctx ctx_{};
  int n_ = 0;
  TermMap t_;
};

using FqPoly = MultiPoly<FqCtx>;
using QPoly = MultiPoly<QCtx>;

// Coefficientwise embedding into an extension of the coefficient field.
inline FqPoly embed_into(const FqPoly& f, const FieldDescriptor* dst) {
  FqCtx ctx(dst);
  FqPoly r(ctx, f.nvars());
  for (const auto& [m, c] : f.terms()) r.add_term(m, embed(c, dst));
  return r;
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------
//
// Grammar (see docs/polynomial-grammar.md for the EBNF):
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := base ['^' integer]
//   base   := integer | variable | '(' expr ')' | '-' base
//   variable := 'x' index, 1-based, index <= nvars
// No implicit multiplication. Errors carry the character position.

namespace detail {

template <class Ctx>
class Parser {
 public:
  Parser(const std::string& s, int nvars, Ctx ctx) : s_(s), n_(nvars), ctx_(ctx) {}

  MultiPoly<Ctx> run() {
    MultiPoly<Ctx> r = expr();
    skip_ws();
    if (pos_ != s_.size()) throw ParseError("unexpected trailing input", pos_);
    return r;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  MultiPoly<Ctx> expr() {
    MultiPoly<Ctx> acc(ctx_, n_);
    bool neg = false;
    char c = peek();
    if (c == '+' || c == '-') {
      neg = (c == '-');
      ++pos_;
    }
    MultiPoly<Ctx> t = term();
    acc = neg ? -t : t;
    while (true) {
      c = peek();
      if (c == '+' || c == '-') {
        ++pos_;
        MultiPoly<Ctx> nxt = term();
        if (c == '+')
          acc += nxt;
        else
          acc -= nxt;
      } else {
        break;
      }
    }
    return acc;
  }

  MultiPoly<Ctx> term() {
    MultiPoly<Ctx> acc = factor();
    while (peek() == '*') {
      ++pos_;
      acc *= factor();
    }
    return acc;
  }

  MultiPoly<Ctx> factor() {
    MultiPoly<Ctx> b = base();
    if (peek() == '^') {
      ++pos_;
      size_t at = pos_;
      uint64_t e = integer_literal("exponent");
      if (e > 0xFFFF) throw ParseError("exponent exceeds 16 bits", at);
      b = b.pow(unsigned(e));
    }
    return b;
  }

  MultiPoly<Ctx> base() {
    char c = peek();
    size_t at = pos_;
    if (c == '-') {
      ++pos_;
      return -base();
    }
    if (c == '(') {
      ++pos_;
      MultiPoly<Ctx> inner = expr();
      if (peek() != ')') throw ParseError("expected ')'", pos_);
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      uint64_t v = integer_literal("integer literal");
      return MultiPoly<Ctx>::constant(ctx_, n_, ctx_.from_int(int64_t(v)));
    }
    if (c == 'x') {
      ++pos_;
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        throw ParseError("expected variable index after 'x'", pos_);
      }
      uint64_t idx = integer_literal("variable index");
      if (idx < 1 || idx > uint64_t(n_)) {
        throw ParseError("variable index out of range 1.." + std::to_string(n_), at);
      }
      return MultiPoly<Ctx>::variable(ctx_, n_, int(idx - 1));
    }
    if (c == '\0') throw ParseError("unexpected end of input", pos_);
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  uint64_t integer_literal(const std::string& what) {
    skip_ws();
    size_t at = pos_;
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      throw ParseError("expected " + what, pos_);
    }
    uint64_t v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      uint64_t d = uint64_t(s_[pos_] - '0');
      if (v > (uint64_t(INT64_MAX) - d) / 10) throw ParseError(what + " too large", at);
      v = v * 10 + d;
      ++pos_;
    }
    return v;
  }

  const std::string& s_;
  size_t pos_ = 0;
  int n_;
  Ctx ctx_;
};

}  // namespace detail

template <class Ctx>
MultiPoly<Ctx> parse_poly(const std::string& text, int nvars, Ctx ctx) {
  return detail::Parser<Ctx>(text, nvars, ctx).run();
}

// ---------------------------------------------------------------------------
// Coordinate changes
// ---------------------------------------------------------------------------

// f(M x): substitutes x_i -> sum_j M[i][j] x_j. Throws std::invalid_argument
// if M is not square of size nvars or is singular.
template <class Ctx>
MultiPoly<Ctx> linear_change(const MultiPoly<Ctx>& f,
                             const std::vector<std::vector<typename Ctx::Elem>>& M) {
  int n = f.nvars();
  if (int(M.size()) != n) throw std::invalid_argument("linear_change: matrix size mismatch");
  for (const auto& row : M) {
    if (int(row.size()) != n) throw std::invalid_argument("linear_change: matrix not square");
  }
  if (n > 0 && f.ctx().is_zero(det(f.ctx(), M))) {
    throw std::invalid_argument("linear_change: singular matrix");
  }
  std::vector<MultiPoly<Ctx>> images;
  images.reserve(size_t(n));
  for (int i = 0; i < n; ++i) {
    MultiPoly<Ctx> li(f.ctx(), n);
    for (int j = 0; j < n; ++j) li.add_term(Monomial::var(n, j), M[size_t(i)][size_t(j)]);
    images.push_back(std::move(li));
  }
  return f.substitute(images);
}

// Affine chart at a projective point plus translation to the origin.
// `point` must be canonically scaled: first nonzero coordinate equals 1, say
// at index j0. Substitutes x_{j0} = 1 and x_i = p_i + u_k for the remaining
// coordinates in order, so the result g(u_1, ..., u_{n-1}) satisfies
// g(0) = F(point). Requires F homogeneous and nonzero arity.
template <class Ctx>
MultiPoly<Ctx> dehomogenize_translate(const MultiPoly<Ctx>& F,
                                      const std::vector<typename Ctx::Elem>& point) {
  int n = F.nvars();
  if (int(point.size()) != n || n < 1) {
    throw std::invalid_argument("dehomogenize_translate: bad point arity");
  }
  if (!F.is_homogeneous()) {
    throw std::invalid_argument("dehomogenize_translate: polynomial not homogeneous");
  }
  const Ctx& ctx = F.ctx();
  int j0 = -1;
  for (int i = 0; i < n; ++i) {
    if (!ctx.is_zero(point[size_t(i)])) {
      j0 = i;
      break;
    }
  }
  if (j0 < 0) throw std::invalid_argument("dehomogenize_translate: zero point");
  if (!ctx.eq(point[size_t(j0)], ctx.one())) {
    throw std::invalid_argument("dehomogenize_translate: point not canonically scaled");
  }
  std::vector<MultiPoly<Ctx>> images;
  images.reserve(size_t(n));
  int k = 0;
  for (int i = 0; i < n; ++i) {
    if (i == j0) {
      images.push_back(MultiPoly<Ctx>::constant(ctx, n - 1, ctx.one()));
    } else {
      MultiPoly<Ctx> g = MultiPoly<Ctx>::variable(ctx, n - 1, k);
      g.add_term(Monomial::unit(n - 1), point[size_t(i)]);
      images.push_back(std::move(g));
      ++k;
    }
  }
  return F.substitute(images);
}

}  // namespace expsum
