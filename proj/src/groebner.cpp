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

#include "expsum/groebner.hpp"

#include <algorithm>
#include <deque>

namespace expsum {

namespace {

// single-term polynomial c * m
FqPoly term_poly(const FqCtx& ctx, int n, const Monomial& m, const FieldElement& c) {
  FqPoly r(ctx, n);
  r.add_term(m, c);
  return r;
}

bool coprime_leads(const Monomial& a, const Monomial& b) {
  for (int i = 0; i < a.nvars(); ++i) {
    if (a[i] > 0 && b[i] > 0) return false;
  }
  return true;
}

FqPoly make_monic(const FqPoly& f) {
  if (f.is_zero()) return f;
  return f.scaled(f.leading_coeff().inverse());
}

}  // namespace

FqPoly normal_form(const FqPoly& f, const std::vector<FqPoly>& basis) {
  const FqCtx& ctx = f.ctx();
  int n = f.nvars();
  FqPoly h = f;
  FqPoly out(ctx, n);
  while (!h.is_zero()) {
    const Monomial& lm = h.leading_monomial();
    bool reduced = false;
    for (const FqPoly& g : basis) {
      if (g.is_zero()) continue;
      const Monomial& gl = g.leading_monomial();
      if (gl.divides(lm)) {
        FieldElement coef = h.leading_coeff() / g.leading_coeff();
        h -= term_poly(ctx, n, gl.quotient_into(lm), coef) * g;
        reduced = true;
        break;
      }
    }
    if (!reduced) {
      out.add_term(lm, h.leading_coeff());
      h.add_term(lm, -h.leading_coeff());
    }
  }
  return out;
}

std::vector<FqPoly> groebner_basis(std::vector<FqPoly> gens, uint64_t max_steps) {
  // drop zeros, check compatibility
  std::vector<FqPoly> basis;
  for (auto& g : gens) {
    if (!g.is_zero()) basis.push_back(make_monic(g));
  }
  if (basis.empty()) return {};
  const FqCtx ctx = basis[0].ctx();
  int n = basis[0].nvars();
  for (const auto& g : basis) {
    if (g.nvars() != n || !ctx.compatible(g.ctx())) {
      throw std::invalid_argument("generators live in different rings");
    }
  }

  std::deque<std::pair<size_t, size_t>> pairs;
  for (size_t i = 0; i < basis.size(); ++i) {
    for (size_t j = i + 1; j < basis.size(); ++j) pairs.emplace_back(i, j);
  }

  uint64_t steps = 0;
  while (!pairs.empty()) {
    auto [i, j] = pairs.front();
    pairs.pop_front();
    const Monomial& li = basis[i].leading_monomial();
    const Monomial& lj = basis[j].leading_monomial();
    if (coprime_leads(li, lj)) continue;  // product criterion
    if (++steps > max_steps) {
      throw BudgetExceeded("Groebner S-pair reductions", steps, max_steps);
    }
    Monomial l = li.lcm(lj);
    FqPoly spoly = term_poly(ctx, n, li.quotient_into(l), ctx.one()) * basis[i] -
                   term_poly(ctx, n, lj.quotient_into(l), ctx.one()) * basis[j];
    FqPoly r = normal_form(spoly, basis);
    if (r.is_zero()) continue;
    r = make_monic(r);
    size_t idx = basis.size();
    for (size_t t = 0; t < idx; ++t) pairs.emplace_back(t, idx);
    basis.push_back(std::move(r));
  }

  // minimalize: drop members whose lead is divisible by another lead
  std::vector<FqPoly> minimal;
  for (size_t i = 0; i < basis.size(); ++i) {
    bool redundant = false;
    for (size_t j = 0; j < basis.size(); ++j) {
      if (i == j) continue;
      const Monomial& lj = basis[j].leading_monomial();
      const Monomial& li = basis[i].leading_monomial();
      if (lj.divides(li) && !(li == lj && j > i)) {
        redundant = true;
        break;
      }
    }
    if (!redundant) minimal.push_back(basis[i]);
  }

  // fully reduce each member against the others
  std::vector<FqPoly> reduced;
  for (size_t i = 0; i < minimal.size(); ++i) {
    std::vector<FqPoly> others;
    for (size_t j = 0; j < minimal.size(); ++j) {
      if (j != i) others.push_back(minimal[j]);
    }
    FqPoly r = normal_form(minimal[i], others);
    if (!r.is_zero()) reduced.push_back(make_monic(r));
  }

  std::sort(reduced.begin(), reduced.end(), [](const FqPoly& a, const FqPoly& b) {
    return grevlex_less(b.leading_monomial(), a.leading_monomial());
  });
  return reduced;
}

bool is_zero_dimensional(const std::vector<FqPoly>& gb, int nvars) {
  if (nvars == 0) return true;
  if (gb.empty()) return false;
  // unit ideal: basis {1}
  for (const auto& g : gb) {
    if (!g.is_zero() && g.leading_monomial().is_unit()) return true;
  }
  for (int i = 0; i < nvars; ++i) {
    bool pure = false;
    for (const auto& g : gb) {
      const Monomial& lm = g.leading_monomial();
      bool only_i = lm[i] > 0;
      for (int t = 0; only_i && t < nvars; ++t) {
        if (t != i && lm[t] > 0) only_i = false;
      }
      if (only_i) {
        pure = true;
        break;
      }
    }
    if (!pure) return false;
  }
  return true;
}

std::vector<Monomial> standard_monomials(const std::vector<FqPoly>& gb, int nvars,
                                         uint64_t cap) {
  if (!is_zero_dimensional(gb, nvars)) {
    throw std::invalid_argument("standard monomials of a positive-dimensional quotient");
  }
  std::vector<Monomial> leads;
  for (const auto& g : gb) leads.push_back(g.leading_monomial());
  // per-variable exponent bound from the pure-power leads
  std::vector<uint32_t> bound(size_t(nvars), 0);
  for (int i = 0; i < nvars; ++i) {
    uint32_t best = 0;
    bool found = false;
    for (const auto& lm : leads) {
      bool only_i = true;
      for (int t = 0; t < nvars; ++t) {
        if (t != i && lm[t] > 0) only_i = false;
      }
      if (only_i && (lm[i] > 0 || lm.is_unit())) {
        uint32_t e = lm[i];
        if (!found || e < best) best = e, found = true;
      }
    }
    bound[size_t(i)] = best;  // found is guaranteed by the zero-dim check
  }

  std::vector<Monomial> out;
  std::vector<uint16_t> cur(size_t(nvars), 0);
  uint64_t visited = 0;
  while (true) {
    ++visited;
    if (visited > cap) throw BudgetExceeded("standard monomial enumeration", visited, cap);
    Monomial m{std::vector<uint16_t>(cur)};
    bool inside = false;
    for (const auto& lm : leads) {
      if (lm.divides(m)) {
        inside = true;
        break;
      }
    }
    if (!inside) out.push_back(m);
    // odometer over the box [0, bound_i)
    int i = 0;
    for (; i < nvars; ++i) {
      if (bound[size_t(i)] == 0) continue;  // unit ideal: box is empty beyond origin
      if (cur[size_t(i)] + 1u < bound[size_t(i)]) {
        ++cur[size_t(i)];
        break;
      }
      cur[size_t(i)] = 0;
    }
    if (i == nvars) break;
  }
  return out;
}

std::optional<uint64_t> quotient_dimension(const std::vector<FqPoly>& gb, int nvars,
                                           uint64_t cap) {
  if (!is_zero_dimensional(gb, nvars)) return std::nullopt;
  return standard_monomials(gb, nvars, cap).size();
}

}  // namespace expsum
