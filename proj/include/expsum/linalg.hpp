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

#include <optional>
#include <stdexcept>
#include <vector>

namespace expsum {

// Exact dense linear algebra over a coefficient context (a field: prime or
// extension field elements, or rationals). Pivoting picks the first nonzero
// entry, which keeps every routine deterministic; exact arithmetic needs no
// magnitude-based pivoting.
//
// Ctx contract: types `Elem`; members zero(), one(), from_int(int64_t),
// is_zero(e), add/sub/mul/neg/inv.

// Reduced row echelon form in place. Returns the pivot column of each pivot
// row in order.
template <class Ctx>
std::vector<int> rref(const Ctx& ctx, std::vector<std::vector<typename Ctx::Elem>>& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  size_t rows = m.size(), cols = m[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t pivot = rows;
    for (size_t i = r; i < rows; ++i) {
      if (!ctx.is_zero(m[i][c])) {
        pivot = i;
        break;
      }
    }
    if (pivot == rows) continue;
    std::swap(m[r], m[pivot]);
    auto inv = ctx.inv(m[r][c]);
    for (size_t j = c; j < cols; ++j) m[r][j] = ctx.mul(m[r][j], inv);
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || ctx.is_zero(m[i][c])) continue;
      auto f = m[i][c];
      for (size_t j = c; j < cols; ++j) m[i][j] = ctx.sub(m[i][j], ctx.mul(f, m[r][j]));
    }
    pivots.push_back(int(c));
    ++r;
  }
  return pivots;
}

template <class Ctx>
int rank(const Ctx& ctx, std::vector<std::vector<typename Ctx::Elem>> m) {
  return int(rref(ctx, m).size());
}

template <class Ctx>
typename Ctx::Elem det(const Ctx& ctx, std::vector<std::vector<typename Ctx::Elem>> m) {
  size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw std::invalid_argument("det: matrix not square");
  auto result = ctx.one();
  for (size_t c = 0; c < n; ++c) {
    size_t pivot = n;
    for (size_t i = c; i < n; ++i) {
      if (!ctx.is_zero(m[i][c])) {
        pivot = i;
        break;
      }
    }
    if (pivot == n) return ctx.zero();
    if (pivot != c) {
      std::swap(m[c], m[pivot]);
      result = ctx.neg(result);
    }
    result = ctx.mul(result, m[c][c]);
    auto inv = ctx.inv(m[c][c]);
    for (size_t i = c + 1; i < n; ++i) {
      if (ctx.is_zero(m[i][c])) continue;
      auto f = ctx.mul(m[i][c], inv);
      for (size_t j = c; j < n; ++j) m[i][j] = ctx.sub(m[i][j], ctx.mul(f, m[c][j]));
    }
  }
  return result;
}

// Basis of the right kernel {x : m x = 0}, one vector per free column, in
// ascending free-column order. Deterministic.
template <class Ctx>
std::vector<std::vector<typename Ctx::Elem>> kernel_basis(
    const Ctx& ctx, std::vector<std::vector<typename Ctx::Elem>> m, size_t cols) {
  std::vector<int> pivots = rref(ctx, m);
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivots) is_pivot[size_t(c)] = true;
  std::vector<std::vector<typename Ctx::Elem>> basis;
  for (size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<typename Ctx::Elem> v(cols, ctx.zero());
    v[f] = ctx.one();
    for (size_t r = 0; r < pivots.size(); ++r) {
      // pivot row r has 1 in column pivots[r]; solve for that coordinate
      v[size_t(pivots[r])] = ctx.neg(m[r][f]);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace expsum
