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

#include "expsum/singular.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "expsum/linalg.hpp"

namespace expsum {

std::vector<FqPoly> jacobian(const FqPoly& f) {
  std::vector<FqPoly> out;
  out.reserve(size_t(f.nvars()));
  for (int i = 0; i < f.nvars(); ++i) out.push_back(f.partial(i));
  return out;
}

std::string ProjectivePointRep::str() const {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < coords.size(); ++i) {
    if (i) os << " : ";
    os << coords[i].str();
  }
  os << ")";
  return os.str();
}

namespace {

std::vector<FqPoly> nonzero_of(const std::vector<FqPoly>& v) {
  std::vector<FqPoly> out;
  for (const auto& f : v) {
    if (!f.is_zero()) out.push_back(f);
  }
  return out;
}

// Scales a rational ray to coprime positive integers; nullopt when any entry
// vanishes, signs are mixed, or entries do not fit comfortably in int64.
std::optional<std::vector<int64_t>> ray_to_positive_ints(const std::vector<BigRat>& ray) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  BigInt L = 1;
  for (const auto& x : ray) {
    if (x == 0) return std::nullopt;
    L = boost::multiprecision::lcm(L, denominator(x));
  }
  std::vector<BigInt> w;
  w.reserve(ray.size());
  for (const auto& x : ray) w.push_back(numerator(x) * (L / denominator(x)));
  BigInt g = 0;
  for (const auto& x : w) g = boost::multiprecision::gcd(g, x);
  if (g == 0) return std::nullopt;
  bool all_pos = true, all_neg = true;
  for (const auto& x : w) {
    if (x > 0) all_neg = false;
    if (x < 0) all_pos = false;
  }
  if (!all_pos && !all_neg) return std::nullopt;
  std::vector<int64_t> out;
  out.reserve(w.size());
  const BigInt kMax = BigInt(1) << 40;
  for (auto& x : w) {
    BigInt t = x / g;
    if (all_neg) t = -t;
    if (t <= 0 || t > kMax) return std::nullopt;
    out.push_back(t.convert_to<int64_t>());
  }
  return out;
}

int64_t dot_weights(const Monomial& m, const std::vector<int64_t>& w) {
  int64_t d = 0;
  for (size_t i = 0; i < w.size(); ++i) d += int64_t(m[int(i)]) * w[i];
  return d;
}

// Exact local Milnor number via the m-adic plateau: dim K[u]/(J + m^N) is
// nondecreasing in N, bounded by the local Milnor number, and a single
// repeat certifies stabilization by Nakayama (the two ideals then coincide,
// so m^N lies in the local Jacobian ideal). Degree-N monomials cut away all
// components of the critical scheme other than the origin, so the quotient
// is exactly the local algebra.
std::optional<uint64_t> plateau_milnor(const std::vector<FqPoly>& J, int v,
                                       const SearchOptions& opt, std::string* note) {
  const FqCtx ctx = J.at(0).ctx();
  uint64_t prev = 0;
  bool have_prev = false;
  for (int N = 2; N <= opt.plateau_cap; ++N) {
    std::vector<FqPoly> gens = J;
    std::vector<uint16_t> cur(size_t(v), 0);
    // enumerate all degree-N monomials with a composition odometer
    cur[0] = uint16_t(N);
    while (true) {
      FqPoly mono(ctx, v);
      mono.add_term(Monomial{std::vector<uint16_t>(cur)}, ctx.one());
      gens.push_back(std::move(mono));
      // next composition of N in v parts (colex walk)
      int i = 0;
      while (i < v - 1 && cur[size_t(i)] == 0) ++i;
      if (i >= v - 1) break;
      uint16_t head = cur[size_t(i)];
      cur[size_t(i)] = 0;
      cur[0] = uint16_t(head - 1);
      ++cur[size_t(i) + 1];
    }
    auto gb = groebner_basis(gens, opt.groebner_steps);
    auto dim = quotient_dimension(gb, v, opt.quotient_cap);
    if (!dim) {
      *note = "m-adic quotient unexpectedly infinite";
      return std::nullopt;
    }
    if (have_prev && *dim == prev) return prev;
    prev = *dim;
    have_prev = true;
  }
  *note = "no m-adic plateau within exponent cap " + std::to_string(opt.plateau_cap);
  return std::nullopt;
}

}  // namespace

std::optional<WeightSystem> detect_weights(const FqPoly& poly) {
  int v = poly.nvars();
  if (v == 0 || poly.is_zero()) return std::nullopt;
  std::vector<Monomial> support;
  for (const auto& [m, c] : poly.terms()) support.push_back(m);

  QCtx q;
  std::vector<std::vector<BigRat>> rows;
  for (size_t t = 1; t < support.size(); ++t) {
    std::vector<BigRat> row;
    row.reserve(size_t(v));
    for (int i = 0; i < v; ++i) {
      row.push_back(BigRat(int64_t(support[t][i]) - int64_t(support[0][i])));
    }
    rows.push_back(std::move(row));
  }
  std::vector<std::vector<BigRat>> ker = kernel_basis(q, rows, v);
  if (ker.empty()) return std::nullopt;

  if (ker.size() == 1) {
    auto w = ray_to_positive_ints(ker[0]);
    if (!w) return std::nullopt;
    WeightSystem ws;
    ws.weights = *w;
    ws.delta = dot_weights(support[0], ws.weights);
    if (ws.delta <= 0) return std::nullopt;
    return ws;
  }

  // Degenerate support: the admissible weights form a cone of dimension two
  // or more. Bounded search, minimizing delta with lexicographic tie-break.
  const int64_t B = 24;
  std::optional<WeightSystem> best;
  std::vector<int64_t> w(size_t(v), 1);
  while (true) {
    int64_t g = 0;
    for (int64_t x : w) g = gcd64(g, x);
    if (g == 1) {
      bool ok = true;
      int64_t delta = dot_weights(support[0], w);
      for (size_t t = 1; t < support.size() && ok; ++t) {
        if (dot_weights(support[t], w) != delta) ok = false;
      }
      if (ok && delta > 0 && (!best || delta < best->delta)) {
        best = WeightSystem{w, delta};
      }
    }
    // lexicographic odometer, last coordinate fastest
    int i = v - 1;
    while (i >= 0 && w[size_t(i)] == B) {
      w[size_t(i)] = 1;
      --i;
    }
    if (i < 0) break;
    ++w[size_t(i)];
  }
  return best;
}

std::optional<BigInt> milnor_orlik(const WeightSystem& ws) {
  BigRat prod = 1;
  for (int64_t w : ws.weights) {
    if (w <= 0) return std::nullopt;
    prod *= BigRat(ws.delta - w, w);
  }
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (denominator(prod) != 1 || prod < 0) return std::nullopt;
  return BigInt(numerator(prod));
}

GermAnalysis analyze_germ(const FqPoly& germ, const SearchOptions& opt) {
  GermAnalysis out;
  int v = germ.nvars();
  if (v == 0) {
    out.note = "zero-variable germ";
    return out;
  }
  if (germ.is_zero()) {
    out.status = GermStatus::kNotIsolated;
    out.note = "zero germ";
    return out;
  }
  std::vector<FqPoly> J = nonzero_of(jacobian(germ));
  if (J.empty()) {
    out.status = GermStatus::kNotIsolated;
    out.note = "all partial derivatives vanish identically";
    return out;
  }
  int64_t p = germ.ctx().F->p;

  try {
    if (v == 1) {
      // exact order of the derivative at the origin
      const FqPoly& g1 = germ.partial(0);
      uint64_t ord = std::numeric_limits<uint64_t>::max();
      for (const auto& [m, c] : g1.terms()) ord = std::min<uint64_t>(ord, m[0]);
      out.status = GermStatus::kIsolated;
      out.milnor = ord;
      out.method = "univariate-order";
      auto ws = detect_weights(germ);
      if (ws) {
        out.weighted_homogeneous = true;
        out.ws = *ws;
      } else {
        int low = 0;
        for (const auto& [m, c] : germ.terms()) low = low == 0 ? m.total_degree() : std::min(low, m.total_degree());
        if (low % p == 0) {
          out.note = "lowest-degree model is degenerate in this characteristic";
        } else if (uint64_t(low - 1) == out.milnor) {
          out.weighted_homogeneous = true;
          out.via_tangent_cone = true;
          out.ws = WeightSystem{{1}, int64_t(low)};
        } else {
          out.note = "lowest-degree model has a different Milnor number";
        }
      }
    } else {
      auto ws = detect_weights(germ);
      if (ws) {
        // weighted homogeneous with positive weights: the critical scheme is
        // stable under the weight action, so zero-dimensional forces it into
        // the origin and the global quotient equals the local one
        auto gb = groebner_basis(J, opt.groebner_steps);
        if (is_zero_dimensional(gb, v)) {
          auto dim = quotient_dimension(gb, v, opt.quotient_cap);
          if (!dim) {
            out.note = "Milnor number exceeds the quotient dimension cap";
            return out;  // kUndetermined
          }
          out.status = GermStatus::kIsolated;
          out.milnor = *dim;
          out.weighted_homogeneous = true;
          out.ws = *ws;
          out.method = "graded-jacobian";
        } else {
          out.status = GermStatus::kNotIsolated;
          out.note = "weighted homogeneous with positive-dimensional critical scheme";
        }
      } else {
        std::string note;
        auto mu = plateau_milnor(J, v, opt, &note);
        if (!mu) {
          out.note = note;
          return out;  // kUndetermined
        }
        out.status = GermStatus::kIsolated;
        out.milnor = *mu;
        out.method = "local-plateau";
        // adopt the lowest-degree form as the model only when its Milnor
        // number is provably the same; a budget failure here leaves the
        // certified local value intact
        int low = germ.degree();
        for (const auto& [m, c] : germ.terms()) low = std::min(low, m.total_degree());
        FqPoly hlow = germ.homogeneous_component(low);
        auto wsl = detect_weights(hlow);
        std::vector<FqPoly> Jl = nonzero_of(jacobian(hlow));
        if (wsl && !Jl.empty()) {
          try {
            auto gbl = groebner_basis(Jl, opt.groebner_steps);
            if (is_zero_dimensional(gbl, v)) {
              auto diml = quotient_dimension(gbl, v, opt.quotient_cap);
              if (diml && *diml == *mu) {
                out.weighted_homogeneous = true;
                out.via_tangent_cone = true;
                out.ws = *wsl;
              } else {
                out.note = "lowest-degree model has a different Milnor number";
              }
            } else {
              out.note = "lowest-degree model is not an isolated singularity";
            }
          } catch (const BudgetExceeded&) {
            out.note = "budget exceeded while certifying the lowest-degree model";
          }
        } else {
          out.note = "lowest-degree model is degenerate in this characteristic";
        }
      }
    }
  } catch (const BudgetExceeded& e) {
    out.status = GermStatus::kUndetermined;
    out.weighted_homogeneous = false;
    out.note = std::string("budget exceeded during germ analysis: ") + e.what();
    return out;
  }

  if (out.weighted_homogeneous) {
    out.orlik = milnor_orlik(out.ws);
    if (out.orlik && out.status == GermStatus::kIsolated &&
        *out.orlik != BigInt(out.milnor)) {
      out.note = "weight product formula disagrees with the Jacobian dimension";
    }
  }
  return out;
}

SingularAnalysis analyze_singularities(const FqPoly& F, const SearchOptions& opt) {
  if (F.ctx().F == nullptr) throw std::invalid_argument("form without a coefficient field");
  if (F.nvars() < 1) throw std::invalid_argument("form needs at least one variable");
  if (F.is_zero()) throw std::invalid_argument("zero form");
  if (!F.is_homogeneous()) throw std::invalid_argument("form must be homogeneous");

  const FieldDescriptor* k = F.ctx().F;
  const FqCtx ctx = F.ctx();
  int n = F.nvars();
  SingularAnalysis out;

  // The singular locus of V(F): common zeros of F and its partials. Listing
  // F keeps the definition right in characteristics dividing the degree,
  // where the Euler relation no longer recovers F from the partials.
  std::vector<FqPoly> parts = jacobian(F);
  parts.push_back(F);

  // cells: canonical representatives with first nonzero coordinate at j0
  struct Cell {
    int j0 = 0;
    int v = 0;
    std::vector<FqPoly> gens;  // over k, in v variables
    uint64_t dim = 0;          // quotient dimension, bounds residue degrees
  };
  std::vector<Cell> cells;
  std::ostringstream note;
  bool finite = true;
  for (int j0 = 0; j0 < n; ++j0) {
    Cell c;
    c.j0 = j0;
    c.v = n - 1 - j0;
    std::vector<FqPoly> images;
    images.reserve(size_t(n));
    for (int i = 0; i < n; ++i) {
      if (i < j0) {
        images.push_back(FqPoly::zero(ctx, c.v));
      } else if (i == j0) {
        images.push_back(FqPoly::constant(ctx, c.v, ctx.one()));
      } else {
        images.push_back(FqPoly::variable(ctx, c.v, i - j0 - 1));
      }
    }
    for (const auto& g : parts) c.gens.push_back(g.substitute(images));
    c.gens = nonzero_of(c.gens);
    try {
      auto gb = groebner_basis(c.gens, opt.groebner_steps);
      if (!is_zero_dimensional(gb, c.v)) {
        finite = false;
        note << "cell " << j0 << " has a positive-dimensional singular locus; ";
        continue;
      }
      auto dim = quotient_dimension(gb, c.v, opt.quotient_cap);
      if (!dim) {
        // zero-dimensionality is certified, but without the count there is
        // no residue degree bound to drive the point search
        out.note = "cell " + std::to_string(j0) +
                   " exceeded the quotient dimension cap; point search skipped";
        out.finite = finite;
        out.infinite_certified = !finite;
        out.complete = false;
        return out;
      }
      c.dim = *dim;
    } catch (const BudgetExceeded& e) {
      out.note = std::string("cell analysis budget exceeded: ") + e.what() +
                 "; finiteness not certified";
      out.finite = false;
      out.complete = false;
      return out;
    }
    out.e_bound = std::max<int>(out.e_bound, int(c.dim));
    cells.push_back(std::move(c));
  }
  out.finite = finite;
  if (!finite) {
    out.infinite_certified = true;
    out.note = note.str();
    return out;
  }

  // exhaustive scan of every cell up to its own residue degree bound
  bool complete = true;
  uint64_t used = 0;
  for (const Cell& c : cells) {
    // every closed point of residue degree r contributes at least r to the
    // cell's quotient dimension, so once the degrees found so far leave less
    // than e of that dimension unaccounted for, no point of degree e remains
    uint64_t found_deg = 0;
    for (int e = 1; uint64_t(e) + found_deg <= c.dim; ++e) {
      auto block = checked_pow(k->q, unsigned(e * c.v));
      if (!block || used + *block > opt.scan_budget) {
        complete = false;
        note << "scan budget exhausted at cell " << c.j0 << " extension " << e << "; ";
        break;
      }
      auto order = checked_pow(uint64_t(k->p), unsigned(k->s * e), kMaxFieldOrder);
      if (!order) {
        complete = false;
        note << "extension " << e << " of cell " << c.j0 << " exceeds the field cap; ";
        break;
      }
      used += *block;
      const FieldDescriptor* E = field(k->p, k->s * e);
      std::vector<FqPoly> gensE;
      gensE.reserve(c.gens.size());
      for (const auto& g : c.gens) gensE.push_back(embed_into(g, E));

      std::vector<std::vector<FieldElement>> found;  // cell coordinates
      uint64_t total = *block;
      std::vector<FieldElement> pt(size_t(c.v), FieldElement::zero(E));
      for (uint64_t idx = 0; idx < total; ++idx) {
        uint64_t rem = idx;
        for (int i = 0; i < c.v; ++i) {
          pt[size_t(i)] = FieldElement::from_index(E, rem % E->q);
          rem /= E->q;
        }
        bool all_zero = true;
        for (const auto& g : gensE) {
          if (!g.evaluate(pt).is_zero()) {
            all_zero = false;
            break;
          }
        }
        if (all_zero) found.push_back(pt);
      }

      // group into Frobenius orbits relative to the coefficient field; keep
      // exactly the orbits of residue degree e
      std::set<std::vector<uint64_t>> seen;
      for (const auto& cand : found) {
        std::vector<uint64_t> key;
        key.reserve(cand.size());
        for (const auto& x : cand) key.push_back(x.index());
        if (seen.count(key)) continue;
        // walk the orbit
        std::vector<FieldElement> cur = cand;
        int period = 0;
        while (true) {
          std::vector<uint64_t> ck;
          ck.reserve(cur.size());
          for (const auto& x : cur) ck.push_back(x.index());
          seen.insert(ck);
          ++period;
          std::vector<FieldElement> nxt;
          nxt.reserve(cur.size());
          for (const auto& x : cur) nxt.push_back(frobenius_iter(x, k->s));
          if (nxt == cand) break;
          cur = std::move(nxt);
          if (period > e) throw std::logic_error("Frobenius orbit longer than the field degree");
        }
        if (period != e) continue;  // defined over a smaller field, found earlier

        SingularPointInfo info;
        info.rep.E = E;
        info.rep.degree = e;
        info.rep.coords.assign(size_t(n), FieldElement::zero(E));
        info.rep.coords[size_t(c.j0)] = FieldElement::one(E);
        for (int i = 0; i < c.v; ++i) {
          info.rep.coords[size_t(c.j0 + 1 + i)] = cand[size_t(i)];
        }
        FqPoly FE = embed_into(F, E);
        FqPoly germ = dehomogenize_translate(FE, info.rep.coords);
        info.germ = analyze_germ(germ, opt);
        out.points.push_back(std::move(info));
        found_deg += uint64_t(e);
      }
    }
  }
  out.complete = complete;

  out.all_isolated_wh = true;
  for (const auto& pt : out.points) {
    if (pt.germ.status == GermStatus::kIsolated) {
      out.total_milnor += BigInt(pt.germ.milnor) * pt.rep.degree;
    }
    if (pt.germ.status != GermStatus::kIsolated || !pt.germ.weighted_homogeneous) {
      out.all_isolated_wh = false;
    }
  }
  if (!complete) out.all_isolated_wh = false;
  out.note = note.str();
  return out;
}

}  // namespace expsum
