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

#include "expsum/verifier.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "expsum/groebner.hpp"

namespace expsum {

const char* to_string(HypoState s) {
  switch (s) {
    case HypoState::kHolds: return "holds";
    case HypoState::kFails: return "fails";
    case HypoState::kUnknown: return "unknown";
  }
  return "?";
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kApplies: return "applies";
    case Verdict::kFailsHypotheses: return "fails-hypotheses";
    case Verdict::kNotCertified: return "not-certified";
    case Verdict::kNotApplicable: return "not-applicable";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Euler characteristic arithmetic
// ---------------------------------------------------------------------------

BigInt euler_smooth_fiber(int d, int n) {
  if (d < 1 || n < 0) throw std::invalid_argument("euler_smooth_fiber: bad shape");
  using boost::multiprecision::pow;
  BigInt num = pow(BigInt(1 - d), unsigned(n + 1)) - 1;
  // (1-d)^(n+1) is 1 mod d, so the division is exact
  return num / d + n + 1;
}

BigInt euler_singular_top_form(int d, int n, const BigInt& total_milnor) {
  if (n < 1) throw std::invalid_argument("euler_singular_top_form: bad shape");
  BigInt smooth = euler_smooth_fiber(d, n - 1);
  BigInt parity = (n % 2 == 0) ? 1 : -1;
  return smooth + parity * kVanishingCycleSign * total_milnor;
}

BigInt predicted_dimension(int d, int n, const BigInt& total_milnor) {
  if (d < 2 || n < 1) throw std::invalid_argument("predicted_dimension: bad shape");
  using boost::multiprecision::pow;
  BigInt dim = pow(BigInt(d - 1), unsigned(n)) - total_milnor;
  if (dim < 0)
    throw std::invalid_argument(
        "predicted_dimension: Milnor numbers exceed (d-1)^n");
  return dim;
}

BigInt dimension_via_chi(int d, int n, const BigInt& total_milnor) {
  BigInt chi_fiber = euler_smooth_fiber(d, n);
  BigInt chi_form = euler_singular_top_form(d, n, total_milnor);
  BigInt chi_affine = chi_fiber - chi_form;
  BigInt dim = (n % 2 == 0) ? BigInt(1) - chi_affine : chi_affine - 1;
  if (dim != predicted_dimension(d, n, total_milnor))
    throw std::logic_error("dimension_via_chi: Euler chain broke the identity");
  return dim;
}

// ---------------------------------------------------------------------------
// diagnostics
// ---------------------------------------------------------------------------

uint64_t projective_zero_count(const FqPoly& F, int m, uint64_t budget) {
  const FieldDescriptor* k = F.ctx().F;
  if (k == nullptr) throw std::invalid_argument("projective_zero_count: detached polynomial");
  if (F.is_zero() || !F.is_homogeneous())
    throw std::invalid_argument("projective_zero_count: need a nonzero form");
  if (m < 1) throw std::invalid_argument("projective_zero_count: m must be positive");
  int n = F.nvars();
  const FieldDescriptor* E = field(k->p, k->s * m);
  FqPoly FE = embed_into(F, E);
  FqCtx ctxE(E);

  uint64_t total_points = 0;
  for (int j0 = 0; j0 < n; ++j0) {
    auto block = checked_pow(E->q, unsigned(n - 1 - j0), budget);
    if (!block || total_points > budget - *block)
      throw BudgetExceeded("projective point scan", budget + 1, budget);
    total_points += *block;
  }

  uint64_t zeros = 0;
  std::vector<FieldElement> coords(size_t(n), FieldElement::zero(E));
  for (int j0 = 0; j0 < n; ++j0) {
    int v = n - 1 - j0;
    uint64_t block = *checked_pow(E->q, unsigned(v));
    for (int i = 0; i < j0; ++i) coords[size_t(i)] = FieldElement::zero(E);
    coords[size_t(j0)] = FieldElement::one(E);
    for (uint64_t idx = 0; idx < block; ++idx) {
      uint64_t rem = idx;
      for (int t = 0; t < v; ++t) {
        coords[size_t(j0 + 1 + t)] = FieldElement::from_index(E, rem % E->q);
        rem /= E->q;
      }
      if (FE.evaluate(coords).is_zero()) ++zeros;
    }
  }
  return zeros;
}

CriticalLocusReport critical_locus_finite(const FqPoly& f, const SearchOptions& opt) {
  CriticalLocusReport out;
  if (f.ctx().F == nullptr || f.nvars() < 1)
    throw std::invalid_argument("critical_locus_finite: detached or zero-variable input");
  std::vector<FqPoly> gens;
  for (const auto& g : jacobian(f))
    if (!g.is_zero()) gens.push_back(g);
  if (gens.empty()) {
    out.finite = false;
    out.note = "every partial derivative vanishes identically, so the critical "
               "locus is all of affine space";
    return out;
  }
  try {
    auto gb = groebner_basis(gens, opt.groebner_steps);
    if (!is_zero_dimensional(gb, f.nvars())) {
      out.finite = false;
      out.note = "the Jacobian ideal has positive dimension";
      return out;
    }
    out.finite = true;
    auto dim = quotient_dimension(gb, f.nvars(), opt.quotient_cap);
    if (dim) {
      out.dimension_bound = *dim;
    } else {
      out.note = "finite, but the point count bound exceeded the quotient cap";
    }
  } catch (const BudgetExceeded& e) {
    out.note = std::string("budget exceeded: ") + e.what();
  }
  return out;
}

std::optional<TransversalReport> transversal_hyperplane(const FqPoly& top_form,
                                                        int e_max,
                                                        const SearchOptions& opt) {
  const FieldDescriptor* k = top_form.ctx().F;
  if (k == nullptr || top_form.is_zero() || !top_form.is_homogeneous())
    throw std::invalid_argument("transversal_hyperplane: need a nonzero form");
  int n = top_form.nvars();
  if (n < 2) return std::nullopt;

  for (int e = 1; e <= e_max; ++e) {
    const FieldDescriptor* E = nullptr;
    try {
      E = field(k->p, k->s * e);
    } catch (const std::invalid_argument&) {
      break;  // extension too large to build
    }
    FqPoly FE = embed_into(top_form, E);
    FqCtx ctxE(E);
    std::vector<FieldElement> a(size_t(n), FieldElement::zero(E));
    for (int j0 = 0; j0 < n; ++j0) {
      int v = n - 1 - j0;
      auto block = checked_pow(E->q, unsigned(v), opt.scan_budget);
      if (!block) return std::nullopt;  // out of budget before exhausting the search
      for (int i = 0; i < j0; ++i) a[size_t(i)] = FieldElement::zero(E);
      a[size_t(j0)] = FieldElement::one(E);
      for (uint64_t idx = 0; idx < *block; ++idx) {
        uint64_t rem = idx;
        for (int t = 0; t < v; ++t) {
          a[size_t(j0 + 1 + t)] = FieldElement::from_index(E, rem % E->q);
          rem /= E->q;
        }
        // substitute the hyperplane: the pivot coordinate is minus the
        // a-weighted sum of the others, which keeps the section linear in
        // the remaining n-1 coordinates
        std::vector<FqPoly> images;
        images.reserve(size_t(n));
        FqPoly pivot = FqPoly::zero(ctxE, n - 1);
        {
          int kvar = 0;
          for (int i = 0; i < n; ++i) {
            if (i == j0) continue;
            if (!a[size_t(i)].is_zero()) {
              FqPoly term = FqPoly::zero(ctxE, n - 1);
              term.add_term(Monomial::var(n - 1, kvar), -a[size_t(i)]);
              pivot = pivot + term;
            }
            ++kvar;
          }
        }
        {
          int kvar = 0;
          for (int i = 0; i < n; ++i) {
            if (i == j0) {
              images.push_back(pivot);
            } else {
              images.push_back(FqPoly::variable(ctxE, n - 1, kvar));
              ++kvar;
            }
          }
        }
        FqPoly g = FE.substitute(images);
        if (g.is_zero()) continue;  // the hyperplane sits inside the hypersurface
        bool smooth = false;
        try {
          auto res = analyze_singularities(g, opt);
          smooth = res.finite && res.complete && res.points.empty();
        } catch (const BudgetExceeded&) {
          continue;
        }
        if (!smooth) continue;

        TransversalReport rep;
        rep.e = e;
        rep.hyperplane = a;
        rep.change.assign(size_t(n),
                          std::vector<FieldElement>(size_t(n), FieldElement::zero(E)));
        // columns: for each non-pivot index i, the unit vector there minus
        // a_i times the pivot unit vector; the last column is the pivot unit
        // vector. The hyperplane form composed with this matrix is exactly
        // the last new coordinate.
        {
          int col = 0;
          for (int i = 0; i < n; ++i) {
            if (i == j0) continue;
            rep.change[size_t(i)][size_t(col)] = FieldElement::one(E);
            rep.change[size_t(j0)][size_t(col)] = -a[size_t(i)];
            ++col;
          }
          rep.change[size_t(j0)][size_t(n - 1)] = FieldElement::one(E);
        }
        return rep;
      }
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// eigenvalue recovery
// ---------------------------------------------------------------------------

EigenvalueRecovery recover_eigenvalues(const std::vector<CycInt>& sums, uint64_t D,
                                       uint64_t q, int n, double rtol) {
  if (sums.empty()) throw std::invalid_argument("recover_eigenvalues: no sums");
  int64_t p = sums[0].prime();
  EigenvalueRecovery rec;
  rec.dim = D;
  rec.m_used = int(sums.size());

  // P_m = (-1)^n S_m are the power sums of the eigenvalues
  std::vector<CycInt> P;
  P.reserve(sums.size() + 1);
  P.push_back(CycInt(p));  // unused slot so P[m] means extension degree m
  for (const CycInt& s : sums) P.push_back(n % 2 == 0 ? s : -s);
  rec.power_sums.assign(P.begin() + 1, P.end());

  uint64_t M = sums.size();
  if (D == 0) {
    rec.newton_ok = true;
    rec.recurrence_ok = true;
    for (uint64_t m = 1; m <= M; ++m) {
      if (!P[size_t(m)].is_zero()) {
        rec.recurrence_ok = false;
        rec.failure = "dimension 0 requires every sum to vanish, but S_" +
                      std::to_string(m) + " is " + sums[size_t(m - 1)].str();
        break;
      }
    }
    rec.purity_ok = rec.recurrence_ok;
    return rec;
  }
  if (M < D + 1)
    throw std::invalid_argument(
        "recover_eigenvalues: need at least D+1 extension sums");

  // Newton identities: k e_k = sum_{i=1..k} (-1)^(i-1) e_{k-i} P_i, solved
  // for e_k by exact division in the cyclotomic ring. The eigenvalues are
  // algebraic integers, so a non-exact division falsifies the dimension.
  std::vector<CycInt> e;
  e.reserve(size_t(D) + 1);
  e.push_back(CycInt::from_int(p, 1));
  for (uint64_t k = 1; k <= D; ++k) {
    CycInt rhs(p);
    for (uint64_t i = 1; i <= k; ++i) {
      CycInt term = e[size_t(k - i)] * P[size_t(i)];
      if (i % 2 == 1) rhs += term; else rhs -= term;
    }
    try {
      e.push_back(divide_exact(rhs, BigInt(k)));
    } catch (const std::domain_error&) {
      rec.failure = "Newton identity at k = " + std::to_string(k) +
                    ": k*e_k is not divisible by k in the cyclotomic ring";
      rec.elementary.assign(e.begin() + 1, e.end());
      return rec;
    }
  }
  rec.newton_ok = true;
  rec.elementary.assign(e.begin() + 1, e.end());

  // surplus sums must satisfy the degree-D linear recurrence exactly
  rec.recurrence_ok = true;
  for (uint64_t m = D + 1; m <= M; ++m) {
    CycInt pred(p);
    for (uint64_t k = 1; k <= D; ++k) {
      CycInt term = e[size_t(k)] * P[size_t(m - k)];
      if (k % 2 == 1) pred += term; else pred -= term;
    }
    if (pred != P[size_t(m)]) {
      rec.recurrence_ok = false;
      rec.failure = "the degree-" + std::to_string(D) +
                    " recurrence fails at extension degree " + std::to_string(m);
      return rec;
    }
  }

  // roots of T^D - e_1 T^(D-1) + ... + (-1)^D e_D, one embedding per b
  double target = std::pow(double(q), 0.5 * n);
  rec.max_rel_err = 0.0;
  rec.purity_ok = true;
  for (int64_t b = 1; b < p; ++b) {
    Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(Eigen::Index(D), Eigen::Index(D));
    for (uint64_t i = 1; i < D; ++i) C(Eigen::Index(i), Eigen::Index(i - 1)) = 1.0;
    for (uint64_t i = 0; i < D; ++i) {
      // coefficient of T^i is (-1)^(D-i) e_{D-i}
      std::complex<double> coeff = to_complex(e[size_t(D - i)], b);
      if ((D - i) % 2 == 1) coeff = -coeff;
      C(Eigen::Index(i), Eigen::Index(D - 1)) = -coeff;
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(C, false);
    std::vector<double> mods;
    mods.reserve(size_t(D));
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i)
      mods.push_back(std::abs(solver.eigenvalues()[i]));
    std::sort(mods.begin(), mods.end());
    for (double mod : mods) {
      double rel = std::abs(mod - target) / target;
      rec.max_rel_err = std::max(rec.max_rel_err, rel);
      if (rel > rtol) rec.purity_ok = false;
    }
    rec.moduli.push_back(std::move(mods));
  }
  if (!rec.purity_ok && rec.failure.empty())
    rec.failure = "a root modulus deviates from q^(n/2) by relative error " +
                  std::to_string(rec.max_rel_err);
  return rec;
}

// ---------------------------------------------------------------------------
// the full pipeline
// ---------------------------------------------------------------------------

namespace {

// evaluates the degree d-1 part at every certified singular point; nullopt
// when no certificate is possible yet
void judge_subform(const FqPoly& sub, const SingularAnalysis& sing,
                   HypoState* h2, std::string* note) {
  bool sub_zero = sub.is_zero();
  // a found violation certifies failure even when the search is incomplete
  for (const SingularPointInfo& pt : sing.points) {
    if (sub_zero) break;
    FqPoly subE = embed_into(sub, pt.rep.E);
    if (subE.evaluate(pt.rep.coords).is_zero()) {
      *h2 = HypoState::kFails;
      *note = "the degree d-1 part vanishes at the singular point " + pt.rep.str();
      return;
    }
  }
  if (sub_zero && !sing.points.empty()) {
    *h2 = HypoState::kFails;
    *note = "the degree d-1 part is identically zero, so every singular point "
            "lies on its zero locus";
    return;
  }
  if (!sing.finite || !sing.complete) {
    *h2 = HypoState::kUnknown;
    *note = "the singular point list is not certified complete";
    return;
  }
  *h2 = HypoState::kHolds;
  *note = sing.points.empty() ? "no singular points" :
          "the degree d-1 part is nonzero at every singular point";
}

}  // namespace

VerificationReport verify(const FqPoly& f, const VerifyOptions& opt) {
  const FieldDescriptor* k = f.ctx().F;
  if (k == nullptr) throw std::invalid_argument("verify: detached polynomial");
  if (f.nvars() < 1) throw std::invalid_argument("verify: need at least one variable");
  if (opt.character < 1 || opt.character >= k->p)
    throw std::invalid_argument("verify: character index must lie in [1, p-1]");

  VerificationReport rep;
  rep.p = k->p;
  rep.s = k->s;
  rep.q = k->q;
  rep.n = f.nvars();
  rep.character = opt.character;
  rep.sum_budget = opt.sum_budget;
  rep.scan_budget = opt.search.scan_budget;
  rep.f_text = f.str();

  int d = f.degree();
  if (f.is_zero() || d < 2) {
    rep.d = f.is_zero() ? 0 : d;
    rep.verdict = Verdict::kNotApplicable;
    rep.verdict_note = f.is_zero()
        ? "the zero polynomial has no top form"
        : "total degree below 2; the statement needs d >= 2";
    return rep;
  }
  rep.d = d;

  FqPoly top = f.homogeneous_component(d);
  FqPoly sub = f.homogeneous_component(d - 1);
  rep.top_form_text = top.str();
  rep.sub_form_text = sub.str();

  // hypothesis (i): isolated weighted homogeneous singularities
  rep.sing = analyze_singularities(top, opt.search);
  bool all_isolated = rep.sing.finite && rep.sing.complete;
  bool any_not_isolated = false;
  bool any_undetermined = false;
  bool all_wh = true;
  for (const SingularPointInfo& pt : rep.sing.points) {
    if (pt.germ.status == GermStatus::kNotIsolated) any_not_isolated = true;
    if (pt.germ.status == GermStatus::kUndetermined) any_undetermined = true;
    if (pt.germ.status != GermStatus::kIsolated) all_isolated = false;
    if (!pt.germ.weighted_homogeneous) all_wh = false;
  }
  if (rep.sing.infinite_certified || any_not_isolated) {
    rep.h1 = HypoState::kFails;
    rep.h1_note = rep.sing.infinite_certified
        ? "the top form has a positive-dimensional singular locus"
        : "a singular point of the top form is not isolated";
  } else if (!rep.sing.finite || !rep.sing.complete || any_undetermined) {
    rep.h1 = HypoState::kUnknown;
    rep.h1_note = rep.sing.note.empty()
        ? "the singular locus analysis did not finish within budget"
        : rep.sing.note;
  } else if (!all_wh) {
    rep.h1 = HypoState::kUnknown;
    rep.h1_note = "an isolated singular point has no certified weighted "
                  "homogeneous model";
  } else {
    rep.h1 = HypoState::kHolds;
    rep.h1_note = rep.sing.points.empty()
        ? "the top form is smooth"
        : "every singular point is isolated and weighted homogeneous";
  }

  // hypothesis (ii): no singular point on the degree d-1 hypersurface
  judge_subform(sub, rep.sing, &rep.h2, &rep.h2_note);

  // hypothesis (iii): p coprime to d, d-1 and every local weighted degree
  rep.h3_factors.push_back(BigInt(d));
  rep.h3_factors.push_back(BigInt(d - 1));
  bool deltas_complete = rep.sing.finite && rep.sing.complete;
  for (const SingularPointInfo& pt : rep.sing.points) {
    if (pt.germ.weighted_homogeneous) {
      rep.h3_factors.push_back(BigInt(pt.germ.ws.delta));
    } else {
      deltas_complete = false;
    }
  }
  rep.h3 = HypoState::kHolds;
  for (const BigInt& fac : rep.h3_factors) {
    if (fac % k->p == 0) {
      rep.h3 = HypoState::kFails;
      rep.h3_note = "the characteristic divides " + fac.str();
      break;
    }
  }
  if (rep.h3 == HypoState::kHolds && !deltas_complete) {
    rep.h3 = HypoState::kUnknown;
    rep.h3_note = "some local weighted degrees are not certified";
  }
  if (rep.h3 == HypoState::kHolds)
    rep.h3_note = "the characteristic divides none of the listed factors";

  if (rep.h1 == HypoState::kFails || rep.h2 == HypoState::kFails ||
      rep.h3 == HypoState::kFails) {
    rep.verdict = Verdict::kFailsHypotheses;
    rep.verdict_note = "at least one hypothesis certifiably fails";
  } else if (rep.h1 == HypoState::kHolds && rep.h2 == HypoState::kHolds &&
             rep.h3 == HypoState::kHolds) {
    rep.verdict = Verdict::kApplies;
    rep.verdict_note = "all hypotheses certified";
  } else {
    rep.verdict = Verdict::kNotCertified;
    rep.verdict_note = "no failure found, but certification is incomplete";
  }

  // dimension and Euler characteristic chain: valid once the Milnor data is
  // certified, whether or not the weighted homogeneous models exist
  bool mu_certified = rep.sing.finite && rep.sing.complete;
  for (const SingularPointInfo& pt : rep.sing.points)
    if (pt.germ.status != GermStatus::kIsolated) mu_certified = false;
  if (mu_certified) {
    rep.dimension = predicted_dimension(d, rep.n, rep.sing.total_milnor);
    EulerChain chain;
    chain.chi_smooth_fiber = euler_smooth_fiber(d, rep.n);
    chain.chi_top_form = euler_singular_top_form(d, rep.n, rep.sing.total_milnor);
    chain.chi_affine_fiber = chain.chi_smooth_fiber - chain.chi_top_form;
    chain.dim_via_chi = dimension_via_chi(d, rep.n, rep.sing.total_milnor);
    rep.euler = chain;
  }

  rep.critical = critical_locus_finite(f, opt.search);
  if (opt.transversal && rep.n >= 2)
    rep.transversal = transversal_hyperplane(top, opt.transversal_e_max, opt.search);

  // extension sums S_1..S_M
  int m_target = opt.m_max;
  if (m_target <= 0) {
    if (rep.dimension && *rep.dimension < BigInt(1) << 20) {
      uint64_t D = rep.dimension->convert_to<uint64_t>();
      m_target = int(std::max<uint64_t>(2 * D, D + 1));
      m_target = std::max(m_target, 1);
    } else {
      m_target = 2;
    }
  }
  rep.m_requested = m_target;
  SumOptions sum_opt;
  sum_opt.budget = opt.sum_budget;
  sum_opt.workers = opt.workers;
  for (int m = 1; m <= m_target; ++m) {
    auto cost = checked_pow(rep.q, unsigned(m) * unsigned(rep.n), opt.sum_budget);
    if (!cost) {
      rep.sums_note = "stopped after m = " + std::to_string(m - 1) +
                      ": q^(mn) exceeds the evaluation budget";
      break;
    }
    try {
      TraceHistogram hist = trace_histogram(f, m, sum_opt);
      if (m == 1) rep.base_histogram = hist;
      rep.sums.push_back(char_sum(hist, opt.character));
    } catch (const BudgetExceeded& e) {
      rep.sums_note = "stopped after m = " + std::to_string(m - 1) + ": " + e.what();
      break;
    }
  }

  // bound checks against D q^(mn/2), maximizing |S_m| over all embeddings
  if (rep.dimension) {
    double Dnum = rep.dimension->convert_to<double>();
    for (size_t i = 0; i < rep.sums.size(); ++i) {
      BoundCheck bc;
      bc.m = int(i + 1);
      for (int64_t b = 1; b < k->p; ++b)
        bc.abs_value = std::max(bc.abs_value, std::abs(to_complex(rep.sums[i], b)));
      bc.bound = Dnum * std::pow(double(rep.q), 0.5 * bc.m * rep.n);
      if (bc.bound == 0.0) {
        bc.ratio = bc.abs_value;
        bc.ok = bc.abs_value <= 1e-9;
      } else {
        bc.ratio = bc.abs_value / bc.bound;
        bc.ok = bc.ratio <= 1.0 + 1e-9;
      }
      rep.bounds.push_back(bc);
    }
  }

  // eigenvalue recovery needs a certified dimension and D+1 sums
  if (!opt.recover) {
    rep.recovery_note = "recovery disabled";
  } else if (!rep.dimension) {
    rep.recovery_note = "no certified dimension to recover against";
  } else if (*rep.dimension >= BigInt(1) << 20) {
    rep.recovery_note = "dimension too large for recovery";
  } else {
    uint64_t D = rep.dimension->convert_to<uint64_t>();
    if (D > 0 && rep.sums.size() < D + 1) {
      rep.recovery_note = "needs " + std::to_string(D + 1) +
                          " extension sums, only " +
                          std::to_string(rep.sums.size()) + " were computed";
    } else if (D == 0 && rep.sums.empty()) {
      rep.recovery_note = "no extension sums were computed";
    } else {
      rep.recovery = recover_eigenvalues(rep.sums, D, rep.q, rep.n, opt.purity_rtol);
    }
  }
  return rep;
}

}  // namespace expsum
