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

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "doctest.h"
#include "expsum/verifier.hpp"

using namespace expsum;

namespace {

FqPoly P(const std::string& text, int nvars, int64_t p, int s = 1) {
  return parse_poly(text, nvars, FqCtx(field(p, s)));
}

// Fits #X(F_{q^m}) = a q^m + c from m = 1, 2, checks m = 3, and returns the
// Euler characteristic a + c. Point counts of a curve whose class in the
// Grothendieck ring is a[line] + c[point] determine chi this way; a failed
// fit or a failed check at m = 3 is reported as nullopt.
std::optional<int64_t> chi_from_counts(const FqPoly& F) {
  int64_t q = int64_t(F.ctx().F->q);
  int64_t n1 = int64_t(projective_zero_count(F, 1));
  int64_t n2 = int64_t(projective_zero_count(F, 2));
  int64_t n3 = int64_t(projective_zero_count(F, 3));
  int64_t den = q * q - q;
  if ((n2 - n1) % den != 0) return std::nullopt;
  int64_t a = (n2 - n1) / den;
  int64_t c = n1 - a * q;
  if (n3 != a * q * q * q + c) return std::nullopt;
  return a + c;
}

// Straightforward double-sum oracle for S_1 over a prime field.
CycInt brute_sum_prime(const FqPoly& f, int64_t b) {
  const FieldDescriptor* k = f.ctx().F;
  int n = f.nvars();
  uint64_t total = checked_pow(k->q, unsigned(n)).value();
  CycInt acc(k->p);
  std::vector<FieldElement> x(size_t(n), FieldElement::zero(k));
  for (uint64_t idx = 0; idx < total; ++idx) {
    uint64_t rem = idx;
    for (int i = 0; i < n; ++i) {
      x[size_t(i)] = FieldElement::from_index(k, rem % k->q);
      rem /= k->q;
    }
    acc += CycInt::root_power(k->p, b * trace_to_prime(f.evaluate(x)));
  }
  return acc;
}

}  // namespace

TEST_CASE("euler characteristic of smooth hypersurfaces matches the classics") {
  // plane curves of degree d have chi = 2 - 2g with g = (d-1)(d-2)/2
  CHECK(euler_smooth_fiber(1, 2) == 2);   // a line is P^1
  CHECK(euler_smooth_fiber(2, 2) == 2);   // a conic is P^1
  CHECK(euler_smooth_fiber(3, 2) == 0);   // elliptic curve
  CHECK(euler_smooth_fiber(4, 2) == -4);  // genus 3
  CHECK(euler_smooth_fiber(5, 2) == -10); // genus 6
  // surfaces
  CHECK(euler_smooth_fiber(2, 3) == 4);   // quadric, P^1 x P^1
  CHECK(euler_smooth_fiber(3, 3) == 9);   // cubic surface
  CHECK(euler_smooth_fiber(4, 3) == 24);  // quartic is a K3
  // point sets on the line: d points
  CHECK(euler_smooth_fiber(3, 1) == 3);
  CHECK(euler_smooth_fiber(7, 1) == 7);
  CHECK_THROWS_AS(euler_smooth_fiber(0, 2), std::invalid_argument);
}

TEST_CASE("point-count oracle fixes the vanishing cycle sign") {
  // Nodal cubic over F_5: the node is split (y^2 = x^2 factors), the curve is
  // a line with two points glued, chi = 1. The literal smooth value is 0, so
  // the correction term must be +1 here, which forces the sign convention.
  FqPoly nodal = P("x2^2*x3 - x1^3 - x1^2*x3", 3, 5);
  auto chi_nodal = chi_from_counts(nodal);
  REQUIRE(chi_nodal.has_value());
  CHECK(*chi_nodal == 1);
  CHECK(euler_singular_top_form(3, 3, BigInt(1)) == *chi_nodal);

  // Triangle of three lines: three copies of P^1 glued at three points.
  FqPoly tri = P("x1*x2*x3", 3, 5);
  auto chi_tri = chi_from_counts(tri);
  REQUIRE(chi_tri.has_value());
  CHECK(*chi_tri == 3);
  CHECK(euler_singular_top_form(3, 3, BigInt(3)) == *chi_tri);

  // Cuspidal cubic: homeomorphic to its normalization P^1, chi = 2, mu = 2.
  FqPoly cusp = P("x2^2*x3 - x1^3", 3, 5);
  auto chi_cusp = chi_from_counts(cusp);
  REQUIRE(chi_cusp.has_value());
  CHECK(*chi_cusp == 2);
  CHECK(euler_singular_top_form(3, 3, BigInt(2)) == *chi_cusp);

  // Smooth conic as a control: no correction term at all.
  FqPoly conic = P("x1^2 + x2*x3", 3, 5);
  auto chi_conic = chi_from_counts(conic);
  REQUIRE(chi_conic.has_value());
  CHECK(*chi_conic == 2);
  CHECK(euler_singular_top_form(2, 3, BigInt(0)) == *chi_conic);
}

TEST_CASE("projective zero counts are exact on pinned examples") {
  // three lines in P^2 over F_5: 3(q+1) - 3 = 3q points
  CHECK(projective_zero_count(P("x1*x2*x3", 3, 5), 1) == 15);
  CHECK(projective_zero_count(P("x1*x2*x3", 3, 5), 2) == 75);
  // x^2 + y^2 on P^1: split iff -1 is a square
  CHECK(projective_zero_count(P("x1^2 + x2^2", 2, 5), 1) == 2);
  CHECK(projective_zero_count(P("x1^2 + x2^2", 2, 3), 1) == 0);
  CHECK(projective_zero_count(P("x1^2 + x2^2", 2, 3), 2) == 2);
  // a hyperplane is a P^(n-2): q + 1 points in P^2
  CHECK(projective_zero_count(P("x1", 3, 7), 1) == 8);
  CHECK_THROWS_AS(projective_zero_count(P("x1*x2*x3", 3, 5), 3, 100),
                  BudgetExceeded);
}

TEST_CASE("the dimension identity closes for every small shape") {
  for (int d = 2; d <= 6; ++d) {
    for (int n = 1; n <= 4; ++n) {
      BigInt top = boost::multiprecision::pow(BigInt(d - 1), unsigned(n));
      for (BigInt mu = 0; mu <= top; mu += (top > 8 ? (top / 8 + 1) : BigInt(1))) {
        CHECK(dimension_via_chi(d, n, mu) == predicted_dimension(d, n, mu));
      }
      CHECK(dimension_via_chi(d, n, top) == 0);
    }
  }
  CHECK_THROWS_AS(predicted_dimension(2, 2, BigInt(2)), std::invalid_argument);
}

TEST_CASE("critical locus finiteness is decided exactly") {
  SUBCASE("generic univariate: finitely many critical points") {
    auto r = critical_locus_finite(P("x1^3 + x1", 1, 5));
    REQUIRE(r.finite.has_value());
    CHECK(*r.finite);
    CHECK(r.dimension_bound == 2);
  }
  SUBCASE("two variables with an isolated critical point") {
    auto r = critical_locus_finite(P("x1^2*x2 + x2^2", 2, 5));
    REQUIRE(r.finite.has_value());
    CHECK(*r.finite);
    CHECK(r.dimension_bound == 3);  // the local algebra of the origin
  }
  SUBCASE("wild exponents make the locus a whole axis") {
    for (int64_t p : {3, 5}) {
      FqPoly f = P("x1^" + std::to_string(p + 1) + " + x2^" + std::to_string(p),
                   2, p);
      auto r = critical_locus_finite(f);
      REQUIRE(r.finite.has_value());
      CHECK_FALSE(*r.finite);
    }
  }
  SUBCASE("identically vanishing gradient") {
    auto r = critical_locus_finite(P("x1^5", 1, 5));
    REQUIRE(r.finite.has_value());
    CHECK_FALSE(*r.finite);
    CHECK(r.note.find("affine space") != std::string::npos);
  }
}

TEST_CASE("transversal hyperplane search finds the first certified slice") {
  SUBCASE("triangle: must avoid all three vertices") {
    auto t = transversal_hyperplane(P("x1*x2*x3", 3, 5));
    REQUIRE(t.has_value());
    CHECK(t->e == 1);
    REQUIRE(t->hyperplane.size() == 3);
    // scan order: pivot-1 reps with trailing odometer; (1,1,1) is the first
    // with all coordinates nonzero, and any zero coordinate hits a vertex
    for (const auto& a : t->hyperplane) CHECK_FALSE(a.is_zero());

    // the defining property: composing with the change matrix turns the
    // hyperplane into the last coordinate plane, and the slice is smooth
    const FieldDescriptor* E = t->hyperplane[0].field_ptr();
    FqPoly FE = embed_into(P("x1*x2*x3", 3, 5), E);
    FqPoly moved = linear_change(FE, t->change);
    FqCtx ctxE(E);
    std::vector<FqPoly> drop;
    for (int i = 0; i < 2; ++i) drop.push_back(FqPoly::variable(ctxE, 2, i));
    drop.push_back(FqPoly::zero(ctxE, 2));
    FqPoly slice = moved.substitute(drop);
    REQUIRE_FALSE(slice.is_zero());
    auto sing = analyze_singularities(slice);
    CHECK(sing.finite);
    CHECK(sing.complete);
    CHECK(sing.points.empty());
    // and the hyperplane form itself becomes the last variable
    std::vector<FieldElement> probe;
    for (int i = 0; i < 3; ++i) probe.push_back(FieldElement::from_int(E, 2 + i));
    FieldElement lhs = FieldElement::zero(E);
    for (int r = 0; r < 3; ++r) {
      FieldElement moved_r = FieldElement::zero(E);
      for (int c = 0; c < 3; ++c) moved_r += t->change[size_t(r)][size_t(c)] * probe[size_t(c)];
      lhs += t->hyperplane[size_t(r)] * moved_r;
    }
    CHECK(lhs == probe[2]);
  }
  SUBCASE("smooth conic: the very first candidate works") {
    auto t = transversal_hyperplane(P("x1^2 + x2^2 + x3^2", 3, 7));
    REQUIRE(t.has_value());
    CHECK(t->e == 1);
    CHECK(t->hyperplane[0] == FieldElement::one(field(7, 1)));
    CHECK(t->hyperplane[1].is_zero());
    CHECK(t->hyperplane[2].is_zero());
  }
  SUBCASE("binary form: a point off the zero locus") {
    auto t = transversal_hyperplane(P("x1*x2", 2, 5));
    REQUIRE(t.has_value());
    // x = 0 and y = 0 are on the curve; x + y = 0 is not
    CHECK(t->hyperplane[0] == FieldElement::one(field(5, 1)));
    CHECK(t->hyperplane[1] == FieldElement::one(field(5, 1)));
  }
  SUBCASE("one variable has no hyperplanes") {
    CHECK_FALSE(transversal_hyperplane(P("x1^3", 1, 5)).has_value());
  }
}

TEST_CASE("eigenvalue recovery on quadratic character sums") {
  // f = x^2 over F_p: one eigenvalue, the quadratic Gauss sum, modulus
  // sqrt(p). The extension sums obey the classical norm relation, so the
  // degree-1 recurrence must hold exactly.
  for (int64_t p : {5, 7, 13}) {
    auto sums = extension_sums(P("x1^2", 1, p), 3);
    auto rec = recover_eigenvalues(sums, 1, uint64_t(p), 1);
    CHECK(rec.newton_ok);
    CHECK(rec.recurrence_ok);
    CHECK(rec.purity_ok);
    CHECK(rec.max_rel_err < 1e-9);
    REQUIRE(rec.moduli.size() == size_t(p - 1));
    for (const auto& mods : rec.moduli) {
      REQUIRE(mods.size() == 1);
      CHECK(mods[0] == doctest::Approx(std::sqrt(double(p))).epsilon(1e-12));
    }
  }
}

TEST_CASE("eigenvalue recovery reproduces planted integer eigenvalues") {
  // planted spectrum {2, -3} with n = 1: S_m = -(2^m + (-3)^m)
  std::vector<CycInt> sums;
  for (int m = 1; m <= 4; ++m) {
    int64_t pw = 1, nw = 1;
    for (int i = 0; i < m; ++i) { pw *= 2; nw *= -3; }
    sums.push_back(CycInt::from_int(5, -(pw + nw)));
  }
  auto rec = recover_eigenvalues(sums, 2, 6, 1);
  CHECK(rec.newton_ok);
  CHECK(rec.recurrence_ok);
  REQUIRE(rec.elementary.size() == 2);
  CHECK(rec.elementary[0] == CycInt::from_int(5, -1));  // 2 + (-3)
  CHECK(rec.elementary[1] == CycInt::from_int(5, -6));  // 2 * (-3)
  REQUIRE(rec.moduli.size() == 4);
  for (const auto& mods : rec.moduli) {
    REQUIRE(mods.size() == 2);
    CHECK(mods[0] == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(mods[1] == doctest::Approx(3.0).epsilon(1e-9));
  }
  // the moduli are not q^{1/2} for q = 6, so purity must fail honestly
  CHECK_FALSE(rec.purity_ok);
  CHECK(rec.max_rel_err > 0.1);
}

TEST_CASE("eigenvalue recovery rejects inconsistent dimensions") {
  SUBCASE("non-integral Newton division") {
    std::vector<CycInt> sums = {CycInt::from_int(7, 1), CycInt(7), CycInt(7)};
    auto rec = recover_eigenvalues(sums, 2, 7, 2);
    CHECK_FALSE(rec.newton_ok);
    CHECK(rec.failure.find("k = 2") != std::string::npos);
  }
  SUBCASE("recurrence breaks on the surplus term") {
    std::vector<CycInt> sums = {CycInt::from_int(7, 1), CycInt::from_int(7, 1),
                                CycInt::from_int(7, 2)};
    auto rec = recover_eigenvalues(sums, 1, 7, 2);
    CHECK(rec.newton_ok);
    CHECK_FALSE(rec.recurrence_ok);
    CHECK(rec.failure.find("extension degree 3") != std::string::npos);
  }
  SUBCASE("dimension zero forces vanishing sums") {
    std::vector<CycInt> zero = {CycInt(7), CycInt(7)};
    auto ok = recover_eigenvalues(zero, 0, 7, 2);
    CHECK(ok.newton_ok);
    CHECK(ok.recurrence_ok);
    CHECK(ok.purity_ok);
    std::vector<CycInt> bad = {CycInt::from_int(7, 3)};
    auto no = recover_eigenvalues(bad, 0, 7, 2);
    CHECK_FALSE(no.recurrence_ok);
  }
  SUBCASE("too few sums is a caller error") {
    std::vector<CycInt> sums = {CycInt::from_int(7, 1)};
    CHECK_THROWS_AS(recover_eigenvalues(sums, 1, 7, 1), std::invalid_argument);
  }
}

TEST_CASE("full pipeline on a smooth univariate cubic") {
  VerifyOptions opt;
  auto rep = verify(P("x1^3 + x1", 1, 5), opt);
  CHECK(rep.p == 5);
  CHECK(rep.n == 1);
  CHECK(rep.d == 3);
  CHECK(rep.h1 == HypoState::kHolds);
  CHECK(rep.h2 == HypoState::kHolds);
  CHECK(rep.h3 == HypoState::kHolds);
  CHECK(rep.verdict == Verdict::kApplies);
  REQUIRE(rep.dimension.has_value());
  CHECK(*rep.dimension == 2);
  REQUIRE(rep.euler.has_value());
  CHECK(rep.euler->dim_via_chi == 2);

  // S_1 pinned by hand: values of x^3 + x on F_5 are 0,2,0,0,3
  REQUIRE(rep.sums.size() == 4);
  CHECK(rep.sums[0] == CycInt::from_coords(5, {3, 0, 1, 1, 0}));
  REQUIRE(rep.base_histogram.has_value());
  CHECK(rep.base_histogram->counts[0] == 3);
  CHECK(rep.base_histogram->counts[2] == 1);
  CHECK(rep.base_histogram->counts[3] == 1);
  CHECK(brute_sum_prime(P("x1^3 + x1", 1, 5), 1) == rep.sums[0]);

  REQUIRE(rep.bounds.size() == 4);
  for (const auto& bc : rep.bounds) {
    CHECK(bc.ok);
    CHECK(bc.ratio <= 1.0 + 1e-9);
  }
  REQUIRE(rep.recovery.has_value());
  CHECK(rep.recovery->newton_ok);
  CHECK(rep.recovery->recurrence_ok);
  CHECK(rep.recovery->purity_ok);
  CHECK(rep.recovery->max_rel_err < 1e-6);
  // Galois consistency: every embedding sees the same sorted moduli
  for (const auto& mods : rep.recovery->moduli) {
    REQUIRE(mods.size() == 2);
    for (double v : mods)
      CHECK(v == doctest::Approx(std::sqrt(5.0)).epsilon(1e-9));
  }
}

TEST_CASE("full pipeline on the mixed-degree plane example") {
  VerifyOptions opt;
  opt.m_max = 4;  // D + 1 = 4 surplus term included, kept small for speed
  auto rep = verify(P("x1^2*x2 + x2^2", 2, 5), opt);
  CHECK(rep.d == 3);
  CHECK(rep.h1 == HypoState::kHolds);
  CHECK(rep.h2 == HypoState::kHolds);
  CHECK(rep.h3 == HypoState::kHolds);
  CHECK(rep.verdict == Verdict::kApplies);
  REQUIRE(rep.dimension.has_value());
  CHECK(*rep.dimension == 3);  // (3-1)^2 - 1
  CHECK(rep.sing.total_milnor == 1);
  REQUIRE(rep.sing.points.size() == 1);
  CHECK(rep.sing.points[0].rep.str() == "(0 : 1)");
  CHECK(rep.h3_factors.size() == 3);  // d, d-1, one local weighted degree

  CHECK(brute_sum_prime(P("x1^2*x2 + x2^2", 2, 5), 1) == rep.sums[0]);
  REQUIRE(rep.sums.size() == 4);
  for (const auto& bc : rep.bounds) CHECK(bc.ok);
  REQUIRE(rep.recovery.has_value());
  CHECK(rep.recovery->newton_ok);
  CHECK(rep.recovery->recurrence_ok);
  CHECK(rep.recovery->purity_ok);
}

TEST_CASE("quadratic Fermat form attains the bound exactly") {
  VerifyOptions opt;
  auto rep = verify(P("x1^2 + x2^2", 2, 7), opt);
  CHECK(rep.verdict == Verdict::kApplies);
  REQUIRE(rep.dimension.has_value());
  CHECK(*rep.dimension == 1);
  REQUIRE(rep.bounds.size() >= 1);
  // |S_1| = p for a product of two quadratic Gauss sums: ratio exactly 1
  CHECK(rep.bounds[0].ratio == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(rep.bounds[0].ok);
  REQUIRE(rep.recovery.has_value());
  CHECK(rep.recovery->purity_ok);
}

TEST_CASE("hypothesis (ii) fails when the subform meets a singular point") {
  VerifyOptions opt;
  opt.m_max = 1;
  auto rep = verify(P("x1^2*x2 + x1*x2", 2, 5), opt);
  CHECK(rep.h1 == HypoState::kHolds);
  CHECK(rep.h2 == HypoState::kFails);
  CHECK(rep.verdict == Verdict::kFailsHypotheses);
  CHECK(rep.h2_note.find("(0 : 1)") != std::string::npos);
}

TEST_CASE("homogeneous input with singular points fails hypothesis (ii) by convention") {
  VerifyOptions opt;
  opt.m_max = 1;
  auto rep = verify(P("x1*x2*x3", 3, 5), opt);
  CHECK(rep.h1 == HypoState::kHolds);
  CHECK(rep.h2 == HypoState::kFails);
  CHECK(rep.h2_note.find("identically zero") != std::string::npos);
  CHECK(rep.verdict == Verdict::kFailsHypotheses);
  // Milnor data is still certified, so the dimension prediction stands
  REQUIRE(rep.dimension.has_value());
  CHECK(*rep.dimension == 5);  // 2^3 - 3 nodes
  CHECK(rep.sing.total_milnor == 3);
}

TEST_CASE("wild-exponent counterexample fails exactly hypothesis (iii)") {
  for (int64_t p : {3, 5}) {
    VerifyOptions opt;
    opt.m_max = 2;
    FqPoly f = P("x1^" + std::to_string(p + 1) + " + x2^" + std::to_string(p),
                 2, p);
    auto rep = verify(f, opt);
    CHECK(rep.d == int(p + 1));
    // the top form is x^(p+1) alone: one isolated weighted homogeneous point
    CHECK(rep.h1 == HypoState::kHolds);
    CHECK(rep.h2 == HypoState::kHolds);
    CHECK(rep.h3 == HypoState::kFails);
    CHECK(rep.h3_note.find(std::to_string(p)) != std::string::npos);
    CHECK(rep.verdict == Verdict::kFailsHypotheses);
    REQUIRE(rep.critical.finite.has_value());
    CHECK_FALSE(*rep.critical.finite);
    // the sums vanish identically: summing the character over y^p is summing
    // it over y, which is zero
    for (const auto& s : rep.sums) CHECK(s.is_zero());
  }
}

TEST_CASE("vanishing sums expose a wrong dimension through purity") {
  // For x^4 + y^3 over F_3 the dimension formula gives 6, but the sums are
  // identically zero because of the wild Artin-Schreier part. Recovery then
  // finds the zero polynomial spectrum, whose moduli are not q, and says so.
  VerifyOptions opt;
  opt.m_max = 7;  // D + 1 = 7 sums, the largest costing 9^7 evaluations
  auto rep = verify(P("x1^4 + x2^3", 2, 3), opt);
  CHECK(rep.verdict == Verdict::kFailsHypotheses);
  REQUIRE(rep.dimension.has_value());
  CHECK(*rep.dimension == 6);
  REQUIRE(rep.recovery.has_value());
  CHECK(rep.recovery->newton_ok);
  CHECK(rep.recovery->recurrence_ok);
  CHECK_FALSE(rep.recovery->purity_ok);
  CHECK(rep.recovery->max_rel_err == doctest::Approx(1.0));
}

TEST_CASE("degenerate inputs get a not-applicable verdict, never a crash") {
  VerifyOptions opt;
  auto z = verify(FqPoly::zero(FqCtx(field(5, 1)), 2), opt);
  CHECK(z.verdict == Verdict::kNotApplicable);
  auto c = verify(P("3", 2, 5), opt);
  CHECK(c.verdict == Verdict::kNotApplicable);
  auto l = verify(P("x1 + 1", 1, 5), opt);
  CHECK(l.verdict == Verdict::kNotApplicable);
  CHECK(l.d == 1);
  CHECK_THROWS_AS(verify(P("x1^2", 1, 5), [] {
                    VerifyOptions o;
                    o.character = 5;
                    return o;
                  }()),
                  std::invalid_argument);
}

TEST_CASE("budget starvation is reported, not papered over") {
  VerifyOptions opt;
  opt.sum_budget = 100;  // allows m = 1, 2 over F_5 in one variable
  auto rep = verify(P("x1^3 + x1", 1, 5), opt);
  CHECK(rep.verdict == Verdict::kApplies);
  CHECK(rep.sums.size() == 2);
  CHECK(rep.sums_note.find("budget") != std::string::npos);
  REQUIRE_FALSE(rep.recovery.has_value());
  CHECK(rep.recovery_note.find("3") != std::string::npos);
}

TEST_CASE("hasse-davenport relation holds for the recovered eigenvalue") {
  // For f = x^2 the single eigenvalue alpha satisfies S_m = -(-alpha)^m by
  // the lifting relation; equivalently P_m = P_1^m. Checked through e_1.
  auto sums = extension_sums(P("x1^2", 1, 13), 4);
  auto rec = recover_eigenvalues(sums, 1, 13, 1);
  REQUIRE(rec.newton_ok);
  REQUIRE(rec.elementary.size() == 1);
  CycInt alpha = rec.elementary[0];
  CycInt power = alpha;
  for (int m = 2; m <= 4; ++m) {
    power *= alpha;
    CycInt pm = -sums[size_t(m - 1)];
    CHECK(power == pm);
  }
}
