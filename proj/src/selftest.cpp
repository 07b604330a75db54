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

#include "expsum/selftest.hpp"

#include <cmath>
#include <complex>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "expsum/charsum.hpp"
#include "expsum/cyc.hpp"
#include "expsum/ff.hpp"
#include "expsum/mpoly.hpp"
#include "expsum/singular.hpp"
#include "expsum/verifier.hpp"

namespace expsum {

namespace {

FqPoly P(const std::string& text, int nvars, int64_t p) {
  return parse_poly(text, nvars, FqCtx(field(p, 1)));
}

[[noreturn]] void fail(const std::string& why) { throw std::runtime_error(why); }

void expect(bool cond, const std::string& why) {
  if (!cond) fail(why);
}

// Fits #X(F_{q^m}) = a q^m + c from m = 1, 2, checks the fit at m = 3, and
// returns a + c, the Euler characteristic of a curve whose class in the
// Grothendieck ring is a[line] + c[point]. nullopt when the fit fails.
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

std::string quadratic_gauss_moduli() {
  for (int64_t p : {int64_t(5), int64_t(7), int64_t(13)}) {
    TraceHistogram h = trace_histogram(P("x1^2", 1, p), 1);
    CycInt S = char_sum(h, 1);
    double want = std::sqrt(double(p));
    for (int64_t b = 1; b < p; ++b) {
      double got = std::abs(to_complex(S, b));
      if (std::abs(got - want) > 1e-9) {
        std::ostringstream why;
        why << "p = " << p << ", embedding b = " << b << ": |S| = " << got
            << ", expected sqrt(p) = " << want;
        fail(why.str());
      }
    }
  }
  return "p in {5, 7, 13}: every conjugate of S(x^2) has modulus sqrt(p)";
}

std::string gauss_sum_lift() {
  auto sums = extension_sums(P("x1^2", 1, 13), 3);
  const CycInt& S1 = sums[0];
  expect(sums[1] == -(S1 * S1), "S_2 != -S_1^2 over F_13");
  expect(sums[2] == S1 * S1 * S1, "S_3 != S_1^3 over F_13");
  return "S_m(x^2) = -(-S_1)^m for m = 2, 3 over F_13, exact in Z[zeta]";
}

std::string nodal_cubic_euler() {
  auto chi = chi_from_counts(P("x2^2*x3 - x1^3 - x1^2*x3", 3, 5));
  expect(chi.has_value(), "point counts of the nodal cubic do not fit a q^m + c");
  expect(*chi == 1, "nodal cubic chi = " + std::to_string(*chi) + ", expected 1");
  expect(euler_singular_top_form(3, 3, BigInt(1)) == 1,
         "correction formula disagrees with the counted chi = 1");
  return "split nodal cubic over F_5: counted chi = 1 = formula with mu = 1";
}

std::string triangle_euler() {
  auto chi = chi_from_counts(P("x1*x2*x3", 3, 5));
  expect(chi.has_value(), "point counts of the triangle do not fit a q^m + c");
  expect(*chi == 3, "triangle chi = " + std::to_string(*chi) + ", expected 3");
  expect(euler_singular_top_form(3, 3, BigInt(3)) == 3,
         "correction formula disagrees with the counted chi = 3");
  return "three lines over F_5: counted chi = 3 = formula with mu = 3";
}

std::string cusp_milnor() {
  GermAnalysis g = analyze_germ(P("x1^2 + x2^3", 2, 7));
  expect(g.status == GermStatus::kIsolated, "cusp not recognized as isolated");
  expect(g.milnor == 2, "cusp mu = " + std::to_string(g.milnor) + ", expected 2");
  expect(g.weighted_homogeneous, "cusp weight system not detected");
  expect(g.ws.weights == std::vector<int64_t>({3, 2}) && g.ws.delta == 6,
         "cusp weights differ from (3, 2) with delta 6");
  expect(g.orlik.has_value() && *g.orlik == 2, "product formula disagrees at the cusp");
  return "x^2 + y^3 over F_7: mu = 2 by Jacobian quotient and by product formula";
}

std::string product_formula_agreement() {
  GermAnalysis g = analyze_germ(P("x1^3 + x2^4", 2, 13));
  expect(g.status == GermStatus::kIsolated, "x^3 + y^4 not recognized as isolated");
  expect(g.milnor == 6, "x^3 + y^4 mu = " + std::to_string(g.milnor) + ", expected 6");
  expect(g.orlik.has_value() && *g.orlik == 6,
         "product formula value differs from the Jacobian quotient dimension");
  return "x^3 + y^4 over F_13: Jacobian quotient = product formula = 6";
}

std::string dimension_identity() {
  int cells = 0;
  for (int d = 2; d <= 5; ++d) {
    for (int n = 1; n <= 4; ++n) {
      BigInt cap = 1;
      for (int i = 0; i < n; ++i) cap *= (d - 1);
      for (int mu : {0, 1, 3}) {
        if (BigInt(mu) > cap) continue;
        BigInt lhs = predicted_dimension(d, n, BigInt(mu));
        BigInt rhs = dimension_via_chi(d, n, BigInt(mu));
        if (lhs != rhs) {
          std::ostringstream why;
          why << "d = " << d << ", n = " << n << ", mu = " << mu << ": "
              << lhs.str() << " != " << rhs.str();
          fail(why.str());
        }
        ++cells;
      }
    }
  }
  return std::to_string(cells) + " (d, n, mu) cells: closed form = Euler route";
}

std::string cubic_spectrum_roundtrip() {
  auto sums = extension_sums(P("x1^3 + x1", 1, 5), 5);
  EigenvalueRecovery rec = recover_eigenvalues(sums, 2, 5, 1);
  expect(rec.newton_ok, "a Newton identity division failed: " + rec.failure);
  expect(rec.recurrence_ok, "the degree-2 recurrence failed: " + rec.failure);
  expect(rec.purity_ok && rec.max_rel_err < 1e-6,
         "a recovered root modulus deviates from sqrt(5)");
  return "x^3 + x over F_5: D = 2, recurrence holds, both roots on |z| = sqrt(5)";
}

std::string histogram_engine_agreement() {
  FqPoly f = P("x1^3 + 2*x1*x2 + x2^2 + 3", 2, 7);
  SumOptions fast;
  fast.workers = 1;
  SumOptions generic = fast;
  generic.force_generic = true;
  TraceHistogram a = trace_histogram(f, 2, fast);
  TraceHistogram b = trace_histogram(f, 2, generic);
  expect(a.counts == b.counts, "table engine and generic engine disagree");
  expect(a.total() == BigInt(2401), "histogram total differs from 49^2");
  return "table and generic engines agree over F_49^2, 2401 points";
}

}  // namespace

int run_selftest(std::ostream& os) {
  struct Oracle {
    const char* name;
    std::string (*body)();
  };
  const Oracle oracles[] = {
      {"quadratic-gauss-moduli", quadratic_gauss_moduli},
      {"gauss-sum-lift", gauss_sum_lift},
      {"nodal-cubic-euler", nodal_cubic_euler},
      {"triangle-euler", triangle_euler},
      {"cusp-milnor", cusp_milnor},
      {"product-formula-agreement", product_formula_agreement},
      {"dimension-identity", dimension_identity},
      {"cubic-spectrum-roundtrip", cubic_spectrum_roundtrip},
      {"histogram-engine-agreement", histogram_engine_agreement},
  };
  int failures = 0;
  for (const Oracle& o : oracles) {
    try {
      std::string detail = o.body();
      os << "ok   " << o.name << ": " << detail << "\n";
    } catch (const std::exception& e) {
      ++failures;
      os << "FAIL " << o.name << ": " << e.what() << "\n";
    }
  }
  os << (failures == 0 ? "selftest passed, " : "selftest FAILED, ")
     << sizeof(oracles) / sizeof(oracles[0]) << " oracles, " << failures
     << " failed\n";
  return failures;
}

}  // namespace expsum
