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

#include "expsum/sweep.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "expsum/report.hpp"

namespace expsum {

namespace {

// A root of a binary form in canonical projective coordinates: either the
// affine value c for the point (1 : c), or the point at infinity (0 : 1).
struct BinaryRoot {
  bool at_infinity = false;
  int64_t c = 0;
};

FqPoly linear_factor(const FieldDescriptor* k, const BinaryRoot& r) {
  FqCtx ctx(k);
  FqPoly f(ctx, 2);
  if (r.at_infinity) {
    f.add_term(Monomial::var(2, 0), ctx.one());  // x1 vanishes at (0 : 1)
  } else {
    // x2 - c x1 vanishes at (1 : c)
    f.add_term(Monomial::var(2, 1), ctx.one());
    f.add_term(Monomial::var(2, 0), ctx.from_int(-r.c));
  }
  return f;
}

FieldElement eval_binary(const FqPoly& f, const FieldDescriptor* k,
                         const BinaryRoot& r) {
  std::vector<FieldElement> pt(2, FieldElement::zero(k));
  if (r.at_infinity) {
    pt[1] = FieldElement::one(k);
  } else {
    pt[0] = FieldElement::one(k);
    pt[1] = FieldElement::from_int(k, r.c);
  }
  return f.evaluate(pt);
}

FqPoly random_binary_form(std::mt19937_64& rng, const FieldDescriptor* k, int deg) {
  FqCtx ctx(k);
  FqPoly f(ctx, 2);
  for (int a = 0; a <= deg; ++a) {
    int64_t c = int64_t(rng() % uint64_t(k->q));
    if (c == 0) continue;
    f.add_term(Monomial(std::vector<uint16_t>{uint16_t(a), uint16_t(deg - a)}),
               ctx.from_int(c));
  }
  return f;
}

std::string yesno(bool b) { return b ? "yes" : "no"; }

void fill_from_report(SweepRow* row, const VerificationReport& rep) {
  row->verdict = to_string(rep.verdict);
  if (rep.dimension) row->dimension = rep.dimension->str();
  if (rep.sing.finite && rep.sing.complete)
    row->total_milnor = rep.sing.total_milnor.str();
  row->m_computed = int(rep.sums.size());
  for (const BoundCheck& bc : rep.bounds) {
    row->max_ratio = std::max(row->max_ratio, bc.ratio);
    if (!bc.ok) row->bounds_ok = false;
  }
  if (rep.recovery) {
    row->newton_ok = yesno(rep.recovery->newton_ok);
    row->recurrence_ok = yesno(rep.recovery->recurrence_ok);
    row->purity_ok = yesno(rep.recovery->purity_ok);
    row->max_rel_err = rep.recovery->max_rel_err;
  }
  if (!rep.sums_note.empty()) row->note = rep.sums_note;
  if (!row->dimension_expected.empty())
    row->dimension_matches = (row->dimension == row->dimension_expected);
  if (!row->milnor_expected.empty())
    row->milnor_matches = (row->total_milnor == row->milnor_expected);
}

// ---------------------------------------------------------------------------
// presets
// ---------------------------------------------------------------------------

// Binary forms with prescribed root multiplicities, plus a next-degree form
// kept off the multiple roots and a random low tail. Shaped so that every
// hypothesis is satisfiable: multiplicities stay below the characteristic
// and d, d-1 are units.
void gen_binary_forms(std::mt19937_64& rng, const SweepOptions& opt,
                      SweepResult* out) {
  const int64_t primes[] = {5, 7, 11};
  for (int idx = 0; idx < opt.cases; ++idx) {
    int64_t p = primes[idx % 3];
    const FieldDescriptor* k = field(p, 1);
    FqCtx ctx(k);

    std::vector<int> allowed;
    for (int d = 3; d <= 6; ++d)
      if (d % p != 0 && (d - 1) % p != 0) allowed.push_back(d);
    int d = allowed[rng() % allowed.size()];

    // composition of d into parts of size at most 3 keeps every local
    // weighted degree coprime to p >= 5
    std::vector<int> parts;
    for (int rem = d; rem > 0;) {
      int cap = std::min(rem, 3);
      int part = 1 + int(rng() % uint64_t(cap));
      parts.push_back(part);
      rem -= part;
    }

    std::vector<BinaryRoot> roots;
    std::set<int64_t> used;  // q encodes infinity
    for (size_t i = 0; i < parts.size(); ++i) {
      int64_t pick;
      do {
        pick = int64_t(rng() % uint64_t(k->q + 1));
      } while (used.count(pick));
      used.insert(pick);
      roots.push_back(pick == int64_t(k->q) ? BinaryRoot{true, 0}
                                            : BinaryRoot{false, pick});
    }

    FqPoly top = FqPoly::constant(ctx, 2, ctx.one());
    int mu_expected = 0;
    for (size_t i = 0; i < parts.size(); ++i) {
      FqPoly lf = linear_factor(k, roots[i]);
      for (int e = 0; e < parts[i]; ++e) top = top * lf;
      mu_expected += parts[i] - 1;
    }

    // the next form must avoid the multiple roots; simple roots are smooth
    // points and do not constrain it
    FqPoly sub(ctx, 2);
    for (int tries = 0; tries < 200; ++tries) {
      sub = random_binary_form(rng, k, d - 1);
      bool ok = true;
      for (size_t i = 0; i < parts.size(); ++i)
        if (parts[i] >= 2 && eval_binary(sub, k, roots[i]).is_zero()) ok = false;
      if (ok && !sub.is_zero()) break;
    }

    FqPoly tail(ctx, 2);
    for (int t = 0; t <= d - 2; ++t)
      if (rng() % 2 == 0) tail = tail + random_binary_form(rng, k, t);

    FqPoly f = top + sub + tail;

    SweepRow row;
    row.index = idx;
    row.f_text = f.str();
    row.p = p;
    row.s = 1;
    row.n = 2;
    row.d = d;
    row.dimension_expected = BigInt((d - 1) * (d - 1) - mu_expected).str();
    row.milnor_expected = BigInt(mu_expected).str();

    VerifyOptions vopt;
    vopt.m_max = opt.m_max;
    vopt.sum_budget = opt.budget;
    vopt.workers = opt.workers;
    fill_from_report(&row, verify(f, vopt));
    out->rows.push_back(std::move(row));
  }
}

std::vector<FieldElement> canonical_triple(const FieldDescriptor* k, int64_t a,
                                           int64_t b, int64_t c) {
  std::vector<FieldElement> v = {FieldElement::from_int(k, a),
                                 FieldElement::from_int(k, b),
                                 FieldElement::from_int(k, c)};
  for (auto& x : v)
    if (!x.is_zero()) {
      FieldElement inv = x.inverse();
      for (auto& y : v) y *= inv;
      break;
    }
  return v;
}

std::vector<FieldElement> random_line(std::mt19937_64& rng, const FieldDescriptor* k) {
  while (true) {
    int64_t a = int64_t(rng() % uint64_t(k->q));
    int64_t b = int64_t(rng() % uint64_t(k->q));
    int64_t c = int64_t(rng() % uint64_t(k->q));
    if (a == 0 && b == 0 && c == 0) continue;
    return canonical_triple(k, a, b, c);
  }
}

FqPoly arrangement_poly(const FieldDescriptor* k,
                        const std::vector<std::vector<FieldElement>>& lines) {
  FqCtx ctx(k);
  FqPoly f = FqPoly::constant(ctx, 3, ctx.one());
  for (const auto& l : lines) {
    FqPoly lf(ctx, 3);
    for (int i = 0; i < 3; ++i)
      if (!l[size_t(i)].is_zero()) lf.add_term(Monomial::var(3, i), l[size_t(i)]);
    f = f * lf;
  }
  return f;
}

void push_arrangement_case(const SweepOptions& opt, int idx,
                           const FieldDescriptor* k,
                           const std::vector<std::vector<FieldElement>>& lines,
                           SweepResult* out) {
  int d = int(lines.size());
  FqPoly f = arrangement_poly(k, lines);
  auto census = arrangement_census(lines);

  BigInt mu_expected = 0, term_general = 0;
  int max_mult = 0;
  for (const auto& [mult, cnt] : census) {
    mu_expected += BigInt(cnt) * (mult - 1) * (mult - 1);
    term_general += BigInt(cnt) * (mult - 1);
    max_mult = std::max(max_mult, mult);
  }
  BigInt term_generic = BigInt(d - 1) * (d - 2) / 2;

  SweepRow row;
  row.index = idx;
  row.f_text = f.str();
  row.p = k->p;
  row.s = k->s;
  row.n = 3;
  row.d = d;
  // the census value (mult - 1)^2 per point is the local quotient dimension
  // only while every multiplicity stays below the characteristic; at p and
  // beyond the critical scheme of the local product of lines can pick up
  // positive-dimensional components, so no oracle value is claimed
  if (max_mult < k->p) {
    using boost::multiprecision::pow;
    row.dimension_expected = BigInt(pow(BigInt(d - 1), 3) - mu_expected).str();
    row.milnor_expected = mu_expected.str();
  }
  {
    std::ostringstream cs;
    bool first = true;
    for (const auto& [mult, cnt] : census) {
      cs << (first ? "" : " ") << mult << ":" << cnt;
      first = false;
    }
    row.census = cs.str();
  }
  row.example_term_general = term_general.str();
  row.example_term_generic = term_generic.str();
  row.generic_term_disagrees = (mu_expected != term_generic);

  VerifyOptions vopt;
  vopt.m_max = opt.m_max;
  vopt.sum_budget = opt.budget;
  vopt.workers = opt.workers;
  fill_from_report(&row, verify(f, vopt));
  out->rows.push_back(std::move(row));
}

// Products of distinct rational lines in the plane. The first two cases are
// pinned: the coordinate triangle and a seeded generic four-line arrangement
// whose intersections are six distinct double points.
void gen_line_arrangements(std::mt19937_64& rng, const SweepOptions& opt,
                           SweepResult* out) {
  int idx = 0;
  {
    const FieldDescriptor* k = field(5, 1);
    std::vector<std::vector<FieldElement>> tri = {canonical_triple(k, 1, 0, 0),
                                                  canonical_triple(k, 0, 1, 0),
                                                  canonical_triple(k, 0, 0, 1)};
    push_arrangement_case(opt, idx++, k, tri, out);
  }
  {
    const FieldDescriptor* k = field(7, 1);
    std::vector<std::vector<FieldElement>> lines;
    while (true) {
      lines.clear();
      std::set<std::string> seen;
      while (lines.size() < 4) {
        auto l = random_line(rng, k);
        std::string key = l[0].str() + "|" + l[1].str() + "|" + l[2].str();
        if (seen.insert(key).second) lines.push_back(l);
      }
      auto census = arrangement_census(lines);
      if (census.size() == 1 && census.count(2) && census.at(2) == 6) break;
    }
    push_arrangement_case(opt, idx++, k, lines, out);
  }
  const int64_t primes[] = {5, 7, 11};
  while (idx < opt.cases) {
    const FieldDescriptor* k = field(primes[idx % 3], 1);
    int d = 3 + int(rng() % 3);
    std::vector<std::vector<FieldElement>> lines;
    std::set<std::string> seen;
    while (int(lines.size()) < d) {
      auto l = random_line(rng, k);
      std::string key = l[0].str() + "|" + l[1].str() + "|" + l[2].str();
      if (seen.insert(key).second) lines.push_back(l);
    }
    push_arrangement_case(opt, idx++, k, lines, out);
  }
}

// Diagonal forms plus an optional affine tail: smooth top forms, so the
// predicted dimension is exactly (d-1)^n.
void gen_smooth_fermat(std::mt19937_64& rng, const SweepOptions& opt,
                       SweepResult* out) {
  const int64_t primes[] = {5, 7, 13};
  for (int idx = 0; idx < opt.cases; ++idx) {
    int64_t p = primes[idx % 3];
    const FieldDescriptor* k = field(p, 1);
    FqCtx ctx(k);
    std::vector<int> allowed;
    for (int d = 2; d <= 6; ++d)
      if (d % p != 0 && (d - 1) % p != 0) allowed.push_back(d);
    int d = allowed[rng() % allowed.size()];
    int n = 1 + int(rng() % 2);

    FqPoly f(ctx, n);
    for (int i = 0; i < n; ++i) {
      FqPoly xi = FqPoly::variable(ctx, n, i);
      FqPoly pw = FqPoly::constant(ctx, n, ctx.one());
      for (int e = 0; e < d; ++e) pw = pw * xi;
      // nonzero diagonal coefficients keep the form smooth
      int64_t c = 1 + int64_t(rng() % uint64_t(k->q - 1));
      f = f + pw.scaled(ctx.from_int(c));
    }
    if (rng() % 2 == 0) {
      for (int i = 0; i < n; ++i) {
        int64_t c = int64_t(rng() % uint64_t(k->q));
        if (c == 0) continue;
        FqPoly xi = FqPoly::variable(ctx, n, i);
        f = f + xi.scaled(ctx.from_int(c));
      }
    }

    SweepRow row;
    row.index = idx;
    row.f_text = f.str();
    row.p = p;
    row.s = 1;
    row.n = n;
    row.d = d;
    using boost::multiprecision::pow;
    row.dimension_expected = BigInt(pow(BigInt(d - 1), unsigned(n))).str();
    row.milnor_expected = "0";

    VerifyOptions vopt;
    vopt.m_max = opt.m_max;
    vopt.sum_budget = opt.budget;
    vopt.workers = opt.workers;
    fill_from_report(&row, verify(f, vopt));
    out->rows.push_back(std::move(row));
  }
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

std::map<int, int> arrangement_census(
    const std::vector<std::vector<FieldElement>>& lines) {
  if (lines.size() < 2)
    throw std::invalid_argument("arrangement_census: need at least two lines");
  const FieldDescriptor* k = lines[0][0].field_ptr();
  std::vector<std::vector<FieldElement>> canon;
  std::set<std::string> seen;
  for (const auto& l : lines) {
    if (l.size() != 3) throw std::invalid_argument("arrangement_census: lines live in the plane");
    std::vector<FieldElement> v = l;
    bool nonzero = false;
    for (auto& x : v)
      if (!x.is_zero()) {
        FieldElement inv = x.inverse();
        for (auto& y : v) y *= inv;
        nonzero = true;
        break;
      }
    if (!nonzero) throw std::invalid_argument("arrangement_census: zero line");
    std::string key = v[0].str() + "|" + v[1].str() + "|" + v[2].str();
    if (!seen.insert(key).second)
      throw std::invalid_argument("arrangement_census: repeated line");
    canon.push_back(v);
  }

  // all pairwise intersections, via the cross product of dual coordinates
  std::set<std::string> point_keys;
  std::vector<std::vector<FieldElement>> points;
  for (size_t i = 0; i < canon.size(); ++i) {
    for (size_t j = i + 1; j < canon.size(); ++j) {
      const auto &a = canon[i], &b = canon[j];
      std::vector<FieldElement> pt = {a[1] * b[2] - a[2] * b[1],
                                      a[2] * b[0] - a[0] * b[2],
                                      a[0] * b[1] - a[1] * b[0]};
      for (auto& x : pt)
        if (!x.is_zero()) {
          FieldElement inv = x.inverse();
          for (auto& y : pt) y *= inv;
          break;
        }
      std::string key = pt[0].str() + "|" + pt[1].str() + "|" + pt[2].str();
      if (point_keys.insert(key).second) points.push_back(pt);
    }
  }

  std::map<int, int> census;
  for (const auto& pt : points) {
    int through = 0;
    for (const auto& l : canon) {
      FieldElement dot = FieldElement::zero(k);
      for (int t = 0; t < 3; ++t) dot += l[size_t(t)] * pt[size_t(t)];
      if (dot.is_zero()) ++through;
    }
    census[through] += 1;
  }
  return census;
}

SweepResult run_sweep(const SweepOptions& opt) {
  SweepResult out;
  out.preset = opt.preset;
  out.seed = opt.seed;
  std::mt19937_64 rng(opt.seed);
  if (opt.preset == "binary-forms") {
    gen_binary_forms(rng, opt, &out);
  } else if (opt.preset == "line-arrangements") {
    gen_line_arrangements(rng, opt, &out);
  } else if (opt.preset == "smooth-fermat") {
    gen_smooth_fermat(rng, opt, &out);
  } else {
    throw std::invalid_argument("run_sweep: unknown preset " + opt.preset);
  }
  return out;
}

std::string sweep_csv(const SweepResult& result) {
  std::ostringstream os;
  os << "schema_version,preset,seed,case,f,p,s,n,d,verdict,dimension,"
        "dimension_expected,dimension_matches,total_milnor,milnor_expected,"
        "milnor_matches,census,example_term_general,example_term_generic,"
        "generic_term_disagrees,m_computed,max_ratio,bounds_ok,newton_ok,"
        "recurrence_ok,purity_ok,max_rel_err,note\n";
  for (const SweepRow& r : result.rows) {
    os << kSchemaVersion << ',' << csv_quote(result.preset) << ',' << result.seed
       << ',' << r.index << ',' << csv_quote(r.f_text) << ',' << r.p << ','
       << r.s << ',' << r.n << ',' << r.d << ',' << r.verdict << ','
       << r.dimension << ',' << r.dimension_expected << ','
       << yesno(r.dimension_matches) << ',' << r.total_milnor << ','
       << r.milnor_expected << ',' << yesno(r.milnor_matches) << ','
       << csv_quote(r.census) << ',' << r.example_term_general << ','
       << r.example_term_generic << ',' << yesno(r.generic_term_disagrees)
       << ',' << r.m_computed << ',' << fmt_double(r.max_ratio) << ','
       << yesno(r.bounds_ok) << ',' << r.newton_ok << ',' << r.recurrence_ok
       << ',' << r.purity_ok << ',' << fmt_double(r.max_rel_err) << ','
       << csv_quote(r.note) << '\n';
  }
  return os.str();
}

}  // namespace expsum
