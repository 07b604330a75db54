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

#include "expsum/charsum.hpp"

#include <algorithm>
#include <exception>
#include <thread>

#include "expsum/ftables.hpp"

namespace expsum {

BigInt TraceHistogram::total() const {
  BigInt s = 0;
  for (const auto& c : counts) s += c;
  return s;
}

namespace {

// fE split by the exponent of the first variable: fE = sum_k slice[k] * x1^k
// with slice[k] in the remaining n-1 variables.
std::vector<FqPoly> slices_by_first_var(const FqPoly& fE) {
  int n = fE.nvars();
  FqCtx ctx = fE.ctx();
  int d1 = 0;
  for (const auto& [m, c] : fE.terms()) d1 = std::max(d1, int(m[0]));
  std::vector<FqPoly> slices(size_t(d1) + 1, FqPoly(ctx, n - 1));
  for (const auto& [m, c] : fE.terms()) {
    std::vector<uint16_t> rest(m.exps().begin() + 1, m.exps().end());
    slices[m[0]].add_term(Monomial(std::move(rest)), c);
  }
  return slices;
}

struct WorkerShared {
  const FieldDescriptor* E = nullptr;
  const FieldTables* tables = nullptr;   // null on the generic path
  const FqPoly* fE = nullptr;            // generic path evaluation target
  const std::vector<FqPoly>* slices = nullptr;  // tabled path
  uint64_t Q = 0;
  int64_t p = 0;
  int n = 0;
};

// Generic engine: decode the odometer index, evaluate, trace. The oracle
// path; also the fallback once the field outgrows the lookup tables.
void run_generic(const WorkerShared& sh, uint64_t lo, uint64_t hi,
                 std::vector<uint64_t>& local) {
  std::vector<FieldElement> x(size_t(sh.n), FieldElement::zero(sh.E));
  for (uint64_t idx = lo; idx < hi; ++idx) {
    uint64_t rem = idx;
    for (int i = 0; i < sh.n; ++i) {
      x[size_t(i)] = FieldElement::from_index(sh.E, rem % sh.Q);
      rem /= sh.Q;
    }
    int64_t t = trace_to_prime(sh.fE->evaluate(x));
    ++local[size_t(t)];
  }
}

// Tabled engine: within one assignment of the outer variables the sum is a
// univariate trace tally, and the trace is linear, so each nonzero slice
// value contributes one exp-table lookup per point. Full inner runs walk
// the multiplicative group in generator order (the histogram does not care
// about visit order); runs clipped by a chunk boundary fall back to
// per-element discrete logs so every worker count produces the identical
// histogram.
void run_tabled(const WorkerShared& sh, uint64_t lo, uint64_t hi,
                std::vector<uint64_t>& local) {
  if (lo >= hi) return;
  const FieldTables& T = *sh.tables;
  const auto& slices = *sh.slices;
  uint64_t Q = sh.Q;
  uint64_t Qm1 = Q - 1;
  int64_t p = sh.p;
  std::vector<FieldElement> outer(size_t(sh.n - 1), FieldElement::zero(sh.E));

  uint64_t o_first = lo / Q;
  uint64_t o_last = (hi - 1) / Q;
  std::vector<uint64_t> la;  // discrete logs of the nonzero slice values
  std::vector<uint64_t> kk;  // matching first-variable exponents
  std::vector<uint64_t> lw;  // running phases inside a full run
  for (uint64_t o = o_first; o <= o_last; ++o) {
    uint64_t blo = std::max(lo, o * Q);
    uint64_t bhi = std::min(hi, (o + 1) * Q);

    uint64_t rem = o;
    for (int i = 0; i + 1 < sh.n; ++i) {
      outer[size_t(i)] = FieldElement::from_index(sh.E, rem % Q);
      rem /= Q;
    }
    uint64_t t0 = 0;
    la.clear();
    kk.clear();
    for (size_t k = 0; k < slices.size(); ++k) {
      FieldElement v = slices[k].evaluate(outer);
      if (k == 0) {
        t0 = T.trtab[size_t(v.index())];
      } else if (!v.is_zero()) {
        la.push_back(T.logtab[size_t(v.index())]);
        kk.push_back(uint64_t(k));
      }
    }

    if (blo == o * Q && bhi == (o + 1) * Q) {
      ++local[size_t(t0)];  // the x1 = 0 point
      if (la.empty()) {
        local[size_t(t0)] += Qm1;
        continue;
      }
      lw = la;
      size_t terms = lw.size();
      for (uint64_t l = 0; l < Qm1; ++l) {
        uint64_t tr = t0;
        for (size_t j = 0; j < terms; ++j) {
          tr += T.trtab[T.exptab[size_t(lw[j])]];
          lw[j] += kk[j];
          if (lw[j] >= Qm1) lw[j] -= Qm1;
        }
        ++local[size_t(tr % uint64_t(p))];
      }
    } else {
      for (uint64_t idx1 = blo - o * Q; idx1 < bhi - o * Q; ++idx1) {
        if (idx1 == 0 || la.empty()) {
          ++local[size_t(t0)];
          continue;
        }
        uint64_t l = T.logtab[size_t(idx1)];
        uint64_t tr = t0;
        for (size_t j = 0; j < la.size(); ++j) {
          tr += T.trtab[T.exptab[size_t((la[j] + kk[j] * l) % Qm1)]];
        }
        ++local[size_t(tr % uint64_t(p))];
      }
    }
  }
}

}  // namespace

TraceHistogram trace_histogram(const FqPoly& f, int m, const SumOptions& opt) {
  if (f.ctx().F == nullptr) throw std::invalid_argument("polynomial without a coefficient field");
  if (f.nvars() < 1) throw std::invalid_argument("need at least one variable");
  if (m < 1) throw std::invalid_argument("extension degree must be positive");
  const FieldDescriptor* k = f.ctx().F;
  if (k->p > (int64_t(1) << 20)) {
    throw std::invalid_argument("characteristic too large for trace accounting");
  }
  const FieldDescriptor* E = field(k->p, k->s * m);
  uint64_t Q = E->q;
  int n = f.nvars();

  auto total = checked_pow(Q, unsigned(n));
  std::string job = "point enumeration over " + E->name() + "^" + std::to_string(n);
  if (!total) {
    throw BudgetExceeded(job, std::numeric_limits<uint64_t>::max(), opt.budget);
  }
  if (*total > opt.budget) throw BudgetExceeded(job, *total, opt.budget);
  uint64_t N = *total;

  FqPoly fE = embed_into(f, E);
  std::vector<FqPoly> slices = slices_by_first_var(fE);

  WorkerShared sh;
  sh.E = E;
  sh.fE = &fE;
  sh.slices = &slices;
  sh.Q = Q;
  sh.p = k->p;
  sh.n = n;
  bool tabled = !opt.force_generic && Q <= kTableMaxOrder;
  if (tabled) sh.tables = field_tables(E);

  unsigned W = opt.workers > 0 ? unsigned(opt.workers)
                               : std::max(1u, std::thread::hardware_concurrency());
  W = std::min<uint64_t>(W, 256);
  if (N > 0) W = unsigned(std::min<uint64_t>(W, N));
  if (W == 0) W = 1;
  uint64_t chunk = (N + W - 1) / W;

  std::vector<std::vector<uint64_t>> locals(W, std::vector<uint64_t>(size_t(k->p), 0));
  auto run = [&](unsigned w) {
    uint64_t lo = std::min<uint64_t>(N, uint64_t(w) * chunk);
    uint64_t hi = std::min<uint64_t>(N, lo + chunk);
    if (tabled) {
      run_tabled(sh, lo, hi, locals[w]);
    } else {
      run_generic(sh, lo, hi, locals[w]);
    }
  };

  if (W == 1) {
    run(0);
  } else {
    std::vector<std::exception_ptr> errs(W);
    std::vector<std::thread> threads;
    threads.reserve(W);
    for (unsigned w = 0; w < W; ++w) {
      threads.emplace_back([&, w] {
        try {
          run(w);
        } catch (...) {
          errs[w] = std::current_exception();
        }
      });
    }
    for (auto& t : threads) t.join();
    for (unsigned w = 0; w < W; ++w) {
      if (errs[w]) std::rethrow_exception(errs[w]);
    }
  }

  TraceHistogram h;
  h.p = k->p;
  h.q = Q;
  h.m = m;
  h.n = n;
  h.counts.assign(size_t(k->p), BigInt(0));
  for (unsigned w = 0; w < W; ++w) {
    for (size_t a = 0; a < h.counts.size(); ++a) h.counts[a] += locals[w][a];
  }
  return h;
}

CycInt char_sum(const TraceHistogram& h, int64_t b) {
  if (h.p == 0) throw std::invalid_argument("empty histogram");
  int64_t bb = b % h.p;
  if (bb < 0) bb += h.p;
  if (bb == 0) throw std::invalid_argument("character index must be nonzero mod p");
  std::vector<BigInt> raw(size_t(h.p), BigInt(0));
  for (size_t a = 0; a < h.counts.size(); ++a) {
    raw[size_t((int64_t(a) * bb) % h.p)] += h.counts[a];
  }
  return CycInt::from_coords(h.p, std::move(raw));
}

std::vector<CycInt> extension_sums(const FqPoly& f, int M, int64_t b, const SumOptions& opt) {
  if (M < 1) throw std::invalid_argument("need at least one extension");
  std::vector<CycInt> out;
  out.reserve(size_t(M));
  for (int m = 1; m <= M; ++m) out.push_back(char_sum(trace_histogram(f, m, opt), b));
  return out;
}

}  // namespace expsum
