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

#include "expsum/ftables.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace expsum {

namespace {

std::unique_ptr<FieldTables> build_tables(const FieldDescriptor* F) {
  if (F->q > kTableMaxOrder) {
    throw std::invalid_argument("field order too large for lookup tables");
  }
  auto t = std::make_unique<FieldTables>();
  t->F = F;
  t->Q = F->q;
  uint64_t Q = F->q;

  // generator: smallest odometer index with multiplicative order Q - 1
  FieldElement g = FieldElement::one(F);
  uint64_t gidx = 1;
  if (Q > 2) {
    for (gidx = 2; gidx < Q; ++gidx) {
      FieldElement cand = FieldElement::from_index(F, gidx);
      FieldElement acc = cand;
      uint64_t ord = 1;
      FieldElement one = FieldElement::one(F);
      while (acc != one) {
        acc *= cand;
        ++ord;
        if (ord > Q - 1) throw std::logic_error("order walk exceeded group size");
      }
      if (ord == Q - 1) {
        g = cand;
        break;
      }
    }
    if (gidx >= Q) throw std::logic_error("no generator found");
  }
  t->gen_index = gidx;

  t->logtab.assign(size_t(Q), 0);
  t->exptab.assign(size_t(Q - 1), 0);
  FieldElement pw = FieldElement::one(F);
  for (uint64_t l = 0; l < Q - 1; ++l) {
    uint64_t idx = pw.index();
    t->exptab[size_t(l)] = uint32_t(idx);
    t->logtab[size_t(idx)] = uint32_t(l);
    pw *= g;
  }
  if (pw != FieldElement::one(F)) throw std::logic_error("generator order mismatch");

  t->trtab.assign(size_t(Q), 0);
  for (uint64_t i = 0; i < Q; ++i) {
    t->trtab[size_t(i)] = uint32_t(trace_to_prime(FieldElement::from_index(F, i)));
  }
  return t;
}

struct TableCache {
  std::mutex mu;
  std::map<const FieldDescriptor*, std::unique_ptr<FieldTables>> cache;
};

TableCache& table_cache() {
  static TableCache* c = new TableCache();
  return *c;
}

}  // namespace

const FieldTables* field_tables(const FieldDescriptor* F) {
  TableCache& c = table_cache();
  std::lock_guard<std::mutex> lock(c.mu);
  auto it = c.cache.find(F);
  if (it != c.cache.end()) return it->second.get();
  auto t = build_tables(F);
  const FieldTables* raw = t.get();
  c.cache.emplace(F, std::move(t));
  return raw;
}

}  // namespace expsum
