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

#include "expsum/report.hpp"

#include <sstream>

namespace expsum {

namespace {

const char* germ_status_str(GermStatus s) {
  switch (s) {
    case GermStatus::kIsolated: return "isolated";
    case GermStatus::kNotIsolated: return "not-isolated";
    case GermStatus::kUndetermined: return "undetermined";
  }
  return "?";
}

}  // namespace

Json json_of(const CycInt& v) {
  Json j;
  j["p"] = v.prime();
  Json coeffs = Json::array();
  for (const BigInt& c : v.coeffs()) coeffs.push_back(c.str());
  j["coeffs"] = coeffs;
  return j;
}

Json json_of(const TraceHistogram& h) {
  Json j;
  j["p"] = h.p;
  j["q"] = h.q;
  j["m"] = h.m;
  j["n"] = h.n;
  Json counts = Json::array();
  for (const BigInt& c : h.counts) counts.push_back(c.str());
  j["counts"] = counts;
  return j;
}

Json json_of(const SingularAnalysis& s) {
  Json j;
  j["finite"] = s.finite;
  j["infinite_certified"] = s.infinite_certified;
  j["complete"] = s.complete;
  j["residue_degree_bound"] = s.e_bound;
  j["total_milnor"] = s.total_milnor.str();
  j["all_isolated_weighted_homogeneous"] = s.all_isolated_wh;
  Json pts = Json::array();
  for (const SingularPointInfo& pt : s.points) {
    Json pj;
    pj["point"] = pt.rep.str();
    pj["field"] = pt.rep.E ? pt.rep.E->name() : "";
    pj["residue_degree"] = pt.rep.degree;
    pj["status"] = germ_status_str(pt.germ.status);
    if (pt.germ.status == GermStatus::kIsolated)
      pj["milnor"] = std::to_string(pt.germ.milnor);
    pj["weighted_homogeneous"] = pt.germ.weighted_homogeneous;
    if (pt.germ.weighted_homogeneous) {
      pj["via_tangent_cone"] = pt.germ.via_tangent_cone;
      pj["weights"] = pt.germ.ws.weights;
      pj["weighted_degree"] = pt.germ.ws.delta;
    }
    if (pt.germ.orlik) pj["weight_product_formula"] = pt.germ.orlik->str();
    pj["method"] = pt.germ.method;
    if (!pt.germ.note.empty()) pj["note"] = pt.germ.note;
    pts.push_back(pj);
  }
  j["points"] = pts;
  if (!s.note.empty()) j["note"] = s.note;
  return j;
}

Json json_of(const EigenvalueRecovery& r) {
  Json j;
  j["dimension"] = r.dim;
  j["sums_used"] = r.m_used;
  j["newton_ok"] = r.newton_ok;
  j["recurrence_ok"] = r.recurrence_ok;
  j["purity_ok"] = r.purity_ok;
  j["max_relative_error"] = r.max_rel_err;
  if (!r.failure.empty()) j["failure"] = r.failure;
  Json elem = Json::array();
  for (const CycInt& e : r.elementary) elem.push_back(json_of(e));
  j["elementary"] = elem;
  Json mods = Json::array();
  for (const auto& per_b : r.moduli) mods.push_back(per_b);
  j["moduli"] = mods;
  return j;
}

Json json_of(const TransversalReport& t) {
  Json j;
  j["extension_degree"] = t.e;
  Json hyp = Json::array();
  for (const FieldElement& a : t.hyperplane) hyp.push_back(a.str());
  j["hyperplane"] = hyp;
  Json rows = Json::array();
  for (const auto& row : t.change) {
    Json rj = Json::array();
    for (const FieldElement& a : row) rj.push_back(a.str());
    rows.push_back(rj);
  }
  j["change_of_coordinates"] = rows;
  return j;
}

Json json_of(const VerificationReport& rep) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "verification";

  Json in;
  in["p"] = rep.p;
  in["s"] = rep.s;
  in["q"] = rep.q;
  in["n"] = rep.n;
  in["d"] = rep.d;
  in["f"] = rep.f_text;
  in["top_form"] = rep.top_form_text;
  in["sub_form"] = rep.sub_form_text;
  j["input"] = in;

  Json hyp;
  hyp["isolated_weighted_homogeneous"] =
      Json{{"state", to_string(rep.h1)}, {"note", rep.h1_note}};
  hyp["subform_avoids_singular_points"] =
      Json{{"state", to_string(rep.h2)}, {"note", rep.h2_note}};
  Json factors = Json::array();
  for (const BigInt& f : rep.h3_factors) factors.push_back(f.str());
  hyp["characteristic_coprime"] = Json{{"state", to_string(rep.h3)},
                                       {"note", rep.h3_note},
                                       {"factors", factors}};
  hyp["verdict"] = to_string(rep.verdict);
  hyp["verdict_note"] = rep.verdict_note;
  j["hypotheses"] = hyp;

  j["singular_locus"] = json_of(rep.sing);

  Json pred;
  if (rep.dimension) {
    pred["dimension"] = rep.dimension->str();
  } else {
    pred["dimension"] = nullptr;
  }
  if (rep.euler) {
    Json e;
    e["vanishing_cycle_sign"] = rep.euler->sign;
    e["chi_smooth_fiber"] = rep.euler->chi_smooth_fiber.str();
    e["chi_top_form"] = rep.euler->chi_top_form.str();
    e["chi_affine_fiber"] = rep.euler->chi_affine_fiber.str();
    e["dimension_via_chi"] = rep.euler->dim_via_chi.str();
    pred["euler"] = e;
  } else {
    pred["euler"] = nullptr;
  }
  j["predictions"] = pred;

  Json crit;
  if (rep.critical.finite) {
    crit["finite"] = *rep.critical.finite;
  } else {
    crit["finite"] = nullptr;
  }
  crit["dimension_bound"] = rep.critical.dimension_bound;
  if (!rep.critical.note.empty()) crit["note"] = rep.critical.note;
  j["critical_locus"] = crit;

  if (rep.transversal) {
    j["transversal"] = json_of(*rep.transversal);
  } else {
    j["transversal"] = nullptr;
  }

  Json sums;
  sums["character"] = rep.character;
  sums["m_requested"] = rep.m_requested;
  sums["m_computed"] = rep.sums.size();
  if (rep.base_histogram) {
    sums["base_histogram"] = json_of(*rep.base_histogram);
  } else {
    sums["base_histogram"] = nullptr;
  }
  Json values = Json::array();
  for (size_t i = 0; i < rep.sums.size(); ++i) {
    Json sj;
    sj["m"] = i + 1;
    sj["value"] = json_of(rep.sums[i]);
    sj["text"] = rep.sums[i].str();
    values.push_back(sj);
  }
  sums["values"] = values;
  Json bounds = Json::array();
  for (const BoundCheck& bc : rep.bounds) {
    Json bj;
    bj["m"] = bc.m;
    bj["abs_value"] = bc.abs_value;
    bj["bound"] = bc.bound;
    bj["ratio"] = bc.ratio;
    bj["ok"] = bc.ok;
    bounds.push_back(bj);
  }
  sums["bound_checks"] = bounds;
  if (!rep.sums_note.empty()) sums["note"] = rep.sums_note;
  j["sums"] = sums;

  if (rep.recovery) {
    j["recovery"] = json_of(*rep.recovery);
  } else {
    j["recovery"] = nullptr;
  }
  if (!rep.recovery_note.empty()) j["recovery_note"] = rep.recovery_note;

  Json budgets;
  budgets["sum"] = rep.sum_budget;
  budgets["scan"] = rep.scan_budget;
  j["budgets"] = budgets;
  return j;
}

std::string render_text(const VerificationReport& rep) {
  std::ostringstream out;
  out << "f = " << rep.f_text << " over " << field(rep.p, rep.s)->name()
      << ", n = " << rep.n << ", d = " << rep.d << "\n";
  if (rep.verdict == Verdict::kNotApplicable) {
    out << "verdict: " << to_string(rep.verdict) << " (" << rep.verdict_note
        << ")\n";
    return out.str();
  }
  out << "top form " << rep.top_form_text << ", next form " << rep.sub_form_text
      << "\n";

  out << "singular locus: ";
  if (rep.sing.infinite_certified) {
    out << "positive-dimensional";
  } else if (!rep.sing.finite) {
    out << "not certified";
  } else {
    out << rep.sing.points.size() << " closed point"
        << (rep.sing.points.size() == 1 ? "" : "s") << ", total Milnor number "
        << rep.sing.total_milnor.str();
  }
  if (!rep.sing.note.empty()) out << " [" << rep.sing.note << "]";
  out << "\n";
  for (const SingularPointInfo& pt : rep.sing.points) {
    out << "  " << pt.rep.str() << "  deg " << pt.rep.degree << "  "
        << germ_status_str(pt.germ.status);
    if (pt.germ.status == GermStatus::kIsolated)
      out << "  mu = " << pt.germ.milnor;
    if (pt.germ.weighted_homogeneous) {
      out << "  weights (";
      for (size_t i = 0; i < pt.germ.ws.weights.size(); ++i)
        out << (i ? "," : "") << pt.germ.ws.weights[i];
      out << ") delta " << pt.germ.ws.delta;
    }
    out << "  [" << pt.germ.method << "]";
    if (!pt.germ.note.empty()) out << "  " << pt.germ.note;
    out << "\n";
  }

  out << "hypotheses: (i) " << to_string(rep.h1) << "  (ii) " << to_string(rep.h2)
      << "  (iii) " << to_string(rep.h3) << "  ->  " << to_string(rep.verdict)
      << "\n";
  if (rep.h1 != HypoState::kHolds) out << "  (i) " << rep.h1_note << "\n";
  if (rep.h2 != HypoState::kHolds) out << "  (ii) " << rep.h2_note << "\n";
  if (rep.h3 != HypoState::kHolds) out << "  (iii) " << rep.h3_note << "\n";

  if (rep.dimension) {
    out << "predicted dimension D = " << rep.dimension->str();
    if (rep.euler)
      out << "  (Euler chain: chi_X = " << rep.euler->chi_top_form.str()
          << ", agrees)";
    out << "\n";
  }

  out << "critical locus of f: ";
  if (!rep.critical.finite) {
    out << "not certified";
  } else if (*rep.critical.finite) {
    out << "finite (point bound " << rep.critical.dimension_bound << ")";
  } else {
    out << "infinite";
  }
  if (!rep.critical.note.empty()) out << " [" << rep.critical.note << "]";
  out << "\n";

  if (rep.transversal) {
    out << "transversal hyperplane over extension degree " << rep.transversal->e
        << ": (";
    for (size_t i = 0; i < rep.transversal->hyperplane.size(); ++i)
      out << (i ? " : " : "") << rep.transversal->hyperplane[i].str();
    out << ")\n";
  }

  out << "sums: computed S_1..S_" << rep.sums.size() << " of " << rep.m_requested
      << " requested, character b = " << rep.character << "\n";
  for (size_t i = 0; i < rep.sums.size(); ++i) {
    out << "  m = " << (i + 1) << "  S = " << rep.sums[i].str();
    if (i < rep.bounds.size()) {
      const BoundCheck& bc = rep.bounds[i];
      out << "  |S| = " << bc.abs_value << "  D*q^(mn/2) = " << bc.bound
          << "  ratio = " << bc.ratio << (bc.ok ? "  ok" : "  VIOLATED");
    }
    out << "\n";
  }
  if (!rep.sums_note.empty()) out << "  " << rep.sums_note << "\n";

  if (rep.recovery) {
    const EigenvalueRecovery& r = *rep.recovery;
    out << "recovery: newton " << (r.newton_ok ? "ok" : "FAILED")
        << ", recurrence " << (r.recurrence_ok ? "ok" : "FAILED") << ", purity "
        << (r.purity_ok ? "ok" : "FAILED") << " (max rel err " << r.max_rel_err
        << ")\n";
    if (!r.failure.empty()) out << "  " << r.failure << "\n";
  } else if (!rep.recovery_note.empty()) {
    out << "recovery: skipped (" << rep.recovery_note << ")\n";
  }
  return out.str();
}

}  // namespace expsum
