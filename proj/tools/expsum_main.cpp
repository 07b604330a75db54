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

// Command line front end. Subcommands:
//
//   sum       one exact character sum with its trace histogram
//   verify    the full pipeline: hypotheses, dimension, bounds, recovery
//   sweep     seeded families of inputs, one CSV row per case
//   selftest  embedded oracle suite, nonzero exit on any failure
//
// Machine-readable output (JSON, CSV) goes to stdout, human-readable text to
// stderr, so pipelines can consume reports without scraping. Exit code 0
// covers every completed run including negative verdicts; a nonzero exit
// means the tool itself failed (bad input, budget, internal inconsistency).

#include <complex>
#include <cstdint>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "expsum/charsum.hpp"
#include "expsum/ff.hpp"
#include "expsum/mpoly.hpp"
#include "expsum/report.hpp"
#include "expsum/selftest.hpp"
#include "expsum/sweep.hpp"
#include "expsum/verifier.hpp"

namespace {

using namespace expsum;

constexpr uint64_t kDefaultBudget = uint64_t(1) << 40;

struct SumArgs {
  int64_t p = 0;
  int s = 1;
  int n = 1;
  std::string f_text;
  int m = 1;
  int64_t b = 1;
  uint64_t budget = kDefaultBudget;
  int workers = 0;
  bool json = false;
};

int run_sum(const SumArgs& a) {
  FqPoly f = parse_poly(a.f_text, a.n, FqCtx(field(a.p, a.s)));
  SumOptions opt;
  opt.budget = a.budget;
  opt.workers = a.workers;
  TraceHistogram h = trace_histogram(f, a.m, opt);
  CycInt S = char_sum(h, a.b);
  std::complex<double> z = to_complex(S, 1);

  std::ostringstream text;
  text << "f = " << f.str("x") << " over " << f.ctx().F->name() << ", extension degree "
       << a.m << ", character b = " << a.b << "\n";
  text << "trace counts:";
  for (size_t i = 0; i < h.counts.size(); ++i) text << " " << h.counts[i].str();
  text << "\n";
  text << "S = " << S.str() << "\n";
  text << std::setprecision(12) << "  numerically " << z.real();
  if (z.imag() >= 0) text << " + " << z.imag() << "i";
  else text << " - " << -z.imag() << "i";
  text << ", |S| = " << std::abs(z) << "\n";
  std::cerr << text.str();

  if (a.json) {
    Json out;
    out["schema_version"] = kSchemaVersion;
    out["kind"] = "sum";
    out["input"] = Json{{"p", a.p},
                        {"s", a.s},
                        {"q", int64_t(f.ctx().F->q)},
                        {"n", a.n},
                        {"m", a.m},
                        {"f", f.str("x")},
                        {"character", a.b}};
    out["histogram"] = json_of(h);
    out["sum"] = Json{{"exact", json_of(S)},
                      {"text", S.str()},
                      {"value", Json{{"re", z.real()}, {"im", z.imag()}, {"abs", std::abs(z)}}}};
    std::cout << out.dump(2) << "\n";
  }
  return 0;
}

struct VerifyArgs {
  int64_t p = 0;
  int s = 1;
  int n = 1;
  std::string f_text;
  int m_max = 0;
  int64_t b = 1;
  uint64_t budget = kDefaultBudget;
  int workers = 0;
  bool transversal = false;
  int e_max = 6;
  bool json = false;
};

int run_verify(const VerifyArgs& a) {
  FqPoly f = parse_poly(a.f_text, a.n, FqCtx(field(a.p, a.s)));
  VerifyOptions opt;
  opt.character = a.b;
  opt.m_max = a.m_max;
  opt.sum_budget = a.budget;
  opt.workers = a.workers;
  opt.transversal = a.transversal;
  opt.transversal_e_max = a.e_max;
  VerificationReport rep = verify(f, opt);
  std::cerr << render_text(rep);
  if (a.json) std::cout << json_of(rep).dump(2) << "\n";
  return 0;
}

struct SweepArgs {
  std::string preset;
  uint64_t seed = 12345;
  int cases = 20;
  int m_max = 2;
  uint64_t budget = uint64_t(1) << 24;
  int workers = 0;
};

int run_sweep_cmd(const SweepArgs& a) {
  SweepOptions opt;
  opt.preset = a.preset;
  opt.seed = a.seed;
  opt.cases = a.cases;
  opt.m_max = a.m_max;
  opt.budget = a.budget;
  opt.workers = a.workers;
  std::cerr << "sweep preset " << a.preset << ", seed " << a.seed << ", " << a.cases
            << " cases\n";
  SweepResult res = run_sweep(opt);
  std::cout << sweep_csv(res);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact exponential sums over finite fields, with the singular data "
               "that predicts their size"};
  app.require_subcommand(1);

  SumArgs sa;
  CLI::App* sum = app.add_subcommand("sum", "one exact character sum and its trace histogram");
  sum->add_option("--p", sa.p, "characteristic (prime)")->required();
  sum->add_option("--s", sa.s, "coefficient field degree over the prime field")->capture_default_str();
  sum->add_option("--n", sa.n, "number of variables")->capture_default_str();
  sum->add_option("--f", sa.f_text, "polynomial in x1..xn")->required();
  sum->add_option("--m", sa.m, "extension degree to sum over")->capture_default_str();
  sum->add_option("--b", sa.b, "additive character index, 1..p-1")->capture_default_str();
  sum->add_option("--budget", sa.budget, "point evaluation budget")->capture_default_str()
      ->envname("EXPSUM_BUDGET");
  sum->add_option("--workers", sa.workers, "worker threads, 0 = all cores")->capture_default_str();
  sum->add_flag("--json", sa.json, "emit the JSON report on stdout");

  VerifyArgs va;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "hypotheses, predicted dimension, bounds, recovery");
  verify_cmd->add_option("--p", va.p, "characteristic (prime)")->required();
  verify_cmd->add_option("--s", va.s, "coefficient field degree over the prime field")->capture_default_str();
  verify_cmd->add_option("--n", va.n, "number of variables")->capture_default_str();
  verify_cmd->add_option("--f", va.f_text, "polynomial in x1..xn")->required();
  verify_cmd->add_option("--m-max", va.m_max, "extension sums to compute, 0 = automatic")->capture_default_str();
  verify_cmd->add_option("--b", va.b, "additive character index, 1..p-1")->capture_default_str();
  verify_cmd->add_option("--budget", va.budget, "point evaluation budget")->capture_default_str()
      ->envname("EXPSUM_BUDGET");
  verify_cmd->add_option("--workers", va.workers, "worker threads, 0 = all cores")->capture_default_str();
  verify_cmd->add_flag("--transversal", va.transversal,
                       "also search for a transversal hyperplane");
  verify_cmd->add_option("--e-max", va.e_max,
                         "extension degree bound for the transversal search")->capture_default_str();
  verify_cmd->add_flag("--json", va.json, "emit the JSON report on stdout");

  SweepArgs wa;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "seeded input families, CSV on stdout");
  sweep_cmd
      ->add_option("--preset", wa.preset,
                   "binary-forms | line-arrangements | smooth-fermat")
      ->required();
  sweep_cmd->add_option("--seed", wa.seed, "generator seed, printed for reproducibility")->capture_default_str();
  sweep_cmd->add_option("--cases", wa.cases, "number of rows")->capture_default_str();
  sweep_cmd->add_option("--m-max", wa.m_max, "extension sums per case")->capture_default_str();
  sweep_cmd->add_option("--budget", wa.budget, "point evaluation budget per case")->capture_default_str()
      ->envname("EXPSUM_BUDGET");
  sweep_cmd->add_option("--workers", wa.workers, "worker threads, 0 = all cores")->capture_default_str();

  CLI::App* selftest_cmd =
      app.add_subcommand("selftest", "embedded oracle suite, nonzero exit on failure");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sum->parsed()) return run_sum(sa);
    if (verify_cmd->parsed()) return run_verify(va);
    if (sweep_cmd->parsed()) return run_sweep_cmd(wa);
    if (selftest_cmd->parsed()) return expsum::run_selftest(std::cout);
  } catch (const expsum::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
