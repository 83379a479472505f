// Copyright 2026 The chorefair Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "chorefair/cli.hpp"

#include <algorithm>
#include <chrono>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "chorefair/bench.hpp"
#include "chorefair/errors.hpp"
#include "chorefair/generate.hpp"
#include "chorefair/io.hpp"
#include "chorefair/oracle.hpp"
#include "chorefair/solve.hpp"
#include "chorefair/verify.hpp"

namespace chorefair {
namespace {

using ojson = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

ojson witness_json(const std::optional<Witness>& w) {
  if (!w) return nullptr;
  return ojson{{"envier", w->envier}, {"envied", w->envied}, {"removed", w->removed}};
}

ojson provenance_json(const std::optional<Provenance>& p) {
  if (!p) return nullptr;
  ojson params = ojson::object();
  for (const auto& [k, v] : p->params) params[k] = v;
  return ojson{{"kind", p->kind}, {"seed", p->seed}, {"params", params}};
}

void print(std::ostream& out, const ojson& j) { out << j.dump(2) << '\n'; }

int exit_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::InvariantViolation:
    case ErrorKind::FallbackRequired:
    case ErrorKind::PreconditionViolated:
      return kExitBoundViolated;
    default:
      return kExitUsage;
  }
}

struct GenerateArgs {
  std::string kind = "uniform";
  int n = 0;
  int m = 0;
  std::uint64_t seed = 1;
  std::string eps = "1/4";
  std::string p = "1/2";
  std::string out;
};

int do_generate(const GenerateArgs& a, std::ostream& out) {
  GenParams params;
  params.eps = Rational::parse(a.eps);
  params.p = Rational::parse(a.p);
  const std::string text = emit_instance(generate_instance(parse_gen_kind(a.kind), a.n, a.m, a.seed, params));
  if (a.out.empty()) {
    out << text;
  } else {
    write_text(a.out, text);
  }
  return kExitOk;
}

struct SolveArgs {
  std::string algorithm = "auto";
  std::string in;
  std::string out;
  bool timing = false;
};

int do_solve(const SolveArgs& a, std::ostream& out) {
  const InstanceFile file = read_instance(a.in);
  const auto start = Clock::now();
  const SolveResult result = run_solver(file.instance, parse_algorithm(a.algorithm));
  const double wall = ms_since(start);
  if (!a.out.empty()) {
    write_text(a.out, emit_allocation({result.allocation, !result.allocation.is_complete(file.instance.m())}));
  }
  ojson report{{"algorithm", result.algorithm},
               {"alpha", result.report.alpha.str()},
               {"bound", result.bound.str()},
               {"within_bound", result.within_bound()},
               {"witness", witness_json(result.report.witness)},
               {"partial", result.report.partial},
               {"provenance", provenance_json(file.provenance)}};
  if (a.timing) report["wall_ms"] = wall;
  print(out, report);
  return result.within_bound() ? kExitOk : kExitBoundViolated;
}

struct VerifyArgs {
  std::string in;
  std::string alloc;
  std::string alpha = "1";
};

int do_verify(const VerifyArgs& a, std::ostream& out) {
  const InstanceFile file = read_instance(a.in);
  const AllocationFile alloc = read_allocation(a.alloc);
  const ExtRational target = ExtRational::parse(a.alpha);
  try {
    alloc.allocation.validate_for(file.instance);
  } catch (const Error& e) {
    throw Error(ErrorKind::MismatchedFiles, e.what());
  }
  const VerifyReport r = min_efx_alpha(file.instance, alloc.allocation);
  const bool ok = r.alpha <= target;
  print(out, ojson{{"alpha", r.alpha.str()},
                   {"requested", target.str()},
                   {"within_bound", ok},
                   {"witness", witness_json(r.witness)},
                   {"partial", r.partial},
                   {"provenance", provenance_json(file.provenance)}});
  return ok ? kExitOk : kExitBoundViolated;
}

struct OracleArgs {
  std::string in;
  std::string out;
  std::int64_t budget = 10'000'000;
};

int do_oracle(const OracleArgs& a, std::ostream& out) {
  const InstanceFile file = read_instance(a.in);
  OracleOptions options;
  options.budget = a.budget;
  options.prune = true;
  const OracleResult r = oracle_min_alpha(file.instance, options);
  if (!a.out.empty()) write_text(a.out, emit_allocation({r.best_allocation, false}));
  ojson bundles = ojson::array();
  for (const auto& b : r.best_allocation.bundles()) bundles.push_back(b);
  print(out, ojson{{"best_alpha", r.best_alpha.str()},
                   {"efx_exists", r.best_alpha <= ExtRational(1)},
                   {"bundles", bundles},
                   {"states_examined", r.states_examined}});
  return kExitOk;
}

struct BenchArgs {
  std::string suite;
  std::uint64_t seed = 1;
  int count = 0;
  int exhaustive_m = 4;
  std::int64_t budget = 10'000'000;
  std::string out;
  bool timing = false;
};

int do_bench(const BenchArgs& a, std::ostream& out) {
  BenchOptions o;
  o.seed = a.seed;
  o.count = a.count;
  o.exhaustive_m = a.exhaustive_m;
  o.oracle_states = a.budget;
  const auto start = Clock::now();
  const BenchReport report = run_bench(a.suite, o);
  const double wall = ms_since(start);
  if (!a.out.empty()) write_text(a.out, report_csv(report));
  out << report_table(report);
  if (a.timing) out << "wall time: " << static_cast<long>(wall) << " ms\n";
  return report.ok() ? kExitOk : kExitBoundViolated;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Approximately envy-free chore allocation", "chorefair"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Write a seeded random instance");
  g->add_option("--kind", gen.kind, "uniform | bivalued | ido | identical")->capture_default_str();
  g->add_option("--n", gen.n, "Number of agents")->required();
  g->add_option("--m", gen.m, "Number of items")->required();
  g->add_option("--seed", gen.seed)->capture_default_str();
  g->add_option("--eps", gen.eps, "Bi-valued small cost (large cost is 1)")->capture_default_str();
  g->add_option("--p", gen.p, "Bi-valued probability of a large entry")->capture_default_str();
  g->add_option("--out", gen.out, "Output path (default: stdout)");

  SolveArgs sol;
  auto* s = app.add_subcommand("solve", "Compute an allocation and report its EFX factor");
  s->add_option("--algorithm", sol.algorithm, "auto | three | general | bi3 | bin | trivial")
      ->capture_default_str();
  s->add_option("--in", sol.in, "Instance file")->required();
  s->add_option("--out", sol.out, "Allocation output path");
  s->add_flag("--timing", sol.timing, "Include wall time in the report");

  VerifyArgs ver;
  auto* v = app.add_subcommand("verify", "Exact EFX factor of an allocation file");
  v->add_option("--in", ver.in, "Instance file")->required();
  v->add_option("--alloc", ver.alloc, "Allocation file")->required();
  v->add_option("--alpha", ver.alpha, "Factor to test against")->capture_default_str();

  OracleArgs orc;
  auto* o = app.add_subcommand("oracle", "Best EFX factor over all allocations");
  o->add_option("--in", orc.in, "Instance file")->required();
  o->add_option("--budget", orc.budget, "Largest n^m to enumerate")->capture_default_str();
  o->add_option("--out", orc.out, "Write the best allocation here");

  BenchArgs ben;
  auto* b = app.add_subcommand("bench", "Run a seeded benchmark suite");
  b->add_option("--suite", ben.suite, "Suite name")->required();
  b->add_option("--seed", ben.seed, "Base seed")->capture_default_str();
  b->add_option("--count", ben.count, "Instances per stratum (0: suite default)");
  b->add_option("--m", ben.exhaustive_m, "Largest m enumerated exhaustively (bi3-exhaustive)")
      ->capture_default_str();
  b->add_option("--budget", ben.budget, "Largest n^m given to the oracle (oracle-cross)")
      ->capture_default_str();
  b->add_option("--out", ben.out, "CSV output path");
  b->add_flag("--timing", ben.timing, "Print wall time after the table");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*g) return do_generate(gen, out);
    if (*s) return do_solve(sol, out);
    if (*v) return do_verify(ver, out);
    if (*o) return do_oracle(orc, out);
    if (*b) return do_bench(ben, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    for (const Issue& issue : e.issues()) {
      err << "  " << to_string(issue.kind);
      if (issue.row >= 0) err << " at row " << issue.row;
      if (issue.col >= 0) err << " col " << issue.col;
      err << ": " << issue.detail << '\n';
    }
    return kExitUsage;
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_for(e);
  }
  return kExitUsage;
}

}  // namespace chorefair
