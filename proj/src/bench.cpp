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

#include "chorefair/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <iomanip>
#include <sstream>
#include <thread>

#include "chorefair/bivalued.hpp"
#include "chorefair/errors.hpp"
#include "chorefair/general_n.hpp"
#include "chorefair/generate.hpp"
#include "chorefair/oracle.hpp"
#include "chorefair/primitives.hpp"
#include "chorefair/three_agents.hpp"
#include "chorefair/verify.hpp"

namespace chorefair {
namespace {

constexpr std::size_t kMaxFailureLines = 20;
const Rational kEps4[4] = {Rational(0), Rational(1, 4), Rational(1, 2), Rational(9, 10)};
const Rational kEpsBi3[4] = {Rational(0), Rational(1, 3), Rational(2, 3), Rational(9, 10)};

struct Suite {
  long count;
  std::function<CaseResult(long)> run;
};

int count_or(const BenchOptions& o, int fallback) { return o.count > 0 ? o.count : fallback; }

std::string pad2(long v) {
  std::ostringstream os;
  os << std::setw(2) << std::setfill('0') << v;
  return os.str();
}

Instance from_bits(const std::vector<std::vector<bool>>& large, const Rational& lo,
                   const Rational& hi) {
  std::vector<std::vector<Rational>> rows;
  for (const auto& r : large) {
    std::vector<Rational> row;
    for (bool b : r) row.push_back(b ? hi : lo);
    rows.push_back(std::move(row));
  }
  const int m = large.empty() ? 0 : static_cast<int>(large.front().size());
  return Instance(static_cast<int>(large.size()), m, std::move(rows));
}

void alpha_check(CaseResult& r) {
  r.check("alpha-within-bound", r.alpha <= ExtRational(r.bound),
          "alpha " + r.alpha.str() + " exceeds bound " + r.bound.str());
}

// ---- three agents --------------------------------------------------------

Instance three_instance(const BenchOptions& o, long k) {
  const std::uint64_t seed = derive_seed(o.seed, static_cast<std::uint64_t>(k));
  Rng rng(seed);
  const int m = static_cast<int>(rng.between(3, 40));
  const GenKind kind = k % 2 ? GenKind::Ido : GenKind::Uniform;
  return normalize(generate_instance(kind, 3, m, derive_seed(seed, 0)).instance).instance;
}

CaseResult three_case(const Instance& inst) {
  CaseResult r;
  const auto tr = three::solve_three_traced(inst);
  r.group = "three/" + (tr.route ? three::case_name(*tr.route) : std::string("few-items"));
  if (tr.one_small_fallback) r.group += "+fallback";
  r.bound = 5;
  r.alpha = min_efx_alpha(inst, tr.allocation).alpha;
  r.check("complete", tr.allocation.is_complete(inst.m()), "allocation incomplete");
  alpha_check(r);
  if (tr.route && std::holds_alternative<three::TwoSmall>(*tr.route) && tr.placement) {
    const auto& ts = std::get<three::TwoSmall>(*tr.route);
    bool ok = true;
    std::string detail;
    for (Agent i : ts.small) {
      for (std::size_t j = 0; j < 3; ++j) {
        const Rational v = inst.bundle_cost(i, (*tr.placement)[j]);
        if (v < Rational(1, 8) || v > Rational(5, 8)) {
          ok = false;
          detail = "c_" + std::to_string(i) + "(S_" + std::to_string(j) + ") = " + v.str();
        }
      }
    }
    r.check("two-small-placement-bounds", ok, detail);
  }
  return r;
}

Suite three_suite(const BenchOptions& o) {
  return {count_or(o, 1000), [o](long k) { return three_case(three_instance(o, k)); }};
}

// ---- general n -----------------------------------------------------------

Instance general_instance(const BenchOptions& o, long k, int per_n) {
  const int n = 4 + static_cast<int>(k / per_n);
  const long j = k % per_n;
  const std::uint64_t seed = derive_seed(o.seed, static_cast<std::uint64_t>(k));
  Rng rng(seed);
  GenParams params;
  int m;
  if (j % 2 == 0) {
    m = static_cast<int>(rng.between(1, 60));
  } else {
    // Near-flat rows with many items keep clear of the tail fallback when n=4.
    m = static_cast<int>(rng.between(52, 60));
    params.min_cost = 900;
  }
  return normalize(generate_instance(GenKind::Uniform, n, m, derive_seed(seed, 0), params).instance)
      .instance;
}

CaseResult general_case(const Instance& inst) {
  const int n = inst.n();
  CaseResult r;
  const auto tr = general::solve_general_traced(inst);
  r.group = "general/n=" + std::to_string(n) +
            (tr.fallback ? "/tail" : (tr.sets ? "/partition" : "/few-items"));
  r.bound = Rational(3L * n * n);
  r.alpha = min_efx_alpha(inst, tr.allocation).alpha;
  r.check("complete", tr.allocation.is_complete(inst.m()), "allocation incomplete");
  alpha_check(r);
  if (tr.sets && !tr.n_minus.empty()) {
    const Rational denom(2L * n * n + 2L * n);
    bool ok = true;
    std::string detail;
    for (Agent i : tr.n_minus) {
      const Rational floor = inst.bundle_cost(i, tr.sets->M_minus) / denom;
      for (std::size_t j = 0; j < tr.partition.size(); ++j) {
        if (inst.bundle_cost(i, tr.partition[j]) < floor) {
          ok = false;
          detail = "agent " + std::to_string(i) + " bundle " + std::to_string(j);
        }
      }
    }
    r.check("even-partition-lower-bound", ok, detail);
  }
  return r;
}

Suite general_suite(const BenchOptions& o) {
  const int per_n = count_or(o, 1000);
  return {4L * per_n,
          [o, per_n](long k) { return general_case(general_instance(o, k, per_n)); }};
}

// ---- bi-valued, three agents ---------------------------------------------

struct Bi3Layout {
  std::vector<long> offset;  // first case index of each exhaustive m
  long exhaustive = 0;
  long seeded = 0;
};

Bi3Layout bi3_layout(const BenchOptions& o) {
  Bi3Layout l;
  for (int m = 0; m <= o.exhaustive_m; ++m) {
    l.offset.push_back(l.exhaustive);
    l.exhaustive += (1L << (3 * m)) * 4;
  }
  l.seeded = count_or(o, 5000);
  return l;
}

Instance bi3_instance(const BenchOptions& o, const Bi3Layout& l, long k) {
  if (k < l.exhaustive) {
    int m = static_cast<int>(l.offset.size()) - 1;
    while (l.offset[m] > k) --m;
    const long local = k - l.offset[m];
    const Rational& eps = kEpsBi3[local % 4];
    const long mask = local / 4;
    std::vector<std::vector<bool>> bits(3, std::vector<bool>(m));
    for (int i = 0; i < 3; ++i) {
      for (int e = 0; e < m; ++e) bits[i][e] = (mask >> (i * m + e)) & 1;
    }
    return from_bits(bits, eps, Rational(1));
  }
  const long j = k - l.exhaustive;
  const std::uint64_t seed = derive_seed(o.seed, static_cast<std::uint64_t>(k));
  GenParams params;
  params.eps = kEpsBi3[(j / 8) % 4];
  return generate_instance(GenKind::BiValued, 3, 5 + static_cast<int>(j % 8), seed, params).instance;
}

std::vector<std::string> structure_violations(const Instance& inst) {
  const auto profile = bi::detect_bivalued(inst);
  if (!profile) return {"not bi-valued"};
  const Allocation x0 = bi::partial_allocation_small(*profile);
  return bi::partial_allocation_violations(*profile, x0, bi::build_agent_groups(x0, *profile));
}

CaseResult bi3_case(const Instance& inst, bool with_oracle) {
  CaseResult r;
  const auto tr = bi::solve_bi_three_traced(inst);
  r.group = "bi3/" + bi::case_name(tr.route);
  r.bound = 1;
  r.alpha = min_efx_alpha(inst, tr.allocation).alpha;
  r.check("complete", tr.allocation.is_complete(inst.m()), "allocation incomplete");
  alpha_check(r);
  const auto v = structure_violations(inst);
  r.check("partial-allocation-properties", v.empty(), v.empty() ? "" : v.front());
  if (with_oracle && inst.m() <= 6) {
    r.check("oracle-efx-exists", efx_exists(inst), "oracle found no EFX allocation");
  }
  return r;
}

Suite bi3_suite(const BenchOptions& o) {
  const Bi3Layout l = bi3_layout(o);
  return {l.exhaustive + l.seeded, [o, l](long k) { return bi3_case(bi3_instance(o, l, k), true); }};
}

// ---- bi-valued, n >= 4 ---------------------------------------------------

Instance bin_instance(const BenchOptions& o, long k, int per_n) {
  const int n = 4 + static_cast<int>(k / per_n);
  const long j = k % per_n;
  Rng rng(derive_seed(o.seed, static_cast<std::uint64_t>(k)));
  const Rational& eps = kEps4[j % 4];
  // Strata: |M+| >= n, |M+| = n-1, |M+| <= n-2.
  int q = 0;
  switch ((j / 4) % 3) {
    case 0: q = static_cast<int>(rng.between(n, n + 5)); break;
    case 1: q = n - 1; break;
    default: q = static_cast<int>(rng.between(0, n - 2)); break;
  }
  // Half of the |M+| <= n-2 stratum uses few items, where X0 often leaves a
  // bundle empty next to a larger one.
  const bool few = (j / 4) % 3 == 2 && (j / 12) % 2 == 1;
  const int m = static_cast<int>(few ? rng.between(q + 1, 3 * n) : rng.between(std::max(q, 1), 50));
  std::vector<std::uint64_t> large_num(n);
  for (auto& v : large_num) v = rng.between(few ? 3 : 1, 4);
  // Per-agent density of large entries; agents that find almost everything
  // large leave empty X0 bundles and drive the rebalancing branch.
  std::vector<Item> column(m);
  for (int e = 0; e < m; ++e) column[e] = e;
  rng.shuffle(column);
  std::vector<std::vector<bool>> bits(n, std::vector<bool>(m, true));
  for (int t = q; t < m; ++t) {
    const Item e = column[t];
    for (Agent i = 0; i < n; ++i) bits[i][e] = rng.chance(large_num[i], 4);
    bits[rng.below(n)][e] = false;
  }
  const Rational scale(rng.between(1, 5));
  return from_bits(bits, eps * scale, scale);
}

CaseResult bin_case(const Instance& inst) {
  const int n = inst.n();
  CaseResult r;
  const auto tr = bi::solve_bi_general_traced(inst);
  r.group = "bin/n=" + std::to_string(n) + "/" + bi::branch_name(tr.branch);
  const bool two = tr.branch == bi::BiGeneralBranch::ManyLarge ||
                   tr.branch == bi::BiGeneralBranch::NMinusOneLarge;
  r.bound = Rational(two ? 2 : n - 1);
  r.alpha = min_efx_alpha(inst, tr.allocation).alpha;
  r.check("complete", tr.allocation.is_complete(inst.m()), "allocation incomplete");
  alpha_check(r);
  if (tr.branch == bi::BiGeneralBranch::FewLargeEfx ||
      tr.branch == bi::BiGeneralBranch::FewLargeNotEfx) {
    r.check("partial-allocation-properties", tr.violations.empty(),
            tr.violations.empty() ? "" : tr.violations.front());
  } else {
    r.check("solver-invariants", tr.violations.empty(),
            tr.violations.empty() ? "" : tr.violations.front());
  }
  if (tr.leftover_replaced) r.group += "+leftover-redistributed";
  return r;
}

Suite bin_suite(const BenchOptions& o) {
  const int per_n = count_or(o, 1000);
  return {4L * per_n, [o, per_n](long k) { return bin_case(bin_instance(o, k, per_n)); }};
}

// ---- tail allocation -----------------------------------------------------

Suite tail_suite(const BenchOptions& o) {
  return {count_or(o, 500), [o](long k) {
            Rng rng(derive_seed(o.seed, static_cast<std::uint64_t>(k)));
            const int n = static_cast<int>(rng.between(2, 5));
            const int m = static_cast<int>(rng.between(n, 12));
            const Instance inst =
                generate_instance(GenKind::Uniform, n, m, rng.below(~0ULL)).instance;
            const Agent pivot = static_cast<Agent>(k % n);
            CaseResult r;
            r.group = "trivial/m-n=" + pad2(m - n);
            r.bound = Rational(m - n);
            const Allocation a = trivial_tail_allocation(inst, pivot);
            r.alpha = min_efx_alpha(inst, a).alpha;
            r.check("complete", a.is_complete(m), "allocation incomplete");
            alpha_check(r);
            return r;
          }};
}

// ---- round-robin ---------------------------------------------------------

Suite round_robin_suite(const BenchOptions& o) {
  return {count_or(o, 500), [o](long k) {
            Rng rng(derive_seed(o.seed, static_cast<std::uint64_t>(k)));
            const int n = static_cast<int>(rng.between(2, 6));
            const int m = static_cast<int>(rng.between(0, 20));
            GenParams params;
            params.eps = kEps4[k % 4];
            const Instance inst =
                generate_instance(GenKind::BiValued, n, m, rng.below(~0ULL), params).instance;
            const auto profile = bi::detect_bivalued(inst);
            std::vector<Agent> order(n);
            for (Agent i = 0; i < n; ++i) order[i] = i;
            rng.shuffle(order);
            ItemSet items;
            ItemSet outside;
            for (Item e = 0; e < m; ++e) (rng.chance(3, 4) ? items : outside).push_back(e);
            const auto rr = bi::round_robin_chores(profile->scaled, items, order);
            const auto v = bi::round_robin_violations(*profile, rr, outside);
            CaseResult r;
            r.group = "round-robin/n=" + std::to_string(n);
            r.alpha = min_efx_alpha(profile->scaled, rr.allocation).alpha;
            r.bounded = false;
            r.check("round-robin-relations", v.empty(), v.empty() ? "" : v.front());
            return r;
          }};
}

// ---- oracle sandwich -----------------------------------------------------

bool within_states(const Instance& inst, std::int64_t limit) {
  std::int64_t states = 1;
  for (int e = 0; e < inst.m(); ++e) {
    if (states > limit / inst.n()) return false;
    states *= inst.n();
  }
  return true;
}

Suite oracle_suite(const BenchOptions& o) {
  const long c1 = count_or(o, 1000);
  const Bi3Layout l = bi3_layout(o);
  const long c4 = l.exhaustive + l.seeded;
  const int per_n = count_or(o, 1000);
  const long c5 = 4L * per_n;
  return {c1 + c4 + c5, [=](long k) {
            Instance inst;
            CaseResult r;
            std::string source;
            if (k < c1) {
              inst = three_instance(o, k);
              r = three_case(inst);
              source = "three";
            } else if (k < c1 + c4) {
              inst = bi3_instance(o, l, k - c1);
              r = bi3_case(inst, false);
              source = "bi3";
            } else {
              inst = bin_instance(o, k - c1 - c4, per_n);
              r = bin_case(inst);
              source = "bin";
            }
            CaseResult out;
            out.bound = r.bound;
            out.alpha = r.alpha;
            if (!within_states(inst, o.oracle_states)) {
              out.group = "oracle/" + source + "/skipped";
              return out;
            }
            out.group = "oracle/" + source;
            OracleOptions oo;
            oo.budget = o.oracle_states;
            oo.prune = true;
            const auto best = oracle_min_alpha(inst, oo).best_alpha;
            out.check("oracle-sandwich", best <= r.alpha && r.alpha <= ExtRational(r.bound),
                      "oracle " + best.str() + ", solver " + r.alpha.str() + ", bound " +
                          r.bound.str());
            return out;
          }};
}

Suite find_suite(std::string_view name, const BenchOptions& o) {
  if (name == "three-general") return three_suite(o);
  if (name == "general-n") return general_suite(o);
  if (name == "bi3-exhaustive") return bi3_suite(o);
  if (name == "bin") return bin_suite(o);
  if (name == "tail") return tail_suite(o);
  if (name == "round-robin") return round_robin_suite(o);
  if (name == "oracle-cross") return oracle_suite(o);
  throw Error(ErrorKind::UnknownSuite, "unknown suite '" + std::string(name) + "'");
}

}  // namespace

void CaseResult::check(const std::string& name, bool ok, const std::string& detail) {
  checks.emplace_back(name, ok);
  if (!ok) messages.push_back(name + ": " + detail);
}

bool BenchReport::ok() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const auto& kv) { return kv.second.failures == 0; });
}

std::vector<std::string> suite_names() {
  return {"three-general", "general-n", "bi3-exhaustive", "bin", "tail", "round-robin",
          "oracle-cross"};
}

unsigned worker_count(unsigned requested) {
  if (requested > 0) return requested;
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("CHOREFAIR_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(cap));
  }
  return hw;
}

std::vector<CaseResult> run_cases(long count, unsigned threads,
                                  const std::function<CaseResult(long)>& fn) {
  std::vector<CaseResult> results(static_cast<std::size_t>(count));
  std::atomic<long> next{0};
  auto work = [&] {
    for (long k = next++; k < count; k = next++) {
      try {
        results[k] = fn(k);
      } catch (const std::exception& e) {
        CaseResult r;
        r.group = "error";
        r.check("no-exception", false, e.what());
        results[k] = std::move(r);
      }
    }
  };
  const unsigned t = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max(1L, count))));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < t; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  return results;
}

BenchReport run_bench(std::string_view suite, const BenchOptions& options) {
  const Suite s = find_suite(suite, options);
  const auto results = run_cases(s.count, worker_count(options.threads), s.run);

  BenchReport report;
  report.suite = std::string(suite);
  report.cases = s.count;
  for (std::size_t k = 0; k < results.size(); ++k) {
    const CaseResult& r = results[k];
    GroupStats& g = report.groups[r.group];
    ++g.count;
    if (r.alpha > g.max_alpha) g.max_alpha = r.alpha;
    g.bounded = r.bounded;
    if (g.count == 1 || r.bound > g.bound) g.bound = r.bound;
    if (r.bounded && r.alpha > ExtRational(r.bound)) ++g.over_bound;
    for (const auto& [name, ok] : r.checks) {
      CheckStats& c = report.checks[name];
      ++c.runs;
      if (!ok) ++c.failures;
    }
    for (const auto& m : r.messages) {
      if (report.failures.size() < kMaxFailureLines) {
        report.failures.push_back("case " + std::to_string(k) + ": " + m);
      }
    }
  }
  return report;
}

std::string report_csv(const BenchReport& report) {
  std::ostringstream os;
  os << "suite,kind,key,count,max_alpha,bound,failures\n";
  for (const auto& [key, g] : report.groups) {
    os << report.suite << ",group," << key << ',' << g.count << ',' << g.max_alpha.str() << ','
       << (g.bounded ? g.bound.str() : "") << ',' << g.over_bound << '\n';
  }
  for (const auto& [key, c] : report.checks) {
    os << report.suite << ",check," << key << ',' << c.runs << ",,," << c.failures << '\n';
  }
  return os.str();
}

std::string report_table(const BenchReport& report) {
  std::size_t width = 5;
  for (const auto& [key, g] : report.groups) width = std::max(width, key.size());
  for (const auto& [key, c] : report.checks) width = std::max(width, key.size());
  std::ostringstream os;
  os << "suite " << report.suite << ": " << report.cases << " cases\n\n";
  os << std::left << std::setw(static_cast<int>(width)) << "group" << "  " << std::right
     << std::setw(7) << "count" << "  " << std::setw(14) << "max alpha" << "  " << std::setw(6)
     << "bound" << "  " << "over\n";
  for (const auto& [key, g] : report.groups) {
    os << std::left << std::setw(static_cast<int>(width)) << key << "  " << std::right
       << std::setw(7) << g.count << "  " << std::setw(14) << g.max_alpha.str() << "  "
       << std::setw(6) << (g.bounded ? g.bound.str() : "-") << "  " << g.over_bound << '\n';
  }
  os << '\n'
     << std::left << std::setw(static_cast<int>(width)) << "check" << "  " << std::right
     << std::setw(7) << "runs" << "  " << "failures\n";
  for (const auto& [key, c] : report.checks) {
    os << std::left << std::setw(static_cast<int>(width)) << key << "  " << std::right
       << std::setw(7) << c.runs << "  " << c.failures << '\n';
  }
  if (!report.failures.empty()) {
    os << "\nfirst failures:\n";
    for (const auto& f : report.failures) os << "  " << f << '\n';
  }
  os << '\n' << (report.ok() ? "all checks passed" : "CHECKS FAILED") << '\n';
  return os.str();
}

}  // namespace chorefair
