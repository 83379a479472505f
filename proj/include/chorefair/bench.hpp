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

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "chorefair/rational.hpp"

namespace chorefair {

struct BenchOptions {
  std::uint64_t seed = 1;
  /// Seeded instances per stratum; 0 keeps the suite default.
  int count = 0;
  /// bi3-exhaustive: enumerate every bit matrix up to this many items.
  int exhaustive_m = 4;
  /// oracle-cross: largest n^m handed to the oracle.
  std::int64_t oracle_states = 10'000'000;
  /// 0: CHOREFAIR_THREADS if set, else the hardware concurrency.
  unsigned threads = 0;
};

/// Outcome of one instance of a suite.
struct CaseResult {
  std::string group;  // aggregation key, e.g. "three/TwoSmall"
  ExtRational alpha;
  Rational bound;
  bool bounded = true;  // false when no approximation bound applies
  /// Named property checks run on this case and whether each held.
  std::vector<std::pair<std::string, bool>> checks;
  /// Human-readable detail for every failed check.
  std::vector<std::string> messages;

  void check(const std::string& name, bool ok, const std::string& detail = {});
};

struct GroupStats {
  long count = 0;
  ExtRational max_alpha;
  Rational bound;  // largest bound seen in the group
  bool bounded = true;
  long over_bound = 0;
};

struct CheckStats {
  long runs = 0;
  long failures = 0;
};

struct BenchReport {
  std::string suite;
  long cases = 0;
  std::map<std::string, GroupStats> groups;
  std::map<std::string, CheckStats> checks;
  /// "case k: message" for the first failures, in case order.
  std::vector<std::string> failures;

  bool ok() const;
};

std::vector<std::string> suite_names();

/// Throws Error(UnknownSuite). Cases are spread over a worker pool and merged
/// in case order, so the report does not depend on the thread count.
BenchReport run_bench(std::string_view suite, const BenchOptions& options = {});

/// One row per group and per check; exact rationals, no timing.
std::string report_csv(const BenchReport& report);
std::string report_table(const BenchReport& report);

/// Threads a pool would use under `requested` (see BenchOptions::threads).
unsigned worker_count(unsigned requested);

/// Runs fn(0..count-1) on `threads` workers; results land in case order.
std::vector<CaseResult> run_cases(long count, unsigned threads,
                                  const std::function<CaseResult(long)>& fn);

}  // namespace chorefair
