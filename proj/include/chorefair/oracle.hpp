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

#include "chorefair/instance.hpp"
#include "chorefair/rational.hpp"

namespace chorefair {

struct OracleResult {
  ExtRational best_alpha;
  Allocation best_allocation;
  std::int64_t states_examined = 0;  // complete allocations evaluated
};

struct OracleOptions {
  std::int64_t budget = 10'000'000;
  /// Skip subtrees whose partial bundles already force an alpha no better
  /// than the incumbent. Same result, fewer states.
  bool prune = false;
};

/// Minimum alpha over all n^m complete allocations, enumerated with item 0
/// as the most significant digit; the first allocation attaining it wins.
/// Throws BudgetExceeded when n^m exceeds the budget.
OracleResult oracle_min_alpha(const Instance& inst, const OracleOptions& options = {});

/// True iff some complete allocation is EFX. Stops at the first one found.
bool efx_exists(const Instance& inst, std::int64_t budget = 10'000'000);

}  // namespace chorefair
