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

#include <optional>
#include <vector>

#include "chorefair/instance.hpp"
#include "chorefair/rational.hpp"

namespace chorefair {

struct Witness {
  Agent envier;
  Agent envied;
  Item removed;

  friend bool operator==(const Witness&, const Witness&) = default;
};

struct VerifyReport {
  /// Smallest alpha with c_i(X_i - e) <= alpha * c_i(X_j) for all i, j, e.
  ExtRational alpha;
  /// Present whenever alpha > 0: the first (i, j) pair in row-major order
  /// attaining alpha, with i's cheapest item as the removed one.
  std::optional<Witness> witness;
  /// per_pair[i][j] is the smallest alpha satisfying every (i, j, e)
  /// constraint; the diagonal is zero.
  std::vector<std::vector<ExtRational>> per_pair;
  bool partial = false;
};

/// Exact minimum EFX approximation factor of `alloc`. Partial allocations are
/// allowed; only the n bundles are compared.
///
/// For a fixed pair the binding constraint removes the envier's cheapest
/// item, so each pair costs one sum and one min rather than |X_i| sums.
VerifyReport min_efx_alpha(const Instance& inst, const Allocation& alloc);

bool is_alpha_efx(const Instance& inst, const Allocation& alloc,
                  const ExtRational& alpha);

}  // namespace chorefair
