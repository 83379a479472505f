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

#include "chorefair/verify.hpp"

#include "chorefair/errors.hpp"

namespace chorefair {

VerifyReport min_efx_alpha(const Instance& inst, const Allocation& alloc) {
  alloc.validate_for(inst);
  const int n = inst.n();

  VerifyReport report;
  report.partial = !alloc.is_complete(inst.m());
  report.per_pair.assign(n, std::vector<ExtRational>(n));

  for (Agent i = 0; i < n; ++i) {
    const ItemSet& own = alloc.bundle(i);
    if (own.empty()) continue;

    // Dropping the cheapest item leaves the largest remainder.
    Item cheapest = own.front();
    for (Item e : own) {
      if (inst.cost(i, e) < inst.cost(i, cheapest)) cheapest = e;
    }
    const Rational remainder = inst.bundle_cost(i, own) - inst.cost(i, cheapest);
    if (remainder.is_zero()) continue;

    for (Agent j = 0; j < n; ++j) {
      if (j == i) continue;
      const Rational other = inst.bundle_cost(i, alloc.bundle(j));
      ExtRational pair = other.is_zero() ? ExtRational::infinity()
                                         : ExtRational(remainder / other);
      if (pair > report.alpha) {
        report.alpha = pair;
        report.witness = Witness{i, j, cheapest};
      }
      report.per_pair[i][j] = std::move(pair);
    }
  }
  return report;
}

bool is_alpha_efx(const Instance& inst, const Allocation& alloc,
                  const ExtRational& alpha) {
  return min_efx_alpha(inst, alloc).alpha <= alpha;
}

}  // namespace chorefair
