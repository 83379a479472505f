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

#include <filesystem>
#include <string>
#include <vector>

#include "chorefair/generate.hpp"
#include "chorefair/instance.hpp"
#include "chorefair/rational.hpp"

namespace chorefair::testing {

inline std::filesystem::path data_path(const std::string& name) {
  return std::filesystem::path(CHOREFAIR_TEST_DATA) / name;
}

// Alpha straight from the EFX inequality over every (i, j, e) triple.
inline ExtRational brute_alpha(const Instance& inst, const Allocation& x) {
  ExtRational worst(0);
  for (Agent i = 0; i < x.n(); ++i) {
    for (Agent j = 0; j < x.n(); ++j) {
      if (i == j) continue;
      const Rational other = inst.bundle_cost(i, x.bundle(j));
      for (Item e : x.bundle(i)) {
        const Rational rest = inst.bundle_cost(i, without_item(x.bundle(i), e));
        ExtRational need(0);
        if (!rest.is_zero()) {
          need = other.is_zero() ? ExtRational::infinity() : ExtRational(rest / other);
        }
        if (need > worst) worst = need;
      }
    }
  }
  return worst;
}

inline Instance random_instance(Rng& rng, int n, int m, long lo = 0, long hi = 20) {
  std::vector<std::vector<long>> costs(n, std::vector<long>(m));
  for (auto& row : costs)
    for (long& c : row) c = rng.between(lo, hi);
  return make_instance(costs);
}

// Every item to a uniformly random agent.
inline Allocation random_allocation(Rng& rng, int n, int m) {
  Allocation x(n);
  for (Item e = 0; e < m; ++e) x.assign(static_cast<Agent>(rng.below(n)), e);
  return x;
}

inline Rational q(long num, long den = 1) { return Rational(num, den); }

}  // namespace chorefair::testing
