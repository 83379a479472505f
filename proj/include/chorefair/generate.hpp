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
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "chorefair/io.hpp"

namespace chorefair {

enum class GenKind { Uniform, BiValued, Ido, Identical };

/// "uniform", "bivalued", "ido", "identical"; throws BadParams otherwise.
GenKind parse_gen_kind(std::string_view name);
std::string gen_kind_name(GenKind kind);

struct GenParams {
  Rational eps{1, 4};  // bi-valued small cost; the large cost is 1
  Rational p{1, 2};    // bi-valued probability that an entry is large
  long min_cost = 0;   // uniform and identical draw from [min_cost, max_cost]
  long max_cost = 1000;
};

/// Deterministic from the seed on every platform: mt19937_64 with our own
/// rejection sampling, no std distributions. Throws BadParams on n < 1,
/// m < 0, eps outside [0, 1), p outside [0, 1], max_cost < 1, or a cost
/// range that is empty or negative.
InstanceFile generate_instance(GenKind kind, int n, int m, std::uint64_t seed,
                               const GenParams& params = {});

/// Uniform draws that do not depend on the standard library's distribution
/// implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform in [lo, hi].
  long between(long lo, long hi);
  /// True with probability num/den.
  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }
  bool chance(const Rational& prob);

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t k = v.size(); k > 1; --k) std::swap(v[k - 1], v[below(k)]);
  }

 private:
  std::mt19937_64 engine_;
};

/// Seed of the k-th instance derived from a base seed (splitmix64), so that
/// every instance of a sweep is reproducible on its own.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t k);

}  // namespace chorefair
