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

#include "chorefair/generate.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "chorefair/errors.hpp"

namespace chorefair {
namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::BadParams, what); }

bool fits_u64(const mpz_class& v) {
  return v >= 0 && v <= mpz_class(std::numeric_limits<std::uint64_t>::max() >> 1);
}

std::uint64_t to_u64(const mpz_class& v) {
  return static_cast<std::uint64_t>(mpz_class(v).get_ui());
}

}  // namespace

GenKind parse_gen_kind(std::string_view name) {
  if (name == "uniform") return GenKind::Uniform;
  if (name == "bivalued") return GenKind::BiValued;
  if (name == "ido") return GenKind::Ido;
  if (name == "identical") return GenKind::Identical;
  bad("unknown generator kind '" + std::string(name) + "'");
}

std::string gen_kind_name(GenKind kind) {
  switch (kind) {
    case GenKind::Uniform: return "uniform";
    case GenKind::BiValued: return "bivalued";
    case GenKind::Ido: return "ido";
    case GenKind::Identical: return "identical";
  }
  return "?";
}

std::uint64_t Rng::below(std::uint64_t bound) {
  // Reject the low residue class so every value is equally likely.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t x = engine_();
    if (x >= threshold) return x % bound;
  }
}

long Rng::between(long lo, long hi) {
  return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

bool Rng::chance(const Rational& prob) {
  return chance(to_u64(prob.numerator()), to_u64(prob.denominator()));
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t k) {
  std::uint64_t z = base + (k + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

InstanceFile generate_instance(GenKind kind, int n, int m, std::uint64_t seed,
                               const GenParams& params) {
  if (n < 1) bad("n must be at least 1");
  if (m < 0) bad("m must be nonnegative");
  if (params.max_cost < 1) bad("max cost must be positive");
  if (params.min_cost < 0 || params.min_cost > params.max_cost) bad("cost range is empty");

  Provenance prov;
  prov.kind = gen_kind_name(kind);
  prov.seed = seed;
  Rng rng(seed);
  std::vector<std::vector<Rational>> costs(n, std::vector<Rational>(m));

  switch (kind) {
    case GenKind::Uniform:
      prov.params["min"] = std::to_string(params.min_cost);
      prov.params["max"] = std::to_string(params.max_cost);
      for (auto& row : costs) {
        for (auto& c : row) c = Rational(rng.between(params.min_cost, params.max_cost));
      }
      break;
    case GenKind::Identical: {
      prov.params["min"] = std::to_string(params.min_cost);
      prov.params["max"] = std::to_string(params.max_cost);
      std::vector<Rational> row(m);
      for (auto& c : row) c = Rational(rng.between(params.min_cost, params.max_cost));
      for (auto& r : costs) r = row;
      break;
    }
    case GenKind::BiValued: {
      if (params.eps.sign() < 0 || params.eps >= Rational(1)) bad("eps must lie in [0, 1)");
      if (params.p.sign() < 0 || params.p > Rational(1)) bad("p must lie in [0, 1]");
      if (!fits_u64(params.p.denominator())) bad("p has too large a denominator");
      prov.params["eps"] = params.eps.str();
      prov.params["p"] = params.p.str();
      for (auto& row : costs) {
        for (auto& c : row) c = rng.chance(params.p) ? Rational(1) : params.eps;
      }
      break;
    }
    case GenKind::Ido: {
      // Shared order sigma; every agent's row strictly decreases along it, so
      // all agents rank the items identically with no ties.
      prov.params["max"] = std::to_string(params.max_cost);
      std::vector<Item> sigma(m);
      std::iota(sigma.begin(), sigma.end(), 0);
      rng.shuffle(sigma);
      const long step = std::max<long>(1, params.max_cost / std::max(m, 1));
      for (auto& row : costs) {
        long value = 0;
        for (int k = m - 1; k >= 0; --k) {
          value += rng.between(1, step);
          row[sigma[k]] = Rational(value);
        }
      }
      break;
    }
  }
  return {Instance(n, m, std::move(costs)), std::move(prov)};
}

}  // namespace chorefair
