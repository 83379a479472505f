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

#include <doctest.h>

#include "chorefair/errors.hpp"
#include "chorefair/oracle.hpp"
#include "chorefair/verify.hpp"
#include "support.hpp"

using namespace chorefair;
using chorefair::testing::q;

namespace {

ExtRational enumerate_min(const Instance& inst) {
  const int n = inst.n();
  const int m = inst.m();
  long total = 1;
  for (int e = 0; e < m; ++e) total *= n;
  ExtRational best = ExtRational::infinity();
  for (long code = 0; code < total; ++code) {
    Allocation x(n);
    long rest = code;
    for (Item e = m - 1; e >= 0; --e) {
      x.assign(static_cast<Agent>(rest % n), e);
      rest /= n;
    }
    const ExtRational a = testing::brute_alpha(inst, x);
    if (a < best) best = a;
  }
  return best;
}

}  // namespace

TEST_CASE("oracle on tiny instances") {
  const OracleResult one = oracle_min_alpha(make_instance({{3}, {5}}));
  CHECK(one.best_alpha == ExtRational(0));
  CHECK(one.states_examined == 2);

  const OracleResult four = oracle_min_alpha(make_instance({{1, 1, 1, 1}, {1, 1, 1, 1}}));
  CHECK(four.best_alpha == ExtRational(q(1, 2)));
  CHECK(four.best_allocation.bundle(0).size() == 2);
  CHECK(four.states_examined == 16);

  const OracleResult none = oracle_min_alpha(Instance(3, 0, {{}, {}, {}}));
  CHECK(none.best_alpha == ExtRational(0));
  CHECK(efx_exists(Instance(3, 0, {{}, {}, {}})));
}

TEST_CASE("oracle respects the budget") {
  const std::vector<long> row(20, 1);
  const Instance inst = make_instance({row, row, row});
  OracleOptions o;
  o.budget = 1000;
  try {
    oracle_min_alpha(inst, o);
    FAIL("budget ignored");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BudgetExceeded);
  }
  CHECK_THROWS_AS(efx_exists(inst, 1000), Error);
}

TEST_CASE("oracle matches independent enumeration") {
  Rng rng(404);
  for (int t = 0; t < 120; ++t) {
    const int n = 1 + static_cast<int>(rng.below(3));
    const int m = static_cast<int>(rng.below(6));
    const Instance inst = testing::random_instance(rng, n, m, 0, 6);
    const OracleResult r = oracle_min_alpha(inst);
    REQUIRE(r.best_alpha == enumerate_min(inst));
    CHECK(r.best_allocation.is_complete(m));
    CHECK(min_efx_alpha(inst, r.best_allocation).alpha == r.best_alpha);

    OracleOptions pruned;
    pruned.prune = true;
    const OracleResult p = oracle_min_alpha(inst, pruned);
    CHECK(p.best_alpha == r.best_alpha);
    CHECK(p.best_allocation == r.best_allocation);
    CHECK(p.states_examined <= r.states_examined);
  }
}

TEST_CASE("efx_exists agrees with the minimum") {
  Rng rng(8);
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + static_cast<int>(rng.below(2));
    const int m = static_cast<int>(rng.below(7));
    const Instance inst = testing::random_instance(rng, n, m, 0, 9);
    CHECK(efx_exists(inst) == (oracle_min_alpha(inst).best_alpha <= ExtRational(1)));
  }
}

TEST_CASE("two agents always admit EFX") {
  Rng rng(21);
  for (int t = 0; t < 40; ++t) {
    const int m = static_cast<int>(rng.below(9));
    CHECK(efx_exists(testing::random_instance(rng, 2, m, 0, 30)));
  }
}

TEST_CASE("three bi-valued agents admit EFX") {
  Rng rng(34);
  for (int t = 0; t < 60; ++t) {
    const int m = static_cast<int>(rng.below(7));
    std::vector<std::vector<Rational>> rows(3, std::vector<Rational>(m));
    for (auto& r : rows)
      for (Rational& c : r) c = rng.chance(1, 2) ? Rational(1) : q(1, 3);
    CHECK(oracle_min_alpha(Instance(rows)).best_alpha <= ExtRational(1));
  }
}
