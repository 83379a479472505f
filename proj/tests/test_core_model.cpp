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
#include "chorefair/instance.hpp"
#include "chorefair/primitives.hpp"
#include "chorefair/verify.hpp"
#include "support.hpp"

using namespace chorefair;
using chorefair::testing::brute_alpha;
using chorefair::testing::q;

namespace {

ErrorKind first_issue(const RawInstance& raw) {
  try {
    validate_instance(raw);
  } catch (const ValidationError& e) {
    REQUIRE_FALSE(e.issues().empty());
    return e.issues().front().kind;
  }
  FAIL("no ValidationError");
  return ErrorKind::ValidationError;
}

}  // namespace

TEST_CASE("rational parse and render") {
  CHECK(Rational::parse("6/8") == q(3, 4));
  CHECK(Rational::parse("-2") == q(-2));
  CHECK(q(6, 8).str() == "3/4");
  CHECK(q(4, 2).str() == "2");
  CHECK_THROWS_AS(Rational::parse("3/0"), Error);
  CHECK_THROWS_AS(Rational::parse("1.5"), Error);
  CHECK(ExtRational::infinity() > ExtRational(q(1000000)));
  CHECK(ExtRational::parse("inf").is_infinite());
}

TEST_CASE("validate_instance") {
  RawInstance ok;
  ok.cells = {{"1", "2", "3"}, {"0", "1/2", "4"}};
  const Instance inst = validate_instance(ok);
  CHECK(inst.n() == 2);
  CHECK(inst.m() == 3);
  CHECK(inst.cost(1, 1) == q(1, 2));

  RawInstance neg = ok;
  neg.cells[1][2] = "-1";
  try {
    validate_instance(neg);
    FAIL("accepted a negative cost");
  } catch (const ValidationError& e) {
    REQUIRE(e.issues().size() == 1);
    CHECK(e.issues()[0].kind == ErrorKind::NegativeCost);
    CHECK(e.issues()[0].row == 1);
    CHECK(e.issues()[0].col == 2);
  }

  RawInstance shape = ok;
  shape.n = 3;
  CHECK(first_issue(shape) == ErrorKind::ShapeMismatch);

  RawInstance bad = ok;
  bad.cells[0][1] = "3/0";
  CHECK(first_issue(bad) == ErrorKind::BadRational);

  RawInstance dup = ok;
  dup.labels = {"a", "b", "a"};
  CHECK(first_issue(dup) == ErrorKind::DuplicateLabel);
}

TEST_CASE("normalize") {
  const Normalized a = normalize(make_instance({{1, 2, 5}, {0, 0, 0}}));
  CHECK(a.instance.cost(0, 0) == q(1, 8));
  CHECK(a.instance.cost(0, 1) == q(2, 8));
  CHECK(a.instance.cost(0, 2) == q(5, 8));
  CHECK(a.instance.total_cost(1) == q(0));
  CHECK(a.zero_agents == std::vector<Agent>{1});

  const Normalized b = normalize(make_instance({{3}}));
  CHECK(b.instance.cost(0, 0) == q(1));
  CHECK(b.zero_agents.empty());
}

TEST_CASE("normalize is idempotent and leaves alpha unchanged") {
  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + static_cast<int>(rng.below(3));
    const int m = static_cast<int>(rng.below(8));
    const Instance inst = testing::random_instance(rng, n, m);
    const Instance once = normalize(inst).instance;
    CHECK(normalize(once).instance == once);
    const Allocation x = testing::random_allocation(rng, n, m);
    CHECK(min_efx_alpha(inst, x).alpha == min_efx_alpha(once, x).alpha);
  }
}

TEST_CASE("sorted_order") {
  Instance inst({{q(1, 8), q(1, 2), q(1, 8)}});
  CHECK(sorted_order(inst, 0) == std::vector<Item>{1, 0, 2});
  CHECK(sorted_order(make_instance({{7, 7, 7, 7}}), 0) == std::vector<Item>{0, 1, 2, 3});
  CHECK(sorted_order(Instance(1, 0, {{}}), 0).empty());
}

TEST_CASE("tail_items") {
  const Instance five = make_instance({{5, 4, 3, 2, 1}, {1, 1, 1, 1, 1}, {1, 1, 1, 1, 1}});
  CHECK(tail_items(five, 0) == ItemSet{2, 3, 4});
  CHECK(tail_items(make_instance({{1, 2}, {1, 2}, {1, 2}}), 0).empty());
  CHECK(tail_items(make_instance({{2, 9, 1, 5}, {1, 1, 1, 1}}), 0) == ItemSet{0, 2, 3});
}

TEST_CASE("min_efx_alpha worked example") {
  const Instance inst = make_instance({{3, 1, 2}, {1, 1, 1}});
  const Allocation x({{0, 1}, {2}});
  const VerifyReport r = min_efx_alpha(inst, x);
  CHECK(r.alpha == ExtRational(q(3, 2)));
  REQUIRE(r.witness.has_value());
  CHECK(*r.witness == Witness{0, 1, 1});
  CHECK(r.per_pair[0][1] == ExtRational(q(3, 2)));
  CHECK(r.per_pair[1][0] == ExtRational(0));
  CHECK(is_alpha_efx(inst, x, ExtRational(5)));
  CHECK_FALSE(is_alpha_efx(inst, x, ExtRational(1)));
}

TEST_CASE("min_efx_alpha degenerate cases") {
  const Instance three = make_instance({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}});
  CHECK(min_efx_alpha(three, Allocation({{0}, {1}, {2}})).alpha == ExtRational(0));
  CHECK_FALSE(min_efx_alpha(three, Allocation({{0}, {1}, {2}})).witness.has_value());

  const Instance two = make_instance({{1, 1}, {1, 1}});
  const VerifyReport inf = min_efx_alpha(two, Allocation({{0, 1}, {}}));
  CHECK(inf.alpha.is_infinite());
  CHECK(inf.witness.has_value());

  const Instance empty(2, 0, {{}, {}});
  CHECK(is_alpha_efx(empty, Allocation(2), ExtRational(0)));

  const VerifyReport partial = min_efx_alpha(three, Allocation({{0, 1}, {}, {}}));
  CHECK(partial.partial);
  CHECK(partial.alpha.is_infinite());
}

TEST_CASE("min_efx_alpha rejects invalid allocations") {
  const Instance inst = make_instance({{1, 1, 1}, {1, 1, 1}});
  CHECK_THROWS_AS(min_efx_alpha(inst, Allocation({{0, 1}, {1}})), Error);
  CHECK_THROWS_AS(min_efx_alpha(inst, Allocation({{0, 5}, {1}})), Error);
}

TEST_CASE("verifier matches definition-level enumeration") {
  Rng rng(2026);
  for (int t = 0; t < 3000; ++t) {
    const int n = 1 + static_cast<int>(rng.below(3));
    const int m = static_cast<int>(rng.below(8));
    const Instance inst = testing::random_instance(rng, n, m, 0, 6);
    Allocation x = testing::random_allocation(rng, n, m);
    if (m > 0 && rng.chance(1, 4)) {
      const Item drop = static_cast<Item>(rng.below(m));
      for (Agent i = 0; i < n; ++i) x.remove(i, drop);
    }
    const VerifyReport r = min_efx_alpha(inst, x);
    REQUIRE(r.alpha == brute_alpha(inst, x));
    if (r.witness) {
      const Witness w = *r.witness;
      const Rational rest = inst.bundle_cost(w.envier, without_item(x.bundle(w.envier), w.removed));
      const Rational other = inst.bundle_cost(w.envier, x.bundle(w.envied));
      if (r.alpha.is_infinite()) {
        CHECK(other.is_zero());
        CHECK(rest.sign() > 0);
      } else {
        CHECK(rest == r.alpha.value() * other);
      }
    }
  }
}

TEST_CASE("removing the cheapest item is the binding constraint") {
  Rng rng(5);
  for (int t = 0; t < 300; ++t) {
    const int m = 1 + static_cast<int>(rng.below(8));
    const Instance inst = testing::random_instance(rng, 1, m);
    const ItemSet all = inst.all_items();
    Item cheapest = all.front();
    for (Item e : all)
      if (inst.cost(0, e) < inst.cost(0, cheapest)) cheapest = e;
    const Rational best = inst.bundle_cost(0, without_item(all, cheapest));
    for (Item e : all) CHECK(inst.bundle_cost(0, without_item(all, e)) <= best);
  }
}

TEST_CASE("trivial_tail_allocation") {
  const Instance inst = make_instance({{1, 1, 1, 1}, {4, 3, 2, 1}});
  const Allocation x = trivial_tail_allocation(inst, 1);
  CHECK(x.bundle(0) == ItemSet{0});
  CHECK(x.bundle(1) == ItemSet{1, 2, 3});
  CHECK(min_efx_alpha(inst, x).alpha <= ExtRational(2));

  const Instance square = make_instance({{1, 2, 3}, {3, 2, 1}, {1, 1, 1}});
  CHECK(min_efx_alpha(square, trivial_tail_allocation(square, 0)).alpha == ExtRational(0));

  const Instance zero = make_instance({{0, 0, 0, 0}, {1, 2, 3, 4}});
  const Allocation z = trivial_tail_allocation(zero, 0);
  CHECK(z.is_complete(4));
  CHECK(min_efx_alpha(zero, z).per_pair[0][1] == ExtRational(0));

  CHECK_THROWS_AS(trivial_tail_allocation(make_instance({{1}, {1}}), 0), Error);
}

TEST_CASE("trivial_tail_allocation meets m - n on random instances") {
  Rng rng(77);
  for (int t = 0; t < 500; ++t) {
    const int n = 2 + static_cast<int>(rng.below(4));
    const int m = n + static_cast<int>(rng.below(13 - n));
    const Instance inst = normalize(testing::random_instance(rng, n, m)).instance;
    const Allocation x = trivial_tail_allocation(inst, static_cast<Agent>(rng.below(n)));
    REQUIRE(x.is_complete(m));
    CHECK(min_efx_alpha(inst, x).alpha <= ExtRational(m - n));
  }
}

TEST_CASE("few_items_allocation") {
  const Allocation x = few_items_allocation(make_instance({{1, 2}, {3, 4}, {5, 6}}));
  CHECK(x.bundle(0) == ItemSet{0});
  CHECK(x.bundle(1) == ItemSet{1});
  CHECK(x.bundle(2).empty());
}

TEST_CASE("greedy_identical_partition") {
  const std::vector<Rational> row{5, 4, 3, 2, 1};
  const auto parts = greedy_identical_partition(row, {0, 1, 2, 3, 4}, 2);
  REQUIRE(parts.size() == 2);
  CHECK(parts[0] == ItemSet{0, 3, 4});
  CHECK(parts[1] == ItemSet{1, 2});

  CHECK(greedy_identical_partition(row, {0, 1, 2, 3, 4}, 1).front() == ItemSet{0, 1, 2, 3, 4});

  const std::vector<Rational> flat(9, Rational(1));
  for (const ItemSet& s : greedy_identical_partition(flat, {0, 1, 2, 3, 4, 5, 6, 7, 8}, 3))
    CHECK(s.size() == 3);
}

TEST_CASE("greedy_identical_partition is EFX under its row") {
  Rng rng(3);
  for (int t = 0; t < 500; ++t) {
    const int m = static_cast<int>(rng.below(16));
    const int k = 2 + static_cast<int>(rng.below(3));
    const Instance inst = testing::random_instance(rng, 1, m, 0, 50);
    const auto parts = greedy_identical_partition(inst.row(0), inst.all_items(), k);
    REQUIRE(static_cast<int>(parts.size()) == k);
    for (const ItemSet& b : parts)
      for (Item e : b)
        for (const ItemSet& other : parts)
          CHECK(inst.bundle_cost(0, without_item(b, e)) <= inst.bundle_cost(0, other));
  }
}

TEST_CASE("divide_and_choose") {
  const Instance inst = make_instance({{5, 4, 3, 2, 1}, {1, 1, 1, 1, 1}});
  const DivideAndChoose dc = divide_and_choose(inst, 0, 1, inst.all_items());
  CHECK(dc.chooser == ItemSet{1, 2});
  CHECK(dc.cutter == ItemSet{0, 3, 4});

  const DivideAndChoose none = divide_and_choose(inst, 0, 1, {});
  CHECK(none.cutter.empty());
  CHECK(none.chooser.empty());

  Rng rng(9);
  for (int t = 0; t < 300; ++t) {
    const int m = static_cast<int>(rng.below(10));
    const Instance two = testing::random_instance(rng, 2, m);
    const DivideAndChoose r = divide_and_choose(two, 0, 1, two.all_items());
    CHECK(min_efx_alpha(two, Allocation({r.cutter, r.chooser})).alpha <= ExtRational(1));
  }
}

TEST_CASE("cheapest_bundle breaks ties by index") {
  const std::vector<Rational> row{2, 1, 1};
  const std::vector<ItemSet> bundles{{0}, {1}, {2}};
  CHECK(cheapest_bundle(row, bundles) == 1);
}
