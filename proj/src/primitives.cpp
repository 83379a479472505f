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

#include "chorefair/primitives.hpp"

#include <algorithm>

#include "chorefair/errors.hpp"

namespace chorefair {

Allocation trivial_tail_allocation(const Instance& inst, Agent pivot) {
  if (inst.m() < inst.n()) {
    throw Error(ErrorKind::TooFewItems,
                "tail allocation needs m >= n (m=" + std::to_string(inst.m()) +
                    ", n=" + std::to_string(inst.n()) + ")");
  }
  const auto order = sorted_order(inst, pivot);
  Allocation alloc(inst.n());
  int next = 0;
  for (Agent i = 0; i < inst.n(); ++i) {
    if (i != pivot) alloc.assign(i, order[next++]);
  }
  for (int k = inst.n() - 1; k < inst.m(); ++k) alloc.assign(pivot, order[k]);
  return alloc;
}

Allocation few_items_allocation(const Instance& inst) {
  Allocation alloc(inst.n());
  for (Item e = 0; e < inst.m(); ++e) alloc.assign(e % inst.n(), e);
  return alloc;
}

std::vector<ItemSet> greedy_identical_partition(std::span<const Rational> row,
                                                const ItemSet& items, int k) {
  if (k < 1) throw Error(ErrorKind::BadParams, "bundle count must be >= 1");
  std::vector<Item> order(items.begin(), items.end());
  std::stable_sort(order.begin(), order.end(),
                   [&](Item a, Item b) { return row[a] > row[b]; });

  std::vector<ItemSet> bundles(k);
  std::vector<Rational> load(k);
  for (Item e : order) {
    const auto target = static_cast<std::size_t>(
        std::min_element(load.begin(), load.end()) - load.begin());
    bundles[target].push_back(e);
    load[target] += row[e];
  }
  for (auto& b : bundles) std::sort(b.begin(), b.end());
  return bundles;
}

DivideAndChoose divide_and_choose(const Instance& inst, Agent cutter,
                                  Agent chooser, const ItemSet& items) {
  if (cutter == chooser) {
    throw Error(ErrorKind::BadParams, "cutter and chooser must differ");
  }
  auto halves = greedy_identical_partition(inst.row(cutter), items, 2);
  if (inst.bundle_cost(chooser, halves[1]) < inst.bundle_cost(chooser, halves[0])) {
    return {std::move(halves[0]), std::move(halves[1])};
  }
  return {std::move(halves[1]), std::move(halves[0])};
}

std::size_t cheapest_bundle(std::span<const Rational> row,
                            std::span<const ItemSet> bundles) {
  std::size_t best = 0;
  Rational best_cost;
  for (std::size_t b = 0; b < bundles.size(); ++b) {
    Rational c;
    for (Item e : bundles[b]) c += row[e];
    if (b == 0 || c < best_cost) {
      best = b;
      best_cost = std::move(c);
    }
  }
  return best;
}

}  // namespace chorefair
