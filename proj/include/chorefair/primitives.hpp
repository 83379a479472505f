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

#include <span>
#include <utility>
#include <vector>

#include "chorefair/instance.hpp"

namespace chorefair {

/// Each non-pivot agent (ascending) takes one of the pivot's n-1 most costly
/// items in order; the pivot keeps its tail. (m - n)-EFX. Requires m >= n.
Allocation trivial_tail_allocation(const Instance& inst, Agent pivot);

/// For m < n: agent k < m receives item k, everyone else nothing.
Allocation few_items_allocation(const Instance& inst);

/// Longest-processing-time partition of `items` into k bundles under one
/// cost row: items in descending cost (ties by index), each into the
/// currently cheapest bundle (ties by bundle index). The result is EFX when
/// every bundle is judged by `row`.
std::vector<ItemSet> greedy_identical_partition(std::span<const Rational> row,
                                                const ItemSet& items, int k);

struct DivideAndChoose {
  ItemSet cutter;
  ItemSet chooser;
};

/// The cutter splits `items` in two under its own costs; the chooser takes
/// the cheaper half under its costs (ties: the first half).
DivideAndChoose divide_and_choose(const Instance& inst, Agent cutter,
                                  Agent chooser, const ItemSet& items);

/// Index of the bundle with minimum cost under `row` (ties: lowest index).
std::size_t cheapest_bundle(std::span<const Rational> row,
                            std::span<const ItemSet> bundles);

}  // namespace chorefair
