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
#include <span>
#include <vector>

#include "chorefair/instance.hpp"

namespace chorefair::general {

/// Per-agent large-item thresholds and the derived item classes.
struct LargeItemSets {
  std::vector<Rational> b;   // b_i = c_i(tail_i) / (3n^2 - n + 2)
  std::vector<ItemSet> L;    // items with c_i(e) >= b_i
  ItemSet K;                 // large to everyone
  ItemSet L_union;           // large to someone
  ItemSet M_minus;           // small to everyone
};

/// Lowest agent i with c_i(tail_i) <= 3n^2 * c_i(sigma_i(n-1)), if any.
std::optional<Agent> fallback_agent(const Instance& normalized);

/// Tail allocation around fallback_agent(), or nothing when no agent
/// qualifies. Requires m >= n.
std::optional<Allocation> tail_fallback_general(const Instance& normalized);

/// Throws FallbackRequired when some |L_i| > n-2, InvariantViolation when an
/// item of M_minus exceeds c_i(M_minus)/(2n^2+2n) for some agent.
LargeItemSets large_item_sets(const Instance& normalized);

/// Round-robin for goods: agents pick in list order, each taking the
/// remaining item of maximum cost to them (ties: lowest index). Result is
/// aligned with `agents`.
std::vector<ItemSet> round_robin_goods(const Instance& inst,
                                       std::span<const Agent> agents,
                                       const ItemSet& items);

/// PROP1 in the goods sense: c_i(Q_i) plus the costliest item outside Q_i
/// reaches c_i(items)/t for every listed agent.
bool is_prop1(const Instance& inst, std::span<const Agent> agents,
              const ItemSet& items, std::span<const ItemSet> bundles);

/// Splits `items` into |agents| bundles with c_i(S_j) >= c_i(items)/(2n^2+2n)
/// for every listed i and every j. Throws PreconditionViolated when some item
/// is too costly for that, InvariantViolation if the bound fails anyway.
std::vector<ItemSet> even_partition(const Instance& inst,
                                    std::span<const Agent> agents,
                                    const ItemSet& items, int n);

struct GeneralTrace {
  Allocation allocation;
  std::optional<Agent> fallback;     // set when the tail allocation was used
  std::optional<LargeItemSets> sets;
  std::vector<Agent> n_star;         // agents holding one item of K
  std::vector<Agent> n_minus;
  std::vector<ItemSet> partition;    // even_partition output, aligned with n_minus
  ItemSet flagged;                   // L\K items that had to go to N*
};

/// 3n^2-EFX allocation for n >= 4. Throws WrongAgentCount.
Allocation solve_general_n(const Instance& inst);
GeneralTrace solve_general_traced(const Instance& inst);

}  // namespace chorefair::general
