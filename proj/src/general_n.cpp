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

#include "chorefair/general_n.hpp"

#include <algorithm>

#include "chorefair/errors.hpp"
#include "chorefair/primitives.hpp"

namespace chorefair::general {
namespace {

Rational small_divisor(int n) { return Rational(2L * n * n + 2L * n); }

void require_general(const Instance& inst) {
  if (inst.n() < 4) {
    throw Error(ErrorKind::WrongAgentCount,
                "general solver needs n>=4, got n=" + std::to_string(inst.n()));
  }
}

}  // namespace

std::optional<Agent> fallback_agent(const Instance& normalized) {
  const int n = normalized.n();
  const Rational factor(3L * n * n);
  for (Agent i = 0; i < n; ++i) {
    const auto order = sorted_order(normalized, i);
    const Rational pivot = n >= 2 && static_cast<int>(order.size()) >= n - 1
                               ? normalized.cost(i, order[n - 2])
                               : Rational(0);
    if (normalized.bundle_cost(i, tail_items(normalized, i)) <= factor * pivot) return i;
  }
  return std::nullopt;
}

std::optional<Allocation> tail_fallback_general(const Instance& normalized) {
  const auto agent = fallback_agent(normalized);
  if (!agent) return std::nullopt;
  return trivial_tail_allocation(normalized, *agent);
}

LargeItemSets large_item_sets(const Instance& normalized) {
  const int n = normalized.n();
  const int m = normalized.m();
  const Rational divisor(3L * n * n - n + 2);
  LargeItemSets sets;
  sets.b.resize(n);
  sets.L.resize(n);

  std::vector<int> large_count(m, 0);
  for (Agent i = 0; i < n; ++i) {
    sets.b[i] = normalized.bundle_cost(i, tail_items(normalized, i)) / divisor;
    for (Item e = 0; e < m; ++e) {
      if (normalized.cost(i, e) >= sets.b[i]) {
        sets.L[i].push_back(e);
        ++large_count[e];
      }
    }
    if (static_cast<int>(sets.L[i].size()) > n - 2) {
      throw Error(ErrorKind::FallbackRequired,
                  "agent " + std::to_string(i) + " has " +
                      std::to_string(sets.L[i].size()) + " large items");
    }
  }
  for (Item e = 0; e < m; ++e) {
    if (large_count[e] == n) sets.K.push_back(e);
    (large_count[e] > 0 ? sets.L_union : sets.M_minus).push_back(e);
  }

  const Rational div = small_divisor(n);
  for (Agent i = 0; i < n; ++i) {
    const Rational total = normalized.bundle_cost(i, sets.M_minus);
    for (Item e : sets.M_minus) {
      if (normalized.cost(i, e) * div > total) {
        throw Error(ErrorKind::InvariantViolation,
                    "item " + std::to_string(e) + " is not small within M- for agent " +
                        std::to_string(i));
      }
    }
  }
  return sets;
}

std::vector<ItemSet> round_robin_goods(const Instance& inst,
                                       std::span<const Agent> agents,
                                       const ItemSet& items) {
  const std::size_t t = agents.size();
  std::vector<ItemSet> bundles(t);
  if (t == 0) return bundles;

  std::vector<std::vector<Item>> prefs(t);
  for (std::size_t a = 0; a < t; ++a) {
    prefs[a] = items;
    const auto row = inst.row(agents[a]);
    std::stable_sort(prefs[a].begin(), prefs[a].end(),
                     [&](Item x, Item y) { return row[x] > row[y]; });
  }
  std::vector<bool> taken(inst.m(), false);
  std::vector<std::size_t> cursor(t, 0);
  for (std::size_t step = 0; step < items.size(); ++step) {
    const std::size_t a = step % t;
    while (taken[prefs[a][cursor[a]]]) ++cursor[a];
    const Item e = prefs[a][cursor[a]];
    taken[e] = true;
    bundles[a].push_back(e);
  }
  for (auto& b : bundles) std::sort(b.begin(), b.end());
  return bundles;
}

bool is_prop1(const Instance& inst, std::span<const Agent> agents,
              const ItemSet& items, std::span<const ItemSet> bundles) {
  const Rational t(static_cast<long>(agents.size()));
  for (std::size_t a = 0; a < agents.size(); ++a) {
    const Agent i = agents[a];
    Rational best_outside;
    for (Item e : set_minus(items, bundles[a])) {
      if (inst.cost(i, e) > best_outside) best_outside = inst.cost(i, e);
    }
    if ((inst.bundle_cost(i, bundles[a]) + best_outside) * t < inst.bundle_cost(i, items)) {
      return false;
    }
  }
  return true;
}

std::vector<ItemSet> even_partition(const Instance& inst,
                                    std::span<const Agent> agents,
                                    const ItemSet& items, int n) {
  const std::size_t t = agents.size();
  if (t == 0) throw Error(ErrorKind::BadParams, "even_partition needs at least one agent");
  const Rational div = small_divisor(n);
  for (Agent i : agents) {
    const Rational total = inst.bundle_cost(i, items);
    for (Item e : items) {
      if (inst.cost(i, e) * div > total) {
        throw Error(ErrorKind::PreconditionViolated,
                    "item " + std::to_string(e) + " too costly for agent " +
                        std::to_string(i) + " to split evenly");
      }
    }
  }

  const auto q = round_robin_goods(inst, agents, items);
  if (!is_prop1(inst, agents, items, q)) {
    throw Error(ErrorKind::InvariantViolation, "round-robin output is not PROP1");
  }

  std::vector<ItemSet> parts(t);
  for (std::size_t a = 0; a < t; ++a) {
    auto sub = greedy_identical_partition(inst.row(agents[a]), q[a], static_cast<int>(t));
    for (std::size_t j = 0; j < t; ++j) parts[j] = set_union(parts[j], sub[j]);
  }

  for (Agent i : agents) {
    const Rational total = inst.bundle_cost(i, items);
    for (std::size_t j = 0; j < t; ++j) {
      if (inst.bundle_cost(i, parts[j]) * div < total) {
        throw Error(ErrorKind::InvariantViolation,
                    "bundle " + std::to_string(j) + " below the even lower bound for agent " +
                        std::to_string(i));
      }
    }
  }
  return parts;
}

GeneralTrace solve_general_traced(const Instance& inst) {
  require_general(inst);
  GeneralTrace trace;
  const int n = inst.n();
  if (inst.m() < n) {
    trace.allocation = few_items_allocation(inst);
    return trace;
  }
  const Instance normalized = normalize(inst).instance;
  if (auto agent = fallback_agent(normalized)) {
    trace.fallback = agent;
    trace.allocation = trivial_tail_allocation(normalized, *agent);
    return trace;
  }

  LargeItemSets sets = large_item_sets(normalized);
  Allocation alloc(n);
  std::vector<bool> starred(n, false);
  for (std::size_t k = 0; k < sets.K.size(); ++k) {
    const Agent i = static_cast<Agent>(k);
    alloc.assign(i, sets.K[k]);
    starred[i] = true;
    trace.n_star.push_back(i);
  }
  for (Agent i = 0; i < n; ++i) {
    if (!starred[i]) trace.n_minus.push_back(i);
  }

  trace.partition = even_partition(normalized, trace.n_minus, sets.M_minus, n);
  for (std::size_t j = 0; j < trace.n_minus.size(); ++j) {
    alloc.set_bundle(trace.n_minus[j], trace.partition[j]);
  }

  for (Item e : set_minus(sets.L_union, sets.K)) {
    std::optional<Agent> target;
    for (Agent i : trace.n_minus) {
      if (!contains(sets.L[i], e)) {
        target = i;
        break;
      }
    }
    if (!target) {
      for (Agent i : trace.n_star) {
        if (!contains(sets.L[i], e)) {
          target = i;
          break;
        }
      }
      trace.flagged.push_back(e);
    }
    // e is outside K, so some agent finds it small.
    alloc.assign(*target, e);
  }

  trace.sets = std::move(sets);
  trace.allocation = std::move(alloc);
  return trace;
}

Allocation solve_general_n(const Instance& inst) {
  return solve_general_traced(inst).allocation;
}

}  // namespace chorefair::general
