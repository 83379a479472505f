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

#include "chorefair/three_agents.hpp"

#include <algorithm>

#include "chorefair/errors.hpp"
#include "chorefair/primitives.hpp"

namespace chorefair::three {
namespace {

const Rational kLargeThreshold(1, 8);

void require_three(const Instance& inst) {
  if (inst.n() != 3) {
    throw Error(ErrorKind::WrongAgentCount,
                "three-agent solver needs n=3, got n=" + std::to_string(inst.n()));
  }
}

Rational second_cost(const Instance& inst, Agent i, const std::vector<Item>& order) {
  return order.size() >= 2 ? inst.cost(i, order[1]) : Rational(0);
}

// Sort three bundles by ascending cost under `row`, ties by original index.
void sort_by_cost(std::array<ItemSet, 3>& s, std::span<const Rational> row) {
  std::array<std::pair<Rational, int>, 3> keyed;
  for (int b = 0; b < 3; ++b) {
    Rational c;
    for (Item e : s[b]) c += row[e];
    keyed[b] = {std::move(c), b};
  }
  std::array<ItemSet, 3> copy = s;
  std::sort(keyed.begin(), keyed.end());
  for (int b = 0; b < 3; ++b) s[b] = copy[keyed[b].second];
}

std::pair<Allocation, bool> one_small_impl(const Instance& inst, const OneSmall& c) {
  const Agent s = c.small;
  const auto [l1, l2] = c.large;
  const Item e1 = sorted_order(inst, l1).front();
  const Item e2 = sorted_order(inst, l2).front();
  Allocation alloc(3);

  if (e1 == e2) {
    alloc.assign(s, e1);
    auto split = divide_and_choose(inst, l1, l2, without_item(inst.all_items(), e1));
    alloc.set_bundle(l1, std::move(split.cutter));
    alloc.set_bundle(l2, std::move(split.chooser));
    return {alloc, false};
  }

  // The 4-EFX bound for s needs both tops small to s.
  if (inst.cost(s, e1) > kLargeThreshold || inst.cost(s, e2) > kLargeThreshold) {
    return {trivial_tail_allocation(inst, s), true};
  }

  const ItemSet rest = set_minus(inst.all_items(), ItemSet{std::min(e1, e2), std::max(e1, e2)});
  auto parts = greedy_identical_partition(inst.row(s), rest, 3);
  std::array<ItemSet, 3> bundles{parts[0], parts[1], parts[2]};
  sort_by_cost(bundles, inst.row(l1));

  alloc.set_bundle(l1, with_item(bundles[0], e2));
  ItemSet with_top = with_item(bundles[1], e1);
  if (inst.bundle_cost(l2, bundles[2]) < inst.bundle_cost(l2, with_top)) {
    alloc.set_bundle(l2, bundles[2]);
    alloc.set_bundle(s, std::move(with_top));
  } else {
    alloc.set_bundle(l2, std::move(with_top));
    alloc.set_bundle(s, bundles[2]);
  }
  return {alloc, false};
}

}  // namespace

AgentClass classify_agent(const Instance& normalized, Agent i) {
  const auto order = sorted_order(normalized, i);
  if (order.empty()) return {AgentKind::Small, -1, Rational(0)};
  const Rational& top = normalized.cost(i, order.front());
  return {top >= kLargeThreshold ? AgentKind::Large : AgentKind::Small,
          order.front(), top};
}

std::string case_name(const ThreeCase& c) {
  struct Namer {
    std::string operator()(const TailFallback&) const { return "TailFallback"; }
    std::string operator()(const TwoSmall&) const { return "TwoSmall"; }
    std::string operator()(const OneSmall&) const { return "OneSmall"; }
    std::string operator()(const AllLarge&) const { return "AllLarge"; }
  };
  return std::visit(Namer{}, c);
}

ThreeCase dispatch_three(const Instance& normalized) {
  require_three(normalized);
  for (Agent i = 0; i < 3; ++i) {
    const auto order = sorted_order(normalized, i);
    const Rational tail = normalized.bundle_cost(i, tail_items(normalized, i));
    if (tail <= Rational(5) * second_cost(normalized, i, order)) {
      return TailFallback{i};
    }
  }

  std::array<AgentClass, 3> cls{classify_agent(normalized, 0),
                                classify_agent(normalized, 1),
                                classify_agent(normalized, 2)};
  std::vector<Agent> small;
  std::vector<Agent> large;
  for (Agent i = 0; i < 3; ++i) {
    (cls[i].kind == AgentKind::Small ? small : large).push_back(i);
  }
  if (small.size() >= 2) {
    const Agent third = 3 - small[0] - small[1];
    return TwoSmall{{small[0], small[1]}, third};
  }
  if (small.size() == 1) {
    return OneSmall{small[0],
                    {large[0], large[1]},
                    cls[large[0]].top_item == cls[large[1]].top_item};
  }
  const std::array<Item, 3> tops{cls[0].top_item, cls[1].top_item, cls[2].top_item};
  return AllLarge{tops, tops[0] == tops[1] || tops[0] == tops[2] || tops[1] == tops[2]};
}

std::array<ItemSet, 3> sequential_placement(const Instance& normalized,
                                            Agent first, Agent second) {
  const std::array<Agent, 2> actors{first, second};
  const std::array<std::vector<Item>, 2> orders{sorted_order(normalized, first),
                                                sorted_order(normalized, second)};
  std::array<std::size_t, 2> cursor{0, 0};
  std::vector<bool> placed(normalized.m(), false);

  std::array<ItemSet, 3> bundles;
  // load[a][b]: cost of bundle b under actor a.
  std::array<std::array<Rational, 3>, 2> load;

  for (int step = 0; step < normalized.m(); ++step) {
    const int a = step % 2;
    while (placed[orders[a][cursor[a]]]) ++cursor[a];
    const Item e = orders[a][cursor[a]];
    const auto b = static_cast<std::size_t>(
        std::min_element(load[a].begin(), load[a].end()) - load[a].begin());
    bundles[b].push_back(e);
    placed[e] = true;
    for (int k = 0; k < 2; ++k) load[k][b] += normalized.cost(actors[k], e);
  }
  for (auto& b : bundles) std::sort(b.begin(), b.end());
  return bundles;
}

Allocation solve_two_small(const Instance& normalized, const TwoSmall& c) {
  auto bundles = sequential_placement(normalized, c.small[0], c.small[1]);
  const std::size_t pick = cheapest_bundle(normalized.row(c.third), bundles);
  Allocation alloc(3);
  alloc.set_bundle(c.third, bundles[pick]);
  int next = 0;
  for (Agent i : c.small) {
    if (static_cast<std::size_t>(next) == pick) ++next;
    alloc.set_bundle(i, bundles[next++]);
  }
  return alloc;
}

Allocation solve_one_small(const Instance& normalized, const OneSmall& c) {
  return one_small_impl(normalized, c).first;
}

Allocation solve_all_large(const Instance& normalized, const AllLarge& c) {
  const auto& e = c.tops;
  Allocation alloc(3);

  constexpr std::array<std::array<Agent, 3>, 3> kPairs{{{0, 1, 2}, {0, 2, 1}, {1, 2, 0}}};
  for (const auto& [i, j, k] : kPairs) {
    if (e[i] != e[j]) continue;
    alloc.assign(k, e[i]);
    auto split = divide_and_choose(normalized, i, j, without_item(normalized.all_items(), e[i]));
    alloc.set_bundle(i, std::move(split.cutter));
    alloc.set_bundle(j, std::move(split.chooser));
    return alloc;
  }

  ItemSet tops{e[0], e[1], e[2]};
  std::sort(tops.begin(), tops.end());
  const ItemSet rest = set_minus(normalized.all_items(), tops);
  alloc.set_bundle(2, ItemSet{std::min(e[0], e[1]), std::max(e[0], e[1])});

  auto halves = greedy_identical_partition(normalized.row(0), rest, 2);
  const std::size_t favourite = cheapest_bundle(normalized.row(2), halves);
  ItemSet with_top = with_item(halves[favourite], e[2]);
  ItemSet& other = halves[1 - favourite];
  if (normalized.bundle_cost(1, other) < normalized.bundle_cost(1, with_top)) {
    alloc.set_bundle(1, other);
    alloc.set_bundle(0, std::move(with_top));
  } else {
    alloc.set_bundle(1, std::move(with_top));
    alloc.set_bundle(0, other);
  }
  return alloc;
}

ThreeTrace solve_three_traced(const Instance& inst) {
  require_three(inst);
  ThreeTrace trace;
  if (inst.m() < inst.n()) {
    trace.allocation = few_items_allocation(inst);
    return trace;
  }
  const Instance normalized = normalize(inst).instance;
  const ThreeCase route = dispatch_three(normalized);
  trace.route = route;

  if (const auto* fb = std::get_if<TailFallback>(&route)) {
    trace.allocation = trivial_tail_allocation(normalized, fb->agent);
  } else if (const auto* ts = std::get_if<TwoSmall>(&route)) {
    trace.placement = sequential_placement(normalized, ts->small[0], ts->small[1]);
    trace.allocation = solve_two_small(normalized, *ts);
  } else if (const auto* os = std::get_if<OneSmall>(&route)) {
    auto [alloc, fell_back] = one_small_impl(normalized, *os);
    trace.allocation = std::move(alloc);
    trace.one_small_fallback = fell_back;
  } else {
    trace.allocation = solve_all_large(normalized, std::get<AllLarge>(route));
  }
  return trace;
}

Allocation solve_three(const Instance& inst) {
  return solve_three_traced(inst).allocation;
}

}  // namespace chorefair::three
