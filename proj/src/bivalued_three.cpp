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

#include <algorithm>

#include "chorefair/bivalued.hpp"
#include "chorefair/errors.hpp"
#include "chorefair/primitives.hpp"

namespace chorefair::bi {
namespace {

// Starting order over (a, b, c) so that a round-robin on `count` items ends
// with r_a < r_b < r_c.
std::array<Agent, 3> forcing_order(std::size_t count, Agent a, Agent b, Agent c) {
  switch (count % 3) {
    case 0: return {a, b, c};
    case 1: return {c, a, b};
    default: return {b, c, a};
  }
}

bool same_row(const BiProfile& p, Agent i, Agent j) {
  return p.large_bit[i] == p.large_bit[j];
}

std::array<ItemSet, 3> sorted_partition(const Instance& c, Agent row_of, const ItemSet& items) {
  auto parts = greedy_identical_partition(c.row(row_of), items, 3);
  std::array<ItemSet, 3> s{parts[0], parts[1], parts[2]};
  std::stable_sort(s.begin(), s.end(), [&](const ItemSet& x, const ItemSet& y) {
    return c.bundle_cost(row_of, x) < c.bundle_cost(row_of, y);
  });
  return s;
}

// Greedy 3-partition under `row_of`; `picker` takes its cheapest bundle and
// the other two agents take the rest in ascending index.
Allocation pick_first(const Instance& c, Agent row_of, Agent picker, const ItemSet& items) {
  auto parts = greedy_identical_partition(c.row(row_of), items, 3);
  const std::size_t pick = cheapest_bundle(c.row(picker), parts);
  Allocation alloc(3);
  alloc.set_bundle(picker, parts[pick]);
  std::size_t next = 0;
  for (Agent i = 0; i < 3; ++i) {
    if (i == picker) continue;
    if (next == pick) ++next;
    alloc.set_bundle(i, parts[next++]);
  }
  return alloc;
}

void require(const Instance& inst) {
  if (inst.n() != 3) {
    throw Error(ErrorKind::WrongAgentCount,
                "bi-valued three-agent solver needs n=3, got n=" + std::to_string(inst.n()));
  }
}

}  // namespace

std::string case_name(Bi3Case c) {
  switch (c) {
    case Bi3Case::IdenticalRows: return "IdenticalRows";
    case Bi3Case::SmallOnly: return "SmallOnly";
    case Bi3Case::TwoLargeOnly: return "TwoLargeOnly";
    case Bi3Case::OneLargeOnlyEach: return "OneLargeOnlyEach";
  }
  return "?";
}

Bi3Trace solve_bi_three_traced(const Instance& inst) {
  require(inst);
  const auto profile = detect_bivalued(inst);
  if (!profile) throw Error(ErrorKind::NotBiValued, "instance has more than two cost values");
  const BiProfile& p = *profile;
  const Instance& c = p.scaled;
  const ItemSet all = c.all_items();
  Bi3Trace trace;

  constexpr std::array<std::array<Agent, 3>, 3> kPairs{{{0, 1, 2}, {0, 2, 1}, {1, 2, 0}}};
  for (const auto& [i, j, k] : kPairs) {
    if (!same_row(p, i, j)) continue;
    trace.route = Bi3Case::IdenticalRows;
    trace.allocation = pick_first(c, i, k, all);
    return trace;
  }

  const Bi3Classes cls = classify_items_bi3(p);

  for (Item e1 = 0; e1 < c.m(); ++e1) {
    if (cls.items[e1].tag != ItemTag::SmallOnlyTo) continue;
    const Agent i = cls.items[e1].agent;
    const Agent a = (i + 1) % 3;
    const Agent b = (i + 2) % 3;
    Item e2 = -1;
    for (Item e = 0; e < c.m(); ++e) {
      if (e != e1 && p.large(a, e) != p.large(b, e)) {
        e2 = e;
        break;
      }
    }
    if (e2 < 0) throw Error(ErrorKind::InvariantViolation, "rows of the other agents coincide");
    const Agent j = p.small(a, e2) ? a : b;
    const Agent l = 3 - i - j;

    trace.held_out = {std::min(e1, e2), std::max(e1, e2)};
    const ItemSet rest = set_minus(all, trace.held_out);
    const auto order = forcing_order(rest.size(), i, j, l);
    RoundRobinResult rr = round_robin_chores(c, rest, order);
    Allocation alloc = rr.allocation;
    alloc.assign(i, e1);
    alloc.assign(j, e2);
    trace.route = Bi3Case::SmallOnly;
    trace.allocation = std::move(alloc);
    trace.round_robin = std::move(rr);
    return trace;
  }

  for (Agent a = 0; a < 3; ++a) {
    if (cls.L[a].size() < 2) continue;
    const Item e1 = cls.L[a][0];
    const Item e2 = cls.L[a][1];
    Agent role2 = -1;
    for (Agent x = 0; x < 3 && role2 < 0; ++x) {
      if (x != a && !cls.L[x].empty()) role2 = x;
    }
    if (role2 < 0) throw Error(ErrorKind::InvariantViolation, "rows of the other agents coincide");
    const Agent role3 = 3 - a - role2;
    const Item e3 = cls.L[role2][0];
    trace.route = Bi3Case::TwoLargeOnly;

    const ItemSet& small_to_a = p.per_agent_small[a];
    if (small_to_a == ItemSet{e3}) {
      Allocation alloc = pick_first(c, role2, a, without_item(all, e3));
      alloc.assign(a, e3);
      trace.allocation = std::move(alloc);
      return trace;
    }

    Item e4 = -1;
    for (Item e : small_to_a) {
      if (e != e3) {
        e4 = e;
        break;
      }
    }
    trace.held_out = ItemSet{e1, e2, e3, e4};
    std::sort(trace.held_out.begin(), trace.held_out.end());
    const ItemSet rest = set_minus(all, trace.held_out);
    const auto order = forcing_order(rest.size(), role3, role2, a);
    RoundRobinResult rr = round_robin_chores(c, rest, order);
    Allocation alloc = rr.allocation;
    alloc.assign(a, e4);
    alloc.assign(role2, e1);
    alloc.assign(role3, e2);
    alloc.assign(role3, e3);
    trace.allocation = std::move(alloc);
    trace.round_robin = std::move(rr);
    return trace;
  }

  // Every |L_i| <= 1. Agents without a large-only item take the last role.
  std::vector<Agent> roles;
  for (Agent x = 0; x < 3; ++x) {
    if (!cls.L[x].empty()) roles.push_back(x);
  }
  if (roles.size() < 2) throw Error(ErrorKind::InvariantViolation, "two rows coincide");
  const bool e3_defined = roles.size() == 3;
  if (!e3_defined) roles.push_back(3 - roles[0] - roles[1]);
  const Item e1 = cls.L[roles[0]][0];
  const Item e2 = cls.L[roles[1]][0];
  ItemSet held{e1, e2};
  if (e3_defined) held.push_back(cls.L[roles[2]][0]);
  std::sort(held.begin(), held.end());
  const ItemSet rest = set_minus(all, held);
  for (Item e : rest) {
    if (p.large(0, e) != p.large(1, e) || p.large(0, e) != p.large(2, e)) {
      throw Error(ErrorKind::InvariantViolation,
                  "item " + std::to_string(e) + " is inconsistent outside the large-only items");
    }
  }

  auto s = sorted_partition(c, roles[0], rest);
  Allocation alloc(3);
  if (e3_defined) {
    const Item e3 = cls.L[roles[2]][0];
    const Rational spread = c.bundle_cost(roles[0], s[2]) - c.bundle_cost(roles[0], s[0]);
    if (spread > p.epsilon) {
      alloc.set_bundle(roles[0], with_item(with_item(s[0], e2), e3));
      alloc.set_bundle(roles[1], with_item(s[1], e1));
      alloc.set_bundle(roles[2], s[2]);
    } else {
      alloc.set_bundle(roles[0], with_item(s[0], e2));
      alloc.set_bundle(roles[1], with_item(s[1], e3));
      alloc.set_bundle(roles[2], with_item(s[2], e1));
    }
  } else {
    alloc.set_bundle(roles[0], with_item(s[0], e2));
    alloc.set_bundle(roles[1], with_item(s[1], e1));
    alloc.set_bundle(roles[2], s[2]);
  }
  trace.route = Bi3Case::OneLargeOnlyEach;
  trace.held_out = held;
  trace.allocation = std::move(alloc);
  return trace;
}

Allocation solve_bi_three(const Instance& inst) {
  return solve_bi_three_traced(inst).allocation;
}

}  // namespace chorefair::bi
