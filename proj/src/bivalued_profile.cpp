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
#include <set>

#include "chorefair/bivalued.hpp"
#include "chorefair/errors.hpp"

namespace chorefair::bi {

std::optional<BiProfile> detect_bivalued(const Instance& inst) {
  std::set<Rational> values;
  for (const auto& row : inst.costs()) {
    for (const Rational& c : row) {
      values.insert(c);
      if (values.size() > 2) return std::nullopt;
    }
  }

  BiProfile p;
  if (!values.empty()) {
    p.low = *values.begin();
    p.high = *values.rbegin();
  }
  p.single_positive = values.size() == 1 && p.high.sign() > 0;
  if (values.size() == 2) p.epsilon = p.low / p.high;

  const int n = inst.n();
  const int m = inst.m();
  std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(m));
  p.large_bit.assign(n, std::vector<bool>(m, false));
  p.per_agent_small.resize(n);
  for (Agent i = 0; i < n; ++i) {
    for (Item e = 0; e < m; ++e) {
      const bool is_large = p.high.sign() > 0 && inst.cost(i, e) == p.high;
      p.large_bit[i][e] = is_large;
      rows[i][e] = is_large ? Rational(1) : p.epsilon;
      if (!is_large) p.per_agent_small[i].push_back(e);
    }
  }
  p.scaled = Instance(n, m, std::move(rows), inst.labels());

  for (Item e = 0; e < m; ++e) {
    bool all_large = true;
    for (Agent i = 0; i < n && all_large; ++i) all_large = p.large_bit[i][e];
    (all_large ? p.m_plus : p.m_minus_global).push_back(e);
  }
  return p;
}

RoundRobinResult round_robin_chores(const Instance& inst, const ItemSet& items,
                                    std::span<const Agent> order) {
  RoundRobinResult out{Allocation(inst.n()), std::vector<std::optional<int>>(inst.n())};
  if (order.empty()) return out;

  std::vector<std::vector<Item>> prefs(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    prefs[k] = items;
    const auto row = inst.row(order[k]);
    std::stable_sort(prefs[k].begin(), prefs[k].end(),
                     [&](Item a, Item b) { return row[a] < row[b]; });
  }
  std::vector<bool> taken(inst.m(), false);
  std::vector<std::size_t> cursor(order.size(), 0);
  for (std::size_t round = 0; round < items.size(); ++round) {
    const std::size_t k = round % order.size();
    while (taken[prefs[k][cursor[k]]]) ++cursor[k];
    const Item e = prefs[k][cursor[k]];
    taken[e] = true;
    out.allocation.assign(order[k], e);
    out.last_round[order[k]] = static_cast<int>(round) + 1;
  }
  return out;
}

std::vector<std::string> round_robin_violations(const BiProfile& profile,
                                                const RoundRobinResult& rr,
                                                const ItemSet& outside) {
  const Instance& c = profile.scaled;
  const auto& x = rr.allocation;
  std::vector<std::string> out;
  const int n = c.n();
  for (Agent i = 0; i < n; ++i) {
    for (Agent j = 0; j < n; ++j) {
      if (i == j || !rr.last_round[i] || !rr.last_round[j]) continue;
      if (*rr.last_round[i] >= *rr.last_round[j]) continue;
      const std::string pair = "(" + std::to_string(i) + "," + std::to_string(j) + ")";

      const Rational ci_xi = c.bundle_cost(i, x.bundle(i));
      const Rational ci_xj = c.bundle_cost(i, x.bundle(j));
      if (ci_xi > ci_xj) out.push_back("earlier agent envies later " + pair);

      const Rational cj_xj = c.bundle_cost(j, x.bundle(j));
      const Rational cj_xi = c.bundle_cost(j, x.bundle(i));
      Rational heaviest;
      for (Item e : x.bundle(j)) heaviest = std::max(heaviest, c.cost(j, e));
      if (cj_xj - heaviest > cj_xi) out.push_back("later agent not EF1 " + pair);

      for (Item e : outside) {
        if (!profile.small(i, e) || !profile.large(j, e)) continue;
        if (cj_xi + c.cost(j, e) < cj_xj) {
          out.push_back("later agent envies X_i + " + std::to_string(e) + " " + pair);
        }
      }
    }
  }
  return out;
}

Bi3Classes classify_items_bi3(const BiProfile& profile) {
  const int n = profile.scaled.n();
  if (n != 3) {
    throw Error(ErrorKind::WrongAgentCount,
                "item classes are defined for 3 agents, got n=" + std::to_string(n));
  }
  Bi3Classes out;
  for (Item e = 0; e < profile.scaled.m(); ++e) {
    int large_count = 0;
    Agent lone_large = -1;
    Agent lone_small = -1;
    for (Agent i = 0; i < n; ++i) {
      if (profile.large(i, e)) {
        ++large_count;
        lone_large = i;
      } else {
        lone_small = i;
      }
    }
    ItemClass cls{ItemTag::MixedInconsistent};
    if (large_count == n) {
      cls = {ItemTag::ConsistentlyLarge};
    } else if (large_count == 0) {
      cls = {ItemTag::ConsistentlySmall};
    } else if (large_count == 1) {
      cls = {ItemTag::LargeOnlyTo, lone_large};
      out.L[lone_large].push_back(e);
    } else if (large_count == n - 1) {
      cls = {ItemTag::SmallOnlyTo, lone_small};
    }
    out.items.push_back(cls);
  }
  return out;
}

}  // namespace chorefair::bi
