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
#include <deque>
#include <numeric>

#include "chorefair/bivalued.hpp"
#include "chorefair/errors.hpp"
#include "chorefair/verify.hpp"

namespace chorefair::bi {
namespace {

int size_of(const Allocation& x, Agent i) { return static_cast<int>(x.bundle(i).size()); }

std::vector<Agent> all_agents(int n) {
  std::vector<Agent> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

// State shared by the |M+| <= n-2 branches.
struct FewLarge {
  const BiProfile& p;
  const AgentGroups& groups;
  const Allocation& x0;
  std::vector<int> rank;  // position of each agent
  Allocation x;
  std::vector<std::string>& violations;

  int n() const { return x.n(); }

  std::vector<Agent> by_position(std::vector<Agent> v) const {
    std::sort(v.begin(), v.end(), [&](Agent a, Agent b) { return rank[a] < rank[b]; });
    return v;
  }
  // Largest bundle, ties to the largest position.
  Agent largest() const {
    Agent best = 0;
    for (Agent i = 1; i < n(); ++i) {
      if (size_of(x, i) > size_of(x, best) ||
          (size_of(x, i) == size_of(x, best) && rank[i] > rank[best])) {
        best = i;
      }
    }
    return best;
  }
  // Smallest bundle, ties to the lowest group, then the smallest position.
  Agent smallest() const {
    Agent best = 0;
    for (Agent i = 1; i < n(); ++i) {
      const int li = groups.level_of[i];
      const int lb = groups.level_of[best];
      if (size_of(x, i) < size_of(x, best) ||
          (size_of(x, i) == size_of(x, best) &&
           (li > lb || (li == lb && rank[i] < rank[best])))) {
        best = i;
      }
    }
    return best;
  }
  Item take_lowest(Agent from) {
    const Item e = x.bundle(from).front();
    x.remove(from, e);
    return e;
  }
  ItemSet received(Agent i) const { return set_minus(x.bundle(i), x0.bundle(i)); }

  std::deque<Item> rebalance(std::deque<Item> pool);
  void spread_leftover(std::deque<Item> pool);
  void check_rebalance_invariants();
  void place_large_items(const ItemSet& m_plus, const Allocation& base, bool observe);
};

std::deque<Item> FewLarge::rebalance(std::deque<Item> pool) {
  const auto bottom = by_position(groups.bottom());
  for (;;) {
    auto empty = std::find_if(bottom.begin(), bottom.end(),
                              [&](Agent a) { return x.bundle(a).empty(); });
    if (empty == bottom.end()) break;
    if (!pool.empty()) {
      x.assign(*empty, pool.front());
      pool.pop_front();
    } else {
      // Moving a singleton would only relocate the empty bundle.
      const Agent l = largest();
      if (x.bundle(l).size() <= 1) break;
      x.assign(*empty, take_lowest(l));
    }
  }

  const long limit = static_cast<long>(n()) * (x.allocated_count() + pool.size() + 1) + 1;
  for (long iter = 0;; ++iter) {
    const Agent big = largest();
    const Agent j = smallest();
    if (size_of(x, big) <= (n() - 1) * size_of(x, j) + 1) break;
    if (iter > limit) {
      violations.push_back("batched reallocation did not terminate");
      break;
    }
    const auto members = by_position(groups.groups[groups.level_of[j]]);
    if (pool.size() < members.size() && size_of(x, big) - size_of(x, j) < n()) {
      violations.push_back("harvest started with size gap below n");
    }
    while (pool.size() < members.size()) {
      const Agent l = largest();
      if (x.bundle(l).empty()) break;
      pool.push_back(take_lowest(l));
    }
    for (Agent a : members) {
      if (pool.empty()) break;
      x.assign(a, pool.front());
      pool.pop_front();
    }
  }
  return pool;
}

void FewLarge::spread_leftover(std::deque<Item> pool) {
  const auto bottom = by_position(groups.bottom());
  for (std::size_t k = 0; !pool.empty(); ++k) {
    x.assign(bottom[k % bottom.size()], pool.front());
    pool.pop_front();
  }
}

void FewLarge::check_rebalance_invariants() {
  const int bottom_level = static_cast<int>(groups.groups.size()) - 1;
  for (Agent i = 0; i < n(); ++i) {
    for (Item e : received(i)) {
      if (!p.large(i, e)) {
        violations.push_back("agent " + std::to_string(i) + " received item " +
                             std::to_string(e) + " that is small to it");
      }
    }
    for (Agent j = 0; j < n(); ++j) {
      if (i == j) continue;
      const int li = groups.level_of[i];
      const int lj = groups.level_of[j];
      const auto ri = received(i).size();
      const auto rj = received(j).size();
      if (li < lj) {
        for (Item e : x.bundle(i)) {
          if (!p.large(j, e)) {
            violations.push_back("lower-group agent " + std::to_string(j) +
                                 " finds item " + std::to_string(e) + " small");
          }
        }
        if (ri > rj) violations.push_back("higher-group agent received more than a lower one");
      }
      if (li == lj && li != bottom_level && ri != rj) {
        violations.push_back("same-group agents received different counts");
      }
      if (li == lj && li == bottom_level && ri > rj + 1) {
        violations.push_back("bottom-group counts differ by more than one");
      }
    }
  }
}

// `base` supplies the bundle costs tested against 1/(n-2).
void FewLarge::place_large_items(const ItemSet& m_plus, const Allocation& base, bool observe) {
  const int nn = n();
  const auto bottom = by_position(groups.bottom());
  const std::size_t s = bottom.size();
  const std::size_t pc = m_plus.size();
  if (pc == 0) return;

  std::vector<Agent> position(nn);
  for (Agent i = 0; i < nn; ++i) position[rank[i]] = i;

  if (s <= pc) {
    for (std::size_t k = 0; k < pc; ++k) x.assign(bottom[s - 1 - k % s], m_plus[k]);
    return;
  }
  const Agent pivot = position[nn - static_cast<int>(pc) - 1];
  if (p.scaled.bundle_cost(pivot, base.bundle(pivot)) * Rational(nn - 2) >= Rational(1)) {
    for (std::size_t k = 0; k < pc; ++k) x.assign(position[nn - 1 - static_cast<int>(k)], m_plus[k]);
    return;
  }

  std::deque<Item> pool(m_plus.begin(), m_plus.end());
  std::vector<Agent> active = bottom;  // S, ascending position
  std::vector<int> plus_count(nn, 0);
  for (int pos = nn - 1; pos >= nn - static_cast<int>(s); --pos) {
    const Agent i = position[pos];
    std::vector<Agent> others;
    for (Agent a : active) {
      if (a != i) others.push_back(a);
    }
    const ItemSet own = x.bundle(i);
    const bool movable = std::all_of(own.begin(), own.end(), [&](Item e) {
      return std::any_of(others.begin(), others.end(), [&](Agent a) { return p.small(a, e); });
    });
    if (movable) {
      for (Item e : own) {
        Agent target = -1;
        for (Agent a : others) {
          if (p.small(a, e) && (target < 0 || size_of(x, a) < size_of(x, target))) target = a;
        }
        x.remove(i, e);
        x.assign(target, e);
      }
      x.assign(i, pool.front());
      pool.pop_front();
      ++plus_count[i];
    }
    active = others;
    if (pool.size() == active.size()) {
      for (Agent a : active) {
        x.assign(a, pool.front());
        pool.pop_front();
        ++plus_count[a];
      }
      break;
    }
    if (pool.empty()) break;
  }
  if (!pool.empty()) violations.push_back("consistently large items left unplaced");
  if (!observe) return;

  for (Agent i : bottom) {
    if (plus_count[i] > 1) violations.push_back("bottom agent received two large items");
  }
  for (Agent i : active) {
    for (Agent j = 0; j < nn; ++j) {
      if (std::find(active.begin(), active.end(), j) != active.end()) continue;
      const auto& b = x.bundle(j);
      if (!b.empty() && std::none_of(b.begin(), b.end(), [&](Item e) { return p.large(i, e); })) {
        violations.push_back("finalized bundle of " + std::to_string(j) +
                             " has no item large to open agent " + std::to_string(i));
      }
    }
  }
  for (Agent j : bottom) {
    if (std::find(active.begin(), active.end(), j) != active.end()) continue;
    const auto& b = x.bundle(j);
    const bool own_small = std::all_of(b.begin(), b.end(), [&](Item e) { return p.small(j, e); });
    if (!own_small && b.size() != 1) {
      violations.push_back("finalized agent " + std::to_string(j) + " holds a mixed bundle");
    }
  }
}

}  // namespace

std::string branch_name(BiGeneralBranch b) {
  switch (b) {
    case BiGeneralBranch::SinglePositive: return "SinglePositive";
    case BiGeneralBranch::ManyLarge: return "ManyLarge";
    case BiGeneralBranch::NMinusOneLarge: return "NMinusOneLarge";
    case BiGeneralBranch::FewLargeNotEfx: return "FewLargeNotEfx";
    case BiGeneralBranch::FewLargeEfx: return "FewLargeEfx";
  }
  return "?";
}

BiGeneralTrace solve_bi_general_traced(const Instance& inst) {
  const int n = inst.n();
  if (n < 4) {
    throw Error(ErrorKind::WrongAgentCount,
                "bi-valued general solver needs n>=4, got n=" + std::to_string(n));
  }
  const auto profile = detect_bivalued(inst);
  if (!profile) throw Error(ErrorKind::NotBiValued, "instance has more than two cost values");
  const BiProfile& p = *profile;
  const Instance& c = p.scaled;
  const int plus = static_cast<int>(p.m_plus.size());
  BiGeneralTrace trace;

  if (p.single_positive) {
    trace.branch = BiGeneralBranch::SinglePositive;
    trace.allocation = round_robin_chores(c, c.all_items(), all_agents(n)).allocation;
  } else if (plus >= n) {
    trace.branch = BiGeneralBranch::ManyLarge;
    const ItemSet firsts(p.m_plus.begin(), p.m_plus.begin() + n);
    Allocation x = round_robin_chores(c, set_minus(c.all_items(), firsts), all_agents(n)).allocation;
    for (Agent i = 0; i < n; ++i) x.assign(i, firsts[i]);
    trace.allocation = std::move(x);
  } else if (plus == n - 1) {
    trace.branch = BiGeneralBranch::NMinusOneLarge;
    Agent star = 0;
    for (Agent i = 1; i < n; ++i) {
      if (p.per_agent_small[i].size() > p.per_agent_small[star].size()) star = i;
    }
    std::vector<Item> prefs = p.m_minus_global;
    std::stable_sort(prefs.begin(), prefs.end(),
                     [&](Item a, Item b) { return c.cost(star, a) < c.cost(star, b); });
    Allocation x(n);
    Rational load;
    std::size_t taken = 0;
    while (load < Rational(1) && taken < prefs.size()) {
      load += c.cost(star, prefs[taken]);
      x.assign(star, prefs[taken++]);
    }
    std::vector<Agent> order;
    for (Agent i = 0; i < n; ++i) {
      if (i != star) order.push_back(i);
    }
    for (std::size_t k = 0; k < order.size(); ++k) x.assign(order[k], p.m_plus[k]);
    order.push_back(star);
    const ItemSet pool = set_minus(p.m_minus_global, x.bundle(star));
    const auto rr = round_robin_chores(c, pool, order);
    for (Agent i = 0; i < n; ++i) x.assign(i, rr.allocation.bundle(i));
    trace.allocation = std::move(x);
  } else {
    Allocation x0 = partial_allocation_small(p);
    AgentGroups groups = build_agent_groups(x0, p);
    auto found = partial_allocation_violations(p, x0, groups);
    trace.violations.insert(trace.violations.end(), found.begin(), found.end());

    std::vector<Agent> position = all_agents(n);
    std::stable_sort(position.begin(), position.end(), [&](Agent a, Agent b) {
      if (groups.level_of[a] != groups.level_of[b]) return groups.level_of[a] < groups.level_of[b];
      return size_of(x0, a) > size_of(x0, b);
    });
    FewLarge run{p, groups, x0, std::vector<int>(n), x0, trace.violations};
    for (int k = 0; k < n; ++k) run.rank[position[k]] = k;

    const bool x0_efx = min_efx_alpha(c, x0).alpha <= ExtRational(Rational(n - 1));
    if (!x0_efx) {
      trace.branch = BiGeneralBranch::FewLargeNotEfx;
      const auto left = run.rebalance(std::deque<Item>(p.m_plus.begin(), p.m_plus.end()));
      const Allocation settled = run.x;
      run.spread_leftover(left);
      run.check_rebalance_invariants();
      // Round-robin can hand a large item to one bottom agent while another
      // with a nonempty X0 bundle gets none; place the leftover the way the
      // EFX case does, starting from the settled bundles.
      if (!left.empty() && min_efx_alpha(c, run.x).alpha > ExtRational(Rational(n - 1))) {
        run.x = settled;
        run.place_large_items(ItemSet(left.begin(), left.end()), settled, false);
        trace.leftover_replaced = true;
      }
    } else {
      trace.branch = BiGeneralBranch::FewLargeEfx;
      run.place_large_items(p.m_plus, x0, true);
    }
    trace.allocation = std::move(run.x);
    trace.position = std::move(position);
    trace.x0 = std::move(x0);
    trace.groups = std::move(groups);
  }

  if (!trace.allocation.is_complete(c.m())) trace.violations.push_back("allocation is incomplete");
  const bool two_bound = trace.branch == BiGeneralBranch::ManyLarge ||
                         trace.branch == BiGeneralBranch::NMinusOneLarge;
  const ExtRational alpha = min_efx_alpha(c, trace.allocation).alpha;
  if (alpha > ExtRational(Rational(two_bound ? 2 : n - 1))) {
    trace.violations.push_back("final allocation is only " + alpha.str() + "-EFX");
  }
  return trace;
}

Allocation solve_bi_general(const Instance& inst) {
  auto trace = solve_bi_general_traced(inst);
  if (!trace.violations.empty()) {
    throw Error(ErrorKind::InvariantViolation, trace.violations.front());
  }
  return std::move(trace.allocation);
}

}  // namespace chorefair::bi
