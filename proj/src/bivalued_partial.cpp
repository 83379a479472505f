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
#include <map>
#include <numeric>
#include <queue>

#include "chorefair/bivalued.hpp"

namespace chorefair::bi {
namespace {

int size_of(const Allocation& x, Agent i) { return static_cast<int>(x.bundle(i).size()); }

// j -> v when j finds some item of X_v small.
bool has_edge(const BiProfile& p, const Allocation& x, Agent j, Agent v) {
  const auto& b = x.bundle(v);
  return std::any_of(b.begin(), b.end(), [&](Item e) { return p.small(j, e); });
}

bool all_large_to(const BiProfile& p, const ItemSet& bundle, Agent i) {
  return std::all_of(bundle.begin(), bundle.end(), [&](Item e) { return p.large(i, e); });
}

// Shortest path from `start` to the reachable agent of largest bundle size
// exceeding start's size by at least two (ties: lowest index). Empty if none.
std::vector<Agent> transfer_path(const BiProfile& p, const Allocation& x, Agent start) {
  const int n = x.n();
  std::vector<Agent> parent(n, -2);
  parent[start] = -1;
  std::queue<Agent> frontier;
  frontier.push(start);
  Agent target = -1;
  while (!frontier.empty()) {
    const Agent u = frontier.front();
    frontier.pop();
    if (size_of(x, u) - size_of(x, start) >= 2 &&
        (target < 0 || size_of(x, u) > size_of(x, target) ||
         (size_of(x, u) == size_of(x, target) && u < target))) {
      target = u;
    }
    for (Agent v = 0; v < n; ++v) {
      if (parent[v] == -2 && has_edge(p, x, u, v)) {
        parent[v] = u;
        frontier.push(v);
      }
    }
  }
  std::vector<Agent> path;
  for (Agent v = target; v >= 0; v = parent[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

Allocation partial_allocation_small(const BiProfile& p) {
  const int n = p.scaled.n();
  Allocation x(n);
  for (Item e : p.m_minus_global) {
    Agent best = -1;
    for (Agent i = 0; i < n; ++i) {
      if (p.small(i, e) && (best < 0 || size_of(x, i) < size_of(x, best))) best = i;
    }
    x.assign(best, e);
  }

  for (;;) {
    std::vector<Agent> starts(n);
    std::iota(starts.begin(), starts.end(), 0);
    std::stable_sort(starts.begin(), starts.end(),
                     [&](Agent a, Agent b) { return size_of(x, a) < size_of(x, b); });
    std::vector<Agent> path;
    for (Agent s : starts) {
      path = transfer_path(p, x, s);
      if (!path.empty()) break;
    }
    if (path.empty()) break;
    // Each taker pulls from its successor an item it finds small.
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
      const Agent taker = path[k];
      const Agent giver = path[k + 1];
      const auto& b = x.bundle(giver);
      const Item e = *std::find_if(b.begin(), b.end(), [&](Item it) { return p.small(taker, it); });
      x.remove(giver, e);
      x.assign(taker, e);
    }
  }
  return x;
}

AgentGroups build_agent_groups(const Allocation& x0, const BiProfile& p) {
  const int n = x0.n();
  std::map<int, std::vector<Agent>> levels;  // N_r
  for (Agent i = 0; i < n; ++i) levels[size_of(x0, i)].push_back(i);

  std::map<int, std::vector<bool>> in_f;  // F_r membership
  for (const auto& [r, members] : levels) {
    std::vector<bool> f(n, false);
    auto below = levels.find(r - 1);
    if (below != levels.end()) {
      for (Agent i : members) {
        for (Agent j : below->second) {
          if (has_edge(p, x0, j, i)) f[i] = true;
        }
      }
    }
    for (bool grew = true; grew;) {
      grew = false;
      for (Agent i : members) {
        if (f[i]) continue;
        for (Agent j : members) {
          if (f[j] && has_edge(p, x0, j, i)) {
            f[i] = true;
            grew = true;
            break;
          }
        }
      }
    }
    in_f[r] = std::move(f);
  }

  AgentGroups g;
  g.level_of.assign(n, -1);
  for (auto it = levels.rbegin(); it != levels.rend(); ++it) {
    const int r = it->first;
    std::vector<Agent> group;
    auto above = levels.find(r + 1);
    if (above != levels.end()) {
      for (Agent i : above->second) {
        if (in_f[r + 1][i]) group.push_back(i);
      }
    }
    for (Agent i : it->second) {
      if (!in_f[r][i]) group.push_back(i);
    }
    // A label r with an empty N_r contributes nothing, so only present sizes
    // are visited.
    if (group.empty()) continue;
    std::sort(group.begin(), group.end());
    for (Agent i : group) g.level_of[i] = static_cast<int>(g.groups.size());
    g.groups.push_back(std::move(group));
    g.label.push_back(r);
  }
  return g;
}

std::vector<std::string> partial_allocation_violations(const BiProfile& p,
                                                       const Allocation& x0,
                                                       const AgentGroups& g) {
  std::vector<std::string> out;
  const int n = x0.n();
  auto name = [](Agent a) { return std::to_string(a); };

  if (x0.allocated() != p.m_minus_global) out.push_back("X0 does not cover M- exactly");
  for (Agent i = 0; i < n; ++i) {
    for (Item e : x0.bundle(i)) {
      if (!p.small(i, e)) out.push_back("item " + std::to_string(e) + " is large to holder " + name(i));
    }
  }
  for (Agent i = 0; i < n; ++i) {
    for (Agent j = 0; j < n; ++j) {
      if (i == j) continue;
      if (size_of(x0, i) - size_of(x0, j) >= 2 && !all_large_to(p, x0.bundle(i), j)) {
        out.push_back("size gap >= 2 but " + name(j) + " finds an item of " + name(i) + " small");
      }
      for (Agent l = 0; l < n; ++l) {
        if (l == i || l == j) continue;
        if (size_of(x0, i) - size_of(x0, j) == 1 && size_of(x0, j) - size_of(x0, l) == 1 &&
            !all_large_to(p, x0.bundle(i), j) && !all_large_to(p, x0.bundle(j), l)) {
          out.push_back("chain " + name(l) + "->" + name(j) + "->" + name(i) + " left unbalanced");
        }
      }
    }
  }

  if (g.level_of.size() != static_cast<std::size_t>(n) ||
      std::find(g.level_of.begin(), g.level_of.end(), -1) != g.level_of.end()) {
    out.push_back("groups do not cover every agent");
    return out;
  }
  for (const auto& group : g.groups) {
    const auto [lo, hi] = std::minmax_element(group.begin(), group.end(), [&](Agent a, Agent b) {
      return size_of(x0, a) < size_of(x0, b);
    });
    if (size_of(x0, *hi) - size_of(x0, *lo) > 1) out.push_back("group sizes differ by more than one");
  }
  for (Agent i = 0; i < n; ++i) {
    for (Agent j = 0; j < n; ++j) {
      // Groups are stored top first, so a larger level_of is a lower group.
      if (g.level_of[i] > g.level_of[j] && !all_large_to(p, x0.bundle(j), i)) {
        out.push_back("lower-group agent " + name(i) + " finds an item of higher-group " +
                      name(j) + " small");
      }
    }
  }
  int smallest = n > 0 ? size_of(x0, 0) : 0;
  for (Agent i = 0; i < n; ++i) smallest = std::min(smallest, size_of(x0, i));
  const int bottom = static_cast<int>(g.groups.size()) - 1;
  for (Agent i = 0; i < n; ++i) {
    if (size_of(x0, i) == smallest && g.level_of[i] != bottom) {
      out.push_back("minimum-size agent " + name(i) + " outside the bottom group");
    }
  }
  return out;
}

}  // namespace chorefair::bi
