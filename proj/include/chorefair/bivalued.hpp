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

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chorefair/instance.hpp"

namespace chorefair::bi {

/// A matrix with at most two distinct values, rescaled so the larger is 1.
struct BiProfile {
  Rational epsilon;        // smaller value / larger value, in [0, 1)
  Rational low;            // original smaller value
  Rational high;           // original larger value (0 for an all-zero matrix)
  bool single_positive = false;  // every entry equals the same positive value
  Instance scaled;         // entries in {epsilon, 1}; all zero when high == 0
  std::vector<std::vector<bool>> large_bit;
  ItemSet m_plus;          // large to every agent
  ItemSet m_minus_global;  // small to at least one agent
  std::vector<ItemSet> per_agent_small;

  bool large(Agent i, Item e) const { return large_bit[i][e]; }
  bool small(Agent i, Item e) const { return !large_bit[i][e]; }
};

/// nullopt when the matrix holds three or more distinct values.
std::optional<BiProfile> detect_bivalued(const Instance& inst);

struct RoundRobinResult {
  Allocation allocation;
  /// 1-based pick step (counted over all agents) of each agent's last pick;
  /// empty for agents that never picked.
  std::vector<std::optional<int>> last_round;
};

/// Agents in `order` repeatedly take their cheapest remaining item (ties:
/// lowest index) until `items` is exhausted.
RoundRobinResult round_robin_chores(const Instance& inst, const ItemSet& items,
                                    std::span<const Agent> order);

/// Checks, for every ordered pair with r_i < r_j, that i does not envy j and
/// that j is EF1 towards i. For each item e in `outside` with c_i(e) = eps
/// and c_j(e) = 1 it also checks that j would not envy X_i + e. Costs must
/// already be on the {eps, 1} scale. Returns a description per violation.
std::vector<std::string> round_robin_violations(const BiProfile& profile,
                                                const RoundRobinResult& rr,
                                                const ItemSet& outside = {});

enum class ItemTag {
  ConsistentlyLarge,
  ConsistentlySmall,
  LargeOnlyTo,
  SmallOnlyTo,
  MixedInconsistent,
};

struct ItemClass {
  ItemTag tag;
  Agent agent = -1;  // for the *OnlyTo tags
};

struct Bi3Classes {
  std::vector<ItemClass> items;
  std::array<ItemSet, 3> L;  // items large only to each agent
};

/// Three agents only; throws WrongAgentCount otherwise.
Bi3Classes classify_items_bi3(const BiProfile& profile);

enum class Bi3Case { IdenticalRows, SmallOnly, TwoLargeOnly, OneLargeOnlyEach };

std::string case_name(Bi3Case c);

struct Bi3Trace {
  Allocation allocation;
  Bi3Case route = Bi3Case::IdenticalRows;
  /// The round-robin run and the items kept out of it, when one was used.
  std::optional<RoundRobinResult> round_robin;
  ItemSet held_out;
};

/// Exact EFX for three bi-valued agents. Throws NotBiValued, WrongAgentCount.
Allocation solve_bi_three(const Instance& inst);
Bi3Trace solve_bi_three_traced(const Instance& inst);

/// Every item of M- goes to an agent that finds it small, then sizes are
/// rebalanced along item-transfer paths. Returns a partial allocation.
Allocation partial_allocation_small(const BiProfile& profile);

struct AgentGroups {
  /// Top group first. Each group lists agents in ascending index.
  std::vector<std::vector<Agent>> groups;
  /// Bundle-size label r of each group (A_r).
  std::vector<int> label;
  /// Group index of each agent.
  std::vector<int> level_of;

  const std::vector<Agent>& bottom() const { return groups.back(); }
};

AgentGroups build_agent_groups(const Allocation& x0, const BiProfile& profile);

/// Structural properties of X0 and its groups; one message per violation.
std::vector<std::string> partial_allocation_violations(const BiProfile& profile,
                                                       const Allocation& x0,
                                                       const AgentGroups& groups);

enum class BiGeneralBranch {
  SinglePositive,
  ManyLarge,       // |M+| >= n
  NMinusOneLarge,  // |M+| = n-1
  FewLargeNotEfx,  // |M+| <= n-2, X0 not (n-1)-EFX
  FewLargeEfx,     // |M+| <= n-2, X0 already (n-1)-EFX
};

std::string branch_name(BiGeneralBranch b);

struct BiGeneralTrace {
  Allocation allocation;
  BiGeneralBranch branch = BiGeneralBranch::ManyLarge;
  std::optional<Allocation> x0;
  std::optional<AgentGroups> groups;
  /// position[k] is the agent placed k-th after re-indexing by group then
  /// bundle size; the bottom group occupies the last positions.
  std::vector<Agent> position;
  /// Set when large items left over after rebalancing had to be placed by
  /// redistribution because plain round-robin broke the bound.
  bool leftover_replaced = false;
  /// Broken invariants found while running; empty on a healthy run.
  std::vector<std::string> violations;
};

/// (n-1)-EFX for n >= 4 bi-valued agents. Throws NotBiValued,
/// WrongAgentCount, and InvariantViolation when the traced run reports any.
Allocation solve_bi_general(const Instance& inst);
BiGeneralTrace solve_bi_general_traced(const Instance& inst);

}  // namespace chorefair::bi
