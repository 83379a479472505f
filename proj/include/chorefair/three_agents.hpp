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
#include <string>
#include <variant>
#include <vector>

#include "chorefair/instance.hpp"

namespace chorefair::three {

enum class AgentKind { Large, Small };

struct AgentClass {
  AgentKind kind;
  Item top_item;
  Rational top_cost;
};

/// Large iff the agent's most costly item is worth at least 1/8 of the
/// (normalized) total.
AgentClass classify_agent(const Instance& normalized, Agent i);

/// Some agent's tail is at most five times its second item; that agent keeps
/// its tail and the others take its two heaviest items.
struct TailFallback {
  Agent agent;
};
struct TwoSmall {
  std::array<Agent, 2> small;
  Agent third;
};
struct OneSmall {
  Agent small;
  std::array<Agent, 2> large;
  bool tops_equal;
};
struct AllLarge {
  std::array<Item, 3> tops;
  bool any_coincide;
};

using ThreeCase = std::variant<TailFallback, TwoSmall, OneSmall, AllLarge>;

std::string case_name(const ThreeCase& c);

/// Routes a normalized three-agent instance. Throws WrongAgentCount.
ThreeCase dispatch_three(const Instance& normalized);

/// Both small agents take turns dropping their heaviest unplaced item into
/// their currently cheapest of three bundles.
std::array<ItemSet, 3> sequential_placement(const Instance& normalized,
                                            Agent first, Agent second);

Allocation solve_two_small(const Instance& normalized, const TwoSmall& c);
Allocation solve_one_small(const Instance& normalized, const OneSmall& c);
Allocation solve_all_large(const Instance& normalized, const AllLarge& c);

struct ThreeTrace {
  Allocation allocation;
  std::optional<ThreeCase> route;  // empty when m < 3 was handled up front
  /// The three placement bundles of a TwoSmall run.
  std::optional<std::array<ItemSet, 3>> placement;
  /// Set when a OneSmall run found the small agent's view of the two tops
  /// above 1/8 and fell back to the tail allocation.
  bool one_small_fallback = false;
};

/// 5-EFX allocation for any three-agent instance. Throws WrongAgentCount.
Allocation solve_three(const Instance& inst);
ThreeTrace solve_three_traced(const Instance& inst);

}  // namespace chorefair::three
