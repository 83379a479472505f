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
#include <string>
#include <vector>

#include "chorefair/rational.hpp"

namespace chorefair {

using Agent = int;
using Item = int;

/// Sorted, duplicate-free list of item indices.
using ItemSet = std::vector<Item>;

/// Unchecked instance as read from a file or built by hand. Cells are text so
/// that malformed rationals can be reported with their position.
struct RawInstance {
  std::optional<int> n;
  std::optional<int> m;
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> labels;
};

/// n agents, m chores, and an n x m matrix of nonnegative exact costs.
class Instance {
 public:
  Instance() = default;
  /// Throws ValidationError on shape mismatch, negative costs, or duplicate
  /// labels.
  explicit Instance(std::vector<std::vector<Rational>> costs,
                    std::vector<std::string> labels = {});
  Instance(int n, int m, std::vector<std::vector<Rational>> costs,
           std::vector<std::string> labels = {});

  int n() const { return n_; }
  int m() const { return m_; }
  const Rational& cost(Agent i, Item e) const { return costs_[i][e]; }
  std::span<const Rational> row(Agent i) const { return costs_[i]; }
  const std::vector<std::vector<Rational>>& costs() const { return costs_; }
  const std::vector<std::string>& labels() const { return labels_; }

  Rational bundle_cost(Agent i, std::span<const Item> bundle) const;
  Rational total_cost(Agent i) const;
  ItemSet all_items() const;

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  int n_ = 0;
  int m_ = 0;
  std::vector<std::vector<Rational>> costs_;
  std::vector<std::string> labels_;
};

/// Builds an Instance from integer costs; handy in tests and generators.
Instance make_instance(const std::vector<std::vector<long>>& costs);

/// Parses and checks a raw instance, collecting every issue before throwing.
Instance validate_instance(const RawInstance& raw);

struct Normalized {
  Instance instance;
  /// Agents whose costs are all zero; they never envy anyone.
  std::vector<Agent> zero_agents;
};

/// Scales every row to sum to one. All-zero rows stay zero and are flagged.
Normalized normalize(const Instance& inst);

/// Items by descending cost under agent i, ties by ascending item index.
std::vector<Item> sorted_order(const Instance& inst, Agent i);

/// All but agent i's n-1 most costly items. Empty when m < n.
ItemSet tail_items(const Instance& inst, Agent i);

/// n bundles, pairwise disjoint; the union may be a strict subset of the
/// items (partial allocation).
class Allocation {
 public:
  Allocation() = default;
  explicit Allocation(int n) : bundles_(n) {}
  explicit Allocation(std::vector<ItemSet> bundles);

  int n() const { return static_cast<int>(bundles_.size()); }
  const ItemSet& bundle(Agent i) const { return bundles_[i]; }
  const std::vector<ItemSet>& bundles() const { return bundles_; }

  void assign(Agent i, Item e);
  void assign(Agent i, std::span<const Item> items);
  void set_bundle(Agent i, ItemSet items);
  /// Removes e from agent i's bundle; returns false when absent.
  bool remove(Agent i, Item e);

  ItemSet allocated() const;
  std::size_t allocated_count() const;
  bool is_complete(int m) const { return allocated_count() == static_cast<std::size_t>(m); }

  /// Throws Error(BundleOverlap / UnknownItem / ShapeMismatch).
  void validate_for(const Instance& inst) const;

  friend bool operator==(const Allocation&, const Allocation&) = default;

 private:
  std::vector<ItemSet> bundles_;
};

/// Set helpers over sorted item vectors.
ItemSet set_minus(const ItemSet& a, const ItemSet& b);
ItemSet set_union(const ItemSet& a, const ItemSet& b);
ItemSet with_item(ItemSet s, Item e);
ItemSet without_item(ItemSet s, Item e);
bool contains(const ItemSet& s, Item e);

}  // namespace chorefair
