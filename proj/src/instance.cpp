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

#include "chorefair/instance.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "chorefair/errors.hpp"

namespace chorefair {
namespace {

std::vector<Issue> check_matrix(int n, int m,
                                const std::vector<std::vector<Rational>>& costs,
                                const std::vector<std::string>& labels) {
  std::vector<Issue> issues;
  if (n < 1) issues.push_back({ErrorKind::ShapeMismatch, -1, -1, "need at least one agent"});
  if (static_cast<int>(costs.size()) != n) {
    issues.push_back({ErrorKind::ShapeMismatch, -1, -1,
                      "declared n=" + std::to_string(n) + " but matrix has " +
                          std::to_string(costs.size()) + " rows"});
  }
  for (std::size_t r = 0; r < costs.size(); ++r) {
    if (static_cast<int>(costs[r].size()) != m) {
      issues.push_back({ErrorKind::ShapeMismatch, static_cast<int>(r), -1,
                        "row has " + std::to_string(costs[r].size()) +
                            " entries, expected m=" + std::to_string(m)});
    }
    for (std::size_t c = 0; c < costs[r].size(); ++c) {
      if (costs[r][c].sign() < 0) {
        issues.push_back({ErrorKind::NegativeCost, static_cast<int>(r),
                          static_cast<int>(c), costs[r][c].str()});
      }
    }
  }
  if (!labels.empty()) {
    if (static_cast<int>(labels.size()) != m) {
      issues.push_back({ErrorKind::ShapeMismatch, -1, -1,
                        "labels has " + std::to_string(labels.size()) +
                            " entries, expected m=" + std::to_string(m)});
    }
    std::set<std::string> seen;
    for (std::size_t c = 0; c < labels.size(); ++c) {
      if (!seen.insert(labels[c]).second) {
        issues.push_back({ErrorKind::DuplicateLabel, -1, static_cast<int>(c),
                          "label '" + labels[c] + "' repeated"});
      }
    }
  }
  return issues;
}

}  // namespace

Instance::Instance(std::vector<std::vector<Rational>> costs,
                   std::vector<std::string> labels)
    : n_(static_cast<int>(costs.size())),
      m_(costs.empty() ? 0 : static_cast<int>(costs.front().size())),
      costs_(std::move(costs)),
      labels_(std::move(labels)) {
  auto issues = check_matrix(n_, m_, costs_, labels_);
  if (!issues.empty()) throw ValidationError(std::move(issues));
}

Instance::Instance(int n, int m, std::vector<std::vector<Rational>> costs,
                   std::vector<std::string> labels)
    : n_(n), m_(m), costs_(std::move(costs)), labels_(std::move(labels)) {
  auto issues = check_matrix(n_, m_, costs_, labels_);
  if (!issues.empty()) throw ValidationError(std::move(issues));
}

Rational Instance::bundle_cost(Agent i, std::span<const Item> bundle) const {
  Rational total;
  for (Item e : bundle) total += costs_[i][e];
  return total;
}

Rational Instance::total_cost(Agent i) const {
  Rational total;
  for (const Rational& c : costs_[i]) total += c;
  return total;
}

ItemSet Instance::all_items() const {
  ItemSet items(m_);
  std::iota(items.begin(), items.end(), 0);
  return items;
}

Instance make_instance(const std::vector<std::vector<long>>& costs) {
  std::vector<std::vector<Rational>> rows;
  rows.reserve(costs.size());
  for (const auto& row : costs) {
    rows.emplace_back(row.begin(), row.end());
  }
  return Instance(std::move(rows));
}

Instance validate_instance(const RawInstance& raw) {
  std::vector<Issue> issues;
  const int rows = static_cast<int>(raw.cells.size());
  const int n = raw.n.value_or(rows);
  const int m = raw.m.value_or(raw.cells.empty() ? 0 : static_cast<int>(raw.cells.front().size()));

  std::vector<std::vector<Rational>> costs(raw.cells.size());
  for (int r = 0; r < rows; ++r) {
    costs[r].reserve(raw.cells[r].size());
    for (int c = 0; c < static_cast<int>(raw.cells[r].size()); ++c) {
      try {
        costs[r].push_back(Rational::parse(raw.cells[r][c]));
      } catch (const Error&) {
        issues.push_back({ErrorKind::BadRational, r, c,
                          "'" + raw.cells[r][c] + "' is not a rational"});
        costs[r].emplace_back(0);
      }
    }
  }
  auto shape = check_matrix(n, m, costs, raw.labels);
  issues.insert(issues.end(), shape.begin(), shape.end());
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return Instance(n, m, std::move(costs), raw.labels);
}

Normalized normalize(const Instance& inst) {
  Normalized out;
  std::vector<std::vector<Rational>> rows(inst.n());
  for (Agent i = 0; i < inst.n(); ++i) {
    const Rational total = inst.total_cost(i);
    rows[i].assign(inst.row(i).begin(), inst.row(i).end());
    if (total.is_zero()) {
      out.zero_agents.push_back(i);
      continue;
    }
    for (Rational& c : rows[i]) c /= total;
  }
  out.instance = Instance(inst.n(), inst.m(), std::move(rows), inst.labels());
  return out;
}

std::vector<Item> sorted_order(const Instance& inst, Agent i) {
  std::vector<Item> order(inst.m());
  std::iota(order.begin(), order.end(), 0);
  const auto row = inst.row(i);
  std::stable_sort(order.begin(), order.end(),
                   [&](Item a, Item b) { return row[a] > row[b]; });
  return order;
}

ItemSet tail_items(const Instance& inst, Agent i) {
  const auto order = sorted_order(inst, i);
  ItemSet tail;
  for (int k = inst.n() - 1; k < inst.m(); ++k) tail.push_back(order[k]);
  std::sort(tail.begin(), tail.end());
  return tail;
}

Allocation::Allocation(std::vector<ItemSet> bundles) : bundles_(std::move(bundles)) {
  for (auto& b : bundles_) std::sort(b.begin(), b.end());
}

void Allocation::assign(Agent i, Item e) {
  auto& b = bundles_[i];
  b.insert(std::upper_bound(b.begin(), b.end(), e), e);
}

void Allocation::assign(Agent i, std::span<const Item> items) {
  for (Item e : items) assign(i, e);
}

void Allocation::set_bundle(Agent i, ItemSet items) {
  std::sort(items.begin(), items.end());
  bundles_[i] = std::move(items);
}

bool Allocation::remove(Agent i, Item e) {
  auto& b = bundles_[i];
  auto it = std::lower_bound(b.begin(), b.end(), e);
  if (it == b.end() || *it != e) return false;
  b.erase(it);
  return true;
}

ItemSet Allocation::allocated() const {
  ItemSet all;
  for (const auto& b : bundles_) all.insert(all.end(), b.begin(), b.end());
  std::sort(all.begin(), all.end());
  return all;
}

std::size_t Allocation::allocated_count() const {
  std::size_t count = 0;
  for (const auto& b : bundles_) count += b.size();
  return count;
}

void Allocation::validate_for(const Instance& inst) const {
  if (n() != inst.n()) {
    throw Error(ErrorKind::ShapeMismatch,
                "allocation has " + std::to_string(n()) + " bundles, instance has " +
                    std::to_string(inst.n()) + " agents");
  }
  std::vector<Agent> owner(inst.m(), -1);
  for (Agent i = 0; i < n(); ++i) {
    for (Item e : bundles_[i]) {
      if (e < 0 || e >= inst.m()) {
        throw Error(ErrorKind::UnknownItem, "item " + std::to_string(e) +
                                                " in bundle " + std::to_string(i) +
                                                " is out of range");
      }
      if (owner[e] != -1) {
        throw Error(ErrorKind::BundleOverlap,
                    "item " + std::to_string(e) + " is in bundles " +
                        std::to_string(owner[e]) + " and " + std::to_string(i));
      }
      owner[e] = i;
    }
  }
}

ItemSet set_minus(const ItemSet& a, const ItemSet& b) {
  ItemSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

ItemSet set_union(const ItemSet& a, const ItemSet& b) {
  ItemSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

ItemSet with_item(ItemSet s, Item e) {
  s.insert(std::upper_bound(s.begin(), s.end(), e), e);
  return s;
}

ItemSet without_item(ItemSet s, Item e) {
  auto it = std::lower_bound(s.begin(), s.end(), e);
  if (it != s.end() && *it == e) s.erase(it);
  return s;
}

bool contains(const ItemSet& s, Item e) {
  return std::binary_search(s.begin(), s.end(), e);
}

}  // namespace chorefair
