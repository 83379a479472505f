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

#include <string>
#include <string_view>

#include "chorefair/instance.hpp"
#include "chorefair/verify.hpp"

namespace chorefair {

enum class Algorithm { Auto, Three, General, Bi3, Bin, Trivial };

/// "auto", "three", "general", "bi3", "bin", "trivial"; BadParams otherwise.
Algorithm parse_algorithm(std::string_view name);
std::string algorithm_name(Algorithm a);

struct SolveResult {
  /// Concrete procedure that ran, e.g. "three", "divide-and-choose".
  std::string algorithm;
  Allocation allocation;
  /// Advertised approximation factor for this procedure and instance.
  Rational bound;
  VerifyReport report;

  bool within_bound() const { return report.alpha <= ExtRational(bound); }
};

/// auto: bi-valued n=3 -> bi3, bi-valued n>=4 -> bin, n=3 -> three,
/// n>=4 -> general, n=2 -> divide-and-choose, n=1 -> everything to agent 0.
/// trivial: tail allocation around agent 0, bound m-n (each agent gets at most
/// one item when m < n, bound 0). Throws InapplicableAlgorithm when the
/// selector does not fit the instance.
SolveResult run_solver(const Instance& inst, Algorithm algorithm);

}  // namespace chorefair
