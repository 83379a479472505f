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

#include "chorefair/solve.hpp"

#include "chorefair/bivalued.hpp"
#include "chorefair/errors.hpp"
#include "chorefair/general_n.hpp"
#include "chorefair/primitives.hpp"
#include "chorefair/three_agents.hpp"

namespace chorefair {
namespace {

[[noreturn]] void inapplicable(Algorithm a, const Instance& inst, const std::string& why) {
  throw Error(ErrorKind::InapplicableAlgorithm,
              algorithm_name(a) + " cannot run on n=" + std::to_string(inst.n()) + ": " + why);
}

bool bivalued(const Instance& inst) { return bi::detect_bivalued(inst).has_value(); }

Algorithm pick(const Instance& inst) {
  const bool is_bi = bivalued(inst);
  if (inst.n() == 3) return is_bi ? Algorithm::Bi3 : Algorithm::Three;
  if (inst.n() >= 4) return is_bi ? Algorithm::Bin : Algorithm::General;
  return Algorithm::Auto;
}

}  // namespace

Algorithm parse_algorithm(std::string_view name) {
  if (name == "auto") return Algorithm::Auto;
  if (name == "three") return Algorithm::Three;
  if (name == "general") return Algorithm::General;
  if (name == "bi3") return Algorithm::Bi3;
  if (name == "bin") return Algorithm::Bin;
  if (name == "trivial") return Algorithm::Trivial;
  throw Error(ErrorKind::BadParams, "unknown algorithm '" + std::string(name) + "'");
}

std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::Auto: return "auto";
    case Algorithm::Three: return "three";
    case Algorithm::General: return "general";
    case Algorithm::Bi3: return "bi3";
    case Algorithm::Bin: return "bin";
    case Algorithm::Trivial: return "trivial";
  }
  return "?";
}

SolveResult run_solver(const Instance& inst, Algorithm algorithm) {
  const int n = inst.n();
  SolveResult out;
  Algorithm a = algorithm == Algorithm::Auto ? pick(inst) : algorithm;

  switch (a) {
    case Algorithm::Auto:
      if (n == 1) {
        out.algorithm = "single-agent";
        out.allocation = Allocation(1);
        out.allocation.assign(0, inst.all_items());
        out.bound = 0;
      } else {
        auto split = divide_and_choose(inst, 0, 1, inst.all_items());
        out.algorithm = "divide-and-choose";
        out.allocation = Allocation(std::vector<ItemSet>{split.cutter, split.chooser});
        out.bound = 1;
      }
      break;
    case Algorithm::Three:
      if (n != 3) inapplicable(a, inst, "needs exactly 3 agents");
      out.allocation = three::solve_three(inst);
      out.bound = 5;
      break;
    case Algorithm::General:
      if (n < 4) inapplicable(a, inst, "needs at least 4 agents");
      out.allocation = general::solve_general_n(inst);
      out.bound = Rational(3L * n * n);
      break;
    case Algorithm::Bi3:
      if (n != 3) inapplicable(a, inst, "needs exactly 3 agents");
      if (!bivalued(inst)) inapplicable(a, inst, "instance is not bi-valued");
      out.allocation = bi::solve_bi_three(inst);
      out.bound = 1;
      break;
    case Algorithm::Bin:
      if (n < 4) inapplicable(a, inst, "needs at least 4 agents");
      if (!bivalued(inst)) inapplicable(a, inst, "instance is not bi-valued");
      out.allocation = bi::solve_bi_general(inst);
      out.bound = Rational(n - 1);
      break;
    case Algorithm::Trivial:
      if (inst.m() >= n) {
        out.allocation = trivial_tail_allocation(inst, 0);
        out.bound = Rational(inst.m() - n);
      } else {
        out.allocation = few_items_allocation(inst);
        out.bound = 0;
      }
      break;
  }
  if (out.algorithm.empty()) out.algorithm = algorithm_name(a);
  out.report = min_efx_alpha(inst, out.allocation);
  return out;
}

}  // namespace chorefair
