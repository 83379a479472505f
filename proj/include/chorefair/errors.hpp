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

#include <stdexcept>
#include <string>
#include <vector>

namespace chorefair {

enum class ErrorKind {
  NegativeCost,
  ShapeMismatch,
  BadRational,
  DuplicateLabel,
  BundleOverlap,
  UnknownItem,
  TooFewItems,
  WrongAgentCount,
  FallbackRequired,
  PreconditionViolated,
  NotBiValued,
  BudgetExceeded,
  ParseError,
  ValidationError,
  InapplicableAlgorithm,
  MismatchedFiles,
  BadParams,
  UnknownSuite,
  InvariantViolation,
};

const char* to_string(ErrorKind kind);

// Base of every error the library throws. `kind()` is stable and is what the
// CLI maps to exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

struct Issue {
  ErrorKind kind;
  int row = -1;  // -1 when the issue is not tied to a cell
  int col = -1;
  std::string detail;
};

// validate_instance reports every problem it finds, not just the first.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Issue> issues);

  const std::vector<Issue>& issues() const { return issues_; }

 private:
  std::vector<Issue> issues_;
};

}  // namespace chorefair
