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

#include "chorefair/errors.hpp"

#include <sstream>

namespace chorefair {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NegativeCost: return "NegativeCost";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::BadRational: return "BadRational";
    case ErrorKind::DuplicateLabel: return "DuplicateLabel";
    case ErrorKind::BundleOverlap: return "BundleOverlap";
    case ErrorKind::UnknownItem: return "UnknownItem";
    case ErrorKind::TooFewItems: return "TooFewItems";
    case ErrorKind::WrongAgentCount: return "WrongAgentCount";
    case ErrorKind::FallbackRequired: return "FallbackRequired";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::NotBiValued: return "NotBiValued";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::InapplicableAlgorithm: return "InapplicableAlgorithm";
    case ErrorKind::MismatchedFiles: return "MismatchedFiles";
    case ErrorKind::BadParams: return "BadParams";
    case ErrorKind::UnknownSuite: return "UnknownSuite";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

namespace {

std::string describe(const std::vector<Issue>& issues) {
  std::ostringstream os;
  os << "invalid instance:";
  for (const Issue& issue : issues) {
    os << "\n  " << to_string(issue.kind);
    if (issue.row >= 0) {
      os << " at (" << issue.row << "," << issue.col << ")";
    }
    if (!issue.detail.empty()) os << ": " << issue.detail;
  }
  return os.str();
}

}  // namespace

ValidationError::ValidationError(std::vector<Issue> issues)
    : Error(ErrorKind::ValidationError, describe(issues)),
      issues_(std::move(issues)) {}

}  // namespace chorefair
