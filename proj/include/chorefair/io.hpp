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

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "chorefair/instance.hpp"

namespace chorefair {

inline constexpr int kFormatVersion = 1;

struct Provenance {
  std::string kind;
  std::uint64_t seed = 0;
  /// Parameter name to canonical value; emitted in key order.
  std::map<std::string, std::string> params;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct InstanceFile {
  Instance instance;
  std::optional<Provenance> provenance;

  friend bool operator==(const InstanceFile&, const InstanceFile&) = default;
};

/// Cells may be JSON strings ("p", "p/q") or JSON integers. Throws
/// Error(ParseError) naming the offending field or cell, and ValidationError
/// for a well-formed document with a bad matrix.
InstanceFile parse_instance(std::string_view text);
InstanceFile read_instance(const std::filesystem::path& path);

/// Canonical text: fixed key order, one matrix row per line, every cost as a
/// lowest-terms string. parse_instance(emit_instance(x)) == x.
std::string emit_instance(const InstanceFile& file);

struct AllocationFile {
  Allocation allocation;
  bool partial = false;

  friend bool operator==(const AllocationFile&, const AllocationFile&) = default;
};

AllocationFile parse_allocation(std::string_view text);
AllocationFile read_allocation(const std::filesystem::path& path);
std::string emit_allocation(const AllocationFile& file);

/// Whole-file read and write; both throw Error(ParseError) on I/O failure.
std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

/// JSON string literal with escaping.
std::string json_quote(std::string_view s);

}  // namespace chorefair
