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

#include "chorefair/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "chorefair/errors.hpp"

namespace chorefair {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::ParseError, where + ": " + what);
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, "byte " + std::to_string(e.byte) + ": malformed JSON");
  }
}

const json& field(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) fail(key, "missing");
  return *it;
}

int int_field(const json& doc, const char* key) {
  const json& v = field(doc, key);
  if (!v.is_number_integer()) fail(key, "expected an integer");
  return v.get<int>();
}

void check_version(const json& doc) {
  if (!doc.is_object()) fail("document", "expected a JSON object");
  const int version = int_field(doc, "version");
  if (version != kFormatVersion) fail("version", "unsupported version " + std::to_string(version));
}

// Text form of a cost cell; integers are accepted as a convenience.
std::string cell_text(const json& cell, const std::string& where) {
  if (cell.is_string()) return cell.get<std::string>();
  if (cell.is_number_integer()) return cell.dump();
  fail(where, "expected a rational string");
}

std::string param_text(const json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer() || v.is_boolean()) return v.dump();
  fail(where, "expected a string or integer");
}

}  // namespace

std::string json_quote(std::string_view s) { return json(std::string(s)).dump(); }

InstanceFile parse_instance(std::string_view text) {
  const json doc = parse_json(text);
  check_version(doc);

  RawInstance raw;
  raw.n = int_field(doc, "n");
  raw.m = int_field(doc, "m");
  const json& costs = field(doc, "costs");
  if (!costs.is_array()) fail("costs", "expected an array of rows");
  for (std::size_t r = 0; r < costs.size(); ++r) {
    const std::string row_at = "costs[" + std::to_string(r) + "]";
    if (!costs[r].is_array()) fail(row_at, "expected an array");
    std::vector<std::string> row;
    for (std::size_t c = 0; c < costs[r].size(); ++c) {
      const std::string at = row_at + "[" + std::to_string(c) + "]";
      std::string cell = cell_text(costs[r][c], at);
      try {
        (void)Rational::parse(cell);
      } catch (const Error& e) {
        fail(at, e.what());
      }
      row.push_back(std::move(cell));
    }
    raw.cells.push_back(std::move(row));
  }
  if (auto it = doc.find("labels"); it != doc.end()) {
    if (!it->is_array()) fail("labels", "expected an array");
    for (std::size_t k = 0; k < it->size(); ++k) {
      if (!(*it)[k].is_string()) fail("labels[" + std::to_string(k) + "]", "expected a string");
      raw.labels.push_back((*it)[k].get<std::string>());
    }
  }

  InstanceFile out{validate_instance(raw), std::nullopt};
  if (auto it = doc.find("provenance"); it != doc.end()) {
    if (!it->is_object()) fail("provenance", "expected an object");
    Provenance prov;
    const json& kind = field(*it, "kind");
    if (!kind.is_string()) fail("provenance.kind", "expected a string");
    prov.kind = kind.get<std::string>();
    const json& seed = field(*it, "seed");
    if (!seed.is_number_unsigned()) fail("provenance.seed", "expected a nonnegative integer");
    prov.seed = seed.get<std::uint64_t>();
    if (auto p = it->find("params"); p != it->end()) {
      if (!p->is_object()) fail("provenance.params", "expected an object");
      for (const auto& [k, v] : p->items()) prov.params[k] = param_text(v, "provenance.params." + k);
    }
    out.provenance = std::move(prov);
  }
  return out;
}

std::string emit_instance(const InstanceFile& file) {
  const Instance& inst = file.instance;
  std::ostringstream os;
  os << "{\n  \"version\": " << kFormatVersion << ",\n  \"n\": " << inst.n()
     << ",\n  \"m\": " << inst.m() << ",\n  \"costs\": [";
  for (Agent i = 0; i < inst.n(); ++i) {
    os << (i ? ",\n    [" : "\n    [");
    for (Item e = 0; e < inst.m(); ++e) os << (e ? ", " : "") << '"' << inst.cost(i, e).str() << '"';
    os << ']';
  }
  os << (inst.n() ? "\n  ]" : "]");
  if (!inst.labels().empty()) {
    os << ",\n  \"labels\": [";
    for (std::size_t k = 0; k < inst.labels().size(); ++k) {
      os << (k ? ", " : "") << json_quote(inst.labels()[k]);
    }
    os << ']';
  }
  if (file.provenance) {
    const Provenance& p = *file.provenance;
    os << ",\n  \"provenance\": {\"kind\": " << json_quote(p.kind) << ", \"seed\": " << p.seed
       << ", \"params\": {";
    bool first = true;
    for (const auto& [k, v] : p.params) {
      os << (first ? "" : ", ") << json_quote(k) << ": " << json_quote(v);
      first = false;
    }
    os << "}}";
  }
  os << "\n}\n";
  return os.str();
}

AllocationFile parse_allocation(std::string_view text) {
  const json doc = parse_json(text);
  check_version(doc);
  const json& bundles = field(doc, "bundles");
  if (!bundles.is_array()) fail("bundles", "expected an array");
  Allocation alloc(static_cast<int>(bundles.size()));
  std::map<Item, std::size_t> owner;
  for (std::size_t i = 0; i < bundles.size(); ++i) {
    const std::string at = "bundles[" + std::to_string(i) + "]";
    if (!bundles[i].is_array()) fail(at, "expected an array of item indices");
    for (std::size_t k = 0; k < bundles[i].size(); ++k) {
      const json& e = bundles[i][k];
      if (!e.is_number_unsigned()) fail(at + "[" + std::to_string(k) + "]", "expected an item index");
      const Item item = e.get<Item>();
      if (contains(alloc.bundle(static_cast<Agent>(i)), item)) {
        fail(at, "item " + std::to_string(item) + " listed twice");
      }
      if (auto [it, fresh] = owner.emplace(item, i); !fresh) {
        throw Error(ErrorKind::BundleOverlap, at + ": item " + std::to_string(item) +
                                                  " is also in bundles[" + std::to_string(it->second) + "]");
      }
      alloc.assign(static_cast<Agent>(i), item);
    }
  }
  bool partial = false;
  if (auto it = doc.find("partial"); it != doc.end()) {
    if (!it->is_boolean()) fail("partial", "expected a boolean");
    partial = it->get<bool>();
  }
  return {std::move(alloc), partial};
}

std::string emit_allocation(const AllocationFile& file) {
  std::ostringstream os;
  os << "{\n  \"version\": " << kFormatVersion << ",\n  \"bundles\": [";
  const auto& bundles = file.allocation.bundles();
  for (std::size_t i = 0; i < bundles.size(); ++i) {
    os << (i ? ",\n    [" : "\n    [");
    for (std::size_t k = 0; k < bundles[i].size(); ++k) os << (k ? ", " : "") << bundles[i][k];
    os << ']';
  }
  os << (bundles.empty() ? "]" : "\n  ]");
  os << ",\n  \"partial\": " << (file.partial ? "true" : "false") << "\n}\n";
  return os.str();
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, path.string() + ": cannot open");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::ParseError, path.string() + ": cannot write");
  out << text;
  if (!out) throw Error(ErrorKind::ParseError, path.string() + ": write failed");
}

InstanceFile read_instance(const std::filesystem::path& path) {
  try {
    return parse_instance(read_text(path));
  } catch (const ValidationError&) {
    throw;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ParseError) throw;
    throw Error(ErrorKind::ParseError, path.string() + ": " + e.what());
  }
}

AllocationFile read_allocation(const std::filesystem::path& path) {
  try {
    return parse_allocation(read_text(path));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ParseError) throw;
    throw Error(ErrorKind::ParseError, path.string() + ": " + e.what());
  }
}

}  // namespace chorefair
