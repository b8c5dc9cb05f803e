// Copyright 2026 The dhg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dhg/types.h"

namespace dhg {

using AttrValue = std::variant<bool, std::int64_t, double, std::string>;

enum class AttrType : std::uint8_t { kBool, kInt, kDouble, kString };

struct Revision {
  Timestamp time = 0;
  AttrValue value;

  friend bool operator==(const Revision&, const Revision&) = default;
};

using AttrMap = std::map<std::string, AttrValue, std::less<>>;
/// Each key holds its revisions in nondecreasing time order.
using RevisionMap = std::map<std::string, std::vector<Revision>, std::less<>>;

struct AttrSpec {
  std::string_view key;
  AttrType type;
  bool dynamic;
};

/// Permitted node attributes per kind. Keys outside the schema are rejected.
std::span<const AttrSpec> node_schema(NodeKind kind);
std::span<const AttrSpec> edge_schema(EdgeKind kind);

const AttrSpec* find_node_attr(NodeKind kind, std::string_view key);
const AttrSpec* find_edge_attr(EdgeKind kind, std::string_view key);

/// Converts `value` to `type`, widening int to double. nullopt if incompatible.
std::optional<AttrValue> coerce(AttrType type, const AttrValue& value);

std::string_view to_string(AttrType type);

/// Text rendering used by CSV tables; doubles round-trip exactly.
std::string format_value(const AttrValue& value);
std::string format_double(double v);

}  // namespace dhg
