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


#include "dhg/attributes.h"

#include <array>
#include <charconv>
#include <cmath>

namespace dhg {
namespace {

constexpr std::array kUserSchema = {
    AttrSpec{"name", AttrType::kString, false},
    AttrSpec{"bot", AttrType::kBool, false},
    AttrSpec{"reputation", AttrType::kDouble, true},
};

// Posts and comments share one schema; the reward features are dynamic.
constexpr std::array kContentSchema = {
    AttrSpec{"category", AttrType::kString, false},
    AttrSpec{"author_name", AttrType::kString, false},
    AttrSpec{"title", AttrType::kString, true},
    AttrSpec{"body", AttrType::kString, true},
    AttrSpec{"last_update", AttrType::kInt, true},
    AttrSpec{"payout", AttrType::kDouble, true},
    AttrSpec{"net_rshares", AttrType::kInt, true},
    AttrSpec{"abs_rshares", AttrType::kInt, true},
    AttrSpec{"vote_rshares", AttrType::kInt, true},
    AttrSpec{"author_rewards", AttrType::kInt, true},
    AttrSpec{"author_reputation", AttrType::kDouble, true},
};

constexpr std::array kVoteSchema = {
    AttrSpec{"weight", AttrType::kInt, false},
};

}  // namespace

std::span<const AttrSpec> node_schema(NodeKind kind) {
  if (kind == NodeKind::kUser) return kUserSchema;
  return kContentSchema;
}

std::span<const AttrSpec> edge_schema(EdgeKind kind) {
  if (kind == EdgeKind::kVote) return kVoteSchema;
  return {};
}

const AttrSpec* find_node_attr(NodeKind kind, std::string_view key) {
  for (const AttrSpec& spec : node_schema(kind)) {
    if (spec.key == key) return &spec;
  }
  return nullptr;
}

const AttrSpec* find_edge_attr(EdgeKind kind, std::string_view key) {
  for (const AttrSpec& spec : edge_schema(kind)) {
    if (spec.key == key) return &spec;
  }
  return nullptr;
}

std::optional<AttrValue> coerce(AttrType type, const AttrValue& value) {
  switch (type) {
    case AttrType::kBool:
      if (std::holds_alternative<bool>(value)) return value;
      break;
    case AttrType::kInt:
      if (std::holds_alternative<std::int64_t>(value)) return value;
      if (const double* d = std::get_if<double>(&value); d && std::isfinite(*d) && *d == std::trunc(*d) &&
                                                          std::abs(*d) < 9.0e18) {
        return AttrValue{static_cast<std::int64_t>(*d)};
      }
      break;
    case AttrType::kDouble:
      if (std::holds_alternative<double>(value)) return value;
      if (const auto* i = std::get_if<std::int64_t>(&value)) return AttrValue{static_cast<double>(*i)};
      break;
    case AttrType::kString:
      if (std::holds_alternative<std::string>(value)) return value;
      break;
  }
  return std::nullopt;
}

std::string_view to_string(AttrType type) {
  switch (type) {
    case AttrType::kBool:
      return "bool";
    case AttrType::kInt:
      return "int";
    case AttrType::kDouble:
      return "double";
    case AttrType::kString:
      return "string";
  }
  return "?";
}

std::string format_double(double v) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

std::string format_value(const AttrValue& value) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, double>) {
          return format_double(v);
        } else {
          return v;
        }
      },
      value);
}

}  // namespace dhg
