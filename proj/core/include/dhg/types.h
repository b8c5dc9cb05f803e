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

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace dhg {

/// Integer epoch seconds, UTC.
using Timestamp = std::int64_t;

inline constexpr Timestamp kSecondsPerDay = 86400;

enum class NodeKind : std::uint8_t { kUser = 0, kPost = 1, kComment = 2 };
enum class EdgeKind : std::uint8_t { kAuthored = 0, kReply = 1, kVote = 2, kFollow = 3 };

inline constexpr std::size_t kNumNodeKinds = 3;
inline constexpr std::size_t kNumEdgeKinds = 4;

inline constexpr std::array<NodeKind, kNumNodeKinds> kAllNodeKinds = {NodeKind::kUser, NodeKind::kPost,
                                                                      NodeKind::kComment};
inline constexpr std::array<EdgeKind, kNumEdgeKinds> kAllEdgeKinds = {EdgeKind::kAuthored, EdgeKind::kReply,
                                                                      EdgeKind::kVote, EdgeKind::kFollow};

constexpr std::size_t index_of(NodeKind k) { return static_cast<std::size_t>(k); }
constexpr std::size_t index_of(EdgeKind k) { return static_cast<std::size_t>(k); }

/// Posts and comments share the permlink namespace.
constexpr bool is_content(NodeKind k) { return k == NodeKind::kPost || k == NodeKind::kComment; }

std::string_view to_string(NodeKind kind);
std::string_view to_string(EdgeKind kind);
std::optional<NodeKind> parse_node_kind(std::string_view s);
std::optional<EdgeKind> parse_edge_kind(std::string_view s);

/// Directed endpoint schema:
///   authored: user -> post | comment
///   reply:    post | comment -> comment
///   vote:     user -> post | comment
///   follow:   user -> user
constexpr bool edge_schema_allows(EdgeKind kind, NodeKind src, NodeKind dst) {
  switch (kind) {
    case EdgeKind::kAuthored:
    case EdgeKind::kVote:
      return src == NodeKind::kUser && is_content(dst);
    case EdgeKind::kReply:
      return is_content(src) && dst == NodeKind::kComment;
    case EdgeKind::kFollow:
      return src == NodeKind::kUser && dst == NodeKind::kUser;
  }
  return false;
}

/// Username for users, permlink for posts and comments.
struct NodeId {
  NodeKind kind = NodeKind::kUser;
  std::string key;

  static NodeId user(std::string name) { return {NodeKind::kUser, std::move(name)}; }
  static NodeId post(std::string permlink) { return {NodeKind::kPost, std::move(permlink)}; }
  static NodeId comment(std::string permlink) { return {NodeKind::kComment, std::move(permlink)}; }

  friend bool operator==(const NodeId&, const NodeId&) = default;
  friend auto operator<=>(const NodeId&, const NodeId&) = default;
};

std::string to_string(const NodeId& id);

struct NodeIdHash {
  std::size_t operator()(const NodeId& id) const noexcept {
    return std::hash<std::string>{}(id.key) * 3 + index_of(id.kind);
  }
};

/// Stable handle of a node slot inside one Graph. Handles are never reused.
enum class NodeHandle : std::uint32_t {};
/// Stable handle of an edge slot inside one Graph. Handles are never reused.
enum class EdgeRef : std::uint32_t {};

constexpr std::uint32_t index_of(NodeHandle h) { return static_cast<std::uint32_t>(h); }
constexpr std::uint32_t index_of(EdgeRef e) { return static_cast<std::uint32_t>(e); }

/// Closed interval [t1, t2].
class TimeWindow {
 public:
  /// Throws Error(kBadTimestamp) when t1 > t2.
  TimeWindow(Timestamp t1, Timestamp t2);

  Timestamp t1() const { return t1_; }
  Timestamp t2() const { return t2_; }
  bool contains(Timestamp t) const { return t1_ <= t && t <= t2_; }
  bool covers(const TimeWindow& other) const { return t1_ <= other.t1_ && other.t2_ <= t2_; }

  friend bool operator==(const TimeWindow&, const TimeWindow&) = default;

 private:
  Timestamp t1_;
  Timestamp t2_;
};

}  // namespace dhg
