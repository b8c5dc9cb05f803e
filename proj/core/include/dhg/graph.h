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
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "dhg/attributes.h"
#include "dhg/types.h"

namespace dhg {

/// An actor: user, post or comment.
///
/// `created` is the user's join time or the content's creation time and never
/// changes after insertion. Static attributes are fixed at insertion; dynamic
/// attributes keep every revision.
struct NodeRecord {
  NodeId id;
  Timestamp created = 0;
  AttrMap static_attrs;
  RevisionMap dynamic_attrs;

  const AttrValue* latest(std::string_view key) const;
  /// Static value, or the latest revision of a dynamic attribute.
  const AttrValue* get(std::string_view key) const;

  friend bool operator==(const NodeRecord&, const NodeRecord&) = default;
};

/// An actionable item, addressed by endpoint ids.
struct EdgeRecord {
  EdgeKind kind = EdgeKind::kFollow;
  NodeId src;
  NodeId dst;
  Timestamp time = 0;
  AttrMap attrs;

  friend bool operator==(const EdgeRecord&, const EdgeRecord&) = default;
  friend auto operator<=>(const EdgeRecord& a, const EdgeRecord& b) {
    return std::tie(a.kind, a.src, a.dst, a.time) <=> std::tie(b.kind, b.src, b.dst, b.time);
  }
};

/// An edge as stored: endpoints are graph handles.
struct StoredEdge {
  EdgeKind kind = EdgeKind::kFollow;
  NodeHandle src{};
  NodeHandle dst{};
  Timestamp time = 0;
  AttrMap attrs;
};

struct RemovalReport {
  std::vector<NodeId> nodes;
  std::vector<EdgeRef> edges;
};

/// Directed, typed, timestamped property multigraph.
///
/// Mutations need exclusive access. Const member functions may run
/// concurrently as long as no mutation is in flight.
class Graph {
 public:
  /// Throws DuplicateId, InvalidAttribute, NonMonotonicRevision.
  NodeHandle add_node(NodeRecord rec);

  /// Throws MissingEndpoint, SchemaViolation, TimeBeforeCreation,
  /// DuplicateAuthor, DuplicateParent, DuplicateEdge, InvalidAttribute.
  EdgeRef add_edge(const EdgeRecord& rec);
  EdgeRef add_edge(EdgeKind kind, NodeHandle src, NodeHandle dst, Timestamp time, AttrMap attrs = {});

  /// Appends a revision to a dynamic attribute.
  /// Throws NotFound, InvalidAttribute, StaticAttributeImmutable, NonMonotonicRevision.
  void modify_node(const NodeId& id, std::string_view key, AttrValue value, Timestamp at);
  void modify_node(NodeHandle node, std::string_view key, AttrValue value, Timestamp at);

  /// Removes the node, every incident edge, and every node reachable from it
  /// through authored or reply edges. Throws NotFound.
  RemovalReport remove_node(const NodeId& id);

  /// Throws NotFound.
  void remove_edge(EdgeRef ref);

  std::optional<NodeHandle> find(const NodeId& id) const;
  std::optional<NodeHandle> find_user(std::string_view name) const;
  /// Looks up a post or comment by permlink.
  std::optional<NodeHandle> find_content(std::string_view permlink) const;

  bool contains(NodeHandle h) const { return index_of(h) < nodes_.size() && nodes_[index_of(h)].alive; }
  bool contains(EdgeRef e) const { return index_of(e) < edges_.size() && edges_[index_of(e)].alive; }

  const NodeRecord& node(NodeHandle h) const { return nodes_[index_of(h)].rec; }
  NodeKind kind(NodeHandle h) const { return nodes_[index_of(h)].rec.id.kind; }
  const StoredEdge& edge(EdgeRef e) const { return edges_[index_of(e)].edge; }
  EdgeRecord edge_record(EdgeRef e) const;

  std::span<const EdgeRef> out_edges(NodeHandle h, EdgeKind kind) const {
    return nodes_[index_of(h)].out[index_of(kind)];
  }
  std::span<const EdgeRef> in_edges(NodeHandle h, EdgeKind kind) const {
    return nodes_[index_of(h)].in[index_of(kind)];
  }

  std::size_t node_count() const { return live_nodes_; }
  std::size_t node_count(NodeKind kind) const { return by_kind_[index_of(kind)].size(); }
  std::size_t edge_count() const { return live_edges_; }
  std::size_t edge_count(EdgeKind kind) const { return by_time_[index_of(kind)].size(); }
  bool empty() const { return live_nodes_ == 0; }

  /// Live nodes of one kind in insertion order.
  std::span<const NodeHandle> nodes_of_kind(NodeKind kind) const { return by_kind_[index_of(kind)]; }
  /// Live nodes of one kind ordered by (created, handle).
  std::span<const NodeHandle> nodes_by_created(NodeKind kind) const { return by_created_[index_of(kind)]; }
  /// Live edges of one kind ordered by (time, ref).
  std::span<const EdgeRef> edges_by_time(EdgeKind kind) const { return by_time_[index_of(kind)]; }

  /// All live nodes / edges in insertion order.
  std::vector<NodeHandle> node_handles() const;
  std::vector<EdgeRef> edge_refs() const;

  /// Upper bounds on handle values; size dense per-handle arrays with these.
  std::size_t node_slot_count() const { return nodes_.size(); }
  std::size_t edge_slot_count() const { return edges_.size(); }

 private:
  struct NodeSlot {
    NodeRecord rec;
    bool alive = true;
    std::array<std::vector<EdgeRef>, kNumEdgeKinds> out;
    std::array<std::vector<EdgeRef>, kNumEdgeKinds> in;
  };
  struct EdgeSlot {
    StoredEdge edge;
    bool alive = true;
  };

  NodeHandle require(const NodeId& id) const;
  void erase_edge(EdgeRef ref);
  void erase_node(NodeHandle h);

  std::vector<NodeSlot> nodes_;
  std::vector<EdgeSlot> edges_;
  std::unordered_map<std::string, NodeHandle> users_;
  std::unordered_map<std::string, NodeHandle> content_;
  std::array<std::vector<NodeHandle>, kNumNodeKinds> by_kind_;
  std::array<std::vector<NodeHandle>, kNumNodeKinds> by_created_;
  std::array<std::vector<EdgeRef>, kNumEdgeKinds> by_time_;
  std::size_t live_nodes_ = 0;
  std::size_t live_edges_ = 0;
};

/// True when both graphs hold the same node records (ids, creation times,
/// static attributes, every revision) and the same edge multiset. Handles
/// and insertion order are ignored.
bool structurally_equal(const Graph& a, const Graph& b);

}  // namespace dhg
