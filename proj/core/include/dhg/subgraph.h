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

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dhg/graph.h"

namespace dhg {

/// Immutable membership view over a parent Graph.
///
/// Node handles and edge refs are kept sorted. The parent must outlive the
/// view and must not be mutated while the view is in use.
class Subgraph {
 public:
  Subgraph(const Graph& parent, std::vector<NodeHandle> nodes, std::vector<EdgeRef> edges,
           std::optional<TimeWindow> window = std::nullopt);

  const Graph& parent() const { return *parent_; }
  std::span<const NodeHandle> nodes() const { return nodes_; }
  std::span<const EdgeRef> edges() const { return edges_; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  bool empty() const { return nodes_.empty() && edges_.empty(); }
  const std::optional<TimeWindow>& window() const { return window_; }

  bool contains(NodeHandle h) const;
  bool contains(EdgeRef e) const;

  std::vector<NodeId> node_ids() const;
  std::vector<EdgeRecord> edge_records() const;

 private:
  const Graph* parent_;
  std::vector<NodeHandle> nodes_;
  std::vector<EdgeRef> edges_;
  std::optional<TimeWindow> window_;
};

using NodePredicate = std::function<bool(const NodeRecord&)>;
using EdgePredicate = std::function<bool(const StoredEdge&)>;

/// Nodes passing `node_pred`, plus edges passing `edge_pred` whose endpoints
/// both pass.
Subgraph select(const Graph& g, const NodePredicate& node_pred, const EdgePredicate& edge_pred);

/// Whole graph as a view.
Subgraph full_view(const Graph& g);

struct ProjectionRow {
  NodeId id;
  std::vector<std::optional<AttrValue>> values;
};

struct Projection {
  std::vector<std::string> columns;
  std::vector<ProjectionRow> rows;
};

/// One row per node. Dynamic attributes yield their latest revision; absent
/// keys yield nullopt.
Projection project(const Graph& g, std::span<const std::string> keys);
Projection project(const Subgraph& sub, std::span<const std::string> keys);

}  // namespace dhg
