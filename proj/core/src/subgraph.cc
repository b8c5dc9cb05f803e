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


#include "dhg/subgraph.h"

#include <algorithm>

namespace dhg {

Subgraph::Subgraph(const Graph& parent, std::vector<NodeHandle> nodes, std::vector<EdgeRef> edges,
                   std::optional<TimeWindow> window)
    : parent_(&parent), nodes_(std::move(nodes)), edges_(std::move(edges)), window_(window) {
  std::sort(nodes_.begin(), nodes_.end());
  nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

bool Subgraph::contains(NodeHandle h) const { return std::binary_search(nodes_.begin(), nodes_.end(), h); }

bool Subgraph::contains(EdgeRef e) const { return std::binary_search(edges_.begin(), edges_.end(), e); }

std::vector<NodeId> Subgraph::node_ids() const {
  std::vector<NodeId> out;
  out.reserve(nodes_.size());
  for (NodeHandle h : nodes_) out.push_back(parent_->node(h).id);
  return out;
}

std::vector<EdgeRecord> Subgraph::edge_records() const {
  std::vector<EdgeRecord> out;
  out.reserve(edges_.size());
  for (EdgeRef e : edges_) out.push_back(parent_->edge_record(e));
  return out;
}

Subgraph select(const Graph& g, const NodePredicate& node_pred, const EdgePredicate& edge_pred) {
  std::vector<char> keep(g.node_slot_count(), 0);
  std::vector<NodeHandle> nodes;
  for (NodeHandle h : g.node_handles()) {
    if (node_pred(g.node(h))) {
      keep[index_of(h)] = 1;
      nodes.push_back(h);
    }
  }
  std::vector<EdgeRef> edges;
  for (EdgeRef e : g.edge_refs()) {
    const StoredEdge& se = g.edge(e);
    if (keep[index_of(se.src)] && keep[index_of(se.dst)] && edge_pred(se)) edges.push_back(e);
  }
  return Subgraph(g, std::move(nodes), std::move(edges));
}

Subgraph full_view(const Graph& g) { return Subgraph(g, g.node_handles(), g.edge_refs()); }

namespace {

template <typename Handles>
Projection project_nodes(const Graph& g, const Handles& handles, std::span<const std::string> keys) {
  Projection out;
  out.columns.assign(keys.begin(), keys.end());
  out.rows.reserve(handles.size());
  for (NodeHandle h : handles) {
    const NodeRecord& rec = g.node(h);
    ProjectionRow row{rec.id, {}};
    row.values.reserve(keys.size());
    for (const std::string& key : keys) {
      const AttrValue* v = rec.get(key);
      row.values.push_back(v ? std::optional<AttrValue>(*v) : std::nullopt);
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace

Projection project(const Graph& g, std::span<const std::string> keys) {
  return project_nodes(g, g.node_handles(), keys);
}

Projection project(const Subgraph& sub, std::span<const std::string> keys) {
  return project_nodes(sub.parent(), sub.nodes(), keys);
}

}  // namespace dhg
