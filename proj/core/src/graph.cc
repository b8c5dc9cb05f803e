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


#include "dhg/graph.h"

#include <algorithm>
#include <unordered_set>
#include <utility>

#include "dhg/error.h"

namespace dhg {
namespace {

template <typename T>
void erase_sorted(std::vector<T>& v, T value) {
  auto it = std::lower_bound(v.begin(), v.end(), value);
  if (it != v.end() && *it == value) v.erase(it);
}

void erase_value(std::vector<EdgeRef>& v, EdgeRef value) {
  auto it = std::find(v.begin(), v.end(), value);
  if (it != v.end()) v.erase(it);
}

AttrValue checked_attr(NodeKind kind, const std::string& key, const AttrValue& value, bool dynamic) {
  const AttrSpec* spec = find_node_attr(kind, key);
  if (spec == nullptr || spec->dynamic != dynamic) {
    throw Error(ErrorCode::kInvalidAttribute, std::string(to_string(kind)) + "." + key);
  }
  auto coerced = coerce(spec->type, value);
  if (!coerced) {
    throw Error(ErrorCode::kInvalidAttribute,
                std::string(to_string(kind)) + "." + key + " expects " + std::string(to_string(spec->type)));
  }
  return *std::move(coerced);
}

}  // namespace

const AttrValue* NodeRecord::latest(std::string_view key) const {
  auto it = dynamic_attrs.find(key);
  if (it == dynamic_attrs.end() || it->second.empty()) return nullptr;
  return &it->second.back().value;
}

const AttrValue* NodeRecord::get(std::string_view key) const {
  if (auto it = static_attrs.find(key); it != static_attrs.end()) return &it->second;
  return latest(key);
}

NodeHandle Graph::add_node(NodeRecord rec) {
  const NodeKind kind = rec.id.kind;
  auto& lookup = kind == NodeKind::kUser ? users_ : content_;
  if (lookup.contains(rec.id.key)) {
    throw Error(ErrorCode::kDuplicateId, to_string(rec.id));
  }
  for (auto& [key, value] : rec.static_attrs) {
    value = checked_attr(kind, key, value, false);
  }
  for (auto& [key, revisions] : rec.dynamic_attrs) {
    Timestamp last = rec.created;
    for (Revision& r : revisions) {
      r.value = checked_attr(kind, key, r.value, true);
      if (r.time < last) {
        throw Error(ErrorCode::kNonMonotonicRevision, to_string(rec.id) + "." + key);
      }
      last = r.time;
    }
  }

  const auto handle = static_cast<NodeHandle>(nodes_.size());
  lookup.emplace(rec.id.key, handle);
  by_kind_[index_of(kind)].push_back(handle);

  auto& by_created = by_created_[index_of(kind)];
  const Timestamp created = rec.created;
  auto pos = std::upper_bound(by_created.begin(), by_created.end(), created,
                              [this](Timestamp t, NodeHandle h) { return t < nodes_[index_of(h)].rec.created; });
  by_created.insert(pos, handle);

  nodes_.push_back(NodeSlot{std::move(rec), true, {}, {}});
  ++live_nodes_;
  return handle;
}

EdgeRef Graph::add_edge(const EdgeRecord& rec) {
  auto src = find(rec.src);
  auto dst = find(rec.dst);
  if (!src) throw Error(ErrorCode::kMissingEndpoint, to_string(rec.src));
  if (!dst) throw Error(ErrorCode::kMissingEndpoint, to_string(rec.dst));
  return add_edge(rec.kind, *src, *dst, rec.time, rec.attrs);
}

EdgeRef Graph::add_edge(EdgeKind kind, NodeHandle src, NodeHandle dst, Timestamp time, AttrMap attrs) {
  if (!contains(src) || !contains(dst)) {
    throw Error(ErrorCode::kMissingEndpoint, "edge endpoint handle is not live");
  }
  const NodeRecord& s = node(src);
  const NodeRecord& d = node(dst);
  if (!edge_schema_allows(kind, s.id.kind, d.id.kind)) {
    throw Error(ErrorCode::kSchemaViolation, std::string(to_string(kind)) + " " + std::string(to_string(s.id.kind)) +
                                                 "->" + std::string(to_string(d.id.kind)));
  }
  if (time < s.created || time < d.created) {
    throw Error(ErrorCode::kTimeBeforeCreation,
                std::string(to_string(kind)) + " " + to_string(s.id) + "->" + to_string(d.id) + " at " +
                    std::to_string(time));
  }
  for (auto& [key, value] : attrs) {
    const AttrSpec* spec = find_edge_attr(kind, key);
    auto coerced = spec ? coerce(spec->type, value) : std::nullopt;
    if (!coerced) throw Error(ErrorCode::kInvalidAttribute, std::string(to_string(kind)) + "." + key);
    value = *std::move(coerced);
  }

  const NodeSlot& dst_slot = nodes_[index_of(dst)];
  if (kind == EdgeKind::kAuthored && !dst_slot.in[index_of(kind)].empty()) {
    throw Error(ErrorCode::kDuplicateAuthor, to_string(d.id));
  }
  if (kind == EdgeKind::kReply && !dst_slot.in[index_of(kind)].empty()) {
    throw Error(ErrorCode::kDuplicateParent, to_string(d.id));
  }
  // Exact replays (same kind, endpoints, time) are rejected. Scan the shorter list.
  const auto& out_list = nodes_[index_of(src)].out[index_of(kind)];
  const auto& in_list = dst_slot.in[index_of(kind)];
  const bool scan_out = out_list.size() <= in_list.size();
  for (EdgeRef e : scan_out ? out_list : in_list) {
    const StoredEdge& other = edge(e);
    if (other.src == src && other.dst == dst && other.time == time) {
      throw Error(ErrorCode::kDuplicateEdge, std::string(to_string(kind)) + " " + to_string(s.id) + "->" +
                                                 to_string(d.id) + " at " + std::to_string(time));
    }
  }

  const auto ref = static_cast<EdgeRef>(edges_.size());
  edges_.push_back(EdgeSlot{StoredEdge{kind, src, dst, time, std::move(attrs)}, true});
  nodes_[index_of(src)].out[index_of(kind)].push_back(ref);
  nodes_[index_of(dst)].in[index_of(kind)].push_back(ref);

  // Refs grow monotonically, so (time, ref) order only needs an upper_bound on time.
  auto& by_time = by_time_[index_of(kind)];
  auto pos = std::upper_bound(by_time.begin(), by_time.end(), time,
                              [this](Timestamp t, EdgeRef e) { return t < edges_[index_of(e)].edge.time; });
  by_time.insert(pos, ref);
  ++live_edges_;
  return ref;
}

void Graph::modify_node(const NodeId& id, std::string_view key, AttrValue value, Timestamp at) {
  modify_node(require(id), key, std::move(value), at);
}

void Graph::modify_node(NodeHandle h, std::string_view key, AttrValue value, Timestamp at) {
  if (!contains(h)) throw Error(ErrorCode::kNotFound, "node handle is not live");
  NodeRecord& rec = nodes_[index_of(h)].rec;
  const AttrSpec* spec = find_node_attr(rec.id.kind, key);
  if (spec == nullptr) {
    throw Error(ErrorCode::kInvalidAttribute, to_string(rec.id) + "." + std::string(key));
  }
  if (!spec->dynamic) {
    throw Error(ErrorCode::kStaticAttributeImmutable, to_string(rec.id) + "." + std::string(key));
  }
  auto coerced = coerce(spec->type, value);
  if (!coerced) {
    throw Error(ErrorCode::kInvalidAttribute, to_string(rec.id) + "." + std::string(key) + " expects " +
                                                  std::string(to_string(spec->type)));
  }
  auto it = rec.dynamic_attrs.find(key);
  const Timestamp last = (it == rec.dynamic_attrs.end() || it->second.empty()) ? rec.created : it->second.back().time;
  if (at < last) {
    throw Error(ErrorCode::kNonMonotonicRevision,
                to_string(rec.id) + "." + std::string(key) + " at " + std::to_string(at) + " < " + std::to_string(last));
  }
  if (it == rec.dynamic_attrs.end()) {
    it = rec.dynamic_attrs.emplace(std::string(key), std::vector<Revision>{}).first;
  }
  it->second.push_back(Revision{at, *std::move(coerced)});
}

RemovalReport Graph::remove_node(const NodeId& id) {
  const NodeHandle root = require(id);

  // Dependents: everything reachable through authored and reply edges.
  std::vector<NodeHandle> doomed;
  std::vector<NodeHandle> stack{root};
  std::unordered_set<std::uint32_t> seen{index_of(root)};
  while (!stack.empty()) {
    NodeHandle n = stack.back();
    stack.pop_back();
    doomed.push_back(n);
    for (EdgeKind k : {EdgeKind::kAuthored, EdgeKind::kReply}) {
      for (EdgeRef e : out_edges(n, k)) {
        NodeHandle child = edge(e).dst;
        if (seen.insert(index_of(child)).second) stack.push_back(child);
      }
    }
  }

  RemovalReport report;
  for (NodeHandle n : doomed) {
    for (EdgeKind k : kAllEdgeKinds) {
      // Copies: erase_edge mutates these lists.
      std::vector<EdgeRef> incident(out_edges(n, k).begin(), out_edges(n, k).end());
      incident.insert(incident.end(), in_edges(n, k).begin(), in_edges(n, k).end());
      for (EdgeRef e : incident) {
        if (contains(e)) {
          erase_edge(e);
          report.edges.push_back(e);
        }
      }
    }
  }
  for (NodeHandle n : doomed) {
    report.nodes.push_back(node(n).id);
    erase_node(n);
  }
  std::sort(report.edges.begin(), report.edges.end());
  return report;
}

void Graph::remove_edge(EdgeRef ref) {
  if (!contains(ref)) throw Error(ErrorCode::kNotFound, "edge " + std::to_string(index_of(ref)));
  erase_edge(ref);
}

void Graph::erase_edge(EdgeRef ref) {
  EdgeSlot& slot = edges_[index_of(ref)];
  const StoredEdge& e = slot.edge;
  erase_value(nodes_[index_of(e.src)].out[index_of(e.kind)], ref);
  erase_value(nodes_[index_of(e.dst)].in[index_of(e.kind)], ref);

  auto& by_time = by_time_[index_of(e.kind)];
  auto lo = std::lower_bound(by_time.begin(), by_time.end(), e.time,
                             [this](EdgeRef r, Timestamp t) { return edges_[index_of(r)].edge.time < t; });
  auto hi = std::upper_bound(lo, by_time.end(), e.time,
                             [this](Timestamp t, EdgeRef r) { return t < edges_[index_of(r)].edge.time; });
  auto hit = std::lower_bound(lo, hi, ref);
  if (hit != hi && *hit == ref) by_time.erase(hit);

  slot.alive = false;
  slot.edge.attrs.clear();
  --live_edges_;
}

void Graph::erase_node(NodeHandle h) {
  NodeSlot& slot = nodes_[index_of(h)];
  const NodeKind kind = slot.rec.id.kind;
  (kind == NodeKind::kUser ? users_ : content_).erase(slot.rec.id.key);
  erase_sorted(by_kind_[index_of(kind)], h);

  auto& by_created = by_created_[index_of(kind)];
  const Timestamp created = slot.rec.created;
  auto lo = std::lower_bound(by_created.begin(), by_created.end(), created,
                             [this](NodeHandle n, Timestamp t) { return nodes_[index_of(n)].rec.created < t; });
  auto hi = std::upper_bound(lo, by_created.end(), created,
                             [this](Timestamp t, NodeHandle n) { return t < nodes_[index_of(n)].rec.created; });
  auto hit = std::lower_bound(lo, hi, h);
  if (hit != hi && *hit == h) by_created.erase(hit);

  slot.alive = false;
  slot.rec.static_attrs.clear();
  slot.rec.dynamic_attrs.clear();
  --live_nodes_;
}

std::optional<NodeHandle> Graph::find(const NodeId& id) const {
  auto h = id.kind == NodeKind::kUser ? find_user(id.key) : find_content(id.key);
  if (h && kind(*h) != id.kind) return std::nullopt;
  return h;
}

std::optional<NodeHandle> Graph::find_user(std::string_view name) const {
  auto it = users_.find(std::string(name));
  if (it == users_.end()) return std::nullopt;
  return it->second;
}

std::optional<NodeHandle> Graph::find_content(std::string_view permlink) const {
  auto it = content_.find(std::string(permlink));
  if (it == content_.end()) return std::nullopt;
  return it->second;
}

NodeHandle Graph::require(const NodeId& id) const {
  auto h = find(id);
  if (!h) throw Error(ErrorCode::kNotFound, to_string(id));
  return *h;
}

EdgeRecord Graph::edge_record(EdgeRef e) const {
  const StoredEdge& s = edge(e);
  return EdgeRecord{s.kind, node(s.src).id, node(s.dst).id, s.time, s.attrs};
}

std::vector<NodeHandle> Graph::node_handles() const {
  std::vector<NodeHandle> out;
  out.reserve(live_nodes_);
  for (std::uint32_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].alive) out.push_back(static_cast<NodeHandle>(i));
  }
  return out;
}

std::vector<EdgeRef> Graph::edge_refs() const {
  std::vector<EdgeRef> out;
  out.reserve(live_edges_);
  for (std::uint32_t i = 0; i < edges_.size(); ++i) {
    if (edges_[i].alive) out.push_back(static_cast<EdgeRef>(i));
  }
  return out;
}

bool structurally_equal(const Graph& a, const Graph& b) {
  if (a.node_count() != b.node_count() || a.edge_count() != b.edge_count()) return false;
  for (NodeHandle h : a.node_handles()) {
    const NodeRecord& ra = a.node(h);
    auto hb = b.find(ra.id);
    if (!hb || !(b.node(*hb) == ra)) return false;
  }
  auto sorted_edges = [](const Graph& g) {
    std::vector<EdgeRecord> out;
    out.reserve(g.edge_count());
    for (EdgeRef e : g.edge_refs()) out.push_back(g.edge_record(e));
    std::sort(out.begin(), out.end());
    return out;
  };
  auto ea = sorted_edges(a);
  auto eb = sorted_edges(b);
  return std::equal(ea.begin(), ea.end(), eb.begin(), eb.end(),
                    [](const EdgeRecord& x, const EdgeRecord& y) { return x == y; });
}

}  // namespace dhg
