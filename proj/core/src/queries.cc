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


#include "dhg/queries.h"

#include <algorithm>

namespace dhg {
namespace {

constexpr EdgeKind kWindowKinds[] = {EdgeKind::kVote, EdgeKind::kAuthored, EdgeKind::kReply};

/// count descending, then key ascending.
void sort_by_count(const Graph& g, std::vector<PostCount>& rows) {
  std::sort(rows.begin(), rows.end(), [&g](const PostCount& a, const PostCount& b) {
    if (a.count != b.count) return a.count > b.count;
    return g.node(a.post).id.key < g.node(b.post).id.key;
  });
}

Cell attr_cell(const NodeRecord& rec, std::string_view key) {
  const AttrValue* v = rec.get(key);
  if (v == nullptr) return std::monostate{};
  return std::visit(
      [](const auto& x) -> Cell {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, bool>) {
          return std::int64_t{x ? 1 : 0};
        } else {
          return x;
        }
      },
      *v);
}

}  // namespace

Subgraph time_window_subgraph(const Graph& g, const TimeWindow& window, const WindowOptions& options) {
  auto candidate = [&](NodeHandle h) {
    return g.kind(h) == NodeKind::kUser || window.contains(g.node(h).created);
  };

  std::vector<EdgeRef> edges;
  std::vector<NodeHandle> nodes;
  for (EdgeKind kind : kWindowKinds) {
    auto by_time = g.edges_by_time(kind);
    auto lo = std::lower_bound(by_time.begin(), by_time.end(), window.t1(),
                               [&g](EdgeRef e, Timestamp t) { return g.edge(e).time < t; });
    auto hi = std::upper_bound(lo, by_time.end(), window.t2(),
                               [&g](Timestamp t, EdgeRef e) { return t < g.edge(e).time; });
    for (auto it = lo; it != hi; ++it) {
      const StoredEdge& e = g.edge(*it);
      if (candidate(e.src) && candidate(e.dst)) {
        edges.push_back(*it);
        nodes.push_back(e.src);
        nodes.push_back(e.dst);
      }
    }
  }

  if (options.keep_isolated_in_window) {
    for (NodeKind kind : {NodeKind::kPost, NodeKind::kComment}) {
      auto by_created = g.nodes_by_created(kind);
      auto lo = std::lower_bound(by_created.begin(), by_created.end(), window.t1(),
                                 [&g](NodeHandle h, Timestamp t) { return g.node(h).created < t; });
      auto hi = std::upper_bound(lo, by_created.end(), window.t2(),
                                 [&g](Timestamp t, NodeHandle h) { return t < g.node(h).created; });
      nodes.insert(nodes.end(), lo, hi);
    }
  }
  return Subgraph(g, std::move(nodes), std::move(edges), window);
}

Subgraph category_subgraph(const Subgraph& sub, std::string_view category) {
  const Graph& g = sub.parent();
  enum : char { kOut = 0, kPost = 1, kComment = 2, kRelated = 3 };
  std::vector<char> role(g.node_slot_count(), kOut);

  bool any = false;
  for (NodeHandle h : sub.nodes()) {
    if (g.kind(h) != NodeKind::kPost) continue;
    const AttrValue* c = g.node(h).get("category");
    const auto* s = c ? std::get_if<std::string>(c) : nullptr;
    if (s != nullptr && *s == category) {
      role[index_of(h)] = kPost;
      any = true;
    }
  }
  if (!any) return Subgraph(g, {}, {}, sub.window());

  std::vector<NodeHandle> nodes;
  auto relate = [&](NodeHandle h) {
    if (role[index_of(h)] == kOut) {
      role[index_of(h)] = kRelated;
      nodes.push_back(h);
    }
  };

  std::vector<NodeHandle> comments;
  for (EdgeRef ref : sub.edges()) {
    const StoredEdge& e = g.edge(ref);
    if ((e.kind == EdgeKind::kVote || e.kind == EdgeKind::kAuthored) && role[index_of(e.dst)] == kPost) {
      relate(e.src);
    } else if (e.kind == EdgeKind::kReply && role[index_of(e.src)] == kPost) {
      if (role[index_of(e.dst)] == kOut) {
        role[index_of(e.dst)] = kComment;
        comments.push_back(e.dst);
      }
    }
  }
  for (EdgeRef ref : sub.edges()) {
    const StoredEdge& e = g.edge(ref);
    if ((e.kind == EdgeKind::kVote || e.kind == EdgeKind::kAuthored) && role[index_of(e.dst)] == kComment) {
      relate(e.src);
    }
  }

  for (NodeHandle h : sub.nodes()) {
    if (role[index_of(h)] == kPost) nodes.push_back(h);
  }
  nodes.insert(nodes.end(), comments.begin(), comments.end());

  std::vector<EdgeRef> edges;
  for (EdgeRef ref : sub.edges()) {
    const StoredEdge& e = g.edge(ref);
    if (role[index_of(e.src)] != kOut && role[index_of(e.dst)] != kOut) edges.push_back(ref);
  }
  return Subgraph(g, std::move(nodes), std::move(edges), sub.window());
}

RankedPosts rank_posts_by_engagement(const Subgraph& sub) {
  const Graph& g = sub.parent();
  std::vector<std::size_t> comments(g.node_slot_count(), 0);
  std::vector<std::size_t> votes(g.node_slot_count(), 0);
  for (EdgeRef ref : sub.edges()) {
    const StoredEdge& e = g.edge(ref);
    if (e.kind == EdgeKind::kReply && g.kind(e.src) == NodeKind::kPost) {
      ++comments[index_of(e.src)];
    } else if (e.kind == EdgeKind::kVote && g.kind(e.dst) == NodeKind::kPost) {
      ++votes[index_of(e.dst)];
    }
  }

  RankedPosts out;
  for (NodeHandle h : sub.nodes()) {
    if (g.kind(h) != NodeKind::kPost) continue;
    out.comments_sorted.push_back(PostCount{h, comments[index_of(h)]});
    out.votes_sorted.push_back(PostCount{h, votes[index_of(h)]});
  }
  sort_by_count(g, out.comments_sorted);
  sort_by_count(g, out.votes_sorted);
  return out;
}

std::vector<UserActivity> rank_users_by_activity(const Subgraph& sub) {
  const Graph& g = sub.parent();
  std::vector<UserActivity> slots(g.node_slot_count());
  for (EdgeRef ref : sub.edges()) {
    const StoredEdge& e = g.edge(ref);
    if (g.kind(e.src) != NodeKind::kUser) continue;
    UserActivity& a = slots[index_of(e.src)];
    ++a.total;
    if (e.kind == EdgeKind::kVote) ++a.cast_votes;
    if (e.kind == EdgeKind::kAuthored) ++a.written;
  }

  std::vector<UserActivity> out;
  for (NodeHandle h : sub.nodes()) {
    if (g.kind(h) != NodeKind::kUser) continue;
    UserActivity a = slots[index_of(h)];
    a.user = h;
    out.push_back(a);
  }
  std::sort(out.begin(), out.end(), [&g](const UserActivity& a, const UserActivity& b) {
    if (a.total != b.total) return a.total > b.total;
    return g.node(a.user).id.key < g.node(b.user).id.key;
  });
  return out;
}

Table subgraph_edge_table(const Subgraph& sub) {
  const Graph& g = sub.parent();
  Table t{{"kind", "src_kind", "src", "dst_kind", "dst", "time"}, {}};
  t.rows.reserve(sub.edge_count());
  for (EdgeRef ref : sub.edges()) {
    const StoredEdge& e = g.edge(ref);
    const NodeId& s = g.node(e.src).id;
    const NodeId& d = g.node(e.dst).id;
    t.rows.push_back({std::string(to_string(e.kind)), std::string(to_string(s.kind)), s.key,
                      std::string(to_string(d.kind)), d.key, std::int64_t{e.time}});
  }
  return t;
}

Table subgraph_node_table(const Subgraph& sub) {
  const Graph& g = sub.parent();
  Table t{{"kind", "id", "created"}, {}};
  t.rows.reserve(sub.node_count());
  for (NodeHandle h : sub.nodes()) {
    const NodeRecord& rec = g.node(h);
    t.rows.push_back({std::string(to_string(rec.id.kind)), rec.id.key, std::int64_t{rec.created}});
  }
  return t;
}

Table engagement_table(const Subgraph& sub, const RankedPosts& ranked) {
  const Graph& g = sub.parent();
  std::vector<std::size_t> votes(g.node_slot_count(), 0);
  for (const PostCount& pc : ranked.votes_sorted) votes[index_of(pc.post)] = pc.count;

  Table t{{"permlink", "title", "payout", "comments", "votes"}, {}};
  for (const PostCount& pc : ranked.comments_sorted) {
    const NodeRecord& rec = g.node(pc.post);
    t.rows.push_back({rec.id.key, attr_cell(rec, "title"), attr_cell(rec, "payout"),
                      static_cast<std::int64_t>(pc.count), static_cast<std::int64_t>(votes[index_of(pc.post)])});
  }
  return t;
}

Table activity_table(const Subgraph& sub, const std::vector<UserActivity>& activity) {
  const Graph& g = sub.parent();
  Table t{{"username", "cast_votes", "written", "total"}, {}};
  for (const UserActivity& a : activity) {
    t.rows.push_back({g.node(a.user).id.key, static_cast<std::int64_t>(a.cast_votes),
                      static_cast<std::int64_t>(a.written), static_cast<std::int64_t>(a.total)});
  }
  return t;
}

}  // namespace dhg
