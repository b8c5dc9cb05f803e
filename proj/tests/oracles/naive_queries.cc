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


#include "naive_queries.h"

#include <algorithm>
#include <set>

namespace dhg::oracle {
namespace {

bool has(const std::vector<NodeHandle>& v, NodeHandle h) { return std::find(v.begin(), v.end(), h) != v.end(); }

void add_unique(std::vector<NodeHandle>& v, NodeHandle h) {
  if (!has(v, h)) v.push_back(h);
}

template <typename Row, typename Key>
void sort_desc(const Graph& g, std::vector<Row>& rows, Key key) {
  std::stable_sort(rows.begin(), rows.end(),
                   [&](const Row& a, const Row& b) { return g.node(key(a)).id.key < g.node(key(b)).id.key; });
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.count_for_sort() > b.count_for_sort(); });
}

struct PostRow {
  NodeHandle post;
  std::size_t count;
  std::size_t count_for_sort() const { return count; }
};

struct UserRow {
  UserActivity a;
  std::size_t count_for_sort() const { return a.total; }
};

}  // namespace

NaiveSubgraph window(const Graph& g, const TimeWindow& w) {
  std::vector<NodeHandle> post, comment, user;
  for (NodeHandle h : g.node_handles()) {
    switch (g.kind(h)) {
      case NodeKind::kPost:
        post.push_back(h);
        break;
      case NodeKind::kComment:
        comment.push_back(h);
        break;
      case NodeKind::kUser:
        user.push_back(h);
        break;
    }
  }
  std::vector<EdgeRef> vote, authored, reply;
  for (EdgeRef e : g.edge_refs()) {
    switch (g.edge(e).kind) {
      case EdgeKind::kVote:
        vote.push_back(e);
        break;
      case EdgeKind::kAuthored:
        authored.push_back(e);
        break;
      case EdgeKind::kReply:
        reply.push_back(e);
        break;
      case EdgeKind::kFollow:
        break;
    }
  }

  std::vector<NodeHandle> sub_post, sub_comment;
  for (NodeHandle i : post) {
    if (w.t1() <= g.node(i).created && g.node(i).created <= w.t2()) sub_post.push_back(i);
  }
  for (NodeHandle i : comment) {
    if (w.t1() <= g.node(i).created && g.node(i).created <= w.t2()) sub_comment.push_back(i);
  }
  std::vector<EdgeRef> sub_edges;
  for (const auto* list : {&vote, &authored, &reply}) {
    for (EdgeRef i : *list) {
      if (w.t1() <= g.edge(i).time && g.edge(i).time <= w.t2()) sub_edges.push_back(i);
    }
  }

  // G_node = G.subgraph(sub_post + sub_comment + user)
  std::set<NodeHandle> node_set(sub_post.begin(), sub_post.end());
  node_set.insert(sub_comment.begin(), sub_comment.end());
  node_set.insert(user.begin(), user.end());
  std::set<EdgeRef> g_node_edges;
  for (EdgeRef e : g.edge_refs()) {
    if (node_set.count(g.edge(e).src) && node_set.count(g.edge(e).dst)) g_node_edges.insert(e);
  }

  // G_node.edge_subgraph(sub_vote + sub_authored + sub_reply)
  std::set<NodeHandle> nodes;
  std::set<EdgeRef> edges;
  for (EdgeRef e : sub_edges) {
    if (!g_node_edges.count(e)) continue;
    edges.insert(e);
    nodes.insert(g.edge(e).src);
    nodes.insert(g.edge(e).dst);
  }
  return {{nodes.begin(), nodes.end()}, {edges.begin(), edges.end()}};
}

NaiveSubgraph category(const Subgraph& sub, std::string_view category) {
  const Graph& g = sub.parent();
  using Pair = std::pair<NodeHandle, NodeHandle>;
  std::vector<Pair> sub_vote, sub_authored, sub_reply;
  for (EdgeRef e : sub.edges()) {
    const StoredEdge& se = g.edge(e);
    if (se.kind == EdgeKind::kVote) sub_vote.emplace_back(se.src, se.dst);
    if (se.kind == EdgeKind::kAuthored) sub_authored.emplace_back(se.src, se.dst);
    if (se.kind == EdgeKind::kReply) sub_reply.emplace_back(se.src, se.dst);
  }

  std::vector<NodeHandle> category_posts;
  for (NodeHandle i : sub.nodes()) {
    if (g.kind(i) != NodeKind::kPost) continue;
    const AttrValue* c = g.node(i).get("category");
    if (c != nullptr && std::holds_alternative<std::string>(*c) && std::get<std::string>(*c) == category) {
      category_posts.push_back(i);
    }
  }

  std::vector<NodeHandle> related_node, related_cm;
  for (NodeHandle i : category_posts) {
    for (std::size_t j = 0; j < sub_vote.size(); ++j) {
      if (i == sub_vote[j].second) related_node.push_back(sub_vote[j].first);
    }
    for (std::size_t j = 0; j < sub_authored.size(); ++j) {
      if (i == sub_authored[j].second) related_node.push_back(sub_authored[j].first);
    }
    for (std::size_t j = 0; j < sub_reply.size(); ++j) {
      if (i == sub_reply[j].first) {
        related_node.push_back(sub_reply[j].second);
        related_cm.push_back(sub_reply[j].second);
      }
    }
  }
  for (NodeHandle i : related_cm) {
    for (std::size_t j = 0; j < sub_vote.size(); ++j) {
      if (i == sub_vote[j].second) related_node.push_back(sub_vote[j].first);
    }
    for (std::size_t j = 0; j < sub_authored.size(); ++j) {
      if (i == sub_authored[j].second) related_node.push_back(sub_authored[j].first);
    }
  }

  std::vector<NodeHandle> category_node;
  for (NodeHandle h : related_node) add_unique(category_node, h);
  for (NodeHandle h : category_posts) add_unique(category_node, h);

  // sub.subgraph(category_node)
  std::set<NodeHandle> nodes;
  for (NodeHandle h : category_node) {
    if (std::find(sub.nodes().begin(), sub.nodes().end(), h) != sub.nodes().end()) nodes.insert(h);
  }
  std::set<EdgeRef> edges;
  for (EdgeRef e : sub.edges()) {
    if (nodes.count(g.edge(e).src) && nodes.count(g.edge(e).dst)) edges.insert(e);
  }
  return {{nodes.begin(), nodes.end()}, {edges.begin(), edges.end()}};
}

RankedPosts rank_posts(const Subgraph& sub) {
  const Graph& g = sub.parent();
  std::vector<PostRow> comment_count, vote_count;
  for (NodeHandle i : sub.nodes()) {
    if (g.kind(i) != NodeKind::kPost) continue;
    std::size_t comment = 0, vote = 0;
    for (EdgeRef e : sub.edges()) {
      if (g.edge(e).src == i && g.edge(e).kind == EdgeKind::kReply) ++comment;
    }
    comment_count.push_back({i, comment});
    for (EdgeRef e : sub.edges()) {
      if (g.edge(e).dst == i && g.edge(e).kind == EdgeKind::kVote) ++vote;
    }
    vote_count.push_back({i, vote});
  }
  auto key = [](const PostRow& r) { return r.post; };
  sort_desc(g, comment_count, key);
  sort_desc(g, vote_count, key);

  RankedPosts out;
  for (const PostRow& r : comment_count) out.comments_sorted.push_back({r.post, r.count});
  for (const PostRow& r : vote_count) out.votes_sorted.push_back({r.post, r.count});
  return out;
}

std::vector<UserActivity> rank_users(const Subgraph& sub) {
  const Graph& g = sub.parent();
  std::vector<NodeHandle> user;
  for (NodeHandle h : g.node_handles()) {
    if (g.kind(h) == NodeKind::kUser) user.push_back(h);
  }
  std::vector<UserRow> user_activity;
  for (std::size_t i = 0; i < user.size(); ++i) {
    if (std::find(sub.nodes().begin(), sub.nodes().end(), user[i]) == sub.nodes().end()) continue;
    UserActivity a;
    a.user = user[i];
    for (EdgeRef e : sub.edges()) {
      if (g.edge(e).src != user[i]) continue;
      ++a.total;
      if (g.edge(e).kind == EdgeKind::kVote) ++a.cast_votes;
      if (g.edge(e).kind == EdgeKind::kAuthored) ++a.written;
    }
    user_activity.push_back({a});
  }
  sort_desc(g, user_activity, [](const UserRow& r) { return r.a.user; });
  std::vector<UserActivity> out;
  for (const UserRow& r : user_activity) out.push_back(r.a);
  return out;
}

}  // namespace dhg::oracle
