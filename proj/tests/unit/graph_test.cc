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


#include <gtest/gtest.h>

#include <algorithm>

#include "dhg/error.h"
#include "dhg/graph.h"
#include "fixtures.h"

namespace dhg {
namespace {

using testing::GraphBuilder;

template <typename Fn>
ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kIoError;
}

TEST(Graph, AddAndLookup) {
  GraphBuilder b;
  NodeHandle u = b.user("alice", 1);
  NodeHandle p = b.post("hello", 5, "life");
  EdgeRef e = b.authored(u, p, 5);
  const Graph& g = b.graph();
  EXPECT_EQ(g.node_count(), 2u);
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_EQ(g.find(NodeId::user("alice")), u);
  EXPECT_EQ(g.find_content("hello"), p);
  EXPECT_FALSE(g.find(NodeId::comment("hello")));
  EXPECT_EQ(g.edge(e).src, u);
  EXPECT_EQ(g.out_edges(u, EdgeKind::kAuthored).size(), 1u);
  EXPECT_EQ(g.in_edges(p, EdgeKind::kAuthored).size(), 1u);
  EXPECT_EQ(g.edge_record(e), (EdgeRecord{EdgeKind::kAuthored, NodeId::user("alice"), NodeId::post("hello"), 5, {}}));
}

TEST(Graph, PermlinksAreSharedBetweenPostsAndComments) {
  GraphBuilder b;
  b.post("x", 1);
  EXPECT_EQ(code_of([&] { b.comment("x", 2); }), ErrorCode::kDuplicateId);
  b.user("x", 1);  // usernames live in their own namespace
  EXPECT_EQ(code_of([&] { b.user("x", 3); }), ErrorCode::kDuplicateId);
}

TEST(Graph, RejectsUnknownOrMistypedAttributes) {
  Graph g;
  NodeRecord bad{NodeId::user("u"), 0, {{"category", std::string("x")}}, {}};
  EXPECT_EQ(code_of([&] { g.add_node(bad); }), ErrorCode::kInvalidAttribute);
  NodeRecord wrong_type{NodeId::post("p"), 0, {{"category", std::int64_t{3}}}, {}};
  EXPECT_EQ(code_of([&] { g.add_node(wrong_type); }), ErrorCode::kInvalidAttribute);
  NodeRecord static_as_dynamic{NodeId::post("p"), 0, {}, {{"category", {{1, std::string("a")}}}}};
  EXPECT_EQ(code_of([&] { g.add_node(static_as_dynamic); }), ErrorCode::kInvalidAttribute);
  EXPECT_TRUE(g.empty());
}

TEST(Graph, EdgeValidationOrder) {
  GraphBuilder b;
  NodeHandle u = b.user("u", 10);
  NodeHandle v = b.user("v", 10);
  NodeHandle p = b.post("p", 20);
  NodeHandle c = b.comment("c", 30);
  Graph& g = b.graph();
  EXPECT_EQ(code_of([&] {
              g.add_edge({EdgeKind::kVote, NodeId::user("ghost"), NodeId::post("p"), 40, {}});
            }),
            ErrorCode::kMissingEndpoint);
  EXPECT_EQ(code_of([&] { g.add_edge(EdgeKind::kReply, u, c, 40); }), ErrorCode::kSchemaViolation);
  EXPECT_EQ(code_of([&] { g.add_edge(EdgeKind::kFollow, u, p, 40); }), ErrorCode::kSchemaViolation);
  EXPECT_EQ(code_of([&] { g.add_edge(EdgeKind::kVote, u, p, 19); }), ErrorCode::kTimeBeforeCreation);
  EXPECT_EQ(code_of([&] { g.add_edge(EdgeKind::kVote, u, p, 25, {{"weight", std::string("x")}}); }),
            ErrorCode::kInvalidAttribute);
  EXPECT_EQ(code_of([&] { g.add_edge(EdgeKind::kFollow, u, v, 25, {{"weight", std::int64_t{1}}}); }),
            ErrorCode::kInvalidAttribute);

  b.authored(u, p, 20);
  EXPECT_EQ(code_of([&] { b.authored(v, p, 21); }), ErrorCode::kDuplicateAuthor);
  b.reply(p, c, 30);
  NodeHandle c2 = b.comment("c2", 31);
  b.reply(c, c2, 31);
  EXPECT_EQ(code_of([&] { b.reply(p, c2, 32); }), ErrorCode::kDuplicateParent);

  b.vote(u, p, 50);
  EXPECT_EQ(code_of([&] { b.vote(u, p, 50); }), ErrorCode::kDuplicateEdge);
  b.vote(u, p, 51);  // a re-vote at another time is a distinct edge
  EXPECT_EQ(g.in_edges(p, EdgeKind::kVote).size(), 2u);
  EXPECT_EQ(g.edge_count(), 5u);
}

TEST(Graph, DynamicRevisions) {
  GraphBuilder b;
  NodeHandle p = b.post("p", 100);
  Graph& g = b.graph();
  g.modify_node(p, "payout", 1.5, 100);
  g.modify_node(NodeId::post("p"), "payout", std::int64_t{2}, 200);
  ASSERT_NE(g.node(p).get("payout"), nullptr);
  EXPECT_EQ(*g.node(p).get("payout"), AttrValue{2.0});
  EXPECT_EQ(g.node(p).dynamic_attrs.at("payout").size(), 2u);
  g.modify_node(p, "payout", 3.0, 200);  // equal times allowed
  EXPECT_EQ(code_of([&] { g.modify_node(p, "payout", 1.0, 150); }), ErrorCode::kNonMonotonicRevision);
  EXPECT_EQ(code_of([&] { g.modify_node(p, "title", std::string("t"), 99); }), ErrorCode::kNonMonotonicRevision);
  EXPECT_EQ(code_of([&] { g.modify_node(p, "category", std::string("x"), 300); }),
            ErrorCode::kStaticAttributeImmutable);
  EXPECT_EQ(code_of([&] { g.modify_node(p, "nonsense", 1.0, 300); }), ErrorCode::kInvalidAttribute);
  EXPECT_EQ(code_of([&] { g.modify_node(p, "payout", std::string("lots"), 300); }), ErrorCode::kInvalidAttribute);
  EXPECT_EQ(code_of([&] { g.modify_node(NodeId::post("none"), "payout", 1.0, 300); }), ErrorCode::kNotFound);
}

TEST(Graph, RemoveNodeCascadesThroughAuthoredAndReply) {
  GraphBuilder b;
  NodeHandle u = b.user("u");
  NodeHandle w = b.user("w");
  NodeHandle p = b.post("p", 1);
  NodeHandle c1 = b.comment("c1", 2);
  NodeHandle c2 = b.comment("c2", 3);
  NodeHandle other = b.post("other", 1);
  b.authored(u, p, 1);
  b.authored(w, c1, 2);
  b.reply(p, c1, 2);
  b.reply(c1, c2, 3);
  b.vote(w, p, 4);
  b.vote(u, other, 4);
  b.follow(u, w, 5);
  Graph& g = b.graph();

  RemovalReport r = g.remove_node(NodeId::post("p"));
  std::vector<NodeId> removed = r.nodes;
  std::sort(removed.begin(), removed.end());
  EXPECT_EQ(removed, (std::vector<NodeId>{NodeId::post("p"), NodeId::comment("c1"), NodeId::comment("c2")}));
  EXPECT_EQ(r.edges.size(), 5u);
  EXPECT_FALSE(g.contains(p));
  EXPECT_FALSE(g.contains(c1));
  EXPECT_FALSE(g.contains(c2));
  EXPECT_TRUE(g.contains(u));
  EXPECT_TRUE(g.contains(w));
  EXPECT_TRUE(g.contains(other));
  EXPECT_EQ(g.node_count(), 3u);
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_TRUE(g.out_edges(w, EdgeKind::kAuthored).empty());
  EXPECT_FALSE(g.find_content("c1"));
  // Freed keys can be reused; handles are not.
  NodeHandle again = b.post("p", 9);
  EXPECT_NE(again, p);
}

TEST(Graph, RemovingAUserRemovesEverythingTheyWrote) {
  GraphBuilder b;
  NodeHandle u = b.user("u");
  NodeHandle v = b.user("v");
  NodeHandle p = b.post("p", 1);
  NodeHandle c = b.comment("c", 2);
  b.authored(u, p, 1);
  b.authored(v, c, 2);
  b.reply(p, c, 2);
  b.follow(v, u, 3);
  Graph& g = b.graph();
  RemovalReport r = g.remove_node(NodeId::user("u"));
  EXPECT_EQ(r.nodes.size(), 3u);  // u, p, and c through the reply chain
  EXPECT_EQ(g.node_count(), 1u);
  EXPECT_TRUE(g.contains(v));
  EXPECT_EQ(g.edge_count(), 0u);
}

TEST(Graph, RemoveEdgeAndMissingTargets) {
  GraphBuilder b;
  NodeHandle u = b.user("u");
  NodeHandle v = b.user("v");
  EdgeRef f = b.follow(u, v, 1);
  Graph& g = b.graph();
  g.remove_edge(f);  // unfollow
  EXPECT_EQ(g.edge_count(), 0u);
  EXPECT_TRUE(g.edges_by_time(EdgeKind::kFollow).empty());
  EXPECT_EQ(code_of([&] { g.remove_edge(f); }), ErrorCode::kNotFound);
  EXPECT_EQ(code_of([&] { g.remove_node(NodeId::user("nobody")); }), ErrorCode::kNotFound);
}

TEST(Graph, TimeIndexesStaySorted) {
  GraphBuilder b;
  NodeHandle u = b.user("u");
  NodeHandle v = b.user("v");
  NodeHandle p = b.post("p", 0);
  std::vector<Timestamp> times{50, 10, 30, 10, 90, 0};
  for (std::size_t i = 0; i < times.size(); ++i) {
    b.graph().add_edge(EdgeKind::kVote, i < 3 ? u : v, p, times[i]);
  }
  const Graph& g = b.graph();
  auto idx = g.edges_by_time(EdgeKind::kVote);
  ASSERT_EQ(idx.size(), times.size());
  for (std::size_t i = 1; i < idx.size(); ++i) {
    const auto& a = g.edge(idx[i - 1]);
    const auto& c = g.edge(idx[i]);
    EXPECT_TRUE(a.time < c.time || (a.time == c.time && idx[i - 1] < idx[i]));
  }
  b.post("q", -5);
  b.post("r", 7);
  auto posts = g.nodes_by_created(NodeKind::kPost);
  EXPECT_EQ(g.node(posts.front()).id.key, "q");
  EXPECT_EQ(g.node(posts.back()).id.key, "r");
}

TEST(Graph, StructuralEqualityIgnoresInsertionOrder) {
  GraphBuilder a, b;
  NodeHandle au = a.user("u");
  NodeHandle ap = a.post("p", 1);
  a.vote(au, ap, 2);
  NodeHandle bp = b.post("p", 1);
  NodeHandle bu = b.user("u");
  b.vote(bu, bp, 2);
  EXPECT_TRUE(structurally_equal(a.graph(), b.graph()));
  b.vote(bu, bp, 3);
  EXPECT_FALSE(structurally_equal(a.graph(), b.graph()));
}

}  // namespace
}  // namespace dhg
