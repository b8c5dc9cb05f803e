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

#include "dhg/attributes.h"
#include "dhg/error.h"
#include "dhg/types.h"

namespace dhg {
namespace {

TEST(Types, KindNamesRoundTrip) {
  for (NodeKind k : kAllNodeKinds) EXPECT_EQ(parse_node_kind(to_string(k)), k);
  for (EdgeKind k : kAllEdgeKinds) EXPECT_EQ(parse_edge_kind(to_string(k)), k);
  EXPECT_FALSE(parse_node_kind("Post"));
  EXPECT_FALSE(parse_edge_kind(""));
}

TEST(Types, EdgeSchema) {
  using enum NodeKind;
  EXPECT_TRUE(edge_schema_allows(EdgeKind::kAuthored, kUser, kPost));
  EXPECT_TRUE(edge_schema_allows(EdgeKind::kAuthored, kUser, kComment));
  EXPECT_FALSE(edge_schema_allows(EdgeKind::kAuthored, kPost, kComment));
  EXPECT_TRUE(edge_schema_allows(EdgeKind::kReply, kPost, kComment));
  EXPECT_TRUE(edge_schema_allows(EdgeKind::kReply, kComment, kComment));
  EXPECT_FALSE(edge_schema_allows(EdgeKind::kReply, kComment, kPost));
  EXPECT_FALSE(edge_schema_allows(EdgeKind::kReply, kUser, kComment));
  EXPECT_TRUE(edge_schema_allows(EdgeKind::kVote, kUser, kComment));
  EXPECT_FALSE(edge_schema_allows(EdgeKind::kVote, kUser, kUser));
  EXPECT_TRUE(edge_schema_allows(EdgeKind::kFollow, kUser, kUser));
  EXPECT_FALSE(edge_schema_allows(EdgeKind::kFollow, kUser, kPost));
}

TEST(Types, TimeWindowIsInclusive) {
  TimeWindow w(10, 20);
  EXPECT_TRUE(w.contains(10));
  EXPECT_TRUE(w.contains(20));
  EXPECT_FALSE(w.contains(9));
  EXPECT_FALSE(w.contains(21));
  EXPECT_TRUE(TimeWindow(5, 5).contains(5));
  EXPECT_TRUE(TimeWindow(0, 30).covers(w));
  EXPECT_FALSE(TimeWindow(11, 30).covers(w));
}

TEST(Types, TimeWindowRejectsInvertedBounds) {
  try {
    TimeWindow(2, 1);
    FAIL() << "expected BadTimestamp";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBadTimestamp);
  }
}

TEST(Types, NodeIdOrdersByKindThenKey) {
  EXPECT_LT(NodeId::user("z"), NodeId::post("a"));
  EXPECT_LT(NodeId::post("a"), NodeId::post("b"));
  EXPECT_NE(NodeId::post("x"), NodeId::comment("x"));
  EXPECT_EQ(to_string(NodeId::comment("re-1")), "comment:re-1");
}

TEST(Types, ErrorMessageCarriesCodeName) {
  Error e(ErrorCode::kDuplicateParent, "c1");
  EXPECT_EQ(std::string(e.what()), "DuplicateParent: c1");
  EXPECT_EQ(to_string(ErrorCode::kFormatVersionMismatch), "FormatVersionMismatch");
}

TEST(Attributes, CoerceWidensAndNarrowsExactly) {
  EXPECT_EQ(coerce(AttrType::kDouble, AttrValue{std::int64_t{3}}), AttrValue{3.0});
  EXPECT_EQ(coerce(AttrType::kInt, AttrValue{4.0}), AttrValue{std::int64_t{4}});
  EXPECT_FALSE(coerce(AttrType::kInt, AttrValue{4.5}));
  EXPECT_FALSE(coerce(AttrType::kString, AttrValue{true}));
  EXPECT_FALSE(coerce(AttrType::kBool, AttrValue{std::int64_t{1}}));
  EXPECT_EQ(coerce(AttrType::kString, AttrValue{std::string("x")}), AttrValue{std::string("x")});
}

TEST(Attributes, SchemaSplitsStaticAndDynamic) {
  const AttrSpec* cat = find_node_attr(NodeKind::kPost, "category");
  ASSERT_NE(cat, nullptr);
  EXPECT_FALSE(cat->dynamic);
  const AttrSpec* payout = find_node_attr(NodeKind::kPost, "payout");
  ASSERT_NE(payout, nullptr);
  EXPECT_TRUE(payout->dynamic);
  EXPECT_EQ(payout->type, AttrType::kDouble);
  EXPECT_EQ(find_node_attr(NodeKind::kUser, "payout"), nullptr);
  EXPECT_NE(find_edge_attr(EdgeKind::kVote, "weight"), nullptr);
  EXPECT_EQ(find_edge_attr(EdgeKind::kFollow, "weight"), nullptr);
}

TEST(Attributes, DoublesFormatShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(142.047), "142.047");
  EXPECT_EQ(format_double(3.0), "3");
  for (double v : {1e-300, 2.5e17, 0.30000000000000004, -7.125}) {
    EXPECT_EQ(std::stod(format_double(v)), v);
  }
  EXPECT_EQ(format_value(AttrValue{true}), "true");
  EXPECT_EQ(format_value(AttrValue{std::int64_t{-5}}), "-5");
}

}  // namespace
}  // namespace dhg
