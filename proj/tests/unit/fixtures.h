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

#include <string>

#include "dhg/graph.h"

namespace dhg::testing {

/// Small builder for hand-made graphs in tests.
class GraphBuilder {
 public:
  NodeHandle user(const std::string& name, Timestamp joined = 0) {
    return g_.add_node({NodeId::user(name), joined, {}, {}});
  }
  NodeHandle post(const std::string& permlink, Timestamp created, const std::string& category = "",
                  std::optional<double> payout = std::nullopt) {
    NodeRecord rec{NodeId::post(permlink), created, {}, {}};
    if (!category.empty()) rec.static_attrs.emplace("category", category);
    if (payout) rec.dynamic_attrs["payout"].push_back({created, *payout});
    return g_.add_node(std::move(rec));
  }
  NodeHandle comment(const std::string& permlink, Timestamp created) {
    return g_.add_node({NodeId::comment(permlink), created, {}, {}});
  }
  EdgeRef authored(NodeHandle u, NodeHandle c, Timestamp t) { return g_.add_edge(EdgeKind::kAuthored, u, c, t); }
  EdgeRef reply(NodeHandle parent, NodeHandle c, Timestamp t) { return g_.add_edge(EdgeKind::kReply, parent, c, t); }
  EdgeRef vote(NodeHandle u, NodeHandle c, Timestamp t) { return g_.add_edge(EdgeKind::kVote, u, c, t); }
  EdgeRef follow(NodeHandle a, NodeHandle b, Timestamp t) { return g_.add_edge(EdgeKind::kFollow, a, b, t); }

  Graph& graph() { return g_; }

 private:
  Graph g_;
};

}  // namespace dhg::testing
