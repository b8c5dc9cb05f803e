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

#include <cstddef>
#include <string_view>
#include <vector>

#include "dhg/graph.h"
#include "dhg/subgraph.h"
#include "dhg/table.h"

namespace dhg {

struct WindowOptions {
  /// Also retain posts/comments created inside the window that have no
  /// in-window vote/authored/reply edge. Off by default: the result is the
  /// edge-induced subgraph of the qualifying edges.
  bool keep_isolated_in_window = false;
};

/// Candidate nodes are every user plus the posts and comments created in
/// [t1, t2]. The result keeps the vote, authored and reply edges whose time
/// lies in [t1, t2] and whose endpoints are both candidates, together with
/// exactly the endpoints of those edges. Follow edges never appear.
///
/// Runs in O(log m + k) over the per-kind time indexes, where k is the number
/// of edges inside the window.
Subgraph time_window_subgraph(const Graph& g, const TimeWindow& window, const WindowOptions& options = {});

/// Posts of `sub` whose static category equals `category` (exact,
/// case-sensitive), plus their voters, authors and direct reply comments,
/// plus the voters and authors of those comments. The result is the subgraph
/// of `sub` induced on that node set.
Subgraph category_subgraph(const Subgraph& sub, std::string_view category);

struct PostCount {
  NodeHandle post{};
  std::size_t count = 0;

  friend bool operator==(const PostCount&, const PostCount&) = default;
};

/// Both lists cover every post of the subgraph, sorted by count descending,
/// then by permlink ascending.
struct RankedPosts {
  std::vector<PostCount> comments_sorted;
  std::vector<PostCount> votes_sorted;
};

/// comment count = reply edges leaving the post inside `sub`;
/// vote count = vote edges entering the post inside `sub`. Raw counts.
RankedPosts rank_posts_by_engagement(const Subgraph& sub);

struct UserActivity {
  NodeHandle user{};
  std::size_t total = 0;
  std::size_t cast_votes = 0;
  std::size_t written = 0;

  friend bool operator==(const UserActivity&, const UserActivity&) = default;
};

/// Users of `sub` by out-degree inside `sub`, descending, ties by username.
/// total == cast_votes + written for subgraphs from time_window_subgraph.
std::vector<UserActivity> rank_users_by_activity(const Subgraph& sub);

// Result tables, column order fixed for CSV/JSON output.

/// kind, src_kind, src, dst_kind, dst, time
Table subgraph_edge_table(const Subgraph& sub);
/// kind, id, created
Table subgraph_node_table(const Subgraph& sub);
/// permlink, title, payout, comments, votes; ordered as comments_sorted.
Table engagement_table(const Subgraph& sub, const RankedPosts& ranked);
/// username, cast_votes, written, total
Table activity_table(const Subgraph& sub, const std::vector<UserActivity>& activity);

}  // namespace dhg
