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
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dhg/attributes.h"
#include "dhg/graph.h"

namespace dhg {

enum class OpType : std::uint8_t { kComment, kVote, kFollow };

std::string_view to_string(OpType type);

/// Comment operation. Empty parent fields mark a new post; otherwise the
/// record replies to the post or comment named by parent_permlink.
struct CommentOp {
  std::string parent_author;
  std::string parent_permlink;
  std::string author;
  std::string permlink;
  std::optional<std::string> title;
  std::optional<std::string> body;
  std::optional<std::string> category;
  /// payout, net_rshares, abs_rshares, vote_rshares, author_rewards, author_reputation.
  AttrMap features;

  friend bool operator==(const CommentOp&, const CommentOp&) = default;
};

struct VoteOp {
  std::string voter;
  std::string author;
  std::string permlink;
  std::int64_t weight = 0;

  friend bool operator==(const VoteOp&, const VoteOp&) = default;
};

struct FollowOp {
  std::string follower;
  std::string following;

  friend bool operator==(const FollowOp&, const FollowOp&) = default;
};

struct OpRecord {
  Timestamp timestamp = 0;
  std::int64_t block_no = 0;
  std::variant<CommentOp, VoteOp, FollowOp> payload;

  OpType type() const { return static_cast<OpType>(payload.index()); }

  friend bool operator==(const OpRecord&, const OpRecord&) = default;
};

/// Feature keys a comment op may carry, in output order.
std::span<const std::string_view> comment_feature_keys();

/// Parses one JSONL line. Throws Error(kMalformedRecord).
OpRecord parse_op_line(std::string_view line);
/// Canonical single-line JSON (epoch timestamps, fixed key order, no newline).
std::string format_op_line(const OpRecord& op);
void write_ops(std::span<const OpRecord> ops, std::ostream& out);

enum class RejectReason : std::uint8_t {
  kMalformedRecord,
  kUnknownParentPermlink,
  kUnknownPermlink,
  kSchemaViolation,
};

std::string_view to_string(RejectReason reason);

struct Reject {
  std::size_t line_no = 0;
  RejectReason reason = RejectReason::kMalformedRecord;
  std::string detail;
};

/// ops_read == posts_created + comments_created + edits_applied +
///             votes_added + follows_added + rejects.size()
struct IngestReport {
  std::size_t ops_read = 0;
  std::size_t posts_created = 0;
  std::size_t comments_created = 0;
  std::size_t edits_applied = 0;
  std::size_t votes_added = 0;
  std::size_t follows_added = 0;
  std::size_t users_created = 0;
  std::vector<Reject> rejects;

  bool balanced() const {
    return ops_read ==
           posts_created + comments_created + edits_applied + votes_added + follows_added + rejects.size();
  }
};

std::string report_json(const IngestReport& report);

struct IngestResult {
  Graph graph;
  IngestReport report;
};

/// Reads a JSONL operation log. Records are applied in timestamp order,
/// ties in input order. Bad records are rejected and counted; ingestion never
/// aborts on data. Blank lines are skipped and not counted.
IngestResult parse_ops(std::istream& in);

/// Same as parse_ops over already-parsed records; line numbers are 1-based
/// positions in `ops`.
IngestResult ingest_ops(std::span<const OpRecord> ops);

}  // namespace dhg
