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


#include "dhg/ingest.h"

#include <algorithm>
#include <array>
#include <istream>
#include <numeric>
#include <ostream>

#include "dhg/error.h"
#include "dhg/timestamp.h"
#include <nlohmann/json.hpp>

namespace dhg {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr std::array<std::string_view, 6> kFeatureKeys = {
    "payout", "net_rshares", "abs_rshares", "vote_rshares", "author_rewards", "author_reputation",
};

[[noreturn]] void malformed(const std::string& detail) { throw Error(ErrorCode::kMalformedRecord, detail); }

std::string required_string(const json& obj, const char* key, bool allow_empty = false) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) malformed(std::string("missing string field '") + key + "'");
  std::string value = it->get<std::string>();
  if (!allow_empty && value.empty()) malformed(std::string("empty field '") + key + "'");
  return value;
}

std::optional<std::string> optional_string(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) malformed(std::string("field '") + key + "' must be a string");
  return it->get<std::string>();
}

Timestamp read_timestamp(const json& obj) {
  auto it = obj.find("timestamp");
  if (it == obj.end()) malformed("missing 'timestamp'");
  Timestamp t = 0;
  if (it->is_number_integer()) {
    t = it->get<Timestamp>();
  } else if (it->is_string()) {
    try {
      t = parse_timestamp(it->get<std::string>());
    } catch (const Error& e) {
      malformed(e.what());
    }
  } else {
    malformed("'timestamp' must be epoch seconds or an ISO-8601 string");
  }
  if (t < 0) malformed("negative timestamp");
  return t;
}

CommentOp read_comment(const json& obj) {
  CommentOp op;
  op.parent_author = required_string(obj, "parent_author", true);
  op.parent_permlink = required_string(obj, "parent_permlink", true);
  op.author = required_string(obj, "author");
  op.permlink = required_string(obj, "permlink");
  if (op.parent_author.empty() != op.parent_permlink.empty()) {
    malformed("parent_author and parent_permlink must be both empty or both set");
  }
  op.title = optional_string(obj, "title");
  op.body = optional_string(obj, "body");
  op.category = optional_string(obj, "category");
  for (std::string_view key : kFeatureKeys) {
    auto it = obj.find(std::string(key));
    if (it == obj.end() || it->is_null()) continue;
    AttrValue raw;
    if (it->is_number_integer()) {
      raw = it->get<std::int64_t>();
    } else if (it->is_number_float()) {
      raw = it->get<double>();
    } else {
      malformed("feature '" + std::string(key) + "' must be numeric");
    }
    const AttrSpec* spec = find_node_attr(NodeKind::kPost, key);
    auto coerced = coerce(spec->type, raw);
    if (!coerced) malformed("feature '" + std::string(key) + "' expects " + std::string(to_string(spec->type)));
    op.features.emplace(std::string(key), *std::move(coerced));
  }
  return op;
}

struct Applier {
  Graph& g;
  IngestReport& report;

  NodeHandle user(const std::string& name, Timestamp t) {
    if (auto h = g.find_user(name)) return *h;
    ++report.users_created;
    return g.add_node(NodeRecord{NodeId::user(name), t, {}, {}});
  }

  std::optional<std::string> author_of(NodeHandle content) const {
    auto in = g.in_edges(content, EdgeKind::kAuthored);
    if (in.empty()) return std::nullopt;
    return g.node(g.edge(in.front()).src).id.key;
  }

  void reject(std::size_t line, RejectReason reason, std::string detail) {
    report.rejects.push_back(Reject{line, reason, std::move(detail)});
  }

  void apply(const OpRecord& op, std::size_t line) {
    try {
      std::visit([&](const auto& payload) { apply(payload, op.timestamp, line); }, op.payload);
    } catch (const Error& e) {
      reject(line, RejectReason::kSchemaViolation, e.what());
    }
  }

  void apply(const CommentOp& op, Timestamp t, std::size_t line) {
    if (auto existing = g.find_content(op.permlink)) {
      if (author_of(*existing) != op.author) {
        reject(line, RejectReason::kSchemaViolation, "permlink '" + op.permlink + "' belongs to another author");
        return;
      }
      // Re-seen (author, permlink): an edit. Static fields (category) stay as first written.
      if (op.title) g.modify_node(*existing, "title", *op.title, t);
      if (op.body) g.modify_node(*existing, "body", *op.body, t);
      for (const auto& [key, value] : op.features) g.modify_node(*existing, key, value, t);
      g.modify_node(*existing, "last_update", std::int64_t{t}, t);
      ++report.edits_applied;
      return;
    }

    const bool is_post = op.parent_permlink.empty();
    std::optional<NodeHandle> parent;
    if (!is_post) {
      parent = g.find_content(op.parent_permlink);
      if (!parent) {
        reject(line, RejectReason::kUnknownParentPermlink, op.parent_permlink);
        return;
      }
      if (author_of(*parent) != op.parent_author) {
        reject(line, RejectReason::kSchemaViolation,
               "parent '" + op.parent_permlink + "' is not authored by '" + op.parent_author + "'");
        return;
      }
    }

    NodeRecord rec{is_post ? NodeId::post(op.permlink) : NodeId::comment(op.permlink), t, {}, {}};
    rec.static_attrs.emplace("author_name", op.author);
    if (op.category) rec.static_attrs.emplace("category", *op.category);
    if (op.title) rec.dynamic_attrs["title"].push_back(Revision{t, *op.title});
    if (op.body) rec.dynamic_attrs["body"].push_back(Revision{t, *op.body});
    for (const auto& [key, value] : op.features) rec.dynamic_attrs[key].push_back(Revision{t, value});

    const NodeHandle author = user(op.author, t);
    const NodeHandle content = g.add_node(std::move(rec));
    g.add_edge(EdgeKind::kAuthored, author, content, t);
    if (parent) {
      g.add_edge(EdgeKind::kReply, *parent, content, t);
      ++report.comments_created;
    } else {
      ++report.posts_created;
    }
  }

  void apply(const VoteOp& op, Timestamp t, std::size_t line) {
    auto target = g.find_content(op.permlink);
    if (!target) {
      reject(line, RejectReason::kUnknownPermlink, op.permlink);
      return;
    }
    if (author_of(*target) != op.author) {
      reject(line, RejectReason::kSchemaViolation,
             "vote target '" + op.permlink + "' is not authored by '" + op.author + "'");
      return;
    }
    const NodeHandle voter = user(op.voter, t);
    g.add_edge(EdgeKind::kVote, voter, *target, t, AttrMap{{"weight", op.weight}});
    ++report.votes_added;
  }

  void apply(const FollowOp& op, Timestamp t, std::size_t line) {
    if (op.follower == op.following) {
      reject(line, RejectReason::kSchemaViolation, "self-follow by '" + op.follower + "'");
      return;
    }
    const NodeHandle follower = user(op.follower, t);
    const NodeHandle following = user(op.following, t);
    g.add_edge(EdgeKind::kFollow, follower, following, t);
    ++report.follows_added;
  }
};

struct Pending {
  std::size_t line;
  const OpRecord* op;
};

IngestResult apply_all(std::vector<Pending> pending, IngestReport report) {
  std::stable_sort(pending.begin(), pending.end(),
                   [](const Pending& a, const Pending& b) { return a.op->timestamp < b.op->timestamp; });
  IngestResult result{Graph{}, std::move(report)};
  Applier applier{result.graph, result.report};
  for (const Pending& p : pending) applier.apply(*p.op, p.line);
  std::stable_sort(result.report.rejects.begin(), result.report.rejects.end(),
                   [](const Reject& a, const Reject& b) { return a.line_no < b.line_no; });
  return result;
}

}  // namespace

std::string_view to_string(OpType type) {
  switch (type) {
    case OpType::kComment:
      return "comment";
    case OpType::kVote:
      return "vote";
    case OpType::kFollow:
      return "follow";
  }
  return "?";
}

std::string_view to_string(RejectReason reason) {
  switch (reason) {
    case RejectReason::kMalformedRecord:
      return "MalformedRecord";
    case RejectReason::kUnknownParentPermlink:
      return "UnknownParentPermlink";
    case RejectReason::kUnknownPermlink:
      return "UnknownPermlink";
    case RejectReason::kSchemaViolation:
      return "SchemaViolation";
  }
  return "?";
}

std::span<const std::string_view> comment_feature_keys() { return kFeatureKeys; }

OpRecord parse_op_line(std::string_view line) {
  json obj;
  try {
    obj = json::parse(line);
  } catch (const json::exception& e) {
    malformed(std::string("invalid JSON: ") + e.what());
  }
  if (!obj.is_object()) malformed("record is not a JSON object");

  OpRecord rec;
  const std::string op = required_string(obj, "op");
  rec.timestamp = read_timestamp(obj);
  if (auto it = obj.find("block_no"); it != obj.end() && !it->is_null()) {
    if (!it->is_number_integer()) malformed("'block_no' must be an integer");
    rec.block_no = it->get<std::int64_t>();
  }

  if (op == "comment") {
    rec.payload = read_comment(obj);
  } else if (op == "vote") {
    VoteOp v;
    v.voter = required_string(obj, "voter");
    v.author = required_string(obj, "author");
    v.permlink = required_string(obj, "permlink");
    auto it = obj.find("weight");
    if (it != obj.end() && !it->is_null()) {
      if (!it->is_number_integer()) malformed("'weight' must be an integer");
      v.weight = it->get<std::int64_t>();
    }
    rec.payload = std::move(v);
  } else if (op == "follow") {
    rec.payload = FollowOp{required_string(obj, "follower"), required_string(obj, "following")};
  } else {
    malformed("unknown op '" + op + "'");
  }
  return rec;
}

std::string format_op_line(const OpRecord& rec) {
  ordered_json obj;
  obj["op"] = std::string(to_string(rec.type()));
  obj["timestamp"] = rec.timestamp;
  obj["block_no"] = rec.block_no;
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, CommentOp>) {
          obj["parent_author"] = p.parent_author;
          obj["parent_permlink"] = p.parent_permlink;
          obj["author"] = p.author;
          obj["permlink"] = p.permlink;
          if (p.title) obj["title"] = *p.title;
          if (p.body) obj["body"] = *p.body;
          if (p.category) obj["category"] = *p.category;
          for (std::string_view key : kFeatureKeys) {
            auto it = p.features.find(key);
            if (it == p.features.end()) continue;
            std::visit([&](const auto& v) { obj[std::string(key)] = v; }, it->second);
          }
        } else if constexpr (std::is_same_v<T, VoteOp>) {
          obj["voter"] = p.voter;
          obj["author"] = p.author;
          obj["permlink"] = p.permlink;
          obj["weight"] = p.weight;
        } else {
          obj["follower"] = p.follower;
          obj["following"] = p.following;
        }
      },
      rec.payload);
  return obj.dump();
}

void write_ops(std::span<const OpRecord> ops, std::ostream& out) {
  for (const OpRecord& op : ops) out << format_op_line(op) << '\n';
}

std::string report_json(const IngestReport& r) {
  ordered_json obj;
  obj["ops_read"] = r.ops_read;
  obj["posts_created"] = r.posts_created;
  obj["comments_created"] = r.comments_created;
  obj["edits_applied"] = r.edits_applied;
  obj["votes_added"] = r.votes_added;
  obj["follows_added"] = r.follows_added;
  obj["users_created"] = r.users_created;
  obj["rejected"] = r.rejects.size();
  ordered_json rejects = ordered_json::array();
  for (const Reject& rej : r.rejects) {
    rejects.push_back(ordered_json{{"line", rej.line_no}, {"reason", std::string(to_string(rej.reason))},
                                   {"detail", rej.detail}});
  }
  obj["rejects"] = std::move(rejects);
  return obj.dump();
}

IngestResult parse_ops(std::istream& in) {
  IngestReport report;
  std::vector<OpRecord> records;
  std::vector<std::size_t> lines;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ++report.ops_read;
    try {
      records.push_back(parse_op_line(line));
      lines.push_back(line_no);
    } catch (const Error& e) {
      report.rejects.push_back(Reject{line_no, RejectReason::kMalformedRecord, e.what()});
    }
  }
  std::vector<Pending> pending;
  pending.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) pending.push_back(Pending{lines[i], &records[i]});
  return apply_all(std::move(pending), std::move(report));
}

IngestResult ingest_ops(std::span<const OpRecord> ops) {
  IngestReport report;
  report.ops_read = ops.size();
  std::vector<Pending> pending;
  pending.reserve(ops.size());
  for (std::size_t i = 0; i < ops.size(); ++i) pending.push_back(Pending{i + 1, &ops[i]});
  return apply_all(std::move(pending), std::move(report));
}

}  // namespace dhg
