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


#include "dhg/types.h"

#include "dhg/error.h"

namespace dhg {

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::kUser:
      return "user";
    case NodeKind::kPost:
      return "post";
    case NodeKind::kComment:
      return "comment";
  }
  return "?";
}

std::string_view to_string(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::kAuthored:
      return "authored";
    case EdgeKind::kReply:
      return "reply";
    case EdgeKind::kVote:
      return "vote";
    case EdgeKind::kFollow:
      return "follow";
  }
  return "?";
}

std::optional<NodeKind> parse_node_kind(std::string_view s) {
  for (NodeKind k : kAllNodeKinds) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

std::optional<EdgeKind> parse_edge_kind(std::string_view s) {
  for (EdgeKind k : kAllEdgeKinds) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

std::string to_string(const NodeId& id) {
  std::string out(to_string(id.kind));
  out += ':';
  out += id.key;
  return out;
}

TimeWindow::TimeWindow(Timestamp t1, Timestamp t2) : t1_(t1), t2_(t2) {
  if (t1 > t2) {
    throw Error(ErrorCode::kBadTimestamp, "window start " + std::to_string(t1) + " is after end " + std::to_string(t2));
  }
}

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDuplicateId:
      return "DuplicateId";
    case ErrorCode::kInvalidAttribute:
      return "InvalidAttribute";
    case ErrorCode::kMissingEndpoint:
      return "MissingEndpoint";
    case ErrorCode::kSchemaViolation:
      return "SchemaViolation";
    case ErrorCode::kTimeBeforeCreation:
      return "TimeBeforeCreation";
    case ErrorCode::kDuplicateAuthor:
      return "DuplicateAuthor";
    case ErrorCode::kDuplicateParent:
      return "DuplicateParent";
    case ErrorCode::kDuplicateEdge:
      return "DuplicateEdge";
    case ErrorCode::kNotFound:
      return "NotFound";
    case ErrorCode::kWrongKind:
      return "WrongKind";
    case ErrorCode::kStaticAttributeImmutable:
      return "StaticAttributeImmutable";
    case ErrorCode::kNonMonotonicRevision:
      return "NonMonotonicRevision";
    case ErrorCode::kBadTimestamp:
      return "BadTimestamp";
    case ErrorCode::kMalformedRecord:
      return "MalformedRecord";
    case ErrorCode::kInvalidConfig:
      return "InvalidConfig";
    case ErrorCode::kInvalidScheme:
      return "InvalidScheme";
    case ErrorCode::kIoError:
      return "IoError";
    case ErrorCode::kFormatError:
      return "FormatError";
    case ErrorCode::kFormatVersionMismatch:
      return "FormatVersionMismatch";
  }
  return "UnknownError";
}

}  // namespace dhg
