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


#include "dhg/snapshot.h"

#include <fstream>
#include <sstream>

#include "dhg/error.h"
#include <nlohmann/json.hpp>

namespace dhg {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr std::string_view kMagic = "DHGSNAP";

ordered_json value_json(const AttrValue& v) {
  return std::visit([](const auto& x) { return ordered_json(x); }, v);
}

AttrValue value_from_json(const json& j) {
  if (j.is_boolean()) return j.get<bool>();
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_number_float()) return j.get<double>();
  if (j.is_string()) return j.get<std::string>();
  throw Error(ErrorCode::kFormatError, "unsupported attribute value " + j.dump());
}

ordered_json id_json(const NodeId& id) { return ordered_json::array({std::string(to_string(id.kind)), id.key}); }

NodeId id_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_string()) {
    throw Error(ErrorCode::kFormatError, "bad node reference " + j.dump());
  }
  auto kind = parse_node_kind(j[0].get<std::string>());
  if (!kind) throw Error(ErrorCode::kFormatError, "bad node kind " + j[0].dump());
  return NodeId{*kind, j[1].get<std::string>()};
}

AttrMap attrs_from_json(const json& j) {
  AttrMap out;
  for (const auto& [key, value] : j.items()) out.emplace(key, value_from_json(value));
  return out;
}

json parse_line(std::istream& in, const char* what) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kFormatError, std::string("truncated snapshot: missing ") + what);
  try {
    return json::parse(line);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kFormatError, std::string("bad ") + what + ": " + e.what());
  }
}

}  // namespace

void write_snapshot(const Graph& g, std::ostream& out) {
  out << kMagic << ' ' << kSnapshotVersion << '\n';
  out << ordered_json{{"nodes", g.node_count()}, {"edges", g.edge_count()}}.dump() << '\n';
  for (NodeHandle h : g.node_handles()) {
    const NodeRecord& rec = g.node(h);
    ordered_json line;
    line["kind"] = std::string(to_string(rec.id.kind));
    line["key"] = rec.id.key;
    line["created"] = rec.created;
    ordered_json stat = ordered_json::object();
    for (const auto& [key, value] : rec.static_attrs) stat[key] = value_json(value);
    line["static"] = std::move(stat);
    ordered_json dyn = ordered_json::object();
    for (const auto& [key, revisions] : rec.dynamic_attrs) {
      ordered_json list = ordered_json::array();
      for (const Revision& r : revisions) list.push_back(ordered_json::array({r.time, value_json(r.value)}));
      dyn[key] = std::move(list);
    }
    line["dynamic"] = std::move(dyn);
    out << line.dump() << '\n';
  }
  for (EdgeRef e : g.edge_refs()) {
    const StoredEdge& se = g.edge(e);
    ordered_json line;
    line["kind"] = std::string(to_string(se.kind));
    line["src"] = id_json(g.node(se.src).id);
    line["dst"] = id_json(g.node(se.dst).id);
    line["time"] = se.time;
    ordered_json attrs = ordered_json::object();
    for (const auto& [key, value] : se.attrs) attrs[key] = value_json(value);
    line["attrs"] = std::move(attrs);
    out << line.dump() << '\n';
  }
}

Graph read_snapshot(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw Error(ErrorCode::kFormatError, "empty snapshot");
  std::istringstream hs(header);
  std::string magic;
  int version = -1;
  hs >> magic >> version;
  if (magic != kMagic) throw Error(ErrorCode::kFormatError, "not a snapshot (bad magic '" + magic + "')");
  if (version != kSnapshotVersion) {
    throw Error(ErrorCode::kFormatVersionMismatch,
                "snapshot version " + std::to_string(version) + ", expected " + std::to_string(kSnapshotVersion));
  }

  const json counts = parse_line(in, "counts");
  std::size_t n_nodes = 0, n_edges = 0;
  try {
    n_nodes = counts.at("nodes").get<std::size_t>();
    n_edges = counts.at("edges").get<std::size_t>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kFormatError, std::string("bad counts line: ") + e.what());
  }

  Graph g;
  try {
    for (std::size_t i = 0; i < n_nodes; ++i) {
      const json line = parse_line(in, "node");
      auto kind = parse_node_kind(line.at("kind").get<std::string>());
      if (!kind) throw Error(ErrorCode::kFormatError, "bad node kind in " + line.dump());
      NodeRecord rec{NodeId{*kind, line.at("key").get<std::string>()}, line.at("created").get<Timestamp>(),
                     attrs_from_json(line.at("static")), {}};
      for (const auto& [key, list] : line.at("dynamic").items()) {
        auto& revisions = rec.dynamic_attrs[key];
        for (const auto& r : list) revisions.push_back(Revision{r.at(0).get<Timestamp>(), value_from_json(r.at(1))});
      }
      g.add_node(std::move(rec));
    }
    for (std::size_t i = 0; i < n_edges; ++i) {
      const json line = parse_line(in, "edge");
      auto kind = parse_edge_kind(line.at("kind").get<std::string>());
      if (!kind) throw Error(ErrorCode::kFormatError, "bad edge kind in " + line.dump());
      g.add_edge(EdgeRecord{*kind, id_from_json(line.at("src")), id_from_json(line.at("dst")),
                            line.at("time").get<Timestamp>(), attrs_from_json(line.at("attrs"))});
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kFormatError, e.what());
  }
  std::string trailing;
  while (std::getline(in, trailing)) {
    if (!trailing.empty()) throw Error(ErrorCode::kFormatError, "trailing data after declared records");
  }
  return g;
}

void save_graph(const Graph& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot open " + path.string() + " for writing");
  write_snapshot(g, out);
  out.flush();
  if (!out) throw Error(ErrorCode::kIoError, "write failed for " + path.string());
}

Graph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  return read_snapshot(in);
}

std::string snapshot_string(const Graph& g) {
  std::ostringstream out;
  write_snapshot(g, out);
  return out.str();
}

std::uint64_t structural_hash(const Graph& g) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : snapshot_string(g)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace dhg
