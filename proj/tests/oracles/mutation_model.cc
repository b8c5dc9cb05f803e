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


#include "mutation_model.h"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "dhg/error.h"
#include "dhg/graph.h"

namespace dhg::testing {
namespace {

struct ModelNode {
  NodeId id;
  Timestamp created = 0;
  Timestamp last_payout = 0;
  bool alive = true;
};

struct ModelEdge {
  EdgeKind kind;
  std::size_t src;
  std::size_t dst;
  Timestamp time;
  bool alive = true;
};

using EdgeKey = std::tuple<EdgeKind, NodeId, NodeId, Timestamp>;

class Model {
 public:
  std::vector<ModelNode> nodes;  // index == graph handle
  std::vector<ModelEdge> edges;  // index == graph ref

  std::optional<std::size_t> live_by_key(NodeKind kind, const std::string& key) const {
    const bool user = kind == NodeKind::kUser;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (nodes[i].alive && (nodes[i].id.kind == NodeKind::kUser) == user && nodes[i].id.key == key) return i;
    }
    return std::nullopt;
  }

  bool has_in(std::size_t dst, EdgeKind kind) const {
    return std::any_of(edges.begin(), edges.end(),
                       [&](const ModelEdge& e) { return e.alive && e.dst == dst && e.kind == kind; });
  }

  std::optional<ErrorCode> add_edge_error(EdgeKind kind, std::size_t s, std::size_t d, Timestamp t) const {
    if (!edge_schema_allows(kind, nodes[s].id.kind, nodes[d].id.kind)) return ErrorCode::kSchemaViolation;
    if (t < nodes[s].created || t < nodes[d].created) return ErrorCode::kTimeBeforeCreation;
    if (kind == EdgeKind::kAuthored && has_in(d, kind)) return ErrorCode::kDuplicateAuthor;
    if (kind == EdgeKind::kReply && has_in(d, kind)) return ErrorCode::kDuplicateParent;
    for (const ModelEdge& e : edges) {
      if (e.alive && e.kind == kind && e.src == s && e.dst == d && e.time == t) return ErrorCode::kDuplicateEdge;
    }
    return std::nullopt;
  }

  /// Root plus everything reachable over live authored/reply edges.
  std::set<std::size_t> closure(std::size_t root) const {
    std::set<std::size_t> out{root};
    for (bool grew = true; grew;) {
      grew = false;
      for (const ModelEdge& e : edges) {
        if (e.alive && (e.kind == EdgeKind::kAuthored || e.kind == EdgeKind::kReply) && out.count(e.src) &&
            !out.count(e.dst)) {
          out.insert(e.dst);
          grew = true;
        }
      }
    }
    return out;
  }
};

const std::vector<std::string> kKeys = {"a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k", "l"};

class Runner {
 public:
  explicit Runner(std::mt19937_64& rng) : rng_(rng) {}

  MutationOutcome run(std::size_t steps) {
    MutationOutcome out;
    for (std::size_t i = 0; i < steps && out.failure.empty(); ++i) {
      ++out.steps;
      std::optional<ErrorCode> expected, got;
      std::string what;
      step(expected, got, what);
      if (expected != got) {
        out.failure = "step " + std::to_string(i) + " " + what + ": expected " + code_name(expected) + ", got " +
                      code_name(got);
        break;
      }
      if (bad_report_) {
        out.failure = "step " + std::to_string(i) + " " + what + ": removal report differs from the model";
        break;
      }
      (got ? out.rejected : out.applied) += 1;
      out.failure = check();
      if (!out.failure.empty()) out.failure = "step " + std::to_string(i) + " " + what + ": " + out.failure;
    }
    return out;
  }

 private:
  static std::string code_name(const std::optional<ErrorCode>& c) {
    return c ? std::string(to_string(*c)) : std::string("success");
  }

  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  Timestamp time(Timestamp hi) { return std::uniform_int_distribution<Timestamp>(0, hi)(rng_); }

  template <typename F>
  std::optional<ErrorCode> attempt(F&& f) {
    try {
      f();
      return std::nullopt;
    } catch (const Error& e) {
      return e.code();
    }
  }

  std::optional<std::size_t> random_live_node() {
    std::vector<std::size_t> live;
    for (std::size_t i = 0; i < m_.nodes.size(); ++i) {
      if (m_.nodes[i].alive) live.push_back(i);
    }
    if (live.empty()) return std::nullopt;
    return live[pick(live.size())];
  }

  void step(std::optional<ErrorCode>& expected, std::optional<ErrorCode>& got, std::string& what) {
    const std::size_t op = pick(20);
    if (op < 5 || m_.nodes.empty()) {
      const auto kind = static_cast<NodeKind>(pick(kNumNodeKinds));
      NodeId id{kind, kKeys[pick(kKeys.size())]};
      const Timestamp created = time(100);
      what = "add_node " + to_string(id);
      if (m_.live_by_key(kind, id.key)) expected = ErrorCode::kDuplicateId;
      got = attempt([&] {
        NodeHandle h = g_.add_node({id, created, {}, {}});
        if (index_of(h) != m_.nodes.size()) throw std::logic_error("unexpected handle");
        m_.nodes.push_back({id, created, created, true});
      });
    } else if (op < 14) {
      auto s = random_live_node(), d = random_live_node();
      if (!s || !d) return;
      const auto kind = static_cast<EdgeKind>(pick(kNumEdgeKinds));
      const Timestamp t = time(130);
      what = std::string("add_edge ") + std::string(to_string(kind)) + " " + to_string(m_.nodes[*s].id) + "->" +
             to_string(m_.nodes[*d].id) + "@" + std::to_string(t);
      expected = m_.add_edge_error(kind, *s, *d, t);
      got = attempt([&] {
        EdgeRef e = g_.add_edge(kind, static_cast<NodeHandle>(*s), static_cast<NodeHandle>(*d), t);
        if (index_of(e) != m_.edges.size()) throw std::logic_error("unexpected ref");
        m_.edges.push_back({kind, *s, *d, t, true});
      });
    } else if (op < 16) {
      auto n = random_live_node();
      if (!n) return;
      ModelNode& mn = m_.nodes[*n];
      const Timestamp at = time(130);
      what = "modify " + to_string(mn.id) + "@" + std::to_string(at);
      if (!is_content(mn.id.kind)) {
        expected = ErrorCode::kInvalidAttribute;
      } else if (at < mn.last_payout) {
        expected = ErrorCode::kNonMonotonicRevision;
      }
      got = attempt([&] { g_.modify_node(mn.id, "payout", AttrValue{1.0}, at); });
      if (!got) mn.last_payout = at;
    } else if (op < 18) {
      // Sometimes names a node that is not there.
      const auto kind = static_cast<NodeKind>(pick(kNumNodeKinds));
      NodeId id{kind, kKeys[pick(kKeys.size())]};
      auto live = m_.live_by_key(kind, id.key);
      if (live && m_.nodes[*live].id.kind != kind) live.reset();
      what = "remove_node " + to_string(id);
      if (!live) {
        expected = ErrorCode::kNotFound;
        got = attempt([&] { g_.remove_node(id); });
        return;
      }
      const std::set<std::size_t> doomed = m_.closure(*live);
      RemovalReport rep;
      got = attempt([&] { rep = g_.remove_node(id); });
      if (got) return;
      std::set<EdgeRef> expected_edges;
      for (std::size_t i = 0; i < m_.edges.size(); ++i) {
        ModelEdge& e = m_.edges[i];
        if (e.alive && (doomed.count(e.src) || doomed.count(e.dst))) {
          e.alive = false;
          expected_edges.insert(static_cast<EdgeRef>(i));
        }
      }
      std::set<NodeId> expected_ids;
      for (std::size_t i : doomed) {
        m_.nodes[i].alive = false;
        expected_ids.insert(m_.nodes[i].id);
      }
      if (std::set<EdgeRef>(rep.edges.begin(), rep.edges.end()) != expected_edges ||
          std::set<NodeId>(rep.nodes.begin(), rep.nodes.end()) != expected_ids ||
          rep.nodes.size() != expected_ids.size() || rep.edges.size() != expected_edges.size()) {
        bad_report_ = true;
      }
    } else {
      if (m_.edges.empty()) return;
      const std::size_t i = pick(m_.edges.size());
      what = "remove_edge " + std::to_string(i);
      if (!m_.edges[i].alive) expected = ErrorCode::kNotFound;
      got = attempt([&] { g_.remove_edge(static_cast<EdgeRef>(i)); });
      if (!got) m_.edges[i].alive = false;
    }
  }

  std::string check() const {
    // Node set and lookups.
    std::array<std::vector<NodeHandle>, kNumNodeKinds> by_kind;
    std::size_t live_nodes = 0;
    for (std::size_t i = 0; i < m_.nodes.size(); ++i) {
      const ModelNode& n = m_.nodes[i];
      const auto h = static_cast<NodeHandle>(i);
      if (g_.contains(h) != n.alive) return "liveness differs for " + to_string(n.id);
      if (!n.alive) continue;
      ++live_nodes;
      by_kind[index_of(n.id.kind)].push_back(h);
      if (g_.find(n.id) != h) return "find() misses " + to_string(n.id);
    }
    if (g_.node_count() != live_nodes) return "node_count differs";

    for (NodeKind k : kAllNodeKinds) {
      auto span = g_.nodes_of_kind(k);
      if (!std::equal(span.begin(), span.end(), by_kind[index_of(k)].begin(), by_kind[index_of(k)].end())) {
        return "nodes_of_kind differs";
      }
      std::vector<NodeHandle> by_created = by_kind[index_of(k)];
      std::stable_sort(by_created.begin(), by_created.end(), [&](NodeHandle a, NodeHandle b) {
        return m_.nodes[index_of(a)].created < m_.nodes[index_of(b)].created;
      });
      auto idx = g_.nodes_by_created(k);
      if (!std::equal(idx.begin(), idx.end(), by_created.begin(), by_created.end())) return "nodes_by_created differs";
    }

    // Edge set, schema and adjacency.
    std::array<std::vector<EdgeRef>, kNumEdgeKinds> by_time;
    std::map<std::pair<std::size_t, EdgeKind>, std::vector<EdgeRef>> out, in;
    std::size_t live_edges = 0;
    for (std::size_t i = 0; i < m_.edges.size(); ++i) {
      const ModelEdge& e = m_.edges[i];
      const auto ref = static_cast<EdgeRef>(i);
      if (g_.contains(ref) != e.alive) return "edge liveness differs at " + std::to_string(i);
      if (!e.alive) continue;
      ++live_edges;
      if (!m_.nodes[e.src].alive || !m_.nodes[e.dst].alive) return "live edge with a dead endpoint";
      const StoredEdge& se = g_.edge(ref);
      if (se.kind != e.kind || index_of(se.src) != e.src || index_of(se.dst) != e.dst || se.time != e.time) {
        return "edge contents differ";
      }
      if (!edge_schema_allows(se.kind, g_.kind(se.src), g_.kind(se.dst))) return "schema violated";
      by_time[index_of(e.kind)].push_back(ref);
      out[{e.src, e.kind}].push_back(ref);
      in[{e.dst, e.kind}].push_back(ref);
    }
    if (g_.edge_count() != live_edges) return "edge_count differs";
    for (EdgeKind k : kAllEdgeKinds) {
      auto& expected = by_time[index_of(k)];
      std::stable_sort(expected.begin(), expected.end(), [&](EdgeRef a, EdgeRef b) {
        return m_.edges[index_of(a)].time < m_.edges[index_of(b)].time;
      });
      auto idx = g_.edges_by_time(k);
      if (!std::equal(idx.begin(), idx.end(), expected.begin(), expected.end())) {
        return "edges_by_time differs for " + std::string(to_string(k));
      }
    }
    for (std::size_t i = 0; i < m_.nodes.size(); ++i) {
      if (!m_.nodes[i].alive) continue;
      const auto h = static_cast<NodeHandle>(i);
      for (EdgeKind k : kAllEdgeKinds) {
        std::vector<EdgeRef> o(g_.out_edges(h, k).begin(), g_.out_edges(h, k).end());
        std::vector<EdgeRef> n(g_.in_edges(h, k).begin(), g_.in_edges(h, k).end());
        std::sort(o.begin(), o.end());
        std::sort(n.begin(), n.end());
        if (o != out[{i, k}] || n != in[{i, k}]) return "adjacency differs at " + to_string(m_.nodes[i].id);
      }
      // At most one author and one parent per content node.
      if (g_.in_edges(h, EdgeKind::kAuthored).size() > 1 || g_.in_edges(h, EdgeKind::kReply).size() > 1) {
        return "content with two authors or parents";
      }
    }
    return {};
  }

  std::mt19937_64& rng_;
  Graph g_;
  Model m_;
  bool bad_report_ = false;
};

}  // namespace

MutationOutcome run_mutation_sequence(std::mt19937_64& rng, std::size_t steps) { return Runner(rng).run(steps); }

}  // namespace dhg::testing
