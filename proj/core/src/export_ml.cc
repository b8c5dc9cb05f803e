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


#include "dhg/export_ml.h"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <system_error>
#include <unordered_set>

#include "dhg/error.h"
#include "dhg/queries.h"
#include "dhg/table.h"
#include <nlohmann/json.hpp>

namespace dhg {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr std::string_view kFeatureKeys[] = {"net_rshares", "abs_rshares", "vote_rshares", "author_rewards",
                                             "author_reputation"};

constexpr BundleEdgeType kEdgeTypes[] = {
    {"edges_user_authored_post.csv", EdgeKind::kAuthored, NodeKind::kUser, NodeKind::kPost},
    {"edges_user_authored_comment.csv", EdgeKind::kAuthored, NodeKind::kUser, NodeKind::kComment},
    {"edges_post_reply_comment.csv", EdgeKind::kReply, NodeKind::kPost, NodeKind::kComment},
    {"edges_comment_reply_comment.csv", EdgeKind::kReply, NodeKind::kComment, NodeKind::kComment},
    {"edges_user_vote_post.csv", EdgeKind::kVote, NodeKind::kUser, NodeKind::kPost},
    {"edges_user_vote_comment.csv", EdgeKind::kVote, NodeKind::kUser, NodeKind::kComment},
};

[[noreturn]] void bad_scheme(const std::string& detail) { throw Error(ErrorCode::kInvalidScheme, detail); }

std::optional<double> payout_of(const NodeRecord& rec) {
  const AttrValue* v = rec.get("payout");
  if (v == nullptr) return std::nullopt;
  if (const auto* d = std::get_if<double>(v)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(v)) return static_cast<double>(*i);
  return std::nullopt;
}

Cell feature_cell(const NodeRecord& rec, std::string_view key) {
  const AttrValue* v = rec.get(key);
  if (v == nullptr) return std::monostate{};
  return std::visit(
      [](const auto& x) -> Cell {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, bool>) {
          return std::int64_t{x ? 1 : 0};
        } else {
          return x;
        }
      },
      *v);
}

std::string to_hex(const unsigned char* data, unsigned len) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned i = 0; i < len; ++i) {
    out += kDigits[data[i] >> 4];
    out += kDigits[data[i] & 0xf];
  }
  return out;
}

class Sha256 {
 public:
  Sha256() : ctx_(EVP_MD_CTX_new()) {
    if (ctx_ == nullptr || EVP_DigestInit_ex(ctx_, EVP_sha256(), nullptr) != 1) {
      EVP_MD_CTX_free(ctx_);
      throw Error(ErrorCode::kIoError, "SHA-256 unavailable");
    }
  }
  Sha256(const Sha256&) = delete;
  Sha256& operator=(const Sha256&) = delete;
  ~Sha256() { EVP_MD_CTX_free(ctx_); }

  void update(const void* data, std::size_t len) { EVP_DigestUpdate(ctx_, data, len); }

  std::string hex() {
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned len = 0;
    EVP_DigestFinal_ex(ctx_, md.data(), &len);
    return to_hex(md.data(), len);
  }

 private:
  EVP_MD_CTX* ctx_;
};

/// Writes `text` to dir/name and records checksum and row count.
void write_file(const std::filesystem::path& dir, std::string_view name, const std::string& text, std::size_t rows,
                ExportSummary& summary) {
  const std::filesystem::path path = dir / name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw Error(ErrorCode::kIoError, "write failed for " + path.string());
  summary.files.push_back(BundleFile{std::string(name), sha256_hex(text), rows});
}

std::string csv_text(const Table& t) {
  std::ostringstream out;
  write_csv(t, out);
  return out.str();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::size_t count_rows(std::string_view name, const std::string& text) {
  if (name.size() >= 4 && name.substr(name.size() - 4) == ".csv") {
    const auto rows = parse_csv(text);
    return rows.empty() ? 0 : rows.size() - 1;
  }
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

}  // namespace

std::string_view to_string(LabelMode mode) {
  return mode == LabelMode::kFourClass ? "four_class" : "three_class";
}

std::optional<LabelMode> parse_label_mode(std::string_view text) {
  if (text == "three_class" || text == "3") return LabelMode::kThreeClass;
  if (text == "four_class" || text == "4") return LabelMode::kFourClass;
  return std::nullopt;
}

void LabelScheme::validate() const {
  if (!std::isfinite(low_medium) || !std::isfinite(medium_high)) bad_scheme("cutpoints must be finite");
  if (!(low_medium > 0.0)) bad_scheme("cutpoints must be positive");
  if (!(low_medium < medium_high)) bad_scheme("cutpoints must be strictly increasing");
}

std::vector<std::string> class_names(LabelMode mode) {
  if (mode == LabelMode::kFourClass) return {"zeros", "low", "medium", "high"};
  return {"low", "medium", "high"};
}

int bin_payout(double payout, const LabelScheme& scheme) {
  scheme.validate();
  if (!std::isfinite(payout) || payout < 0.0) bad_scheme("payout must be finite and nonnegative");
  const int offset = scheme.zero_is_class() ? 1 : 0;
  if (scheme.zero_is_class() && payout == 0.0) return 0;
  if (payout < scheme.low_medium) return offset;
  if (payout < scheme.medium_high) return offset + 1;
  return offset + 2;
}

std::vector<int> bin_payouts(std::span<const double> payouts, const LabelScheme& scheme) {
  std::vector<int> out;
  out.reserve(payouts.size());
  for (double p : payouts) out.push_back(bin_payout(p, scheme));
  return out;
}

std::optional<std::pair<double, double>> tercile_cutpoints(std::span<const double> payouts) {
  std::vector<double> v;
  for (double p : payouts) {
    if (p > 0.0 && std::isfinite(p)) v.push_back(p);
  }
  if (v.empty()) return std::nullopt;
  std::sort(v.begin(), v.end());
  const double n = static_cast<double>(v.size());
  const auto k1 = std::min(v.size() - 1, static_cast<std::size_t>(std::llround(n / 3.0)));
  const auto k2 = std::min(v.size() - 1, static_cast<std::size_t>(std::llround(2.0 * n / 3.0)));
  const double c1 = v[k1];
  double c2 = v[k2];
  if (!(c2 > c1)) {
    auto above = std::upper_bound(v.begin(), v.end(), c1);
    c2 = above != v.end() ? *above : 2.0 * c1;
  }
  return std::make_pair(c1, c2);
}

Subgraph seven_day_window(const Graph& g, const NodeId& post) {
  const auto found = g.find(post);
  if (!found) throw Error(ErrorCode::kNotFound, "no node " + std::string(to_string(post.kind)) + ":" + post.key);
  if (post.kind != NodeKind::kPost) throw Error(ErrorCode::kWrongKind, post.key + " is not a post");
  const NodeHandle root = *found;
  const TimeWindow window(g.node(root).created, g.node(root).created + kPayoutWindow);

  // Reply chains may form cycles among comments, so track visits.
  std::vector<NodeHandle> thread{root};
  std::unordered_set<std::uint32_t> seen{index_of(root)};
  for (std::size_t i = 0; i < thread.size(); ++i) {
    for (EdgeRef e : g.out_edges(thread[i], EdgeKind::kReply)) {
      const NodeHandle child = g.edge(e).dst;
      if (seen.insert(index_of(child)).second) thread.push_back(child);
    }
  }

  auto candidate = [&](NodeHandle h) { return g.kind(h) == NodeKind::kUser || window.contains(g.node(h).created); };
  std::vector<EdgeRef> edges;
  std::vector<NodeHandle> nodes;
  auto take = [&](EdgeRef ref) {
    const StoredEdge& e = g.edge(ref);
    if (window.contains(e.time) && candidate(e.src) && candidate(e.dst)) {
      edges.push_back(ref);
      nodes.push_back(e.src);
      nodes.push_back(e.dst);
    }
  };
  for (NodeHandle h : thread) {
    for (EdgeKind kind : {EdgeKind::kVote, EdgeKind::kAuthored, EdgeKind::kReply}) {
      for (EdgeRef e : g.in_edges(h, kind)) take(e);
      for (EdgeRef e : g.out_edges(h, kind)) take(e);
    }
  }
  return Subgraph(g, std::move(nodes), std::move(edges), window);
}

std::string_view to_string(SplitMode mode) { return mode == SplitMode::kTime ? "time" : "random"; }

std::optional<SplitMode> parse_split_mode(std::string_view text) {
  if (text == "random") return SplitMode::kRandom;
  if (text == "time") return SplitMode::kTime;
  return std::nullopt;
}

void SplitRatios::validate() const {
  for (double r : {train, val, test}) {
    if (!(r >= 0.0) || !std::isfinite(r)) throw Error(ErrorCode::kInvalidConfig, "split ratios must be >= 0");
  }
  if (std::abs(train + val + test - 1.0) > 1e-9) throw Error(ErrorCode::kInvalidConfig, "split ratios must sum to 1");
}

std::vector<NodeHandle> labeled_posts(const Graph& g) {
  std::vector<NodeHandle> out;
  for (NodeHandle h : g.nodes_of_kind(NodeKind::kPost)) {
    if (payout_of(g.node(h))) out.push_back(h);
  }
  return out;
}

PostSplits split_posts(const Graph& g, const SplitRatios& ratios, std::uint64_t seed, SplitMode mode) {
  ratios.validate();
  std::vector<NodeHandle> posts = labeled_posts(g);
  if (mode == SplitMode::kRandom) {
    std::mt19937_64 rng(seed);
    std::shuffle(posts.begin(), posts.end(), rng);
  } else {
    std::sort(posts.begin(), posts.end(), [&g](NodeHandle a, NodeHandle b) {
      const NodeRecord& ra = g.node(a);
      const NodeRecord& rb = g.node(b);
      return std::tie(ra.created, ra.id.key) < std::tie(rb.created, rb.id.key);
    });
  }
  const double n = static_cast<double>(posts.size());
  const auto n_val = std::min(posts.size(), static_cast<std::size_t>(std::llround(ratios.val * n)));
  const auto n_test = std::min(posts.size() - n_val, static_cast<std::size_t>(std::llround(ratios.test * n)));
  const std::size_t n_train = posts.size() - n_val - n_test;

  PostSplits out;
  out.train.assign(posts.begin(), posts.begin() + static_cast<std::ptrdiff_t>(n_train));
  out.val.assign(posts.begin() + static_cast<std::ptrdiff_t>(n_train),
                 posts.begin() + static_cast<std::ptrdiff_t>(n_train + n_val));
  out.test.assign(posts.begin() + static_cast<std::ptrdiff_t>(n_train + n_val), posts.end());
  return out;
}

std::span<const BundleEdgeType> bundle_edge_types() { return kEdgeTypes; }

ExportSummary export_bundle(const Graph& g, const ExportOptions& options, const std::filesystem::path& dir) {
  options.ratios.validate();
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIoError, "cannot create " + dir.string() + ": " + ec.message());

  ExportSummary summary;
  const PostSplits splits = split_posts(g, options.ratios, options.seed, options.split_mode);
  summary.labeled_posts = splits.train.size() + splits.val.size() + splits.test.size();
  summary.train = splits.train.size();
  summary.val = splits.val.size();
  summary.test = splits.test.size();

  // Cutpoints.
  summary.scheme.mode = options.mode;
  auto payouts_of = [&g](std::span<const NodeHandle> posts) {
    std::vector<double> out;
    for (NodeHandle h : posts) out.push_back(*payout_of(g.node(h)));
    return out;
  };
  if (options.cutpoints) {
    std::tie(summary.scheme.low_medium, summary.scheme.medium_high) = *options.cutpoints;
    summary.cutpoint_source = "user";
  } else if (auto c = tercile_cutpoints(payouts_of(splits.train))) {
    std::tie(summary.scheme.low_medium, summary.scheme.medium_high) = *c;
    summary.cutpoint_source = "train_terciles";
  } else if (auto all = tercile_cutpoints(payouts_of(labeled_posts(g)))) {
    std::tie(summary.scheme.low_medium, summary.scheme.medium_high) = *all;
    summary.cutpoint_source = "all_terciles";
  } else {
    summary.cutpoint_source = "default";
  }
  summary.scheme.validate();

  // Nodes and missing features.
  Table missing{{"node_type", "id", "feature"}, {}};
  for (NodeKind kind : kAllNodeKinds) {
    Table t{{"id", "node_type", "created"}, {}};
    if (is_content(kind)) {
      for (std::string_view key : kFeatureKeys) t.columns.emplace_back(key);
    }
    for (NodeHandle h : g.nodes_of_kind(kind)) {
      const NodeRecord& rec = g.node(h);
      std::vector<Cell> row{rec.id.key, std::string(to_string(kind)), std::int64_t{rec.created}};
      if (is_content(kind)) {
        for (std::string_view key : kFeatureKeys) {
          row.push_back(feature_cell(rec, key));
          if (std::holds_alternative<std::monostate>(row.back())) {
            missing.rows.push_back({std::string(to_string(kind)), rec.id.key, std::string(key)});
          }
        }
      }
      t.rows.push_back(std::move(row));
    }
    write_file(dir, "nodes_" + std::string(to_string(kind)) + ".csv", csv_text(t), t.rows.size(), summary);
  }
  summary.missing_features = missing.rows.size();

  // Edges: union of every post's 7-day window.
  std::vector<char> kept(g.edge_slot_count(), 0);
  for (NodeHandle h : g.nodes_of_kind(NodeKind::kPost)) {
    const Subgraph window = seven_day_window(g, g.node(h).id);
    for (EdgeRef e : window.edges()) kept[index_of(e)] = 1;
  }
  for (const BundleEdgeType& type : kEdgeTypes) {
    Table t{{"src", "dst", "time"}, {}};
    for (EdgeRef ref : g.edges_by_time(type.kind)) {
      if (!kept[index_of(ref)]) continue;
      const StoredEdge& e = g.edge(ref);
      if (g.kind(e.src) != type.src || g.kind(e.dst) != type.dst) continue;
      t.rows.push_back({g.node(e.src).id.key, g.node(e.dst).id.key, std::int64_t{e.time}});
    }
    summary.edges += t.rows.size();
    write_file(dir, type.file, csv_text(t), t.rows.size(), summary);
  }

  // Labels and splits, in post insertion order.
  const std::vector<std::string> names = class_names(options.mode);
  Table labels{{"post", "payout", "class", "class_name"}, {}};
  for (NodeHandle h : labeled_posts(g)) {
    const double p = *payout_of(g.node(h));
    const int cls = bin_payout(p, summary.scheme);
    labels.rows.push_back({g.node(h).id.key, p, std::int64_t{cls}, names[static_cast<std::size_t>(cls)]});
  }
  write_file(dir, "labels.csv", csv_text(labels), labels.rows.size(), summary);

  std::vector<std::string_view> split_of(g.node_slot_count());
  for (NodeHandle h : splits.train) split_of[index_of(h)] = "train";
  for (NodeHandle h : splits.val) split_of[index_of(h)] = "val";
  for (NodeHandle h : splits.test) split_of[index_of(h)] = "test";
  Table split_table{{"post", "split"}, {}};
  for (NodeHandle h : labeled_posts(g)) {
    split_table.rows.push_back({g.node(h).id.key, std::string(split_of[index_of(h)])});
  }
  write_file(dir, "splits.csv", csv_text(split_table), split_table.rows.size(), summary);

  std::string bodies;
  std::size_t body_rows = 0;
  for (NodeHandle h : g.nodes_of_kind(NodeKind::kPost)) {
    const NodeRecord& rec = g.node(h);
    ordered_json line{{"id", rec.id.key}};
    const AttrValue* title = rec.get("title");
    const AttrValue* body = rec.get("body");
    line["title"] = title && std::holds_alternative<std::string>(*title) ? json(std::get<std::string>(*title)) : json();
    line["body"] = body && std::holds_alternative<std::string>(*body) ? json(std::get<std::string>(*body)) : json();
    bodies += line.dump() + '\n';
    ++body_rows;
  }
  write_file(dir, "bodies.jsonl", bodies, body_rows, summary);
  write_file(dir, "missing_features.csv", csv_text(missing), missing.rows.size(), summary);

  ordered_json m;
  m["schema_version"] = kBundleSchemaVersion;
  m["label_mode"] = std::string(to_string(options.mode));
  m["class_names"] = names;
  m["cutpoints"] = {{"low_medium", summary.scheme.low_medium},
                    {"medium_high", summary.scheme.medium_high},
                    {"source", summary.cutpoint_source}};
  m["seed"] = options.seed;
  m["split_mode"] = std::string(to_string(options.split_mode));
  m["ratios"] = {{"train", options.ratios.train}, {"val", options.ratios.val}, {"test", options.ratios.test}};
  m["window_seconds"] = kPayoutWindow;
  m["node_features"] = {{"user", json::array()},
                        {"post", std::vector<std::string>(std::begin(kFeatureKeys), std::end(kFeatureKeys))},
                        {"comment", std::vector<std::string>(std::begin(kFeatureKeys), std::end(kFeatureKeys))}};
  ordered_json edge_types = ordered_json::array();
  for (const BundleEdgeType& t : kEdgeTypes) {
    edge_types.push_back({{"file", t.file},
                          {"src_type", to_string(t.src)},
                          {"relation", to_string(t.kind)},
                          {"dst_type", to_string(t.dst)}});
  }
  m["edge_types"] = std::move(edge_types);
  m["counts"] = {{"users", g.node_count(NodeKind::kUser)},
                 {"posts", g.node_count(NodeKind::kPost)},
                 {"comments", g.node_count(NodeKind::kComment)},
                 {"edges", summary.edges},
                 {"labeled_posts", summary.labeled_posts},
                 {"train", summary.train},
                 {"val", summary.val},
                 {"test", summary.test},
                 {"missing_features", summary.missing_features}};
  ordered_json files = ordered_json::array();
  for (const BundleFile& f : summary.files) files.push_back({{"name", f.name}, {"sha256", f.sha256}, {"rows", f.rows}});
  m["files"] = std::move(files);

  const std::filesystem::path manifest = dir / "manifest.json";
  std::ofstream out(manifest, std::ios::binary | std::ios::trunc);
  out << m.dump(2) << '\n';
  out.flush();
  if (!out) throw Error(ErrorCode::kIoError, "write failed for " + manifest.string());
  return summary;
}

std::string sha256_hex(std::string_view data) {
  Sha256 h;
  h.update(data.data(), data.size());
  return h.hex();
}

std::string sha256_hex_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  Sha256 h;
  std::array<char, 1 << 16> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    if (in.gcount() > 0) h.update(buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  if (in.bad()) throw Error(ErrorCode::kIoError, "read failed for " + path.string());
  return h.hex();
}

std::vector<std::string> verify_bundle(const std::filesystem::path& dir) {
  json m;
  try {
    m = json::parse(read_file(dir / "manifest.json"));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kFormatError, std::string("bad manifest: ") + e.what());
  }
  std::vector<std::string> bad;
  try {
    for (const json& f : m.at("files")) {
      const std::string name = f.at("name").get<std::string>();
      const std::filesystem::path path = dir / name;
      if (!std::filesystem::exists(path)) {
        bad.push_back(name);
        continue;
      }
      const std::string text = read_file(path);
      if (sha256_hex(text) != f.at("sha256").get<std::string>() ||
          count_rows(name, text) != f.at("rows").get<std::size_t>()) {
        bad.push_back(name);
      }
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kFormatError, std::string("bad manifest: ") + e.what());
  }
  return bad;
}

}  // namespace dhg
