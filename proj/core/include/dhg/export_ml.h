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
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dhg/graph.h"
#include "dhg/subgraph.h"

namespace dhg {

inline constexpr int kBundleSchemaVersion = 1;
inline constexpr Timestamp kPayoutWindow = 7 * kSecondsPerDay;

enum class LabelMode : std::uint8_t { kThreeClass, kFourClass };

std::string_view to_string(LabelMode mode);
std::optional<LabelMode> parse_label_mode(std::string_view text);

/// Payout p is low if p < low_medium, medium if low_medium <= p < medium_high,
/// high otherwise. In four-class mode a zero payout gets its own class 0 and
/// the positive classes shift up by one.
struct LabelScheme {
  LabelMode mode = LabelMode::kThreeClass;
  double low_medium = 1.0;
  double medium_high = 10.0;

  bool zero_is_class() const { return mode == LabelMode::kFourClass; }
  std::size_t class_count() const { return zero_is_class() ? 4 : 3; }
  /// Throws Error(kInvalidScheme) unless 0 < low_medium < medium_high (finite).
  void validate() const;
};

/// "low", "medium", "high", preceded by "zeros" in four-class mode.
std::vector<std::string> class_names(LabelMode mode);

/// Throws Error(kInvalidScheme) for invalid schemes and for negative or
/// non-finite payouts.
int bin_payout(double payout, const LabelScheme& scheme);
std::vector<int> bin_payouts(std::span<const double> payouts, const LabelScheme& scheme);

/// Tercile cutpoints of the positive values: with v the sorted positives and
/// n their count, (v[round(n/3)], v[round(2n/3)]). When ties collapse the two,
/// the upper cutpoint moves to the next larger value, or to twice the lower one
/// if none exists. nullopt when there are no positive values.
std::optional<std::pair<double, double>> tercile_cutpoints(std::span<const double> payouts);

/// Vote, authored and reply edges inside [created, created + 7 days] whose
/// endpoints are users or content created in that interval, restricted to
/// edges touching the post or one of its reply descendants. Edge-induced.
/// Throws Error(kNotFound) or Error(kWrongKind).
Subgraph seven_day_window(const Graph& g, const NodeId& post);

enum class SplitMode : std::uint8_t { kRandom, kTime };

std::string_view to_string(SplitMode mode);
std::optional<SplitMode> parse_split_mode(std::string_view text);

struct SplitRatios {
  double train = 0.8;
  double val = 0.1;
  double test = 0.1;

  /// Throws Error(kInvalidConfig) unless all are >= 0 and they sum to 1.
  void validate() const;
};

struct PostSplits {
  std::vector<NodeHandle> train;
  std::vector<NodeHandle> val;
  std::vector<NodeHandle> test;
};

/// Posts carrying a payout attribute, in insertion order.
std::vector<NodeHandle> labeled_posts(const Graph& g);

/// Partitions labeled_posts(g). val and test get round(ratio * n) posts each;
/// train gets the rest. kRandom shuffles with `seed`; kTime assigns the
/// earliest posts (by created, then permlink) to train, then val, then test.
PostSplits split_posts(const Graph& g, const SplitRatios& ratios, std::uint64_t seed,
                       SplitMode mode = SplitMode::kRandom);

struct ExportOptions {
  LabelMode mode = LabelMode::kThreeClass;
  /// Fixed (low_medium, medium_high). When absent, terciles of the nonzero
  /// training payouts are used.
  std::optional<std::pair<double, double>> cutpoints;
  std::uint64_t seed = 42;
  SplitMode split_mode = SplitMode::kRandom;
  SplitRatios ratios;
};

struct BundleFile {
  std::string name;
  std::string sha256;
  std::size_t rows = 0;
};

struct ExportSummary {
  LabelScheme scheme;
  /// "user", "train_terciles", "all_terciles" or "default".
  std::string cutpoint_source;
  std::size_t labeled_posts = 0;
  std::size_t train = 0;
  std::size_t val = 0;
  std::size_t test = 0;
  std::size_t edges = 0;
  std::size_t missing_features = 0;
  std::vector<BundleFile> files;
};

/// Writes the bundle into `dir` (created if needed). Node features are the
/// latest revision values; absent ones are left empty and listed in
/// missing_features.csv. Throws Error(kIoError) on write failure.
ExportSummary export_bundle(const Graph& g, const ExportOptions& options, const std::filesystem::path& dir);

/// Edge files of a bundle, as (file name, edge kind, source kind, target kind).
struct BundleEdgeType {
  std::string_view file;
  EdgeKind kind;
  NodeKind src;
  NodeKind dst;
};
std::span<const BundleEdgeType> bundle_edge_types();

std::string sha256_hex(std::string_view data);
/// Throws Error(kIoError).
std::string sha256_hex_file(const std::filesystem::path& path);

/// Names of manifest files whose checksum or row count does not match what is
/// on disk. Throws Error(kIoError/kFormatError) for an unreadable manifest.
std::vector<std::string> verify_bundle(const std::filesystem::path& dir);

}  // namespace dhg
