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

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dhg/ingest.h"
#include "dhg/types.h"

namespace dhg {

/// Count drawn from a Poisson whose rate is log-normal with the given mean
/// (E[rate] == mean) and log-scale sigma `dispersion`. dispersion == 0 is a
/// plain Poisson; larger values give a heavier right tail.
struct CountDistribution {
  double mean = 0.0;
  double dispersion = 0.0;
};

struct PayoutModel {
  /// Probability mass at zero, averaged over posts.
  double zero_inflation = 0.7;
  /// Positive part: exp(log_mean + engagement_beta * centered_engagement + log_sigma * N(0,1)).
  double log_mean = 0.0;
  double log_sigma = 1.0;
  double engagement_beta = 0.8;
  /// In [0,1]. Shifts per-post zero probability toward low-engagement posts
  /// while keeping its mean at zero_inflation.
  double zero_engagement_coupling = 0.5;
};

struct GenConfig {
  std::uint64_t seed = 42;
  std::size_t n_users = 1000;
  std::size_t n_posts = 500;
  CountDistribution comments_per_post{3.0, 0.8};
  CountDistribution votes_per_post{20.0, 1.0};
  CountDistribution votes_per_comment{1.0, 0.8};
  /// Chance a comment replies to an earlier comment of the same post.
  double reply_to_comment_prob = 0.3;
  /// Fraction of ordered user pairs joined by a follow edge.
  double follow_density = 0.002;
  /// 2019-08-01T00:00:00Z .. 2019-09-01T00:00:00Z
  TimeWindow time_range{1564617600, 1567296000};
  std::size_t n_categories = 20;
  double category_zipf = 1.1;
  PayoutModel payout;
  CountDistribution body_words{60.0, 0.5};
  double downvote_prob = 0.03;
  /// Mean delay between a post/comment and the votes or replies it receives.
  double activity_mean_days = 1.5;

  /// Throws Error(kInvalidConfig).
  void validate() const;
};

/// Sized like the August 2019 sample (24k posts, ~160k nodes, ~1.4M edges).
GenConfig full_scale_config(std::uint64_t seed = 42);

std::string config_json(const GenConfig& cfg);
/// Missing keys keep their defaults. Throws Error(kInvalidConfig).
GenConfig parse_config_json(std::string_view text);

/// Category names, "steemit" first.
std::string category_name(std::size_t index);

struct PostTally {
  std::string permlink;
  std::size_t votes = 0;
  std::size_t direct_comments = 0;
  std::size_t all_comments = 0;
  double payout = 0.0;
};

struct UserTally {
  std::string name;
  std::size_t votes_cast = 0;
  std::size_t authored = 0;
  std::size_t follows = 0;
};

/// What ingesting the emitted stream must produce.
struct GroundTruth {
  std::size_t ops = 0;
  std::array<std::size_t, kNumNodeKinds> nodes{};
  std::array<std::size_t, kNumEdgeKinds> edges{};
  std::size_t edits = 0;
  std::size_t zero_payouts = 0;
  /// In post generation order.
  std::vector<PostTally> posts;
  /// Mentioned users only, sorted by name.
  std::vector<UserTally> users;

  std::size_t node_total() const;
  std::size_t edge_total() const;
};

std::string ground_truth_json(const GroundTruth& truth);
GroundTruth parse_ground_truth_json(std::string_view text);

struct Generated {
  /// Sorted by timestamp; ties keep generation order.
  std::vector<OpRecord> ops;
  GroundTruth truth;
};

/// Deterministic in cfg (including seed) for a given build. Every op lies in
/// cfg.time_range and every vote/reply comes after its target's creation.
/// Each post receives one edit op at created + 7 days carrying its payout and
/// its reward features.
Generated generate(const GenConfig& cfg);

}  // namespace dhg
