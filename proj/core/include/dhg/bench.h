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
#include <string>
#include <string_view>
#include <vector>

#include "dhg/synthgen.h"
#include "dhg/types.h"

namespace dhg {

enum class BenchQuery : std::uint8_t { kWindow, kCategory, kRankPosts, kRankUsers };

inline constexpr BenchQuery kAllBenchQueries[] = {BenchQuery::kWindow, BenchQuery::kCategory, BenchQuery::kRankPosts,
                                                   BenchQuery::kRankUsers};

std::string_view to_string(BenchQuery q);

/// Generator template for benchmark graphs; sparser follows than the default.
GenConfig default_bench_config();

struct BenchPlan {
  /// Strictly ascending, each > 0.
  std::vector<std::size_t> post_sizes{1000, 2000, 3000, 4000, 5000, 6000, 7000, 8000, 9000, 10000};
  /// At least 3.
  std::size_t repetitions = 5;
  /// 2019-08-01T04:00:00Z .. 2019-08-10T04:00:00Z
  TimeWindow window{1564632000, 1565409600};
  std::string category = "steemit";
  std::uint64_t seed = 42;
  /// Template for every size; n_posts, n_users and seed are overwritten.
  GenConfig base = default_bench_config();
  double users_per_post = 2.5;

  /// Throws Error(kInvalidConfig).
  void validate() const;
};

struct BenchRow {
  BenchQuery query = BenchQuery::kWindow;
  std::size_t size = 0;
  double median_s = 0.0;
  double p10_s = 0.0;
  double p90_s = 0.0;
  /// Nodes in the query's result (subgraph nodes or ranked entries).
  std::size_t result_size = 0;
  bool ok = true;
  std::string error;
};

struct BenchGraphInfo {
  std::size_t size = 0;
  std::size_t nodes = 0;
  std::size_t edges = 0;
};

struct BenchEnvironment {
  std::string cpu;
  unsigned hardware_threads = 0;
  std::uint64_t mem_total_kb = 0;
  std::string compiler;
  std::string build_type;
};

BenchEnvironment detect_environment();

struct BenchReport {
  /// Size-major, queries in kAllBenchQueries order.
  std::vector<BenchRow> rows;
  std::vector<BenchGraphInfo> graphs;
  BenchEnvironment environment;
};

/// Generates and ingests one graph per size (untimed), then times every
/// query `repetitions` times on it. Each timed query includes the window
/// extraction its input depends on.
BenchReport run_bench(const BenchPlan& plan);

/// query,size,median_s,p10_s,p90_s
void write_bench_csv(const BenchReport& report, std::ostream& out);
void write_bench_json(const BenchReport& report, std::ostream& out);

/// Linear interpolation between closest ranks, q in [0,1]. Empty input gives 0.
double quantile(std::vector<double> samples, double q);

/// Spearman rank correlation with average ranks for ties. Returns 0 when
/// either side is constant or the inputs are shorter than 2.
double spearman_rho(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace dhg
