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


#include "dhg/bench.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <ostream>
#include <thread>

#include "dhg/error.h"
#include "dhg/ingest.h"
#include "dhg/queries.h"
#include <nlohmann/json.hpp>

#ifndef DHG_BUILD_TYPE
#define DHG_BUILD_TYPE "unknown"
#endif

namespace dhg {
namespace {

using Clock = std::chrono::steady_clock;

/// Runs one query and returns the size of its result.
std::size_t run_query(BenchQuery q, const Graph& g, const BenchPlan& plan) {
  const Subgraph window = time_window_subgraph(g, plan.window);
  switch (q) {
    case BenchQuery::kWindow:
      return window.node_count();
    case BenchQuery::kCategory:
      return category_subgraph(window, plan.category).node_count();
    case BenchQuery::kRankPosts:
      return rank_posts_by_engagement(window).comments_sorted.size();
    case BenchQuery::kRankUsers:
      return rank_users_by_activity(window).size();
  }
  return 0;
}

std::vector<double> average_ranks(const std::vector<double>& v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&v](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

std::string_view to_string(BenchQuery q) {
  switch (q) {
    case BenchQuery::kWindow:
      return "window";
    case BenchQuery::kCategory:
      return "category";
    case BenchQuery::kRankPosts:
      return "rank-posts";
    case BenchQuery::kRankUsers:
      return "rank-users";
  }
  return "?";
}

GenConfig default_bench_config() {
  GenConfig cfg;
  cfg.follow_density = 1.0e-4;
  return cfg;
}

void BenchPlan::validate() const {
  if (post_sizes.empty()) throw Error(ErrorCode::kInvalidConfig, "bench plan needs at least one size");
  for (std::size_t i = 0; i < post_sizes.size(); ++i) {
    if (post_sizes[i] == 0) throw Error(ErrorCode::kInvalidConfig, "post sizes must be positive");
    if (i > 0 && post_sizes[i] <= post_sizes[i - 1]) {
      throw Error(ErrorCode::kInvalidConfig, "post sizes must be strictly ascending");
    }
  }
  if (repetitions < 3) throw Error(ErrorCode::kInvalidConfig, "repetitions must be at least 3");
  if (!(users_per_post > 0.0)) throw Error(ErrorCode::kInvalidConfig, "users_per_post must be positive");
  base.validate();
}

BenchEnvironment detect_environment() {
  BenchEnvironment env;
  env.hardware_threads = std::thread::hardware_concurrency();
  std::ifstream cpuinfo("/proc/cpuinfo");
  for (std::string line; std::getline(cpuinfo, line);) {
    if (line.rfind("model name", 0) == 0) {
      auto colon = line.find(':');
      if (colon != std::string::npos) env.cpu = line.substr(line.find_first_not_of(' ', colon + 1));
      break;
    }
  }
  std::ifstream meminfo("/proc/meminfo");
  for (std::string key; meminfo >> key;) {
    if (key == "MemTotal:") {
      meminfo >> env.mem_total_kb;
      break;
    }
    meminfo.ignore(1 << 12, '\n');
  }
#ifdef __VERSION__
  env.compiler = __VERSION__;
#endif
  env.build_type = DHG_BUILD_TYPE;
  return env;
}

BenchReport run_bench(const BenchPlan& plan) {
  plan.validate();
  BenchReport report;
  report.environment = detect_environment();
  for (std::size_t size : plan.post_sizes) {
    GenConfig cfg = plan.base;
    cfg.n_posts = size;
    cfg.n_users = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(static_cast<double>(size) * plan.users_per_post)));
    cfg.seed = plan.seed + size;

    Graph g;
    std::string build_error;
    try {
      g = ingest_ops(generate(cfg).ops).graph;
    } catch (const std::exception& e) {
      build_error = e.what();
    }
    report.graphs.push_back(BenchGraphInfo{size, g.node_count(), g.edge_count()});

    for (BenchQuery q : kAllBenchQueries) {
      BenchRow row;
      row.query = q;
      row.size = size;
      if (!build_error.empty()) {
        row.ok = false;
        row.error = build_error;
        report.rows.push_back(std::move(row));
        continue;
      }
      std::vector<double> samples;
      try {
        for (std::size_t r = 0; r < plan.repetitions; ++r) {
          const auto start = Clock::now();
          row.result_size = run_query(q, g, plan);
          samples.push_back(std::chrono::duration<double>(Clock::now() - start).count());
        }
      } catch (const std::exception& e) {
        row.ok = false;
        row.error = e.what();
      }
      row.median_s = quantile(samples, 0.5);
      row.p10_s = quantile(samples, 0.1);
      row.p90_s = quantile(samples, 0.9);
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

void write_bench_csv(const BenchReport& report, std::ostream& out) {
  out << "query,size,median_s,p10_s,p90_s\n";
  char buf[64];
  auto num = [&buf](double v) {
    std::snprintf(buf, sizeof buf, "%.9f", v);
    return std::string(buf);
  };
  for (const BenchRow& r : report.rows) {
    out << to_string(r.query) << ',' << r.size << ',';
    if (r.ok) {
      out << num(r.median_s) << ',' << num(r.p10_s) << ',' << num(r.p90_s);
    } else {
      out << ",,";
    }
    out << '\n';
  }
}

void write_bench_json(const BenchReport& report, std::ostream& out) {
  using nlohmann::ordered_json;
  ordered_json j;
  const BenchEnvironment& env = report.environment;
  j["environment"] = {{"cpu", env.cpu},
                      {"hardware_threads", env.hardware_threads},
                      {"mem_total_kb", env.mem_total_kb},
                      {"compiler", env.compiler},
                      {"build_type", env.build_type}};
  ordered_json graphs = ordered_json::array();
  for (const BenchGraphInfo& gi : report.graphs) {
    graphs.push_back({{"size", gi.size}, {"nodes", gi.nodes}, {"edges", gi.edges}});
  }
  j["graphs"] = std::move(graphs);
  ordered_json rows = ordered_json::array();
  for (const BenchRow& r : report.rows) {
    ordered_json row{{"query", std::string(to_string(r.query))}, {"size", r.size}};
    if (r.ok) {
      row["median_s"] = r.median_s;
      row["p10_s"] = r.p10_s;
      row["p90_s"] = r.p90_s;
      row["result_size"] = r.result_size;
    } else {
      row["error"] = r.error;
    }
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  out << j.dump(2) << '\n';
}

double quantile(std::vector<double> samples, double q) {
  if (samples.empty()) return 0.0;
  std::sort(samples.begin(), samples.end());
  const double pos = std::clamp(q, 0.0, 1.0) * static_cast<double>(samples.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, samples.size() - 1);
  return samples[lo] + (pos - static_cast<double>(lo)) * (samples[hi] - samples[lo]);
}

double spearman_rho(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = std::min(x.size(), y.size());
  if (n < 2) return 0.0;
  const std::vector<double> rx = average_ranks({x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n)});
  const std::vector<double> ry = average_ranks({y.begin(), y.begin() + static_cast<std::ptrdiff_t>(n)});
  const double mean = (static_cast<double>(n) + 1.0) / 2.0;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (rx[i] - mean) * (ry[i] - mean);
    sxx += (rx[i] - mean) * (rx[i] - mean);
    syy += (ry[i] - mean) * (ry[i] - mean);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace dhg
