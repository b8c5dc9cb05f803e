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


#include "cli.h"

#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include "dhg/bench.h"
#include "dhg/error.h"
#include "dhg/export_ml.h"
#include "dhg/ingest.h"
#include "dhg/queries.h"
#include "dhg/snapshot.h"
#include "dhg/synthgen.h"
#include "dhg/timestamp.h"
#include <nlohmann/json.hpp>

namespace dhg::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

struct Globals {
  std::uint64_t seed = 42;
  std::string log_level = "info";
  std::string out_dir = "dhg-out";
};

struct IngestArgs {
  std::string ops;
  std::string out;
};

struct QueryArgs {
  std::string snapshot;
  std::string query;
  std::string t1;
  std::string t2;
  std::string category;
  std::string format = "csv";
  std::string part = "edges";
  bool keep_isolated = false;
};

struct GenerateArgs {
  std::string config;
  std::optional<std::size_t> n_posts;
  std::optional<std::size_t> n_users;
  bool full_scale = false;
};

struct BenchArgs {
  std::vector<std::size_t> sizes;
  std::size_t repetitions = 5;
  std::string t1 = "2019-08-01T04:00:00Z";
  std::string t2 = "2019-08-10T04:00:00Z";
  std::string category = "steemit";
  double users_per_post = 2.5;
};

struct ExportArgs {
  std::string snapshot;
  std::string mode = "three_class";
  std::vector<double> cutpoints;
  std::string split_mode = "random";
  std::vector<double> ratios{0.8, 0.1, 0.1};
};

struct VerifyArgs {
  std::string bundle;
};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIoError:
      return kExitIo;
    case ErrorCode::kBadTimestamp:
    case ErrorCode::kInvalidConfig:
    case ErrorCode::kInvalidScheme:
      return kExitUsage;
    default:
      return kExitData;
  }
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw Error(ErrorCode::kIoError, "write failed for " + path.string());
}

fs::path prepare_out_dir(const Globals& g) {
  std::error_code ec;
  fs::create_directories(g.out_dir, ec);
  if (ec) throw Error(ErrorCode::kIoError, "cannot create " + g.out_dir + ": " + ec.message());
  return fs::path(g.out_dir);
}

void echo_config(const fs::path& dir, const Globals& g, std::string_view command, ordered_json params) {
  ordered_json j;
  j["command"] = command;
  j["seed"] = g.seed;
  j["log_level"] = g.log_level;
  j["out_dir"] = g.out_dir;
  j["params"] = std::move(params);
  write_text(dir / "run_config.json", j.dump(2) + "\n");
}

TimeWindow parse_window(const std::string& t1, const std::string& t2) {
  return TimeWindow(parse_timestamp(t1), parse_timestamp(t2));
}

int cmd_ingest(const Globals& g, const IngestArgs& a, std::ostream& out, spdlog::logger& log) {
  const fs::path dir = prepare_out_dir(g);
  const fs::path snap = a.out.empty() ? dir / "graph.snap" : fs::path(a.out);
  echo_config(dir, g, "ingest", {{"ops", a.ops}, {"out", snap.string()}});

  std::ifstream in(a.ops, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + a.ops);
  IngestResult result = parse_ops(in);
  if (in.bad()) throw Error(ErrorCode::kIoError, "read failed for " + a.ops);
  log.info("ingested {} ops: {} nodes, {} edges, {} rejects", result.report.ops_read, result.graph.node_count(),
           result.graph.edge_count(), result.report.rejects.size());
  save_graph(result.graph, snap);
  out << report_json(result.report) << '\n';
  return kExitOk;
}

int cmd_query(const Globals& g, const QueryArgs& a, std::ostream& out, spdlog::logger& log) {
  const TimeWindow window = parse_window(a.t1, a.t2);
  const fs::path dir = prepare_out_dir(g);
  echo_config(dir, g, "query",
              {{"snapshot", a.snapshot},
               {"query", a.query},
               {"t1", window.t1()},
               {"t2", window.t2()},
               {"category", a.category},
               {"format", a.format},
               {"part", a.part},
               {"keep_isolated", a.keep_isolated}});

  const Graph graph = load_graph(a.snapshot);
  const Subgraph sub = time_window_subgraph(graph, window, WindowOptions{a.keep_isolated});
  log.debug("window [{}, {}] keeps {} nodes, {} edges", format_iso8601(window.t1()), format_iso8601(window.t2()),
            sub.node_count(), sub.edge_count());

  Table table;
  if (a.query == "window" || a.query == "category") {
    const Subgraph result = a.query == "window" ? sub : category_subgraph(sub, a.category);
    table = a.part == "nodes" ? subgraph_node_table(result) : subgraph_edge_table(result);
  } else if (a.query == "rank-posts") {
    table = engagement_table(sub, rank_posts_by_engagement(sub));
  } else {
    table = activity_table(sub, rank_users_by_activity(sub));
  }
  if (a.format == "json") {
    write_json(table, out);
  } else {
    write_csv(table, out);
  }
  return kExitOk;
}

int cmd_generate(const Globals& g, const GenerateArgs& a, bool seed_given, std::ostream& out, spdlog::logger& log) {
  GenConfig cfg = a.full_scale ? full_scale_config(g.seed) : GenConfig{};
  if (!a.config.empty()) cfg = parse_config_json(read_text(a.config));
  if (seed_given || (a.config.empty() && !a.full_scale)) cfg.seed = g.seed;
  if (a.n_posts) cfg.n_posts = *a.n_posts;
  if (a.n_users) cfg.n_users = *a.n_users;
  cfg.validate();

  const fs::path dir = prepare_out_dir(g);
  echo_config(dir, g, "generate", ordered_json::parse(config_json(cfg)));

  const Generated gen = generate(cfg);
  {
    std::ofstream ops(dir / "ops.jsonl", std::ios::binary | std::ios::trunc);
    if (!ops) throw Error(ErrorCode::kIoError, "cannot write " + (dir / "ops.jsonl").string());
    write_ops(gen.ops, ops);
    ops.flush();
    if (!ops) throw Error(ErrorCode::kIoError, "write failed for " + (dir / "ops.jsonl").string());
  }
  write_text(dir / "ground_truth.json", ground_truth_json(gen.truth) + "\n");
  log.info("generated {} ops ({} nodes, {} edges expected)", gen.truth.ops, gen.truth.node_total(),
           gen.truth.edge_total());
  out << ordered_json{{"ops", (dir / "ops.jsonl").string()},
                      {"ground_truth", (dir / "ground_truth.json").string()},
                      {"op_count", gen.truth.ops},
                      {"nodes", gen.truth.node_total()},
                      {"edges", gen.truth.edge_total()}}
             .dump()
      << '\n';
  return kExitOk;
}

int cmd_bench(const Globals& g, const BenchArgs& a, std::ostream& out, spdlog::logger& log) {
  BenchPlan plan;
  if (!a.sizes.empty()) plan.post_sizes = a.sizes;
  plan.repetitions = a.repetitions;
  plan.window = parse_window(a.t1, a.t2);
  plan.category = a.category;
  plan.seed = g.seed;
  plan.users_per_post = a.users_per_post;
  plan.validate();

  const fs::path dir = prepare_out_dir(g);
  echo_config(dir, g, "bench",
              {{"sizes", plan.post_sizes},
               {"repetitions", plan.repetitions},
               {"t1", plan.window.t1()},
               {"t2", plan.window.t2()},
               {"category", plan.category},
               {"users_per_post", plan.users_per_post},
               {"base", ordered_json::parse(config_json(plan.base))}});

  log.info("benchmarking {} sizes x {} repetitions", plan.post_sizes.size(), plan.repetitions);
  const BenchReport report = run_bench(plan);
  for (const BenchRow& r : report.rows) {
    if (!r.ok) log.warn("{} at {} posts failed: {}", to_string(r.query), r.size, r.error);
  }
  std::ofstream csv(dir / "bench.csv", std::ios::binary | std::ios::trunc);
  std::ofstream json(dir / "bench.json", std::ios::binary | std::ios::trunc);
  if (!csv || !json) throw Error(ErrorCode::kIoError, "cannot write bench report under " + dir.string());
  write_bench_csv(report, csv);
  write_bench_json(report, json);
  write_bench_csv(report, out);
  return kExitOk;
}

int cmd_export(const Globals& g, const ExportArgs& a, std::ostream& out, spdlog::logger& log) {
  ExportOptions opts;
  opts.mode = *parse_label_mode(a.mode);
  opts.split_mode = *parse_split_mode(a.split_mode);
  opts.seed = g.seed;
  if (!a.cutpoints.empty()) {
    LabelScheme{opts.mode, a.cutpoints[0], a.cutpoints[1]}.validate();
    opts.cutpoints = std::make_pair(a.cutpoints[0], a.cutpoints[1]);
  }
  opts.ratios = SplitRatios{a.ratios[0], a.ratios[1], a.ratios[2]};
  opts.ratios.validate();

  const fs::path dir = prepare_out_dir(g);
  ordered_json params{{"snapshot", a.snapshot},
                      {"mode", a.mode},
                      {"split_mode", a.split_mode},
                      {"ratios", a.ratios},
                      {"bundle", (dir / "bundle").string()}};
  params["cutpoints"] = a.cutpoints.empty() ? ordered_json("train_terciles") : ordered_json(a.cutpoints);
  echo_config(dir, g, "export", std::move(params));

  const Graph graph = load_graph(a.snapshot);
  const ExportSummary s = export_bundle(graph, opts, dir / "bundle");
  if (s.missing_features > 0) log.warn("{} missing node features (see missing_features.csv)", s.missing_features);
  out << ordered_json{{"bundle", (dir / "bundle").string()},
                      {"labeled_posts", s.labeled_posts},
                      {"train", s.train},
                      {"val", s.val},
                      {"test", s.test},
                      {"edges", s.edges},
                      {"low_medium", s.scheme.low_medium},
                      {"medium_high", s.scheme.medium_high},
                      {"cutpoint_source", s.cutpoint_source}}
             .dump()
      << '\n';
  return kExitOk;
}

int cmd_verify(const Globals& g, const VerifyArgs& a, std::ostream& out, spdlog::logger& log) {
  const fs::path dir = prepare_out_dir(g);
  echo_config(dir, g, "verify", {{"bundle", a.bundle}});
  const std::vector<std::string> bad = verify_bundle(a.bundle);
  out << ordered_json{{"ok", bad.empty()}, {"mismatched", bad}}.dump() << '\n';
  if (!bad.empty()) {
    log.error("{} bundle files fail verification", bad.size());
    return kExitData;
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Temporal heterogeneous social graph toolkit", "dhg"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals globals;
  app.add_option("--seed", globals.seed, "Seed for generation and splits")->capture_default_str();
  app.add_option("--log-level", globals.log_level, "Log level on stderr")
      ->check(CLI::IsMember({"trace", "debug", "info", "warn", "error", "off"}))
      ->capture_default_str();
  app.add_option("--out-dir", globals.out_dir, "Directory for outputs and run_config.json")->capture_default_str();

  IngestArgs ingest;
  CLI::App* ingest_cmd = app.add_subcommand("ingest", "Build a snapshot from a JSONL operation log");
  ingest_cmd->add_option("--ops", ingest.ops, "Operation log")->required();
  ingest_cmd->add_option("--out", ingest.out, "Snapshot path (default <out-dir>/graph.snap)");

  QueryArgs query;
  CLI::App* query_cmd = app.add_subcommand("query", "Run a time-window query on a snapshot");
  query_cmd->add_option("--snapshot", query.snapshot)->required();
  query_cmd->add_option("--query", query.query)
      ->required()
      ->check(CLI::IsMember({"window", "category", "rank-posts", "rank-users"}));
  query_cmd->add_option("--t1", query.t1, "Window start, epoch seconds or ISO-8601")->required();
  query_cmd->add_option("--t2", query.t2, "Window end, inclusive")->required();
  query_cmd->add_option("--category", query.category);
  query_cmd->add_option("--format", query.format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  query_cmd->add_option("--part", query.part, "Subgraph table for window/category queries")
      ->check(CLI::IsMember({"edges", "nodes"}))
      ->capture_default_str();
  query_cmd->add_flag("--keep-isolated", query.keep_isolated, "Keep in-window content without in-window edges");

  GenerateArgs gen;
  CLI::App* gen_cmd = app.add_subcommand("generate", "Write a synthetic operation log and its ground truth");
  gen_cmd->add_option("--config", gen.config, "Generator config JSON");
  gen_cmd->add_option("--n-posts", gen.n_posts);
  gen_cmd->add_option("--n-users", gen.n_users);
  gen_cmd->add_flag("--full-scale", gen.full_scale, "Start from the 24k-post configuration");

  BenchArgs bench;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Time the four queries over generated graphs");
  bench_cmd->add_option("--sizes", bench.sizes, "Post counts, comma separated")->delimiter(',');
  bench_cmd->add_option("--repetitions", bench.repetitions)->capture_default_str();
  bench_cmd->add_option("--t1", bench.t1)->capture_default_str();
  bench_cmd->add_option("--t2", bench.t2)->capture_default_str();
  bench_cmd->add_option("--category", bench.category)->capture_default_str();
  bench_cmd->add_option("--users-per-post", bench.users_per_post)->capture_default_str();

  ExportArgs exp;
  CLI::App* export_cmd = app.add_subcommand("export", "Write the ML bundle for a snapshot");
  export_cmd->add_option("--snapshot", exp.snapshot)->required();
  export_cmd->add_option("--mode", exp.mode)
      ->check(CLI::IsMember({"three_class", "four_class"}))
      ->capture_default_str();
  export_cmd->add_option("--cutpoints", exp.cutpoints, "low_medium,medium_high")->delimiter(',')->expected(2);
  export_cmd->add_option("--split-mode", exp.split_mode)
      ->check(CLI::IsMember({"random", "time"}))
      ->capture_default_str();
  export_cmd->add_option("--ratios", exp.ratios, "train,val,test")->delimiter(',')->expected(3);

  VerifyArgs verify;
  CLI::App* verify_cmd = app.add_subcommand("verify", "Check a bundle against its manifest checksums");
  verify_cmd->add_option("--bundle", verify.bundle)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
  spdlog::logger log("dhg", sink);
  log.set_pattern("[%l] %v");
  log.set_level(spdlog::level::from_str(globals.log_level));

  try {
    if (*ingest_cmd) return cmd_ingest(globals, ingest, out, log);
    if (*query_cmd) return cmd_query(globals, query, out, log);
    if (*gen_cmd) return cmd_generate(globals, gen, app.count("--seed") > 0, out, log);
    if (*bench_cmd) return cmd_bench(globals, bench, out, log);
    if (*export_cmd) return cmd_export(globals, exp, out, log);
    if (*verify_cmd) return cmd_verify(globals, verify, out, log);
  } catch (const Error& e) {
    log.error("{}", e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    log.error("{}", e.what());
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace dhg::cli
