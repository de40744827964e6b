#include "hdbscan/cli.hpp"

#include <chrono>
#include <cstdio>
#include <ostream>
#include <optional>

#include <CLI11.hpp>

#include "hdbscan/bench.hpp"
#include "hdbscan/error.hpp"
#include "hdbscan/io.hpp"
#include "hdbscan/oracle.hpp"
#include "hdbscan/pipeline.hpp"

namespace hdbscan {

namespace {

struct RunConfig {
  std::string input;
  std::string metric = "euclidean";
  std::size_t min_samples = 5;
  std::size_t min_cluster_size = 5;
  std::string mode = "exact";
  bool allow_single_cluster = false;
  bool dedupe = false;
  std::size_t leaf_size = SpaceTree::kDefaultLeafSize;
  double epsilon = 0.0;
  std::string labels_out;
  std::string tree_out;
  std::string mst_out;
  std::string bench_out;
  std::uint64_t seed = 0;
  std::vector<std::size_t> sizes;
  std::vector<std::size_t> dims{2};
  std::vector<std::size_t> clusters{10};
  std::size_t repetitions = 1;
};

void add_model_options(CLI::App& app, RunConfig& cfg) {
  app.add_option("--metric", cfg.metric, "euclidean, manhattan or chebyshev")->capture_default_str();
  app.add_option("--min-samples", cfg.min_samples, "k: neighbours counted for the core distance (self included)")
      ->capture_default_str();
  app.add_option("--min-cluster-size", cfg.min_cluster_size, "m: smallest accepted cluster")->capture_default_str();
  app.add_option("--mode", cfg.mode, "exact or fast_ties")->capture_default_str();
  app.add_option("--leaf-size", cfg.leaf_size, "space tree leaf size")->capture_default_str();
}

void add_input_options(CLI::App& app, RunConfig& cfg) {
  app.add_option("--input", cfg.input, "delimited text file, one point per line")->required();
  app.add_flag("--dedupe", cfg.dedupe, "collapse exact duplicate points before clustering");
  add_model_options(app, cfg);
}

ClusterParams params_from(const RunConfig& cfg) {
  ClusterParams p;
  p.metric = Metric::parse(cfg.metric);
  p.min_samples = cfg.min_samples;
  p.min_cluster_size = cfg.min_cluster_size;
  p.mode = parse_mode(cfg.mode);
  p.allow_single_cluster = cfg.allow_single_cluster;
  p.leaf_size = cfg.leaf_size;
  return p;
}

struct LoadedInput {
  PointSet points;
  std::optional<Deduplicated> dedup;

  const PointSet& working() const { return dedup ? dedup->unique : points; }

  std::vector<std::int64_t> expand(const std::vector<std::int64_t>& labels) const {
    if (!dedup) return labels;
    std::vector<std::int64_t> full(points.size());
    for (std::size_t i = 0; i < full.size(); ++i) full[i] = labels[dedup->representative[i]];
    return full;
  }
};

LoadedInput load_input(const RunConfig& cfg) {
  LoadedInput in{load_points(cfg.input), std::nullopt};
  if (cfg.dedupe) in.dedup = deduplicate(in.points);
  return in;
}

std::size_t count_noise(const std::vector<std::int64_t>& labels) {
  std::size_t noise = 0;
  for (const auto l : labels) noise += l < 0 ? 1 : 0;
  return noise;
}

std::size_t count_clusters(const std::vector<std::int64_t>& labels) {
  std::int64_t top = -1;
  for (const auto l : labels) top = std::max(top, l);
  return static_cast<std::size_t>(top + 1);
}

void print_summary(std::ostream& out, const PointSet& points, const std::vector<std::int64_t>& labels, double seconds) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.6f", seconds);
  out << "points=" << points.size() << " dims=" << points.dims() << " clusters=" << count_clusters(labels)
      << " noise=" << count_noise(labels) << " seconds=" << buffer << '\n';
}

int cmd_cluster(const RunConfig& cfg, std::ostream& out) {
  const auto params = params_from(cfg);
  const auto input = load_input(cfg);
  const auto start = std::chrono::steady_clock::now();
  const auto result = cluster(input.working(), params);
  const auto labels = input.expand(result.flat.labels);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::vector<std::pair<std::filesystem::path, std::string>> outputs{{cfg.labels_out, format_labels(labels)}};
  if (!cfg.tree_out.empty()) outputs.emplace_back(cfg.tree_out, format_condensed_json(result.condensed));
  if (!cfg.mst_out.empty()) outputs.emplace_back(cfg.mst_out, format_mst_edges(result.mst));
  write_files_atomic(outputs);
  print_summary(out, input.points, labels, seconds);
  return kExitOk;
}

int cmd_dbscan_star(const RunConfig& cfg, std::ostream& out) {
  const auto params = params_from(cfg);
  const auto input = load_input(cfg);
  const auto start = std::chrono::steady_clock::now();
  const auto labels = input.expand(dbscan_star(input.working(), params, cfg.epsilon));
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_file_atomic(cfg.labels_out, format_labels(labels));
  print_summary(out, input.points, labels, seconds);
  return kExitOk;
}

int cmd_oracle_check(const RunConfig& cfg, std::ostream& out) {
  auto params = params_from(cfg);
  params.mode = MstMode::exact;
  const auto input = load_input(cfg);
  const auto& points = input.working();
  if (points.size() > oracle::kMaxMatrixPoints) throw InvalidInput("oracle-check is limited to 5000 points");

  const auto fast = cluster(points, params);
  const auto slow = oracle::oracle_cluster(points, params);
  const bool weights_match = fast.mst.sorted_weights() == slow.mst.sorted_weights();
  const bool labels_match = oracle::same_partition(fast.flat.labels, slow.flat.labels);

  char buffer[96];
  std::snprintf(buffer, sizeof buffer, "mst_weight accelerated=%.17g oracle=%.17g", fast.mst.total_weight(),
                slow.mst.total_weight());
  out << buffer << '\n';
  out << "edge_weights " << (weights_match ? "match" : "DIFFER") << '\n';
  out << "labels " << (labels_match ? "match" : "DIFFER") << '\n';
  out << "base_case_calls=" << fast.stats.base_case_calls << '\n';
  return weights_match && labels_match ? kExitOk : kExitInternal;
}

int cmd_bench(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  BenchConfig bench;
  bench.sizes = cfg.sizes;
  bench.dims = cfg.dims;
  bench.clusters = cfg.clusters;
  bench.repetitions = cfg.repetitions;
  bench.seed = cfg.seed;
  bench.mode = parse_mode(cfg.mode);
  bench.min_samples = cfg.min_samples;
  bench.min_cluster_size = cfg.min_cluster_size;
  bench.leaf_size = cfg.leaf_size;
  if (cfg.metric != "euclidean") throw InvalidInput("bench runs with the euclidean metric only");

  const auto records = run_bench(bench);
  const std::string csv = format_bench_csv(records);
  if (cfg.bench_out.empty()) {
    out << csv;
  } else {
    write_file_atomic(cfg.bench_out, csv);
  }
  bool distinct_sizes = false;
  for (const auto& r : records) distinct_sizes |= r.n_points != records.front().n_points;
  if (distinct_sizes) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "loglog_slope=%.4f", loglog_slope(records));
    (cfg.bench_out.empty() ? err : out) << buffer << '\n';
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Accelerated hierarchical density-based clustering"};
  app.require_subcommand(1);

  auto* cluster_cmd = app.add_subcommand("cluster", "cluster a point file and write flat labels");
  add_input_options(*cluster_cmd, cfg);
  cluster_cmd->add_flag("--allow-single-cluster", cfg.allow_single_cluster, "permit the root as the only cluster");
  cluster_cmd->add_option("--labels-out", cfg.labels_out, "labels file")->required();
  cluster_cmd->add_option("--tree-out", cfg.tree_out, "condensed tree JSON");
  cluster_cmd->add_option("--mst-out", cfg.mst_out, "spanning tree edges");

  auto* dbscan_cmd = app.add_subcommand("dbscan-star", "DBSCAN* labels at a fixed epsilon");
  add_input_options(*dbscan_cmd, cfg);
  dbscan_cmd->add_option("--epsilon", cfg.epsilon, "distance scale")->required();
  dbscan_cmd->add_option("--labels-out", cfg.labels_out, "labels file")->required();

  auto* oracle_cmd = app.add_subcommand("oracle-check", "compare against the brute-force pipeline");
  add_input_options(*oracle_cmd, cfg);
  oracle_cmd->add_flag("--allow-single-cluster", cfg.allow_single_cluster, "permit the root as the only cluster");

  auto* bench_cmd = app.add_subcommand("bench", "time the pipeline on generated Gaussian blobs");
  add_model_options(*bench_cmd, cfg);
  bench_cmd->add_option("--sizes", cfg.sizes, "point counts, ascending")->required()->delimiter(',');
  bench_cmd->add_option("--dims", cfg.dims, "dimensions")->delimiter(',')->capture_default_str();
  bench_cmd->add_option("--clusters", cfg.clusters, "blob counts")->delimiter(',')->capture_default_str();
  bench_cmd->add_option("--repetitions", cfg.repetitions, "runs per configuration")->capture_default_str();
  bench_cmd->add_option("--seed", cfg.seed, "data generation seed")->capture_default_str();
  bench_cmd->add_option("--bench-out", cfg.bench_out, "CSV output (default: standard output)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalidInput;
  }

  try {
    if (cluster_cmd->parsed()) return cmd_cluster(cfg, out);
    if (dbscan_cmd->parsed()) return cmd_dbscan_star(cfg, out);
    if (oracle_cmd->parsed()) return cmd_oracle_check(cfg, out);
    if (bench_cmd->parsed()) return cmd_bench(cfg, out, err);
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInvalidInput;
}

}  // namespace hdbscan
