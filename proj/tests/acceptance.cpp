// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "hdbscan/bench.hpp"
#include "hdbscan/cli.hpp"
#include "hdbscan/core_distance.hpp"
#include "hdbscan/oracle.hpp"
#include "hdbscan/pipeline.hpp"

using namespace hdbscan;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void report(int id, const char* title, bool ok, const std::string& detail) {
  std::printf("criterion %d %s: %s (%s)\n", id, title, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

bool close_rel(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b)); }

struct Dataset {
  PointSet points;
  std::size_t k;
};

// N in [50, 500], D in {2, 5, 10}, k in {3, 5, 10}; alternating uniform and
// Gaussian-blob layouts.
std::vector<Dataset> random_datasets(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::size_t dims[] = {2, 5, 10};
  const std::size_t ks[] = {3, 5, 10};
  std::vector<Dataset> out;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t n = 50 + rng() % 451;
    const std::size_t d = dims[rng() % 3];
    const std::size_t k = ks[rng() % 3];
    auto points = i % 2 ? generate_blobs(n, d, 2 + rng() % 6, rng()) : fixtures::uniform(n, d, rng(), 10.0);
    out.push_back({std::move(points), k});
  }
  return out;
}

void mst_equivalence(const std::vector<Dataset>& sets) {
  const auto start = Clock::now();
  std::size_t matched = 0;
  double worst = 0.0;
  for (const auto& s : sets) {
    ClusterParams p;
    p.min_samples = s.k;
    const SpaceTree tree(s.points, p.metric, p.leaf_size);
    const auto core = core_distances(tree, s.points, s.k);
    const auto fast = boruvka_mst(tree, core, MstMode::exact);
    const auto slow = oracle::prim_mst_mreach(s.points, p.metric, s.k);
    const auto a = fast.sorted_weights();
    const auto b = slow.sorted_weights();
    bool ok = a.size() == b.size() && close_rel(fast.total_weight(), slow.total_weight(), 1e-9);
    for (std::size_t i = 0; ok && i < a.size(); ++i) ok = close_rel(a[i], b[i], 1e-9);
    if (ok) ++matched;
    worst = std::max(worst, std::abs(fast.total_weight() - slow.total_weight()) / slow.total_weight());
  }
  const double elapsed = seconds_since(start);
  char detail[160];
  std::snprintf(detail, sizeof detail, "%zu/%zu datasets match, worst relative weight gap %.3g, %.2f s", matched,
                sets.size(), worst, elapsed);
  report(1, "MST oracle equivalence", matched == sets.size() && elapsed < 60.0, detail);
}

void label_equivalence(const std::vector<Dataset>& sets) {
  std::size_t matched = 0;
  std::size_t runs = 0;
  for (const auto& s : sets) {
    for (const std::size_t m : {5, 15}) {
      ClusterParams p;
      p.min_samples = s.k;
      p.min_cluster_size = m;
      ++runs;
      if (oracle::same_partition(cluster(s.points, p).flat.labels, oracle::oracle_cluster(s.points, p).flat.labels)) {
        ++matched;
      }
    }
  }
  report(2, "end-to-end label equivalence", matched == runs,
         std::to_string(matched) + "/" + std::to_string(runs) + " runs identical up to relabeling");
}

void dbscan_equivalence() {
  std::mt19937_64 rng(303);
  std::size_t matched = 0;
  std::size_t runs = 0;
  for (int i = 0; i < 10; ++i) {
    const std::size_t n = 100 + rng() % 300;
    const auto points = i % 3 == 2 ? fixtures::lattice(n, 2, rng(), 15) : generate_blobs(n, 2 + i % 3, 4, rng());
    ClusterParams p;
    p.min_samples = 2 + rng() % 8;
    const auto core = oracle::brute_core_distances(points, p.metric, p.min_samples);
    const double hi = *std::max_element(core.begin(), core.end()) * 3.0;
    std::uniform_real_distribution<double> eps_dist(hi * 1e-3, hi);
    for (int e = 0; e < 10; ++e) {
      const double eps = eps_dist(rng);
      ++runs;
      if (oracle::same_partition(dbscan_star(points, p, eps),
                                 oracle::dbscan_star_reference(points, p.metric, eps, p.min_samples))) {
        ++matched;
      }
    }
  }
  report(3, "DBSCAN* cut equivalence", matched == runs,
         std::to_string(matched) + "/" + std::to_string(runs) + " cuts identical up to relabeling");
}

// Random cluster forest with up to 12 clusters and real-valued stabilities.
void extraction_optimality() {
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> sigma_dist(0.0, 10.0);
  std::size_t matched = 0;
  const std::size_t trials = 100;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t clusters = 1 + rng() % 12;
    std::vector<std::size_t> parent(clusters, 0);
    for (std::size_t c = 1; c < clusters; ++c) parent[c] = rng() % c;
    CondensedTree tree{clusters, clusters, {}};
    std::vector<std::size_t> size(clusters, 1);
    for (std::size_t c = clusters; c-- > 1;) size[parent[c]] += size[c];
    for (std::size_t c = 0; c < clusters; ++c) {
      if (c > 0) tree.rows.push_back({clusters + parent[c], clusters + c, static_cast<double>(c), size[c]});
      tree.rows.push_back({clusters + c, c, static_cast<double>(c) + 0.5, 1});
    }
    StabilityMap sigma{clusters, std::vector<double>(clusters)};
    for (auto& s : sigma.sigma) s = t % 4 == 0 ? std::floor(sigma_dist(rng) / 3.0) : sigma_dist(rng);
    const bool allow_root = t % 2 == 1;
    const auto chosen = select_clusters(tree, sigma, allow_root);
    if (oracle::selection_total(sigma, chosen) == oracle::brute_antichain_best(tree, sigma, allow_root).total) {
      ++matched;
    }
  }
  report(4, "extraction optimality", matched == trials,
         std::to_string(matched) + "/" + std::to_string(trials) + " trees at the exhaustive optimum");
}

void mreach_properties() {
  std::mt19937_64 rng(505);
  std::size_t triples = 0;
  double worst_asym = 0.0;
  double worst_triangle = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < 10; ++i) {
    const std::size_t n = 200 + rng() % 800;
    const std::size_t d = 1 + rng() % 8;
    const auto points = i % 2 ? generate_blobs(n, d, 5, rng()) : fixtures::uniform(n, d, rng(), 5.0);
    const Metric metric(static_cast<MetricKind>(i % 3));
    const SpaceTree tree(points, metric, 40);
    const auto core = core_distances(tree, points, 1 + rng() % 10);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (int t = 0; t < 10000; ++t) {
      const std::size_t a = pick(rng), b = pick(rng), c = pick(rng);
      const double ab = mutual_reachability(core, metric, points, a, b);
      const double ba = mutual_reachability(core, metric, points, b, a);
      const double ac = mutual_reachability(core, metric, points, a, c);
      const double bc = mutual_reachability(core, metric, points, b, c);
      worst_asym = std::max(worst_asym, std::abs(ab - ba));
      worst_triangle = std::max(worst_triangle, ac - (ab + bc));
      ++triples;
    }
  }
  char detail[160];
  std::snprintf(detail, sizeof detail, "%zu triples, max asymmetry %.3g, max triangle excess %.3g", triples,
                worst_asym, worst_triangle);
  report(5, "mutual reachability properties", worst_asym == 0.0 && worst_triangle <= 1e-12, detail);
}

void scaling() {
  BenchConfig config;
  for (std::size_t n = 1u << 10; n <= 1u << 16; n <<= 1) config.sizes.push_back(n);
  config.dims = {2};
  config.clusters = {10};
  config.repetitions = 3;
  config.seed = 606;
  const auto records = run_bench(config);
  const double slope = loglog_slope(records);
  double largest = 0.0;
  for (const auto& r : records) {
    if (r.n_points == config.sizes.back()) largest = std::max(largest, r.wall_seconds);
  }
  char detail[160];
  std::snprintf(detail, sizeof detail, "log-log slope %.3f over N=2^10..2^16, %.2f s at N=2^16", slope, largest);
  report(6, "sub-quadratic scaling", slope <= 1.4, detail);
}

void pruning() {
  const std::size_t n = 1u << 14;
  const auto points = generate_blobs(n, 2, 10, 707);
  const SpaceTree tree(points, Metric{}, SpaceTree::kDefaultLeafSize);
  const auto core = core_distances(tree, points, 5);
  BoruvkaStats stats;
  boruvka_mst(tree, core, MstMode::exact, &stats);
  const double ratio = static_cast<double>(stats.base_case_calls) / (static_cast<double>(n) * static_cast<double>(n));
  char detail[160];
  std::snprintf(detail, sizeof detail, "%zu base cases at N=2^14 = %.4f N^2", stats.base_case_calls, ratio);
  report(7, "pruning effectiveness", ratio < 0.05, detail);
}

void determinism() {
  fixtures::TempDir dir;
  // Blobs plus a tie-heavy lattice block and exact duplicates.
  std::string text = fixtures::to_csv(generate_blobs(4000, 3, 8, 808));
  text += fixtures::to_csv(fixtures::lattice(1000, 3, 809, 4));
  const auto input = dir.write("input.csv", text).string();

  std::vector<std::string> outputs;
  bool all_ok = true;
  for (int run = 0; run < 3; ++run) {
    for (const char* mode : {"exact", "fast_ties"}) {
      const auto labels = dir.file("labels_" + std::string(mode) + std::to_string(run)).string();
      const auto tree = dir.file("tree_" + std::string(mode) + std::to_string(run)).string();
      std::ostringstream out, err;
      const int code = run_cli({"cluster", "--input", input, "--mode", mode, "--min-samples", "5",
                                "--min-cluster-size", "15", "--labels-out", labels, "--tree-out", tree},
                               out, err);
      all_ok = all_ok && code == kExitOk;
      outputs.push_back(fixtures::read_file(labels) + '\0' + fixtures::read_file(tree));
    }
  }
  // Compare each run against the first run in the same mode.
  bool identical = true;
  for (std::size_t i = 2; i < outputs.size(); ++i) identical = identical && outputs[i] == outputs[i % 2];
  report(8, "determinism", all_ok && identical,
         std::to_string(outputs.size()) + " CLI runs over 2 modes, label and tree bytes " +
             (identical ? "identical" : "DIFFER"));
}

}  // namespace

int main() {
  const auto sets = random_datasets(50, 101);
  mst_equivalence(sets);
  label_equivalence(sets);
  dbscan_equivalence();
  extraction_optimality();
  mreach_properties();
  scaling();
  pruning();
  determinism();
  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
