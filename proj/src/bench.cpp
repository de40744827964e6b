#include "hdbscan/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>

#include "hdbscan/error.hpp"
#include "hdbscan/pipeline.hpp"

namespace hdbscan {

PointSet generate_blobs(std::size_t n, std::size_t d, std::size_t clusters, std::uint64_t seed) {
  if (n == 0 || d == 0 || clusters == 0) throw InvalidInput("blob generator needs positive n, d and cluster count");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> centre(-kBlobHypercubeSide / 2.0, kBlobHypercubeSide / 2.0);
  std::normal_distribution<double> noise(0.0, kBlobStddev);

  std::vector<double> centres(clusters * d);
  for (auto& c : centres) c = centre(rng);
  std::vector<double> data(n * d);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t blob = i % clusters;
    for (std::size_t j = 0; j < d; ++j) data[i * d + j] = centres[blob * d + j] + noise(rng);
  }
  return PointSet(std::move(data), d);
}

std::vector<BenchRecord> run_bench(const BenchConfig& config) {
  if (config.sizes.empty()) throw InvalidInput("benchmark needs at least one size");
  for (std::size_t i = 1; i < config.sizes.size(); ++i) {
    if (config.sizes[i] < config.sizes[i - 1]) throw InvalidInput("benchmark sizes must be ascending");
  }
  ClusterParams params;
  params.min_samples = config.min_samples;
  params.min_cluster_size = config.min_cluster_size;
  params.mode = config.mode;
  params.leaf_size = config.leaf_size;

  std::vector<BenchRecord> records;
  for (const std::size_t n : config.sizes) {
    for (const std::size_t d : config.dims) {
      for (const std::size_t c : config.clusters) {
        for (std::size_t rep = 0; rep < config.repetitions; ++rep) {
          const std::uint64_t seed = config.seed + rep;
          const PointSet points = generate_blobs(n, d, c, seed);
          const auto start = std::chrono::steady_clock::now();
          const auto result = cluster(points, params);
          const auto stop = std::chrono::steady_clock::now();
          double seconds = std::chrono::duration<double>(stop - start).count();
          // Clock granularity must not produce a zero timing.
          if (!(seconds > 0.0)) seconds = 1e-9;
          records.push_back({n, d, c, seconds, config.mode, seed});
          (void)result;
        }
      }
    }
  }
  return records;
}

std::string format_bench_csv(const std::vector<BenchRecord>& records) {
  std::string out = "n_points,n_dims,n_clusters_generated,wall_seconds,mode,seed\n";
  char buffer[64];
  for (const auto& r : records) {
    std::snprintf(buffer, sizeof buffer, "%.9g", r.wall_seconds);
    out += std::to_string(r.n_points) + ',' + std::to_string(r.n_dims) + ',' + std::to_string(r.n_clusters_generated) +
           ',' + buffer + ',' + mode_name(r.mode) + ',' + std::to_string(r.seed) + '\n';
  }
  return out;
}

double loglog_slope(const std::vector<BenchRecord>& records) {
  if (records.size() < 2) throw InvalidInput("slope needs at least two records");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& r : records) {
    const double x = std::log2(static_cast<double>(r.n_points));
    const double y = std::log2(r.wall_seconds);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(records.size());
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw InvalidInput("slope needs at least two distinct sizes");
  return (n * sxy - sx * sy) / denom;
}

const char* mode_name(MstMode mode) noexcept { return mode == MstMode::exact ? "exact" : "fast_ties"; }

MstMode parse_mode(const std::string& name) {
  if (name == "exact") return MstMode::exact;
  if (name == "fast_ties" || name == "fast-ties") return MstMode::fast_ties;
  throw InvalidInput("unknown mode '" + name + "' (expected exact or fast_ties)");
}

}  // namespace hdbscan
