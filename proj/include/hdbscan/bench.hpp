#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "hdbscan/boruvka.hpp"
#include "hdbscan/points.hpp"

namespace hdbscan {

inline constexpr double kBlobHypercubeSide = 20.0;
inline constexpr double kBlobStddev = 1.0;

/// `clusters` isotropic Gaussian blobs (standard deviation kBlobStddev) with
/// centres uniform in [-side/2, side/2]^d; points are assigned to blobs
/// round-robin. Deterministic in the seed.
PointSet generate_blobs(std::size_t n, std::size_t d, std::size_t clusters, std::uint64_t seed);

struct BenchConfig {
  std::vector<std::size_t> sizes;
  std::vector<std::size_t> dims{2};
  std::vector<std::size_t> clusters{10};
  std::size_t repetitions = 1;
  std::uint64_t seed = 0;
  MstMode mode = MstMode::exact;
  std::size_t min_samples = 5;
  std::size_t min_cluster_size = 5;
  std::size_t leaf_size = 40;
};

struct BenchRecord {
  std::size_t n_points;
  std::size_t n_dims;
  std::size_t n_clusters_generated;
  double wall_seconds;
  MstMode mode;
  std::uint64_t seed;
};

/// Runs the full pipeline (tree build through labels) once per
/// (size, dim, clusters, repetition) and times it. Throws InvalidInput when
/// sizes are empty or not ascending.
std::vector<BenchRecord> run_bench(const BenchConfig& config);

/// Header line plus one comma-separated row per record.
std::string format_bench_csv(const std::vector<BenchRecord>& records);

/// Least-squares slope of log2(wall_seconds) against log2(n_points).
double loglog_slope(const std::vector<BenchRecord>& records);

const char* mode_name(MstMode mode) noexcept;
/// Accepts "exact", "fast_ties" and "fast-ties". Throws InvalidInput.
MstMode parse_mode(const std::string& name);

}  // namespace hdbscan
