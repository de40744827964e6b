#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "hdbscan/points.hpp"

namespace fixtures {

/// 1-D points {0, 1, 3, 7}.
inline hdbscan::PointSet line4() { return hdbscan::PointSet({0.0, 1.0, 3.0, 7.0}, 1); }

inline hdbscan::PointSet uniform(std::size_t n, std::size_t d, std::uint64_t seed, double scale = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, scale);
  std::vector<double> data(n * d);
  for (auto& v : data) v = u(rng);
  return hdbscan::PointSet(std::move(data), d);
}

/// Integer grid coordinates: heavy distance ties.
inline hdbscan::PointSet lattice(std::size_t n, std::size_t d, std::uint64_t seed, int extent = 6) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> u(0, extent);
  std::vector<double> data(n * d);
  for (auto& v : data) v = u(rng);
  return hdbscan::PointSet(std::move(data), d);
}

/// Two 2-D Gaussian blobs of `per_blob` points, centred at (0,0) and (50,50).
/// Points 0..per_blob-1 belong to the first blob.
inline hdbscan::PointSet two_blobs(std::size_t per_blob = 50, std::uint64_t seed = 1) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> data;
  for (int blob = 0; blob < 2; ++blob) {
    for (std::size_t i = 0; i < per_blob; ++i) {
      data.push_back(50.0 * blob + g(rng));
      data.push_back(50.0 * blob + g(rng));
    }
  }
  return hdbscan::PointSet(std::move(data), 2);
}

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("hdbscan_test_" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::filesystem::path file(const std::string& name) const { return path_ / name; }

  std::filesystem::path write(const std::string& name, const std::string& content) const {
    const auto p = file(name);
    std::ofstream(p, std::ios::binary) << content;
    return p;
  }

 private:
  std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline std::string to_csv(const hdbscan::PointSet& points) {
  std::string out;
  char buffer[64];
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = 0; j < points.dims(); ++j) {
      std::snprintf(buffer, sizeof buffer, "%.17g", points[i][j]);
      out += (j ? "," : "") + std::string(buffer);
    }
    out += '\n';
  }
  return out;
}

}  // namespace fixtures
