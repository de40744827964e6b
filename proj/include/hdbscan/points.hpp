#pragma once

#include <cmath>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hdbscan {

/// Row-major N x D matrix of finite doubles. Row order is the canonical point
/// index used by every downstream structure. Immutable once built.
class PointSet {
 public:
  /// Throws InvalidInput when data is empty, n_dims is zero, the size is not a
  /// multiple of n_dims, or any entry is non-finite.
  PointSet(std::vector<double> data, std::size_t n_dims);

  static PointSet from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t size() const noexcept { return n_points_; }
  std::size_t dims() const noexcept { return n_dims_; }

  std::span<const double> operator[](std::size_t i) const noexcept {
    return {data_.data() + i * n_dims_, n_dims_};
  }
  std::span<const double> data() const noexcept { return data_; }

 private:
  std::vector<double> data_;
  std::size_t n_points_ = 0;
  std::size_t n_dims_ = 0;
};

enum class MetricKind { euclidean, manhattan, chebyshev, custom };

namespace kernels {

inline double euclidean(const double* a, const double* b, std::size_t d) noexcept {
  double sum = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    const double diff = a[i] - b[i];
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

inline double manhattan(const double* a, const double* b, std::size_t d) noexcept {
  double sum = 0.0;
  for (std::size_t i = 0; i < d; ++i) sum += std::abs(a[i] - b[i]);
  return sum;
}

inline double chebyshev(const double* a, const double* b, std::size_t d) noexcept {
  double best = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    const double diff = std::abs(a[i] - b[i]);
    if (diff > best) best = diff;
  }
  return best;
}

}  // namespace kernels

/// A distance function on R^D. The built-in kinds are monotone in the
/// per-coordinate gaps, so axis-aligned boxes yield valid lower bounds; a
/// custom metric gets a zero lower bound (no pruning).
class Metric {
 public:
  using Function = std::function<double(std::span<const double>, std::span<const double>)>;

  Metric(MetricKind kind = MetricKind::euclidean);

  /// `fn` must satisfy the metric axioms; this is not checked.
  static Metric custom(Function fn, std::string name = "custom");

  /// Accepts "euclidean", "manhattan", "chebyshev". Throws InvalidInput.
  static Metric parse(std::string_view name);

  MetricKind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }

  double operator()(std::span<const double> a, std::span<const double> b) const {
    switch (kind_) {
      case MetricKind::euclidean: return kernels::euclidean(a.data(), b.data(), a.size());
      case MetricKind::manhattan: return kernels::manhattan(a.data(), b.data(), a.size());
      case MetricKind::chebyshev: return kernels::chebyshev(a.data(), b.data(), a.size());
      case MetricKind::custom: return fn_(a, b);
    }
    return 0.0;
  }

  /// Lower bound on the distance between any point of box A and any point of
  /// box B. Zero when the boxes overlap, and always zero for custom metrics.
  double box_gap(std::span<const double> lo_a, std::span<const double> hi_a,
                 std::span<const double> lo_b, std::span<const double> hi_b) const noexcept;

  /// Lower bound on the distance from `p` to any point of the box [lo, hi].
  double point_box_gap(std::span<const double> p, std::span<const double> lo,
                       std::span<const double> hi) const noexcept;

 private:
  MetricKind kind_;
  std::string name_;
  Function fn_;
};

/// Checked distance evaluation. Throws InvalidInput on dimension mismatch.
double distance(const Metric& metric, std::span<const double> a, std::span<const double> b);

/// Reads delimited text: comma or whitespace separated, one point per line.
/// A first row containing a non-numeric cell is a header when data rows
/// follow it. Throws ParseError (with line number) or InvalidInput.
PointSet load_points(const std::filesystem::path& path);

/// Same parser over an in-memory buffer.
PointSet parse_points(std::string_view text);

/// Exact-duplicate collapse. `unique` keeps first occurrences in input order;
/// `representative[i]` is the row of `unique` holding point i.
struct Deduplicated {
  PointSet unique;
  std::vector<std::size_t> representative;
};

Deduplicated deduplicate(const PointSet& points);

}  // namespace hdbscan
