#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hdbscan/boruvka.hpp"
#include "hdbscan/core_distance.hpp"

namespace hdbscan {

/// Ids 0..N-1 are points; merge t creates cluster id N+t.
struct Merge {
  std::size_t left;
  std::size_t right;
  double distance;
  std::size_t size;

  friend bool operator==(const Merge&, const Merge&) = default;
};

struct Dendrogram {
  std::size_t n_points = 0;
  std::vector<Merge> merges;
};

struct CondensedRow {
  std::size_t parent;
  std::size_t child;  ///< point index when < n_points, otherwise a cluster id
  double lambda_val;  ///< 1 / distance; +inf for zero-distance merges
  std::size_t child_size;

  friend bool operator==(const CondensedRow&, const CondensedRow&) = default;
};

/// Minimum-cluster-size smoothing of a dendrogram. The root cluster id is
/// n_points; further clusters are numbered n_points+1, ... in breadth-first
/// discovery order, so a child cluster always has a larger id than its parent.
/// Rows are sorted by (parent, lambda_val, child).
struct CondensedTree {
  std::size_t n_points = 0;
  std::size_t n_clusters = 0;
  std::vector<CondensedRow> rows;

  std::size_t root() const noexcept { return n_points; }
  bool is_cluster(std::size_t id) const noexcept { return id >= n_points; }

  /// Birth lambda per cluster, indexed by id - n_points. Root is 0.
  std::vector<double> birth_lambdas() const;
  /// Parent cluster per cluster, indexed by id - n_points. Root maps to itself.
  std::vector<std::size_t> cluster_parents() const;
};

/// Sorts MST edges by (w, i, j) and replays them through a union-find.
/// Throws InternalError when the edges do not span n points.
Dendrogram single_linkage(const MstEdgeList& mst, std::size_t n);

/// Throws InvalidInput when min_cluster_size < 2.
CondensedTree condense(const Dendrogram& dendrogram, std::size_t min_cluster_size);

/// Flat DBSCAN* clustering at scale epsilon read off the dendrogram: points
/// joined by merges at distance < epsilon form clusters; components of one
/// point are noise (-1). Labels are numbered by lowest member index.
/// Throws InvalidInput when epsilon <= 0.
std::vector<std::int64_t> dbscan_star_cut(const Dendrogram& dendrogram, const CoreDistances& core, double epsilon);

}  // namespace hdbscan
