#pragma once

// Brute-force reference implementations. Quadratic or worse, kept
// deliberately simple, and independent of the tree, union-find and
// traversal code they check. Only PointSet and Metric are shared.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hdbscan/boruvka.hpp"
#include "hdbscan/extraction.hpp"
#include "hdbscan/pipeline.hpp"
#include "hdbscan/points.hpp"
#include "hdbscan/space_tree.hpp"

namespace hdbscan::oracle {

inline constexpr std::size_t kMaxMatrixPoints = 5000;
inline constexpr std::size_t kMaxAntichainClusters = 20;

/// Full N x N mutual reachability matrix with zero diagonal.
struct DistanceMatrix {
  std::size_t n = 0;
  std::vector<double> values;

  double operator()(std::size_t i, std::size_t j) const noexcept { return values[i * n + j]; }
};

/// Exhaustive k-NN per point, ordered by (distance, index), self included.
/// Throws InvalidInput unless 1 <= k <= N.
std::vector<std::vector<Neighbor>> brute_knn(const PointSet& points, const Metric& metric, std::size_t k);

/// k-th neighbour distance per point from brute_knn.
std::vector<double> brute_core_distances(const PointSet& points, const Metric& metric, std::size_t k);

/// Throws InvalidInput above kMaxMatrixPoints.
DistanceMatrix mreach_matrix(const PointSet& points, const Metric& metric, std::size_t k);

/// Prim's algorithm on the dense matrix with edge_key_less ordering.
MstEdgeList prim_mst_mreach(const PointSet& points, const Metric& metric, std::size_t k);

/// DBSCAN* straight from its definitions: core points have at least k points
/// (self included) strictly within epsilon; two core points are linked when
/// each lies strictly within epsilon of the other; linked components of at
/// least two core points are clusters, numbered by lowest member index.
std::vector<std::int64_t> dbscan_star_reference(const PointSet& points, const Metric& metric, double epsilon,
                                                std::size_t k);

struct AntichainResult {
  double total = 0.0;
  std::vector<std::size_t> clusters;  ///< ascending ids
};

/// Sum of sigma over `clusters` in ascending id order.
double selection_total(const StabilityMap& sigma, const std::vector<std::size_t>& clusters);

/// Exhaustive maximum over all antichains of the condensed cluster tree.
/// The root is a candidate only when allow_root. Throws InvalidInput above
/// kMaxAntichainClusters clusters.
AntichainResult brute_antichain_best(const CondensedTree& condensed, const StabilityMap& sigma, bool allow_root);

/// Reference pipeline: brute core distances and Prim's tree feeding the
/// shared hierarchy and extraction stages.
ClusterResult oracle_cluster(const PointSet& points, const ClusterParams& params);

/// True when a and b induce the same partition (noise must match noise).
bool same_partition(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b);

}  // namespace hdbscan::oracle
