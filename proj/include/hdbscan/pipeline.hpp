#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hdbscan/boruvka.hpp"
#include "hdbscan/extraction.hpp"
#include "hdbscan/hierarchy.hpp"
#include "hdbscan/points.hpp"

namespace hdbscan {

struct ClusterParams {
  Metric metric{};
  std::size_t min_samples = 5;       ///< k
  std::size_t min_cluster_size = 5;  ///< m
  MstMode mode = MstMode::exact;
  bool allow_single_cluster = false;
  std::size_t leaf_size = SpaceTree::kDefaultLeafSize;
};

/// Throws InvalidInput on k < 1, k > n_points, m < 2 or leaf_size < 1.
void validate(const ClusterParams& params, std::size_t n_points);

struct ClusterResult {
  CoreDistances core;
  MstEdgeList mst;
  Dendrogram dendrogram;
  CondensedTree condensed;
  StabilityMap stability;
  FlatClustering flat;
  BoruvkaStats stats;
};

/// Tree build, core distances, dual-tree Boruvka, single linkage, condense,
/// stability and selection.
ClusterResult cluster(const PointSet& points, const ClusterParams& params);

/// Hierarchy and extraction stages on a precomputed spanning tree.
ClusterResult cluster_from_mst(std::size_t n_points, CoreDistances core, MstEdgeList mst, const ClusterParams& params);

/// DBSCAN* labels at scale epsilon from the same hierarchy.
std::vector<std::int64_t> dbscan_star(const PointSet& points, const ClusterParams& params, double epsilon);

}  // namespace hdbscan
