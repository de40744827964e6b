#include "hdbscan/pipeline.hpp"

#include "hdbscan/error.hpp"

namespace hdbscan {

void validate(const ClusterParams& params, std::size_t n_points) {
  if (params.min_samples < 1) throw InvalidInput("min samples must be at least 1");
  if (params.min_samples > n_points) {
    throw InvalidInput("min samples (" + std::to_string(params.min_samples) + ") exceeds the number of points (" +
                       std::to_string(n_points) + "); reduce it");
  }
  if (params.min_cluster_size < 2) throw InvalidInput("min cluster size must be at least 2");
  if (params.leaf_size < 1) throw InvalidInput("leaf size must be at least 1");
}

ClusterResult cluster_from_mst(std::size_t n_points, CoreDistances core, MstEdgeList mst, const ClusterParams& params) {
  ClusterResult r;
  r.core = std::move(core);
  r.mst = std::move(mst);
  r.dendrogram = single_linkage(r.mst, n_points);
  r.condensed = condense(r.dendrogram, params.min_cluster_size);
  r.stability = stability(r.condensed);
  r.flat = assign_labels(r.condensed, select_clusters(r.condensed, r.stability, params.allow_single_cluster));
  return r;
}

ClusterResult cluster(const PointSet& points, const ClusterParams& params) {
  validate(params, points.size());
  const SpaceTree tree(points, params.metric, params.leaf_size);
  auto core = core_distances(tree, points, params.min_samples);
  BoruvkaStats stats;
  auto mst = boruvka_mst(tree, core, params.mode, &stats);
  auto result = cluster_from_mst(points.size(), std::move(core), std::move(mst), params);
  result.stats = stats;
  return result;
}

std::vector<std::int64_t> dbscan_star(const PointSet& points, const ClusterParams& params, double epsilon) {
  validate(params, points.size());
  if (!(epsilon > 0.0)) throw InvalidInput("epsilon must be positive");
  const SpaceTree tree(points, params.metric, params.leaf_size);
  const auto core = core_distances(tree, points, params.min_samples);
  // A fast_ties tree is not guaranteed minimal, and only the minimal one
  // reproduces DBSCAN* exactly.
  const auto mst = boruvka_mst(tree, core, MstMode::exact);
  return dbscan_star_cut(single_linkage(mst, points.size()), core, epsilon);
}

}  // namespace hdbscan
