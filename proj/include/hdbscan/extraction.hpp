#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hdbscan/hierarchy.hpp"

namespace hdbscan {

/// Stability per condensed cluster: the sum over the cluster's rows of
/// (lambda_val - birth lambda) * child_size. May be +inf when duplicate
/// points produce zero-distance merges.
struct StabilityMap {
  std::size_t first_id = 0;
  std::vector<double> sigma;

  double operator[](std::size_t cluster_id) const { return sigma.at(cluster_id - first_id); }
};

struct FlatClustering {
  std::vector<std::int64_t> labels;    ///< -1 noise, otherwise 0..n_clusters-1
  std::vector<std::size_t> selected;  ///< condensed cluster ids, ascending; label i belongs to selected[i]
  std::size_t n_clusters = 0;
};

StabilityMap stability(const CondensedTree& condensed);

/// Bottom-up choice between a cluster and the best selection among its
/// descendants; ties keep the cluster. Without allow_single_cluster the
/// root is never selected. Returns ascending cluster ids.
std::vector<std::size_t> select_clusters(const CondensedTree& condensed, const StabilityMap& sigma,
                                         bool allow_single_cluster);

/// Labels each point by the selected cluster it (or one of that cluster's
/// condensed descendants) falls out of. Throws InternalError when the
/// selection is not an antichain, InvalidInput on unknown cluster ids.
FlatClustering assign_labels(const CondensedTree& condensed, const std::vector<std::size_t>& selected);

}  // namespace hdbscan
