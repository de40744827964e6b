#pragma once

#include <cstddef>
#include <vector>

#include "hdbscan/points.hpp"
#include "hdbscan/space_tree.hpp"

namespace hdbscan {

/// kappa[i] is the distance from point i to its k-th nearest neighbour, with
/// the point itself counted as the first neighbour.
struct CoreDistances {
  std::vector<double> kappa;
  std::size_t k = 0;
};

/// Throws InvalidInput when k is zero or exceeds the number of points.
CoreDistances core_distances(const SpaceTree& tree, const PointSet& points, std::size_t k);

/// max{kappa[i], kappa[j], d(X_i, X_j)} for i != j, and 0 for i == j.
double mutual_reachability(const CoreDistances& core, const Metric& metric, const PointSet& points, std::size_t i,
                           std::size_t j);

}  // namespace hdbscan
