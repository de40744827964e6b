#include "hdbscan/core_distance.hpp"

#include <algorithm>

#include "hdbscan/error.hpp"

namespace hdbscan {

CoreDistances core_distances(const SpaceTree& tree, const PointSet& points, std::size_t k) {
  if (k == 0 || k > points.size()) {
    throw InvalidInput("min samples k = " + std::to_string(k) + " exceeds the number of points (" +
                       std::to_string(points.size()) + "); reduce k");
  }
  CoreDistances core{std::vector<double>(points.size()), k};
  for (std::size_t i = 0; i < points.size(); ++i) core.kappa[i] = tree.knn(points[i], k).back().distance;
  return core;
}

double mutual_reachability(const CoreDistances& core, const Metric& metric, const PointSet& points, std::size_t i,
                           std::size_t j) {
  if (i == j) return 0.0;
  return std::max({core.kappa[i], core.kappa[j], metric(points[i], points[j])});
}

}  // namespace hdbscan
