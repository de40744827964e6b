#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hdbscan/points.hpp"

namespace hdbscan {

using NodeId = std::int32_t;
inline constexpr NodeId kNoNode = -1;

struct Neighbor {
  std::size_t index;
  double distance;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// One node of a SpaceTree. Descendant points occupy the contiguous range
/// [begin, end) of the tree ordering; only leaves hold points directly.
struct TreeNode {
  std::size_t begin = 0;
  std::size_t end = 0;
  NodeId parent = kNoNode;
  NodeId left = kNoNode;
  NodeId right = kNoNode;
  /// Max distance from the region centroid to a point held by this node.
  double rho = 0.0;
  /// Upper bound on the distance from the centroid to any descendant point;
  /// never smaller than a child's value.
  double lambda_desc = 0.0;

  bool is_leaf() const noexcept { return left == kNoNode; }
  std::size_t count() const noexcept { return end - begin; }
};

/// kd-style tree: each internal node splits its points at the median of the
/// widest dimension (ties to the lowest dimension index; equal coordinates
/// ordered by point index). Regions are tight bounding boxes.
class SpaceTree {
 public:
  static constexpr std::size_t kDefaultLeafSize = 40;

  /// Throws InvalidInput when leaf_size is zero.
  SpaceTree(const PointSet& points, Metric metric, std::size_t leaf_size = kDefaultLeafSize);

  const Metric& metric() const noexcept { return metric_; }
  std::size_t leaf_size() const noexcept { return leaf_size_; }
  std::size_t size() const noexcept { return permutation_.size(); }
  std::size_t dims() const noexcept { return dims_; }

  NodeId root() const noexcept { return 0; }
  std::size_t node_count() const noexcept { return nodes_.size(); }
  const TreeNode& node(NodeId id) const noexcept { return nodes_[static_cast<std::size_t>(id)]; }
  std::span<const TreeNode> nodes() const noexcept { return nodes_; }

  std::span<const double> lower(NodeId id) const noexcept { return box_slice(lower_, id); }
  std::span<const double> upper(NodeId id) const noexcept { return box_slice(upper_, id); }
  std::span<const double> centroid(NodeId id) const noexcept { return box_slice(centroid_, id); }

  /// Canonical indices of the node's descendant points, in tree order.
  std::span<const std::size_t> points_of(NodeId id) const noexcept {
    const auto& n = node(id);
    return std::span<const std::size_t>(permutation_).subspan(n.begin, n.count());
  }

  /// Tree position -> canonical point index.
  std::span<const std::size_t> permutation() const noexcept { return permutation_; }
  /// Canonical point index -> tree position.
  std::span<const std::size_t> inverse_permutation() const noexcept { return inverse_; }

  /// Coordinates of the point at tree position `pos` (tree-ordered copy).
  std::span<const double> point_at(std::size_t pos) const noexcept {
    return {ordered_.data() + pos * dims_, dims_};
  }

  /// k nearest dataset points to `query`, ascending by (distance, index).
  /// Throws InvalidInput unless 1 <= k <= N and the query dimension matches.
  std::vector<Neighbor> knn(std::span<const double> query, std::size_t k) const;

  /// Region-based lower bound on the distance between any descendant point
  /// of `a` and any descendant point of `b`. Zero when the regions overlap.
  double node_min_distance(NodeId a, NodeId b) const noexcept;

 private:
  std::span<const double> box_slice(const std::vector<double>& v, NodeId id) const noexcept {
    return {v.data() + static_cast<std::size_t>(id) * dims_, dims_};
  }
  NodeId build_node(std::size_t begin, std::size_t end, NodeId parent, const PointSet& points);
  void knn_search(NodeId id, std::span<const double> query, std::size_t k, std::vector<Neighbor>& heap) const;

  Metric metric_;
  std::size_t leaf_size_;
  std::size_t dims_;
  std::vector<TreeNode> nodes_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<double> centroid_;
  std::vector<std::size_t> permutation_;
  std::vector<std::size_t> inverse_;
  std::vector<double> ordered_;
};

}  // namespace hdbscan
