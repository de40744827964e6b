#include "hdbscan/space_tree.hpp"

#include <algorithm>
#include <limits>

#include "hdbscan/error.hpp"

namespace hdbscan {

namespace {

bool neighbor_less(const Neighbor& a, const Neighbor& b) noexcept {
  return a.distance < b.distance || (a.distance == b.distance && a.index < b.index);
}

}  // namespace

SpaceTree::SpaceTree(const PointSet& points, Metric metric, std::size_t leaf_size)
    : metric_(std::move(metric)), leaf_size_(leaf_size), dims_(points.dims()) {
  if (leaf_size_ == 0) throw InvalidInput("leaf size must be at least 1");
  const std::size_t n = points.size();
  permutation_.resize(n);
  for (std::size_t i = 0; i < n; ++i) permutation_[i] = i;

  const std::size_t expected_nodes = 2 * (n / leaf_size_ + 1);
  nodes_.reserve(expected_nodes);
  lower_.reserve(expected_nodes * dims_);
  upper_.reserve(expected_nodes * dims_);
  centroid_.reserve(expected_nodes * dims_);
  build_node(0, n, kNoNode, points);

  inverse_.resize(n);
  ordered_.resize(n * dims_);
  for (std::size_t pos = 0; pos < n; ++pos) {
    inverse_[permutation_[pos]] = pos;
    const auto row = points[permutation_[pos]];
    std::copy(row.begin(), row.end(), ordered_.begin() + static_cast<std::ptrdiff_t>(pos * dims_));
  }
}

NodeId SpaceTree::build_node(std::size_t begin, std::size_t end, NodeId parent, const PointSet& points) {
  const auto id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back(TreeNode{begin, end, parent, kNoNode, kNoNode, 0.0, 0.0});
  lower_.resize(lower_.size() + dims_, std::numeric_limits<double>::infinity());
  upper_.resize(upper_.size() + dims_, -std::numeric_limits<double>::infinity());
  centroid_.resize(centroid_.size() + dims_, 0.0);

  const std::size_t base = static_cast<std::size_t>(id) * dims_;
  for (std::size_t pos = begin; pos < end; ++pos) {
    const auto row = points[permutation_[pos]];
    for (std::size_t d = 0; d < dims_; ++d) {
      lower_[base + d] = std::min(lower_[base + d], row[d]);
      upper_[base + d] = std::max(upper_[base + d], row[d]);
    }
  }
  for (std::size_t d = 0; d < dims_; ++d) centroid_[base + d] = 0.5 * (lower_[base + d] + upper_[base + d]);

  double lambda_children = 0.0;
  if (end - begin > leaf_size_) {
    std::size_t split_dim = 0;
    double widest = -1.0;
    for (std::size_t d = 0; d < dims_; ++d) {
      const double width = upper_[base + d] - lower_[base + d];
      if (width > widest) {
        widest = width;
        split_dim = d;
      }
    }
    const std::size_t mid = begin + (end - begin) / 2;
    auto first = permutation_.begin();
    std::nth_element(first + static_cast<std::ptrdiff_t>(begin), first + static_cast<std::ptrdiff_t>(mid),
                     first + static_cast<std::ptrdiff_t>(end), [&](std::size_t a, std::size_t b) {
                       const double va = points[a][split_dim];
                       const double vb = points[b][split_dim];
                       return va < vb || (va == vb && a < b);
                     });
    const NodeId left = build_node(begin, mid, id, points);
    const NodeId right = build_node(mid, end, id, points);
    auto& self = nodes_[static_cast<std::size_t>(id)];
    self.left = left;
    self.right = right;
    lambda_children = std::max(nodes_[static_cast<std::size_t>(left)].lambda_desc,
                               nodes_[static_cast<std::size_t>(right)].lambda_desc);
  }

  // One pass over descendant points for the centroid distances.
  const std::span<const double> center(centroid_.data() + base, dims_);
  double farthest = 0.0;
  for (std::size_t pos = begin; pos < end; ++pos) farthest = std::max(farthest, metric_(center, points[permutation_[pos]]));

  auto& self = nodes_[static_cast<std::size_t>(id)];
  if (self.is_leaf()) self.rho = farthest;
  self.lambda_desc = std::max(farthest, lambda_children);
  return id;
}

std::vector<Neighbor> SpaceTree::knn(std::span<const double> query, std::size_t k) const {
  if (query.size() != dims_) throw InvalidInput("query dimension does not match the tree");
  if (k == 0 || k > size()) {
    throw InvalidInput("k = " + std::to_string(k) + " must be between 1 and the number of points (" +
                       std::to_string(size()) + "); reduce k");
  }
  std::vector<Neighbor> heap;
  heap.reserve(k);
  knn_search(root(), query, k, heap);
  std::sort_heap(heap.begin(), heap.end(), neighbor_less);
  return heap;
}

void SpaceTree::knn_search(NodeId id, std::span<const double> query, std::size_t k, std::vector<Neighbor>& heap) const {
  const auto& n = node(id);
  if (heap.size() == k && metric_.point_box_gap(query, lower(id), upper(id)) > heap.front().distance) return;

  if (n.is_leaf()) {
    for (std::size_t pos = n.begin; pos < n.end; ++pos) {
      const Neighbor candidate{permutation_[pos], metric_(query, point_at(pos))};
      if (heap.size() < k) {
        heap.push_back(candidate);
        std::push_heap(heap.begin(), heap.end(), neighbor_less);
      } else if (neighbor_less(candidate, heap.front())) {
        std::pop_heap(heap.begin(), heap.end(), neighbor_less);
        heap.back() = candidate;
        std::push_heap(heap.begin(), heap.end(), neighbor_less);
      }
    }
    return;
  }

  const double gap_left = metric_.point_box_gap(query, lower(n.left), upper(n.left));
  const double gap_right = metric_.point_box_gap(query, lower(n.right), upper(n.right));
  if (gap_left <= gap_right) {
    knn_search(n.left, query, k, heap);
    knn_search(n.right, query, k, heap);
  } else {
    knn_search(n.right, query, k, heap);
    knn_search(n.left, query, k, heap);
  }
}

double SpaceTree::node_min_distance(NodeId a, NodeId b) const noexcept {
  if (a == b) return 0.0;
  return metric_.box_gap(lower(a), upper(a), lower(b), upper(b));
}

}  // namespace hdbscan
