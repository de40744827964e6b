#include "hdbscan/hierarchy.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <tuple>

#include "hdbscan/error.hpp"
#include "hdbscan/union_find.hpp"

namespace hdbscan {

namespace {

double to_lambda(double distance) noexcept {
  return distance > 0.0 ? 1.0 / distance : std::numeric_limits<double>::infinity();
}

void collect_points(const Dendrogram& dendrogram, std::size_t id, std::vector<std::size_t>& out) {
  std::vector<std::size_t> stack{id};
  while (!stack.empty()) {
    const std::size_t top = stack.back();
    stack.pop_back();
    if (top < dendrogram.n_points) {
      out.push_back(top);
      continue;
    }
    const auto& m = dendrogram.merges[top - dendrogram.n_points];
    stack.push_back(m.right);
    stack.push_back(m.left);
  }
}

}  // namespace

std::vector<double> CondensedTree::birth_lambdas() const {
  std::vector<double> birth(n_clusters, 0.0);
  for (const auto& row : rows) {
    if (is_cluster(row.child)) birth[row.child - n_points] = row.lambda_val;
  }
  return birth;
}

std::vector<std::size_t> CondensedTree::cluster_parents() const {
  std::vector<std::size_t> parent(n_clusters);
  for (std::size_t c = 0; c < n_clusters; ++c) parent[c] = n_points + c;
  for (const auto& row : rows) {
    if (is_cluster(row.child)) parent[row.child - n_points] = row.parent;
  }
  return parent;
}

Dendrogram single_linkage(const MstEdgeList& mst, std::size_t n) {
  if (n == 0) throw InvalidInput("single linkage needs at least one point");
  if (mst.edges.size() + 1 != n) throw InternalError("minimum spanning tree does not have n - 1 edges");

  std::vector<MstEdge> edges = mst.edges;
  for (auto& e : edges) {
    if (e.i > e.j) std::swap(e.i, e.j);
  }
  std::sort(edges.begin(), edges.end(),
            [](const MstEdge& a, const MstEdge& b) { return edge_key_less(a.w, a.i, a.j, b.w, b.i, b.j); });

  UnionFind forest(n);
  std::vector<std::size_t> cluster_of_root(n);
  std::vector<std::size_t> size_of_root(n, 1);
  for (std::size_t i = 0; i < n; ++i) cluster_of_root[i] = i;

  Dendrogram out{n, {}};
  out.merges.reserve(n - 1);
  for (const auto& e : edges) {
    if (e.j >= n) throw InternalError("edge endpoint out of range");
    const std::size_t ra = forest.find(e.i);
    const std::size_t rb = forest.find(e.j);
    if (ra == rb) throw InternalError("minimum spanning tree contains a cycle");
    const std::size_t size = size_of_root[ra] + size_of_root[rb];
    out.merges.push_back({cluster_of_root[ra], cluster_of_root[rb], e.w, size});
    forest.unite(ra, rb);
    const std::size_t root = forest.find(ra);
    cluster_of_root[root] = n + out.merges.size() - 1;
    size_of_root[root] = size;
  }
  return out;
}

CondensedTree condense(const Dendrogram& dendrogram, std::size_t min_cluster_size) {
  if (min_cluster_size < 2) throw InvalidInput("minimum cluster size must be at least 2");
  const std::size_t n = dendrogram.n_points;
  CondensedTree tree{n, 1, {}};
  if (n == 0) return tree;
  if (n == 1) {
    tree.rows.push_back({n, 0, 0.0, 1});
    return tree;
  }

  auto size_of = [&](std::size_t id) { return id < n ? std::size_t{1} : dendrogram.merges[id - n].size; };

  std::vector<std::size_t> fallen;
  auto drop = [&](std::size_t cluster, std::size_t node, double lambda) {
    fallen.clear();
    collect_points(dendrogram, node, fallen);
    for (const std::size_t p : fallen) tree.rows.push_back({cluster, p, lambda, 1});
  };

  std::deque<std::pair<std::size_t, std::size_t>> queue;  // (dendrogram node, condensed cluster)
  queue.emplace_back(n + dendrogram.merges.size() - 1, n);
  while (!queue.empty()) {
    const auto [node, cluster] = queue.front();
    queue.pop_front();
    const auto& m = dendrogram.merges[node - n];
    const double lambda = to_lambda(m.distance);
    const bool left_big = size_of(m.left) >= min_cluster_size;
    const bool right_big = size_of(m.right) >= min_cluster_size;

    if (left_big && right_big) {
      for (const std::size_t child : {m.left, m.right}) {
        const std::size_t id = n + tree.n_clusters++;
        tree.rows.push_back({cluster, id, lambda, size_of(child)});
        queue.emplace_back(child, id);
      }
    } else if (left_big || right_big) {
      const std::size_t big = left_big ? m.left : m.right;
      drop(cluster, left_big ? m.right : m.left, lambda);
      queue.emplace_back(big, cluster);
    } else {
      drop(cluster, m.left, lambda);
      drop(cluster, m.right, lambda);
    }
  }

  std::sort(tree.rows.begin(), tree.rows.end(), [](const CondensedRow& a, const CondensedRow& b) {
    return std::tie(a.parent, a.lambda_val, a.child) < std::tie(b.parent, b.lambda_val, b.child);
  });
  return tree;
}

std::vector<std::int64_t> dbscan_star_cut(const Dendrogram& dendrogram, const CoreDistances& core, double epsilon) {
  if (!(epsilon > 0.0)) throw InvalidInput("epsilon must be positive");
  const std::size_t n = dendrogram.n_points;
  if (core.kappa.size() != n) throw InvalidInput("core distances do not match the dendrogram");

  UnionFind forest(n);
  std::vector<std::size_t> representative(n + dendrogram.merges.size());
  for (std::size_t i = 0; i < n; ++i) representative[i] = i;
  for (std::size_t t = 0; t < dendrogram.merges.size(); ++t) {
    const auto& m = dendrogram.merges[t];
    representative[n + t] = representative[m.left];
    // Merge distances are nondecreasing.
    if (!(m.distance < epsilon)) break;
    forest.unite(representative[m.left], representative[m.right]);
  }

  std::vector<std::size_t> members(n, 0);
  for (std::size_t i = 0; i < n; ++i) ++members[forest.find(i)];

  std::vector<std::int64_t> label_of_root(n, -1);
  std::vector<std::int64_t> labels(n, -1);
  std::int64_t next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = forest.find(i);
    if (members[root] < 2 || !(core.kappa[i] < epsilon)) continue;
    if (label_of_root[root] < 0) label_of_root[root] = next++;
    labels[i] = label_of_root[root];
  }
  return labels;
}

}  // namespace hdbscan
