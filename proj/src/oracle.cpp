#include "hdbscan/oracle.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "hdbscan/error.hpp"

namespace hdbscan::oracle {

std::vector<std::vector<Neighbor>> brute_knn(const PointSet& points, const Metric& metric, std::size_t k) {
  const std::size_t n = points.size();
  if (k == 0 || k > n) throw InvalidInput("k must be between 1 and the number of points");
  std::vector<std::vector<Neighbor>> out(n);
  std::vector<Neighbor> all(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) all[j] = {j, metric(points[i], points[j])};
    std::sort(all.begin(), all.end(), [](const Neighbor& a, const Neighbor& b) {
      return a.distance < b.distance || (a.distance == b.distance && a.index < b.index);
    });
    out[i].assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k));
  }
  return out;
}

std::vector<double> brute_core_distances(const PointSet& points, const Metric& metric, std::size_t k) {
  const auto knn = brute_knn(points, metric, k);
  std::vector<double> kappa(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) kappa[i] = knn[i].back().distance;
  return kappa;
}

DistanceMatrix mreach_matrix(const PointSet& points, const Metric& metric, std::size_t k) {
  const std::size_t n = points.size();
  if (n > kMaxMatrixPoints) throw InvalidInput("oracle matrix is limited to 5000 points");
  const auto kappa = brute_core_distances(points, metric, k);
  DistanceMatrix m{n, std::vector<double>(n * n, 0.0)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) m.values[i * n + j] = std::max({kappa[i], kappa[j], metric(points[i], points[j])});
    }
  }
  return m;
}

MstEdgeList prim_mst_mreach(const PointSet& points, const Metric& metric, std::size_t k) {
  const std::size_t n = points.size();
  const auto m = mreach_matrix(points, metric, k);
  constexpr double inf = std::numeric_limits<double>::infinity();

  // Best known edge from each outside vertex into the tree, by edge_key_less.
  std::vector<bool> in_tree(n, false);
  std::vector<double> best_w(n, inf);
  std::vector<std::size_t> best_from(n, 0);
  MstEdgeList out;
  in_tree[0] = true;
  for (std::size_t j = 1; j < n; ++j) {
    best_w[j] = m(0, j);
    best_from[j] = 0;
  }
  for (std::size_t step = 1; step < n; ++step) {
    std::size_t pick = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (in_tree[j]) continue;
      if (pick == n) {
        pick = j;
        continue;
      }
      const auto lo_j = std::min(j, best_from[j]);
      const auto hi_j = std::max(j, best_from[j]);
      const auto lo_p = std::min(pick, best_from[pick]);
      const auto hi_p = std::max(pick, best_from[pick]);
      if (edge_key_less(best_w[j], lo_j, hi_j, best_w[pick], lo_p, hi_p)) pick = j;
    }
    in_tree[pick] = true;
    out.edges.push_back({std::min(pick, best_from[pick]), std::max(pick, best_from[pick]), best_w[pick]});
    for (std::size_t j = 0; j < n; ++j) {
      if (in_tree[j]) continue;
      const double w = m(pick, j);
      if (edge_key_less(w, std::min(pick, j), std::max(pick, j), best_w[j], std::min(best_from[j], j),
                        std::max(best_from[j], j))) {
        best_w[j] = w;
        best_from[j] = pick;
      }
    }
  }
  return out;
}

std::vector<std::int64_t> dbscan_star_reference(const PointSet& points, const Metric& metric, double epsilon,
                                                std::size_t k) {
  if (!(epsilon > 0.0)) throw InvalidInput("epsilon must be positive");
  const std::size_t n = points.size();
  std::vector<bool> core(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t inside = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (metric(points[i], points[j]) < epsilon) ++inside;
    }
    core[i] = inside >= k;
  }

  std::vector<std::int64_t> labels(n, -1);
  std::vector<bool> visited(n, false);
  std::int64_t next = 0;
  for (std::size_t seed = 0; seed < n; ++seed) {
    if (!core[seed] || visited[seed]) continue;
    std::vector<std::size_t> component{seed};
    visited[seed] = true;
    for (std::size_t head = 0; head < component.size(); ++head) {
      const std::size_t a = component[head];
      for (std::size_t b = 0; b < n; ++b) {
        if (visited[b] || !core[b]) continue;
        if (metric(points[a], points[b]) < epsilon && metric(points[b], points[a]) < epsilon) {
          visited[b] = true;
          component.push_back(b);
        }
      }
    }
    if (component.size() < 2) continue;
    for (const std::size_t p : component) labels[p] = next;
    ++next;
  }
  return labels;
}

double selection_total(const StabilityMap& sigma, const std::vector<std::size_t>& clusters) {
  std::vector<std::size_t> sorted = clusters;
  std::sort(sorted.begin(), sorted.end());
  double total = 0.0;
  for (const std::size_t c : sorted) total += sigma[c];
  return total;
}

AntichainResult brute_antichain_best(const CondensedTree& condensed, const StabilityMap& sigma, bool allow_root) {
  const std::size_t count = condensed.n_clusters;
  if (count > kMaxAntichainClusters) throw InvalidInput("antichain enumeration is limited to 20 clusters");
  const std::size_t base = condensed.n_points;

  std::vector<std::size_t> parent(count);
  for (std::size_t c = 0; c < count; ++c) parent[c] = c;
  for (const auto& row : condensed.rows) {
    if (row.child >= base) parent[row.child - base] = row.parent - base;
  }
  // ancestors[c] as a bitmask, excluding c itself.
  std::vector<std::uint32_t> ancestors(count, 0);
  for (std::size_t c = 0; c < count; ++c) {
    for (std::size_t a = c; parent[a] != a;) {
      a = parent[a];
      ancestors[c] |= std::uint32_t{1} << a;
    }
  }

  AntichainResult best{0.0, {}};
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << count); ++mask) {
    if (!allow_root && (mask & 1u)) continue;
    bool antichain = true;
    std::vector<std::size_t> chosen;
    for (std::size_t c = 0; c < count && antichain; ++c) {
      if (!(mask >> c & 1u)) continue;
      if (mask & ancestors[c]) antichain = false;
      chosen.push_back(c + base);
    }
    if (!antichain) continue;
    const double total = selection_total(sigma, chosen);
    if (total > best.total) best = {total, std::move(chosen)};
  }
  return best;
}

ClusterResult oracle_cluster(const PointSet& points, const ClusterParams& params) {
  validate(params, points.size());
  CoreDistances core{brute_core_distances(points, params.metric, params.min_samples), params.min_samples};
  auto mst = prim_mst_mreach(points, params.metric, params.min_samples);
  return cluster_from_mst(points.size(), std::move(core), std::move(mst), params);
}

bool same_partition(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
  if (a.size() != b.size()) return false;
  std::map<std::int64_t, std::int64_t> forward;
  std::map<std::int64_t, std::int64_t> backward;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if ((a[i] < 0) != (b[i] < 0)) return false;
    if (a[i] < 0) continue;
    const auto f = forward.emplace(a[i], b[i]).first;
    const auto g = backward.emplace(b[i], a[i]).first;
    if (f->second != b[i] || g->second != a[i]) return false;
  }
  return true;
}

}  // namespace hdbscan::oracle
