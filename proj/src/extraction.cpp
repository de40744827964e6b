#include "hdbscan/extraction.hpp"

#include <algorithm>

#include "hdbscan/error.hpp"

namespace hdbscan {

StabilityMap stability(const CondensedTree& condensed) {
  const auto birth = condensed.birth_lambdas();
  StabilityMap out{condensed.root(), std::vector<double>(condensed.n_clusters, 0.0)};
  for (const auto& row : condensed.rows) {
    const double born = birth[row.parent - condensed.n_points];
    // Also covers inf - inf for clusters born at lambda = inf.
    if (row.lambda_val == born) continue;
    out.sigma[row.parent - condensed.n_points] += (row.lambda_val - born) * static_cast<double>(row.child_size);
  }
  return out;
}

std::vector<std::size_t> select_clusters(const CondensedTree& condensed, const StabilityMap& sigma,
                                         bool allow_single_cluster) {
  const std::size_t n_clusters = condensed.n_clusters;
  if (sigma.sigma.size() != n_clusters) throw InvalidInput("stability map does not match the condensed tree");
  const std::size_t base = condensed.n_points;

  std::vector<std::vector<std::size_t>> children(n_clusters);
  for (const auto& row : condensed.rows) {
    if (condensed.is_cluster(row.child)) children[row.parent - base].push_back(row.child - base);
  }
  for (auto& c : children) std::sort(c.begin(), c.end());

  std::vector<double> best(n_clusters, 0.0);
  std::vector<bool> keep_self(n_clusters, false);
  for (std::size_t c = n_clusters; c-- > 0;) {
    if (children[c].empty()) {
      best[c] = sigma.sigma[c];
      keep_self[c] = true;
      continue;
    }
    double below = 0.0;
    for (const std::size_t child : children[c]) below += best[child];
    keep_self[c] = sigma.sigma[c] >= below;
    best[c] = keep_self[c] ? sigma.sigma[c] : below;
  }

  std::vector<std::size_t> selected;
  std::vector<std::size_t> stack;
  if (allow_single_cluster) {
    stack.push_back(0);
  } else {
    stack.assign(children[0].rbegin(), children[0].rend());
  }
  while (!stack.empty()) {
    const std::size_t c = stack.back();
    stack.pop_back();
    if (keep_self[c]) {
      selected.push_back(c + base);
    } else {
      stack.insert(stack.end(), children[c].rbegin(), children[c].rend());
    }
  }
  std::sort(selected.begin(), selected.end());
  return selected;
}

FlatClustering assign_labels(const CondensedTree& condensed, const std::vector<std::size_t>& selected) {
  const std::size_t n = condensed.n_points;
  const std::size_t n_clusters = condensed.n_clusters;
  FlatClustering out{std::vector<std::int64_t>(n, -1), selected, selected.size()};
  std::sort(out.selected.begin(), out.selected.end());
  if (std::adjacent_find(out.selected.begin(), out.selected.end()) != out.selected.end()) {
    throw InternalError("selection lists a cluster twice");
  }

  std::vector<std::int64_t> own_label(n_clusters, -1);
  for (std::size_t i = 0; i < out.selected.size(); ++i) {
    const std::size_t id = out.selected[i];
    if (id < n || id >= n + n_clusters) throw InvalidInput("selected id " + std::to_string(id) + " is not a cluster");
    own_label[id - n] = static_cast<std::int64_t>(i);
  }

  // Parents precede children in id order.
  const auto parent = condensed.cluster_parents();
  std::vector<std::int64_t> label_of(n_clusters, -1);
  for (std::size_t c = 0; c < n_clusters; ++c) {
    const std::int64_t inherited = c == 0 ? -1 : label_of[parent[c] - n];
    if (own_label[c] >= 0 && inherited >= 0) throw InternalError("selected clusters overlap");
    label_of[c] = own_label[c] >= 0 ? own_label[c] : inherited;
  }

  for (const auto& row : condensed.rows) {
    if (!condensed.is_cluster(row.child)) out.labels[row.child] = label_of[row.parent - n];
  }
  return out;
}

}  // namespace hdbscan
