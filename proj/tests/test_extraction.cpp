#include <doctest.h>

#include <algorithm>
#include <limits>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "hdbscan/error.hpp"
#include "hdbscan/extraction.hpp"
#include "hdbscan/oracle.hpp"

using namespace hdbscan;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

CondensedTree line4_tree() {
  return condense(single_linkage(MstEdgeList{{{0, 1, 1.0}, {1, 2, 2.0}, {2, 3, 4.0}}}, 4), 2);
}

// A hand-made condensed tree over 10 points:
//   root 10 -> clusters 11 {0..3} and 12 {4..9} at lambda 1
//   cluster 12 -> clusters 13 {4,5} and 14 {6..9} at lambda 2
CondensedTree nested_tree() {
  CondensedTree t{10, 5, {}};
  t.rows = {{10, 11, 1.0, 4}, {10, 12, 1.0, 6}, {11, 0, 3.0, 1}, {11, 1, 3.0, 1}, {11, 2, 4.0, 1},
            {11, 3, 4.0, 1},  {12, 13, 2.0, 2}, {12, 14, 2.0, 4}, {13, 4, 5.0, 1}, {13, 5, 5.0, 1},
            {14, 6, 2.5, 1},  {14, 7, 2.5, 1},  {14, 8, 6.0, 1},  {14, 9, 6.0, 1}};
  return t;
}

// Random cluster forest: cluster c > 0 hangs under a random earlier cluster
// and every cluster gets one or two fallen points.
CondensedTree random_tree(std::mt19937_64& rng, std::size_t n_clusters) {
  std::vector<std::size_t> parent(n_clusters, 0);
  for (std::size_t c = 1; c < n_clusters; ++c) parent[c] = rng() % c;
  std::vector<std::vector<std::size_t>> points(n_clusters);
  std::size_t n = 0;
  for (std::size_t c = 0; c < n_clusters; ++c) {
    const std::size_t count = 1 + rng() % 2;
    for (std::size_t i = 0; i < count; ++i) points[c].push_back(n++);
  }
  std::vector<std::size_t> size(n_clusters, 0);
  for (std::size_t c = n_clusters; c-- > 0;) {
    size[c] += points[c].size();
    if (c > 0) size[parent[c]] += size[c];
  }
  CondensedTree t{n, n_clusters, {}};
  for (std::size_t c = 0; c < n_clusters; ++c) {
    const double birth = static_cast<double>(c);
    if (c > 0) t.rows.push_back({n + parent[c], n + c, birth, size[c]});
    for (const std::size_t p : points[c]) t.rows.push_back({n + c, p, birth + 0.5, 1});
  }
  return t;
}

std::set<std::size_t> descendants_or_self(const CondensedTree& t, std::size_t id) {
  const auto parent = t.cluster_parents();
  std::set<std::size_t> out;
  for (std::size_t c = 0; c < t.n_clusters; ++c) {
    std::size_t cur = c + t.n_points;
    while (true) {
      if (cur == id) {
        out.insert(c + t.n_points);
        break;
      }
      if (cur == t.root()) break;
      cur = parent[cur - t.n_points];
    }
  }
  return out;
}

}  // namespace

TEST_SUITE_BEGIN("extraction");

TEST_CASE("LINE4 root stability") {
  const auto sigma = stability(line4_tree());
  CHECK(sigma.first_id == 4);
  CHECK(sigma[4] == 2.75);
}

TEST_CASE("points leaving at the birth lambda contribute nothing") {
  CondensedTree t{3, 2, {{3, 4, 2.0, 2}, {3, 2, 2.0, 1}, {4, 0, 2.0, 1}, {4, 1, 2.0, 1}}};
  const auto sigma = stability(t);
  CHECK(sigma[4] == 0.0);
  CHECK(sigma[3] == 6.0);  // (2 - 0) * 2 + (2 - 0) * 1
}

TEST_CASE("stability of the nested tree") {
  const auto sigma = stability(nested_tree());
  CHECK(sigma[10] == 10.0);
  CHECK(sigma[11] == 2 * 2.0 + 2 * 3.0);
  CHECK(sigma[12] == 6.0);
  CHECK(sigma[13] == 6.0);
  CHECK(sigma[14] == 2 * 0.5 + 2 * 4.0);
}

TEST_CASE("stability matches an independent recomputation on two blobs") {
  const auto points = fixtures::two_blobs();
  const auto tree = condense(single_linkage(oracle::prim_mst_mreach(points, Metric{}, 5), points.size()), 10);
  const auto sigma = stability(tree);
  for (std::size_t c = 0; c < tree.n_clusters; ++c) {
    const std::size_t id = tree.n_points + c;
    double birth = 0.0;
    for (const auto& row : tree.rows) {
      if (row.child == id) birth = row.lambda_val;
    }
    double expected = 0.0;
    for (const auto& row : tree.rows) {
      if (row.parent == id) expected += (row.lambda_val - birth) * static_cast<double>(row.child_size);
    }
    CHECK(sigma[id] >= 0.0);
    CHECK(sigma[id] == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("infinite lambda gives infinite stability") {
  CondensedTree t{3, 2, {{3, 4, 1.0, 2}, {3, 2, 1.0, 1}, {4, 0, kInf, 1}, {4, 1, kInf, 1}}};
  const auto sigma = stability(t);
  CHECK(sigma[4] == kInf);
  CHECK(select_clusters(t, sigma, false) == std::vector<std::size_t>{4});

  // A cluster born at infinity whose points leave at infinity is worth 0.
  CondensedTree born_inf{3, 2, {{3, 4, kInf, 2}, {3, 2, 1.0, 1}, {4, 0, kInf, 1}, {4, 1, kInf, 1}}};
  CHECK(stability(born_inf)[4] == 0.0);
}

TEST_CASE("single root cluster selection") {
  const auto tree = line4_tree();
  const auto sigma = stability(tree);
  CHECK(select_clusters(tree, sigma, false).empty());
  CHECK(select_clusters(tree, sigma, true) == std::vector<std::size_t>{4});
  CHECK(assign_labels(tree, {}).labels == std::vector<std::int64_t>{-1, -1, -1, -1});
  const auto flat = assign_labels(tree, {4});
  CHECK(flat.labels == std::vector<std::int64_t>{0, 0, 0, 0});
  CHECK(flat.n_clusters == 1);
}

TEST_CASE("selection on the nested tree") {
  const auto tree = nested_tree();
  auto sigma = stability(tree);
  // 11 is a leaf (10); under 12: 6 vs 6 + 9 = 15, so the children win.
  CHECK(select_clusters(tree, sigma, false) == std::vector<std::size_t>{11, 13, 14});
  CHECK(select_clusters(tree, sigma, true) == std::vector<std::size_t>{11, 13, 14});

  // A tie keeps the ancestor.
  sigma.sigma[12 - 10] = 15.0;
  CHECK(select_clusters(tree, sigma, false) == std::vector<std::size_t>{11, 12});

  // A dominant root is only chosen when allowed.
  sigma.sigma[0] = 100.0;
  CHECK(select_clusters(tree, sigma, false) == std::vector<std::size_t>{11, 12});
  CHECK(select_clusters(tree, sigma, true) == std::vector<std::size_t>{10});
}

TEST_CASE("label assignment inherits through descendants") {
  const auto tree = nested_tree();
  const auto flat = assign_labels(tree, {11, 12});
  CHECK(flat.labels == std::vector<std::int64_t>{0, 0, 0, 0, 1, 1, 1, 1, 1, 1});
  CHECK(flat.selected == std::vector<std::size_t>{11, 12});

  const auto fine = assign_labels(tree, {14, 11});
  CHECK(fine.labels == std::vector<std::int64_t>{0, 0, 0, 0, -1, -1, 1, 1, 1, 1});
  CHECK(fine.selected == std::vector<std::size_t>{11, 14});
}

TEST_CASE("assign_labels rejects bad selections") {
  const auto tree = nested_tree();
  CHECK_THROWS_AS(assign_labels(tree, {12, 14}), InternalError);
  CHECK_THROWS_AS(assign_labels(tree, {10, 11}), InternalError);
  CHECK_THROWS_AS(assign_labels(tree, {11, 11}), InternalError);
  CHECK_THROWS_AS(assign_labels(tree, {3}), InvalidInput);
  CHECK_THROWS_AS(assign_labels(tree, {15}), InvalidInput);
}

TEST_CASE("selection matches the exhaustive antichain optimum on random trees") {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 200; ++trial) {
    const auto tree = random_tree(rng, 1 + rng() % 12);
    StabilityMap sigma{tree.n_points, std::vector<double>(tree.n_clusters)};
    // Half the trials use small integers to force exact ties.
    std::uniform_real_distribution<double> real(0.0, 10.0);
    for (auto& s : sigma.sigma) s = trial % 2 ? static_cast<double>(rng() % 4) : real(rng);
    for (const bool allow_root : {false, true}) {
      const auto selected = select_clusters(tree, sigma, allow_root);
      const auto best = oracle::brute_antichain_best(tree, sigma, allow_root);
      REQUIRE(oracle::selection_total(sigma, selected) == best.total);
      if (!allow_root) REQUIRE(std::find(selected.begin(), selected.end(), tree.root()) == selected.end());

      // Antichain and label conservation.
      std::set<std::size_t> covered;
      std::size_t expected_labeled = 0;
      for (const std::size_t c : selected) {
        for (const std::size_t d : descendants_or_self(tree, c)) {
          REQUIRE(covered.insert(d).second);
        }
      }
      const auto flat = assign_labels(tree, selected);
      for (const auto& row : tree.rows) {
        if (!tree.is_cluster(row.child) && covered.count(row.parent)) ++expected_labeled;
      }
      const auto labeled = static_cast<std::size_t>(
          std::count_if(flat.labels.begin(), flat.labels.end(), [](std::int64_t l) { return l >= 0; }));
      REQUIRE(labeled == expected_labeled);
    }
  }
}

TEST_CASE("root without cluster children yields all noise") {
  const auto points = fixtures::uniform(60, 2, 12);
  const auto tree = condense(single_linkage(oracle::prim_mst_mreach(points, Metric{}, 4), 60), 61);
  const auto flat = assign_labels(tree, select_clusters(tree, stability(tree), false));
  for (const auto l : flat.labels) CHECK(l == -1);
}

TEST_SUITE_END();
