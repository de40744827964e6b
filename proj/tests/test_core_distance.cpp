#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "hdbscan/core_distance.hpp"
#include "hdbscan/error.hpp"
#include "hdbscan/oracle.hpp"

using namespace hdbscan;

TEST_SUITE_BEGIN("core-distance");

TEST_CASE("LINE4 core distances with k = 2") {
  const auto points = fixtures::line4();
  const SpaceTree tree(points, Metric{}, 2);
  const auto core = core_distances(tree, points, 2);
  CHECK(core.kappa == std::vector<double>{1, 1, 2, 4});
  CHECK(core.k == 2);
  CHECK(core.kappa == oracle::brute_core_distances(points, Metric{}, 2));
}

TEST_CASE("k = 1 counts only the point itself") {
  const auto points = fixtures::uniform(50, 3, 1);
  const SpaceTree tree(points, Metric{}, 8);
  for (const double kappa : core_distances(tree, points, 1).kappa) CHECK(kappa == 0.0);
}

TEST_CASE("k above N is rejected with advice") {
  const auto points = fixtures::line4();
  const SpaceTree tree(points, Metric{}, 2);
  try {
    core_distances(tree, points, 5);
    FAIL("expected InvalidInput");
  } catch (const InvalidInput& e) {
    CHECK(std::string(e.what()).find("reduce") != std::string::npos);
  }
  CHECK_THROWS_AS(core_distances(tree, points, 0), InvalidInput);
}

TEST_CASE("300 random 5-D points, k = 10, equal brute force elementwise") {
  const auto points = fixtures::uniform(300, 5, 77);
  const SpaceTree tree(points, Metric{}, 40);
  CHECK(core_distances(tree, points, 10).kappa == oracle::brute_core_distances(points, Metric{}, 10));
}

TEST_CASE("kappa is zero exactly when k copies share the coordinates") {
  const auto points = PointSet::from_rows({{0, 0}, {0, 0}, {0, 0}, {1, 0}, {1, 0}, {5, 5}});
  const SpaceTree tree(points, Metric{}, 2);
  const auto core = core_distances(tree, points, 3);
  CHECK(core.kappa[0] == 0.0);
  CHECK(core.kappa[2] == 0.0);
  CHECK(core.kappa[3] == 1.0);
  CHECK(core.kappa[5] > 0.0);
}

TEST_CASE("mutual reachability examples") {
  const auto points = fixtures::line4();
  const SpaceTree tree(points, Metric{}, 2);
  const auto core = core_distances(tree, points, 2);
  const Metric m;
  CHECK(mutual_reachability(core, m, points, 0, 1) == 1.0);
  CHECK(mutual_reachability(core, m, points, 0, 3) == 7.0);
  CHECK(mutual_reachability(core, m, points, 0, 2) == 3.0);
  for (std::size_t i = 0; i < 4; ++i) CHECK(mutual_reachability(core, m, points, i, i) == 0.0);
}

TEST_CASE("mutual reachability is symmetric, dominant and a metric") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 4; ++trial) {
    const auto points = trial % 2 ? fixtures::lattice(150, 2, rng(), 4) : fixtures::uniform(150, 3, rng());
    const Metric m;
    const SpaceTree tree(points, m, 10);
    const auto core = core_distances(tree, points, 5);
    std::uniform_int_distribution<std::size_t> pick(0, points.size() - 1);
    for (int t = 0; t < 25000; ++t) {
      const std::size_t i = pick(rng), j = pick(rng), l = pick(rng);
      if (i == j || j == l || i == l) continue;
      const double ij = mutual_reachability(core, m, points, i, j);
      REQUIRE(ij == mutual_reachability(core, m, points, j, i));
      REQUIRE(ij >= m(points[i], points[j]));
      REQUIRE(ij >= core.kappa[i]);
      REQUIRE(ij >= core.kappa[j]);
      const double il = mutual_reachability(core, m, points, i, l);
      const double jl = mutual_reachability(core, m, points, j, l);
      REQUIRE(il <= ij + jl + 1e-12);
    }
  }
}

TEST_CASE("raising k never lowers a core distance") {
  const auto points = fixtures::uniform(200, 2, 13);
  const SpaceTree tree(points, Metric{}, 16);
  auto previous = core_distances(tree, points, 1).kappa;
  for (std::size_t k = 2; k <= 20; ++k) {
    const auto current = core_distances(tree, points, k).kappa;
    for (std::size_t i = 0; i < points.size(); ++i) REQUIRE(current[i] >= previous[i]);
    previous = current;
  }
}

TEST_SUITE_END();
