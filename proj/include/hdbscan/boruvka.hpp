#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "hdbscan/core_distance.hpp"
#include "hdbscan/space_tree.hpp"
#include "hdbscan/union_find.hpp"

namespace hdbscan {

/// exact: minimum spanning tree. fast_ties: after each pass, keep searching
/// with the previous bounds until no new edges appear; spanning but possibly
/// heavier than the minimum.
enum class MstMode { exact, fast_ties };

struct MstEdge {
  std::size_t i;  ///< smaller endpoint
  std::size_t j;  ///< larger endpoint
  double w;       ///< mutual reachability distance

  friend bool operator==(const MstEdge&, const MstEdge&) = default;
};

struct MstEdgeList {
  std::vector<MstEdge> edges;

  double total_weight() const noexcept;
  /// Edge weights sorted ascending.
  std::vector<double> sorted_weights() const;
};

/// Strict total order on undirected edges: weight, then (smaller, larger)
/// endpoint. Every minimum spanning tree routine in this library selects the
/// unique tree that is minimal under this order.
constexpr bool edge_key_less(double w_a, std::size_t lo_a, std::size_t hi_a, double w_b, std::size_t lo_b,
                             std::size_t hi_b) noexcept {
  if (w_a != w_b) return w_a < w_b;
  if (lo_a != lo_b) return lo_a < lo_b;
  return hi_a < hi_b;
}

/// Returned by score() for node pairs that cannot improve any candidate.
inline constexpr double kPrune = std::numeric_limits<double>::infinity();
inline constexpr std::int64_t kMixedComponent = -1;

struct BoruvkaOptions {
  MstMode mode = MstMode::exact;
  /// Test hook: score() never prunes. The result must not change.
  bool disable_pruning = false;
};

struct BoruvkaStats {
  std::size_t passes = 0;
  std::size_t rounds_with_edges = 0;
  std::uint64_t base_case_calls = 0;
};

/// Inputs of the node bound B(N_q). Max over an empty set is -inf, min over
/// an empty set is +inf.
struct BoundTerms {
  struct Child {
    double bound;
    double min_point_dist;
  };

  /// max over held points p of the candidate distance of p's component.
  double max_component_dist = -std::numeric_limits<double>::infinity();
  /// min over held points p of the best distance found from p to another component.
  double min_point_dist = std::numeric_limits<double>::infinity();
  double rho = 0.0;
  double lambda = 0.0;
  /// Largest core distance among the node's descendant points.
  double kappa_max = 0.0;
  std::span<const Child> children;
  double parent_bound = std::numeric_limits<double>::infinity();
};

/// B = min{ max(max_comp, max_c B_c),
///          min_p D_p + max(rho + lambda, kappa_max),
///          min_c D_c + max(2 lambda, kappa_max),
///          B_parent }
/// The second and third terms hold because any descendant q' can reach the
/// other-component partner of p through p (triangle inequality of the mutual
/// reachability metric); they carry a 1e-12 relative widening against rounding.
double bound_from_terms(const BoundTerms& terms) noexcept;

/// Per-round bookkeeping of the dual-tree search. Component-indexed arrays
/// are addressed by the canonical index of the component's root point.
struct BoruvkaState {
  UnionFind forest;
  std::vector<std::size_t> component;       ///< point -> component root (flattened forest)
  std::vector<double> comp_dist;            ///< D
  std::vector<std::size_t> comp_candidate;  ///< N: nearest point outside the component
  std::vector<std::size_t> comp_source;     ///< P: point inside the component achieving D
  std::vector<double> point_dist;           ///< best distance found from each point to another component
  std::vector<double> core;                 ///< C, canonical order
  std::vector<double> node_bound;
  std::vector<double> node_min_point_dist;
  std::vector<double> node_kappa_min;
  std::vector<double> node_kappa_max;
  std::vector<std::int64_t> node_component;  ///< kMixedComponent unless all descendants share one component

  explicit BoruvkaState(std::size_t n) : forest(n) {}
};

/// Dual-tree Boruvka over the mutual reachability metric. Query and
/// reference tree are the same tree. Single-threaded; one instance per run.
class BoruvkaSolver {
 public:
  BoruvkaSolver(const SpaceTree& tree, const CoreDistances& core, BoruvkaOptions options = {});

  MstEdgeList run();

  /// Clears per-pass candidates. With keep_bounds the cached node bounds
  /// survive (fast_ties re-pass); point distances are always cleared.
  void begin_pass(bool keep_bounds);

  /// Candidate update for canonical points p_q (query) and p_r (reference).
  void base_case(std::size_t p_q, std::size_t p_r);

  /// kPrune, or the mutual reachability lower bound used to order descent.
  double score(NodeId q, NodeId r);

  /// Recomputes and caches B(q) from current point distances, cached child
  /// bounds and the cached parent bound.
  double compute_bound(NodeId q);

  /// Mutual reachability lower bound between two nodes:
  /// max{region gap, min kappa in q, min kappa in r}.
  double mreach_min_distance(NodeId q, NodeId r) const noexcept;

  void dual_traversal(NodeId q, NodeId r);

  /// Turns per-component candidates into forest edges and resets them.
  std::vector<MstEdge> collate_round();

  const BoruvkaState& state() const noexcept { return state_; }
  const BoruvkaStats& stats() const noexcept { return stats_; }

 private:
  void base_case_at(std::size_t pos_q, std::size_t pos_r);
  void refresh_node_components();

  const SpaceTree& tree_;
  BoruvkaOptions options_;
  BoruvkaState state_;
  BoruvkaStats stats_;
  std::vector<double> core_by_pos_;
  std::vector<MstEdge> edges_;
};

/// Exact-mode result equals the minimum spanning tree of the complete graph
/// weighted by mutual reachability, with ties resolved by edge_key_less.
MstEdgeList boruvka_mst(const SpaceTree& tree, const CoreDistances& core, MstMode mode = MstMode::exact,
                        BoruvkaStats* stats = nullptr);

}  // namespace hdbscan
