#include "hdbscan/boruvka.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "hdbscan/error.hpp"

namespace hdbscan {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRoundingWidening = 1.0 + 1e-12;

}  // namespace

double MstEdgeList::total_weight() const noexcept {
  double total = 0.0;
  for (const auto& e : edges) total += e.w;
  return total;
}

std::vector<double> MstEdgeList::sorted_weights() const {
  std::vector<double> w;
  w.reserve(edges.size());
  for (const auto& e : edges) w.push_back(e.w);
  std::sort(w.begin(), w.end());
  return w;
}

double bound_from_terms(const BoundTerms& terms) noexcept {
  double worst = terms.max_component_dist;
  double best_child = kInf;
  for (const auto& c : terms.children) {
    worst = std::max(worst, c.bound);
    best_child = std::min(best_child, c.min_point_dist);
  }
  const double point_term = (terms.min_point_dist + std::max(terms.rho + terms.lambda, terms.kappa_max)) *
                            kRoundingWidening;
  const double child_term = (best_child + std::max(2.0 * terms.lambda, terms.kappa_max)) * kRoundingWidening;
  return std::min({worst, point_term, child_term, terms.parent_bound});
}

BoruvkaSolver::BoruvkaSolver(const SpaceTree& tree, const CoreDistances& core, BoruvkaOptions options)
    : tree_(tree), options_(options), state_(tree.size()) {
  const std::size_t n = tree.size();
  if (core.kappa.size() != n) throw InvalidInput("core distances do not match the tree's point count");

  state_.component.resize(n);
  std::iota(state_.component.begin(), state_.component.end(), std::size_t{0});
  state_.comp_dist.assign(n, kInf);
  state_.comp_candidate.assign(n, 0);
  state_.comp_source.assign(n, 0);
  state_.point_dist.assign(n, kInf);
  state_.core = core.kappa;

  core_by_pos_.resize(n);
  const auto perm = tree.permutation();
  for (std::size_t pos = 0; pos < n; ++pos) core_by_pos_[pos] = core.kappa[perm[pos]];

  const std::size_t nodes = tree.node_count();
  state_.node_bound.assign(nodes, kInf);
  state_.node_min_point_dist.assign(nodes, kInf);
  state_.node_kappa_min.assign(nodes, kInf);
  state_.node_kappa_max.assign(nodes, 0.0);
  state_.node_component.assign(nodes, kMixedComponent);
  // Children always have larger ids than their parent.
  for (std::size_t id = nodes; id-- > 0;) {
    const auto& node = tree.node(static_cast<NodeId>(id));
    double lo = kInf;
    double hi = 0.0;
    if (node.is_leaf()) {
      for (std::size_t pos = node.begin; pos < node.end; ++pos) {
        lo = std::min(lo, core_by_pos_[pos]);
        hi = std::max(hi, core_by_pos_[pos]);
      }
    } else {
      for (NodeId c : {node.left, node.right}) {
        lo = std::min(lo, state_.node_kappa_min[static_cast<std::size_t>(c)]);
        hi = std::max(hi, state_.node_kappa_max[static_cast<std::size_t>(c)]);
      }
    }
    state_.node_kappa_min[id] = lo;
    state_.node_kappa_max[id] = hi;
  }
  refresh_node_components();
}

void BoruvkaSolver::begin_pass(bool keep_bounds) {
  std::fill(state_.point_dist.begin(), state_.point_dist.end(), kInf);
  if (!keep_bounds) {
    std::fill(state_.node_bound.begin(), state_.node_bound.end(), kInf);
    std::fill(state_.node_min_point_dist.begin(), state_.node_min_point_dist.end(), kInf);
  }
  ++stats_.passes;
}

void BoruvkaSolver::base_case(std::size_t p_q, std::size_t p_r) {
  const auto inv = tree_.inverse_permutation();
  base_case_at(inv[p_q], inv[p_r]);
}

void BoruvkaSolver::base_case_at(std::size_t pos_q, std::size_t pos_r) {
  ++stats_.base_case_calls;
  if (pos_q == pos_r) return;
  const auto perm = tree_.permutation();
  const std::size_t p_q = perm[pos_q];
  const std::size_t p_r = perm[pos_r];
  const std::size_t comp = state_.component[p_q];
  if (comp == state_.component[p_r]) return;

  const double dist =
      std::max({tree_.metric()(tree_.point_at(pos_q), tree_.point_at(pos_r)), core_by_pos_[pos_q], core_by_pos_[pos_r]});
  state_.point_dist[p_q] = std::min(state_.point_dist[p_q], dist);
  state_.point_dist[p_r] = std::min(state_.point_dist[p_r], dist);

  const std::size_t lo = std::min(p_q, p_r);
  const std::size_t hi = std::max(p_q, p_r);
  const std::size_t cur_src = state_.comp_source[comp];
  const std::size_t cur_cand = state_.comp_candidate[comp];
  if (edge_key_less(dist, lo, hi, state_.comp_dist[comp], std::min(cur_src, cur_cand), std::max(cur_src, cur_cand))) {
    state_.comp_dist[comp] = dist;
    state_.comp_candidate[comp] = p_r;
    state_.comp_source[comp] = p_q;
  }
}

double BoruvkaSolver::mreach_min_distance(NodeId q, NodeId r) const noexcept {
  return std::max({tree_.node_min_distance(q, r), state_.node_kappa_min[static_cast<std::size_t>(q)],
                   state_.node_kappa_min[static_cast<std::size_t>(r)]});
}

double BoruvkaSolver::compute_bound(NodeId q) {
  const auto qi = static_cast<std::size_t>(q);
  const auto& node = tree_.node(q);
  BoundTerms terms;
  terms.rho = node.rho;
  terms.lambda = node.lambda_desc;
  terms.kappa_max = state_.node_kappa_max[qi];
  terms.parent_bound = node.parent == kNoNode ? kInf : state_.node_bound[static_cast<std::size_t>(node.parent)];

  std::array<BoundTerms::Child, 2> children{};
  double min_point = kInf;
  if (node.is_leaf()) {
    for (const std::size_t p : tree_.points_of(q)) {
      terms.max_component_dist = std::max(terms.max_component_dist, state_.comp_dist[state_.component[p]]);
      terms.min_point_dist = std::min(terms.min_point_dist, state_.point_dist[p]);
    }
    min_point = terms.min_point_dist;
  } else {
    std::size_t c = 0;
    for (NodeId child : {node.left, node.right}) {
      const auto ci = static_cast<std::size_t>(child);
      children[c++] = {state_.node_bound[ci], state_.node_min_point_dist[ci]};
      min_point = std::min(min_point, state_.node_min_point_dist[ci]);
    }
    terms.children = children;
  }

  const double bound = std::min(state_.node_bound[qi], bound_from_terms(terms));
  state_.node_bound[qi] = bound;
  state_.node_min_point_dist[qi] = std::min(state_.node_min_point_dist[qi], min_point);
  return bound;
}

double BoruvkaSolver::score(NodeId q, NodeId r) {
  const auto qc = state_.node_component[static_cast<std::size_t>(q)];
  if (!options_.disable_pruning && qc != kMixedComponent && qc == state_.node_component[static_cast<std::size_t>(r)]) {
    return kPrune;
  }
  const double d_min = mreach_min_distance(q, r);
  const double bound = compute_bound(q);
  // Strict: a pair at exactly the bound can still win on the index tie-break.
  if (!options_.disable_pruning && d_min > bound) return kPrune;
  return d_min;
}

void BoruvkaSolver::dual_traversal(NodeId q, NodeId r) {
  if (score(q, r) == kPrune) return;

  const auto& nq = tree_.node(q);
  const auto& nr = tree_.node(r);
  if (nq.is_leaf() && nr.is_leaf()) {
    const auto perm = tree_.permutation();
    const auto r_comp = state_.node_component[static_cast<std::size_t>(r)];
    const auto r_lo = tree_.lower(r);
    const auto r_hi = tree_.upper(r);
    for (std::size_t pos_q = nq.begin; pos_q < nq.end; ++pos_q) {
      const std::size_t comp = state_.component[perm[pos_q]];
      if (core_by_pos_[pos_q] > state_.comp_dist[comp]) continue;
      // Pairs inside one component are no-ops; don't spend a base case on them.
      if (!options_.disable_pruning) {
        if (r_comp == static_cast<std::int64_t>(comp)) continue;
        // Point-to-region bound; strict so equal-distance pairs still get
        // their index tie-break.
        const double gap = std::max({tree_.metric().point_box_gap(tree_.point_at(pos_q), r_lo, r_hi),
                                     core_by_pos_[pos_q], state_.node_kappa_min[static_cast<std::size_t>(r)]});
        if (gap > state_.comp_dist[comp]) continue;
      }
      for (std::size_t pos_r = nr.begin; pos_r < nr.end; ++pos_r) {
        if (core_by_pos_[pos_r] > state_.comp_dist[comp]) continue;
        if (!options_.disable_pruning && state_.component[perm[pos_r]] == comp) continue;
        base_case_at(pos_q, pos_r);
      }
    }
    return;
  }

  struct Pair {
    NodeId q;
    NodeId r;
    double d_min;
  };
  std::array<Pair, 4> pairs{};
  std::size_t count = 0;
  const std::array<NodeId, 2> qs = nq.is_leaf() ? std::array<NodeId, 2>{q, kNoNode} : std::array{nq.left, nq.right};
  const std::array<NodeId, 2> rs = nr.is_leaf() ? std::array<NodeId, 2>{r, kNoNode} : std::array{nr.left, nr.right};
  for (NodeId cq : qs) {
    if (cq == kNoNode) continue;
    for (NodeId cr : rs) {
      if (cr == kNoNode) continue;
      pairs[count++] = {cq, cr, mreach_min_distance(cq, cr)};
    }
  }
  // Pairs are generated in (child_q, child_r) order, so a stable sort keeps
  // that order among equal bounds.
  std::stable_sort(pairs.begin(), pairs.begin() + static_cast<std::ptrdiff_t>(count),
                   [](const Pair& a, const Pair& b) { return a.d_min < b.d_min; });
  for (std::size_t i = 0; i < count; ++i) dual_traversal(pairs[i].q, pairs[i].r);
}

std::vector<MstEdge> BoruvkaSolver::collate_round() {
  std::vector<MstEdge> added;
  const std::size_t n = tree_.size();
  for (std::size_t c = 0; c < n; ++c) {
    if (state_.component[c] != c || state_.comp_dist[c] == kInf) continue;
    const std::size_t src = state_.comp_source[c];
    const std::size_t cand = state_.comp_candidate[c];
    if (state_.forest.unite(src, cand)) {
      added.push_back({std::min(src, cand), std::max(src, cand), state_.comp_dist[c]});
    }
  }
  for (std::size_t p = 0; p < n; ++p) state_.component[p] = state_.forest.find(p);
  std::fill(state_.comp_dist.begin(), state_.comp_dist.end(), kInf);
  refresh_node_components();
  if (!added.empty()) ++stats_.rounds_with_edges;
  edges_.insert(edges_.end(), added.begin(), added.end());
  return added;
}

void BoruvkaSolver::refresh_node_components() {
  for (std::size_t id = tree_.node_count(); id-- > 0;) {
    const auto& node = tree_.node(static_cast<NodeId>(id));
    std::int64_t comp = kMixedComponent;
    if (node.is_leaf()) {
      const auto pts = tree_.points_of(static_cast<NodeId>(id));
      comp = static_cast<std::int64_t>(state_.component[pts.front()]);
      for (const std::size_t p : pts) {
        if (static_cast<std::int64_t>(state_.component[p]) != comp) {
          comp = kMixedComponent;
          break;
        }
      }
    } else {
      const auto left = state_.node_component[static_cast<std::size_t>(node.left)];
      const auto right = state_.node_component[static_cast<std::size_t>(node.right)];
      comp = left == right ? left : kMixedComponent;
    }
    state_.node_component[id] = comp;
  }
}

MstEdgeList BoruvkaSolver::run() {
  const std::size_t n = tree_.size();
  while (state_.forest.components() > 1) {
    begin_pass(false);
    dual_traversal(tree_.root(), tree_.root());
    if (collate_round().empty()) throw InternalError("Boruvka pass found no candidate edge with components remaining");
    if (options_.mode == MstMode::fast_ties) {
      while (state_.forest.components() > 1) {
        begin_pass(true);
        dual_traversal(tree_.root(), tree_.root());
        if (collate_round().empty()) break;
      }
    }
  }
  if (edges_.size() + 1 != n) throw InternalError("spanning tree has the wrong number of edges");
  return MstEdgeList{edges_};
}

MstEdgeList boruvka_mst(const SpaceTree& tree, const CoreDistances& core, MstMode mode, BoruvkaStats* stats) {
  BoruvkaSolver solver(tree, core, BoruvkaOptions{mode, false});
  auto result = solver.run();
  if (stats != nullptr) *stats = solver.stats();
  return result;
}

}  // namespace hdbscan
