#ifndef PREFALLOC_SOLVERS_HPP
#define PREFALLOC_SOLVERS_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "prefalloc/allocation.hpp"
#include "prefalloc/certificates.hpp"
#include "prefalloc/graph.hpp"
#include "prefalloc/reachability.hpp"
#include "prefalloc/recognizers.hpp"

namespace prefalloc {

// k >= n: item i goes to agent i, agents n..k-1 stay empty.
Allocation solve_canonical_many_agents(const PreferenceGraph& graph, std::size_t agents);

// Two agents on any DAG: the sources go to agent 0, the sources of what
// remains after deleting them go to agent 1. Linear time.
Allocation solve_two_agents(const PreferenceGraph& graph);

// Out-forest: items at depth i < k go to agent i, deeper items stay
// unallocated. Throws Error(kNotOutTree).
Allocation solve_out_tree(const PreferenceGraph& graph, std::size_t agents);

/// Branch-by-branch labelling of a connected polytree. Keeps a work list L
/// and a per-item agent hint q (NULL until the item enters L):
///
///   - start from the smallest-id source s with q(s) = k - 1;
///   - while the head v of L has an in-neighbour u with q(u) = NULL, push u
///     to the front with q(u) = q(v);
///   - otherwise give v to agent q(v), append its unseen out-neighbours, set
///     q(u) = (q(v) + 1) mod k for every out-neighbour u, and pop v.
///
/// The result is good, hence optimal. Each item enters L once and each
/// in-neighbour list is scanned once through a monotone cursor, so the run is
/// O(n). Throws Error(kNotPolytree) if the graph is not a single polytree and
/// Error(kPreconditionViolated) unless 1 <= k <= n.
Allocation solve_polytree(const PreferenceGraph& graph, std::size_t agents);

// Label alphabet of the series-parallel construction: kSpBottom marks the
// agent that always receives the source, kSpNull an unallocated item, and
// 0..kappa-2 the remaining agents.
inline constexpr std::int32_t kSpBottom = -1;
inline constexpr std::int32_t kSpNull = -2;

// Good labelling of a connected s,t-series-parallel graph for `kappa` agents
// (1 <= kappa <= n), indexed by item. Built bottom-up over the decomposition:
// each child receives kappa_1 = min(kappa, |V1|) and, for a parallel node,
// kappa_2 = min(kappa, |V2|), for a series node kappa_2 = min(kappa - kappa_1 + 1,
// |V2|) since the midpoint is shared. Under a series node the second child's
// labels are shifted by kappa_1 - 1; under a parallel node they are sent first
// onto labels the first child leaves unused, and the shared sink then takes
// the one agent still idle, if any. Throws Error(kDecompositionMismatch) if
// the tree does not replay to the graph.
std::vector<std::int32_t> sp_labeling(const PreferenceGraph& graph,
                                      const SpDecomposition& decomposition, std::size_t kappa);

// Maps the labels above to agents: bottom -> 0, j -> j + 1.
Allocation sp_labels_to_allocation(const std::vector<std::int32_t>& labels, std::size_t agents);

Allocation solve_series_parallel(const PreferenceGraph& graph, const SpDecomposition& decomposition,
                                 std::size_t agents);

// Top-down over the cycles of an out-cactus. The root goes to agent 0. For a
// cycle with source s, K' is the set of agents holding nothing in pred[s];
// the cycle's other items, in order, take the agents of K' one by one, and
// once K' is used up each item takes the smallest agent of K' holding none
// of its predecessors, if any.
Allocation solve_out_cactus(const PreferenceGraph& graph, const CactusDecomposition& decomposition,
                            std::size_t agents);

// Width at most two: minimum-weight matching of cardinality k in the
// auxiliary bipartite graph whose edges are the size-two antichains {x, y}
// and the pairs {v, v'}, weighted by the dissatisfaction of the matching
// bundle. Throws Error(kWidthExceeded) when the width is above two.
Allocation solve_width_two(const PreferenceGraph& graph, const ReachabilityIndex& index,
                           std::size_t agents);

using ComponentSolver = std::function<Allocation(const PreferenceGraph&, std::size_t)>;

// Solves every weak component separately and unions the bundles per agent.
Allocation solve_by_components(const PreferenceGraph& graph, std::size_t agents,
                               const ComponentSolver& solver);

struct SolveOptions {
  ClassifyOptions classify;
  // Run this solver instead of the classifier's choice.
  std::optional<SolverKind> forced;
  // Build the reachability index and a full certificate up to this size.
  std::size_t certify_item_limit = 20000;
};

struct SolveResult {
  Allocation allocation;
  SolverKind solver = SolverKind::kUnsupported;
  ClassReport report;
  DissatisfactionProfile profile;
  std::optional<std::uint64_t> lower_bound;
  std::optional<Certificate> certificate;
};

// True for the solvers whose output is always good.
bool solver_guarantees_goodness(SolverKind kind);

// Classify, dispatch (per component where that applies), then certify.
// Throws Error(kUnsupported) when no exact method applies.
SolveResult solve_auto(const PreferenceGraph& graph, std::size_t agents,
                       const SolveOptions& options = {});

}  // namespace prefalloc

#endif  // PREFALLOC_SOLVERS_HPP
