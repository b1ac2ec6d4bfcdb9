#ifndef PREFALLOC_CERTIFICATES_HPP
#define PREFALLOC_CERTIFICATES_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "prefalloc/allocation.hpp"
#include "prefalloc/graph.hpp"
#include "prefalloc/reachability.hpp"

namespace prefalloc {

// sum over v of max(k - |pred[v]|, 0): no allocation to k agents does better.
std::uint64_t lower_bound(const PreferenceGraph& graph, const ReachabilityIndex& index,
                          std::size_t agents);

// Same bound without a reachability index. Only valid on polyforests, where
// the ancestor sets of distinct in-neighbours are disjoint and
// |pred[v]| = 1 + sum |pred[u]| over in-neighbours u. Linear time.
// Throws Error(kNotPolytree) otherwise.
std::uint64_t lower_bound_polyforest(const PreferenceGraph& graph, std::size_t agents);

enum class GoodnessWitness {
  kDominatedByAll,            // every agent holds an item of pred[v]
  kDistinctPredecessorLabels, // pred[v] labelled by pairwise distinct agents, none NULL
  kViolated,
};

struct GoodnessReport {
  bool is_good = true;
  std::vector<ItemId> violating_items;
  // Parallel to the checked subset, in the order given.
  std::vector<ItemId> checked_items;
  std::vector<GoodnessWitness> witness;
};

// Checks S-goodness of the allocation for the items in `subset`.
GoodnessReport check_goodness(const PreferenceGraph& graph, const ReachabilityIndex& index,
                              const Allocation& allocation, std::span<const ItemId> subset);

// Full goodness (S = V).
GoodnessReport check_goodness(const PreferenceGraph& graph, const ReachabilityIndex& index,
                              const Allocation& allocation);

struct Certificate {
  DissatisfactionProfile profile;
  std::uint64_t lower_bound = 0;
  bool matches_bound = false;
  GoodnessReport goodness;
};

// Computes the total against the bound and the goodness report
// independently. An allocation meets the bound exactly when it is good, so a
// disagreement is an implementation bug: throws Error(kInternalInconsistency).
Certificate certify(const PreferenceGraph& graph, const ReachabilityIndex& index,
                    const Allocation& allocation);

// Drops every item dominated by another item of the same bundle. Each
// agent's dissatisfaction is unchanged and every bundle becomes an antichain.
Allocation normalize_to_antichains(const PreferenceGraph& graph, const ReachabilityIndex& index,
                                   const Allocation& allocation);

}  // namespace prefalloc

#endif  // PREFALLOC_CERTIFICATES_HPP
