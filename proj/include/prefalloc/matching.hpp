#ifndef PREFALLOC_MATCHING_HPP
#define PREFALLOC_MATCHING_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "prefalloc/graph.hpp"
#include "prefalloc/reachability.hpp"

namespace prefalloc {

struct BipartiteEdge {
  std::uint32_t left = 0;
  std::uint32_t right = 0;
  std::int64_t weight = 0;
};

class BipartiteGraph {
 public:
  // Throws Error(kOutOfRangeItem) for bad endpoints, kDuplicateArc for a
  // repeated (left, right) pair and kPreconditionViolated for negative weights.
  BipartiteGraph(std::size_t left_count, std::size_t right_count, std::vector<BipartiteEdge> edges);

  std::size_t left_count() const noexcept { return left_count_; }
  std::size_t right_count() const noexcept { return right_count_; }
  const std::vector<BipartiteEdge>& edges() const noexcept { return edges_; }
  // Edge indices incident to each left vertex, in insertion order.
  const std::vector<std::vector<std::uint32_t>>& left_incidence() const noexcept { return by_left_; }

 private:
  std::size_t left_count_;
  std::size_t right_count_;
  std::vector<BipartiteEdge> edges_;
  std::vector<std::vector<std::uint32_t>> by_left_;
};

struct Matching {
  // Indices into BipartiteGraph::edges(), sorted by left endpoint.
  std::vector<std::uint32_t> edge_indices;
  std::int64_t total_weight = 0;

  std::size_t size() const noexcept { return edge_indices.size(); }
};

// Maximum-cardinality matching (Hopcroft-Karp, O(E sqrt V)).
Matching max_matching(const BipartiteGraph& graph);

// Matching of exactly `cardinality` edges with minimum total weight.
// Successive shortest augmenting paths with Johnson potentials; each round is
// one Dijkstra over non-negative reduced costs. Throws
// Error(kInfeasibleCardinality) when no matching of that size exists.
Matching min_weight_k_matching(const BipartiteGraph& graph, std::size_t cardinality);

struct ChainPartition {
  // Each chain lists items along a directed path of the reachability order.
  std::vector<std::vector<ItemId>> chains;

  std::size_t size() const noexcept { return chains.size(); }
};

// Minimum chain partition via maximum matching on the split graph (left copy
// u, right copy v, edge iff u strictly dominates v). Its size is the width.
ChainPartition chain_partition(const PreferenceGraph& graph, const ReachabilityIndex& index);

}  // namespace prefalloc

#endif  // PREFALLOC_MATCHING_HPP
