#ifndef PREFALLOC_ORACLE_HPP
#define PREFALLOC_ORACLE_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "prefalloc/allocation.hpp"
#include "prefalloc/graph.hpp"
#include "prefalloc/reachability.hpp"

namespace prefalloc {

struct OracleLimits {
  std::size_t item_limit = 12;
  // Cap on (k+1)^n, the number of labelings visited.
  std::uint64_t labeling_limit = std::uint64_t{1} << 28;
};

struct OracleResult {
  Allocation allocation;
  std::uint64_t total = 0;
  std::uint64_t leaves_visited = 0;
};

// Exhaustive search over all (k+1)^n labelings. Among optimal labelings the
// lexicographically smallest one is returned, reading labels in item order
// with agents 0..k-1 before NULL. Throws Error(kInstanceTooLarge) past the
// limits.
OracleResult brute_force_optimum(const PreferenceGraph& graph, const ReachabilityIndex& index,
                                 std::size_t agents, const OracleLimits& limits = {});

// Search restricted to allocations whose bundles are antichains, all of them
// nonempty when k <= n. Same optimum as the unrestricted search; used as a
// second oracle.
OracleResult antichain_optimum(const PreferenceGraph& graph, const ReachabilityIndex& index,
                               std::size_t agents, const OracleLimits& limits = {});

// Proper coloring with colors 0..k-1 by backtracking, or nullopt if none.
// Vertices are tried by descending degree, then id. Throws
// Error(kInstanceTooLarge) above 16 vertices.
std::optional<std::vector<std::uint32_t>> exact_k_coloring(const UndirectedGraph& graph,
                                                           std::size_t colors);

// A largest antichain (ascending ids) by branch and bound, n <= 20.
std::vector<ItemId> max_antichain_brute(const PreferenceGraph& graph, const ReachabilityIndex& index);

}  // namespace prefalloc

#endif  // PREFALLOC_ORACLE_HPP
