#ifndef PREFALLOC_RECOGNIZERS_HPP
#define PREFALLOC_RECOGNIZERS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "prefalloc/graph.hpp"
#include "prefalloc/reachability.hpp"

namespace prefalloc {

// True iff the underlying undirected graph is a forest (a polyforest).
bool is_polytree(const PreferenceGraph& graph);

// Single weakly connected polytree.
bool is_connected_polytree(const PreferenceGraph& graph);

// True iff every item has in-degree at most one, i.e. the graph is an
// out-forest (each weak component an out-tree).
bool is_out_forest(const PreferenceGraph& graph);

// ---------------------------------------------------------------------------
// s,t-series-parallel decomposition

enum class SpKind : std::uint8_t { kLeaf, kSeries, kParallel };

struct SpNode {
  SpKind kind = SpKind::kLeaf;
  ItemId source = 0;
  ItemId sink = 0;
  // Children for series / parallel nodes; for a series node left.sink is the
  // midpoint shared with right.source.
  std::uint32_t left = 0;
  std::uint32_t right = 0;
};

// Binary composition tree. Children always precede their parent in `nodes`,
// so a forward sweep is a valid bottom-up order; the root is nodes.back().
struct SpDecomposition {
  std::vector<SpNode> nodes;

  std::uint32_t root() const noexcept { return static_cast<std::uint32_t>(nodes.size() - 1); }
  ItemId source() const noexcept { return nodes.back().source; }
  ItemId sink() const noexcept { return nodes.back().sink; }
};

// Recognition by exhaustive series/parallel reduction. Returns nullopt (with a
// reason when `why` is given) when the graph is not s,t-series-parallel.
std::optional<SpDecomposition> find_sp_decomposition(const PreferenceGraph& graph,
                                                     std::string* why = nullptr);

// Throws Error(kNotSeriesParallel) instead of returning nullopt.
SpDecomposition sp_decompose(const PreferenceGraph& graph);

// Leaf arcs of the composition, after checking the series/parallel endpoint
// identities. Throws Error(kDecompositionMismatch) on a malformed tree.
std::vector<Arc> replay_sp(const SpDecomposition& decomposition);

// Items spanned by every node (sorted), index-aligned with nodes.
std::vector<std::vector<ItemId>> sp_vertex_sets(const SpDecomposition& decomposition);

// ---------------------------------------------------------------------------
// Out-cactus decomposition

struct CactusCycle {
  // All items of the cycle, source first, then the rest in topological order
  // (smallest id first on ties); the sink is last. An arc that lies on no
  // undirected cycle is a two-item "cycle" {tail, head}.
  std::vector<ItemId> items;
  ItemId source = 0;
  ItemId sink = 0;
  // Arcs of the cycle, sorted.
  std::vector<Arc> arcs;
};

struct CactusDecomposition {
  ItemId root = 0;
  // Top-down order: cycles sorted by the topological rank of their source.
  std::vector<CactusCycle> cycles;
};

std::optional<CactusDecomposition> find_cactus_decomposition(const PreferenceGraph& graph,
                                                             std::string* why = nullptr);

// Throws Error(kNotOutCactus) naming the violated condition.
CactusDecomposition cactus_decompose(const PreferenceGraph& graph);

// Checks that the cycles' arcs partition the graph's arcs and each cycle's
// items match its arcs. Throws Error(kDecompositionMismatch).
void validate_cactus_decomposition(const PreferenceGraph& graph,
                                   const CactusDecomposition& decomposition);

// ---------------------------------------------------------------------------

// Maximum antichain size, via the size of a minimum chain partition.
std::size_t width(const PreferenceGraph& graph, const ReachabilityIndex& index);

enum class SolverKind {
  kCanonical,
  kTwoAgents,
  kOutTree,
  kPolytree,
  kSeriesParallel,
  kOutCactus,
  kWidthTwo,
  kOracle,
  kUnsupported,
};

std::string_view solver_name(SolverKind kind);
std::optional<SolverKind> solver_from_name(std::string_view name);

struct ClassifyOptions {
  // Instances up to this many items may fall back to exhaustive search.
  std::size_t oracle_item_limit = 12;
  // ... provided (k+1)^n stays under this many labelings.
  std::uint64_t oracle_labeling_limit = std::uint64_t{1} << 28;
  // Width needs the O(n^2) reachability index; skipped above this size.
  std::size_t width_item_limit = 20000;
};

struct ClassReport {
  bool is_polytree = false;
  bool is_out_tree = false;
  // Every weak component with at least two items is s,t-series-parallel.
  bool is_sp = false;
  // Every weak component is an out-cactus.
  bool is_out_cactus = false;
  std::optional<std::size_t> width;
  bool has_two_agents_shortcut = false;
  SolverKind chosen_solver = SolverKind::kUnsupported;
};

// Priority: canonical (k >= n) > two agents > polytree > series-parallel >
// out-cactus > width two > oracle fallback > unsupported.
ClassReport classify(const PreferenceGraph& graph, std::size_t agents,
                     const ClassifyOptions& options = {});

bool oracle_fits(std::size_t item_count, std::size_t agents, const ClassifyOptions& options);

}  // namespace prefalloc

#endif  // PREFALLOC_RECOGNIZERS_HPP
