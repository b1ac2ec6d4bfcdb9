#ifndef PREFALLOC_GRAPH_HPP
#define PREFALLOC_GRAPH_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace prefalloc {

using ItemId = std::uint32_t;
using AgentId = std::uint32_t;

struct Arc {
  ItemId tail = 0;
  ItemId head = 0;

  friend auto operator<=>(const Arc&, const Arc&) = default;
};

// Immutable directed acyclic preference graph. An arc (a, b) means every
// agent prefers item a over item b. Adjacency is stored in CSR form so the
// linear-time solvers can walk it without per-vertex allocations; each item's
// out-list is followed directly by its in-list.
class PreferenceGraph {
 public:
  PreferenceGraph() = default;

  // Validates and builds the graph. Throws Error with kOutOfRangeItem,
  // kSelfLoop, kDuplicateArc or kCycleDetected (the message lists one cycle).
  // Arc order is preserved in arcs().
  static PreferenceGraph build(std::size_t item_count, std::vector<Arc> arcs,
                               std::vector<std::string> item_names = {});

  std::size_t item_count() const noexcept { return item_count_; }
  std::size_t arc_count() const noexcept { return arcs_.size(); }
  std::span<const Arc> arcs() const noexcept { return arcs_; }

  // Neighbour lists are ascending by id.
  std::span<const ItemId> out_neighbors(ItemId v) const noexcept {
    return {adj_.data() + offset_[2 * v], adj_.data() + offset_[2 * v + 1]};
  }
  std::span<const ItemId> in_neighbors(ItemId v) const noexcept {
    return {adj_.data() + offset_[2 * v + 1], adj_.data() + offset_[2 * v + 2]};
  }
  std::size_t out_degree(ItemId v) const noexcept { return offset_[2 * v + 1] - offset_[2 * v]; }
  std::size_t in_degree(ItemId v) const noexcept { return offset_[2 * v + 2] - offset_[2 * v + 1]; }
  std::size_t max_in_degree() const noexcept;

  bool is_source(ItemId v) const noexcept { return in_degree(v) == 0; }
  bool is_sink(ItemId v) const noexcept { return out_degree(v) == 0; }
  std::vector<ItemId> sources() const;
  std::vector<ItemId> sinks() const;

  // Kahn order with smallest-id tie-break.
  std::span<const ItemId> topological_order() const noexcept { return topo_order_; }
  // Position of each item inside topological_order().
  std::size_t topological_rank(ItemId v) const noexcept { return topo_rank_[v]; }

  bool has_names() const noexcept { return !names_.empty(); }
  const std::vector<std::string>& item_names() const noexcept { return names_; }
  // Display name; falls back to the decimal id.
  std::string item_name(ItemId v) const;

 private:
  std::size_t item_count_ = 0;
  std::vector<Arc> arcs_;
  // offset_[2v] .. offset_[2v+1]: out-list of v; .. offset_[2v+2]: in-list.
  std::vector<std::uint32_t> offset_{0};
  std::vector<ItemId> adj_;
  std::vector<ItemId> topo_order_;
  std::vector<std::size_t> topo_rank_;
  std::vector<std::string> names_;
};

// Partition of the items by connectivity of the underlying undirected graph.
// Components are ordered by their smallest item; items inside a component are
// ascending.
std::vector<std::vector<ItemId>> weak_components(const PreferenceGraph& graph);

// Induced subgraph on `items` (which must be ascending). Local id i maps to
// items[i]; names are carried over.
PreferenceGraph induced_subgraph(const PreferenceGraph& graph, std::span<const ItemId> items);

// Simple undirected graph, used for colorings and X-graphs.
struct UndirectedGraph {
  std::size_t vertex_count = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;

  std::vector<std::vector<std::uint32_t>> adjacency() const;
};

}  // namespace prefalloc

#endif  // PREFALLOC_GRAPH_HPP
