#ifndef PREFALLOC_ALLOCATION_HPP
#define PREFALLOC_ALLOCATION_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "prefalloc/graph.hpp"
#include "prefalloc/reachability.hpp"

namespace prefalloc {

// Per-item agent label; std::nullopt plays the role of NULL (unallocated).
class Labeling {
 public:
  Labeling() = default;
  explicit Labeling(std::size_t item_count) : labels_(item_count, kNull) {}

  std::size_t item_count() const noexcept { return labels_.size(); }
  std::optional<AgentId> operator[](ItemId v) const noexcept {
    if (labels_[v] == kNull) return std::nullopt;
    return labels_[v];
  }
  bool is_null(ItemId v) const noexcept { return labels_[v] == kNull; }
  void set(ItemId v, AgentId agent) noexcept { labels_[v] = agent; }
  void clear(ItemId v) noexcept { labels_[v] = kNull; }

  friend bool operator==(const Labeling&, const Labeling&) = default;

 private:
  static constexpr AgentId kNull = UINT32_MAX;
  std::vector<AgentId> labels_;
};

// Assignment of pairwise-disjoint item bundles to agents 0..k-1.
class Allocation {
 public:
  Allocation() = default;
  explicit Allocation(std::size_t agent_count) : bundles_(agent_count) {}
  explicit Allocation(std::vector<std::vector<ItemId>> bundles) : bundles_(std::move(bundles)) {}

  // Inverse of labeling(); items with a NULL label stay unallocated.
  static Allocation from_labeling(const Labeling& labeling, std::size_t agent_count);

  std::size_t agent_count() const noexcept { return bundles_.size(); }
  const std::vector<ItemId>& bundle(AgentId agent) const { return bundles_.at(agent); }
  const std::vector<std::vector<ItemId>>& bundles() const noexcept { return bundles_; }

  void assign(ItemId item, AgentId agent) { bundles_.at(agent).push_back(item); }
  void set_bundle(AgentId agent, std::vector<ItemId> items) { bundles_.at(agent) = std::move(items); }

  // Sorts every bundle ascending.
  void canonicalize();

  std::size_t allocated_item_count() const noexcept;

  // Throws Error(kInvalidAllocation) if bundles overlap or reference items
  // outside [0, item_count).
  void validate(std::size_t item_count) const;

  // Validates, then derives the item labeling.
  Labeling labeling(std::size_t item_count) const;

  friend bool operator==(const Allocation&, const Allocation&) = default;

 private:
  std::vector<std::vector<ItemId>> bundles_;
};

struct DissatisfactionProfile {
  std::vector<std::uint64_t> per_agent;
  std::uint64_t total = 0;

  friend bool operator==(const DissatisfactionProfile&, const DissatisfactionProfile&) = default;
};

// n minus the number of items dominated by some member of the bundle.
std::uint64_t dissatisfaction(const PreferenceGraph& graph, const ReachabilityIndex& index,
                              std::span<const ItemId> bundle);

// Items dominated by the bundle (the agent's satisfaction).
std::uint64_t satisfaction(const PreferenceGraph& graph, const ReachabilityIndex& index,
                           std::span<const ItemId> bundle);

DissatisfactionProfile profile(const PreferenceGraph& graph, const ReachabilityIndex& index,
                               const Allocation& allocation);

// Same quantity computed by a forward search from each bundle, without a
// reachability index. O(k (n + m)); used for large graphs and as a second
// route in tests.
DissatisfactionProfile profile_by_search(const PreferenceGraph& graph, const Allocation& allocation);

}  // namespace prefalloc

#endif  // PREFALLOC_ALLOCATION_HPP
