#ifndef PREFALLOC_REACHABILITY_HPP
#define PREFALLOC_REACHABILITY_HPP

#include <cstddef>
#include <vector>

#include "prefalloc/bitset.hpp"
#include "prefalloc/graph.hpp"

namespace prefalloc {

// Materialized reflexive transitive closure. Row v of the forward index is
// succ[v]; row v of the transposed index is pred[v]. Memory is O(n^2 / 64)
// words, so this is meant for graphs up to a few tens of thousands of items.
class ReachabilityIndex {
 public:
  explicit ReachabilityIndex(const PreferenceGraph& graph);

  std::size_t item_count() const noexcept { return succ_.size(); }

  // True iff v is in succ[u], i.e. u dominates v (u == v included).
  bool dominates(ItemId u, ItemId v) const noexcept { return succ_[u].test(v); }
  bool comparable(ItemId u, ItemId v) const noexcept { return dominates(u, v) || dominates(v, u); }

  const DynamicBitset& succ_closed(ItemId v) const noexcept { return succ_[v]; }
  const DynamicBitset& pred_closed(ItemId v) const noexcept { return pred_[v]; }

  std::size_t succ_closed_size(ItemId v) const noexcept { return succ_size_[v]; }
  std::size_t pred_closed_size(ItemId v) const noexcept { return pred_size_[v]; }

 private:
  std::vector<DynamicBitset> succ_;
  std::vector<DynamicBitset> pred_;
  std::vector<std::size_t> succ_size_;
  std::vector<std::size_t> pred_size_;
};

}  // namespace prefalloc

#endif  // PREFALLOC_REACHABILITY_HPP
