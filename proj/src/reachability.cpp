#include "prefalloc/reachability.hpp"

#include <ranges>

namespace prefalloc {

ReachabilityIndex::ReachabilityIndex(const PreferenceGraph& graph) {
  const std::size_t n = graph.item_count();
  succ_.assign(n, DynamicBitset(n));
  pred_.assign(n, DynamicBitset(n));
  const auto order = graph.topological_order();
  for (ItemId v : order | std::views::reverse) {
    succ_[v].set(v);
    for (ItemId w : graph.out_neighbors(v)) succ_[v] |= succ_[w];
  }
  for (ItemId v : order) {
    pred_[v].set(v);
    for (ItemId u : graph.in_neighbors(v)) pred_[v] |= pred_[u];
  }
  succ_size_.resize(n);
  pred_size_.resize(n);
  for (ItemId v = 0; v < n; ++v) {
    succ_size_[v] = succ_[v].count();
    pred_size_[v] = pred_[v].count();
  }
}

}  // namespace prefalloc
