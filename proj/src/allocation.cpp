#include "prefalloc/allocation.hpp"

#include <algorithm>
#include <string>

#include "prefalloc/errors.hpp"

namespace prefalloc {

Allocation Allocation::from_labeling(const Labeling& labeling, std::size_t agent_count) {
  Allocation out(agent_count);
  for (ItemId v = 0; v < labeling.item_count(); ++v) {
    if (auto agent = labeling[v]) out.assign(v, *agent);
  }
  return out;
}

void Allocation::canonicalize() {
  for (auto& b : bundles_) std::sort(b.begin(), b.end());
}

std::size_t Allocation::allocated_item_count() const noexcept {
  std::size_t c = 0;
  for (const auto& b : bundles_) c += b.size();
  return c;
}

void Allocation::validate(std::size_t item_count) const { (void)labeling(item_count); }

Labeling Allocation::labeling(std::size_t item_count) const {
  Labeling out(item_count);
  for (AgentId a = 0; a < bundles_.size(); ++a) {
    for (ItemId v : bundles_[a]) {
      if (v >= item_count) {
        throw Error(ErrorCode::kInvalidAllocation,
                    "item " + std::to_string(v) + " is outside the graph");
      }
      if (!out.is_null(v)) {
        throw Error(ErrorCode::kInvalidAllocation,
                    "item " + std::to_string(v) + " is allocated to agents " +
                        std::to_string(*out[v]) + " and " + std::to_string(a));
      }
      out.set(v, a);
    }
  }
  return out;
}

std::uint64_t satisfaction(const PreferenceGraph& graph, const ReachabilityIndex& index,
                           std::span<const ItemId> bundle) {
  DynamicBitset covered(graph.item_count());
  for (ItemId v : bundle) covered |= index.succ_closed(v);
  return covered.count();
}

std::uint64_t dissatisfaction(const PreferenceGraph& graph, const ReachabilityIndex& index,
                              std::span<const ItemId> bundle) {
  return graph.item_count() - satisfaction(graph, index, bundle);
}

DissatisfactionProfile profile(const PreferenceGraph& graph, const ReachabilityIndex& index,
                               const Allocation& allocation) {
  allocation.validate(graph.item_count());
  DissatisfactionProfile out;
  for (const auto& b : allocation.bundles()) {
    out.per_agent.push_back(dissatisfaction(graph, index, b));
    out.total += out.per_agent.back();
  }
  return out;
}

DissatisfactionProfile profile_by_search(const PreferenceGraph& graph, const Allocation& allocation) {
  allocation.validate(graph.item_count());
  const std::size_t n = graph.item_count();
  std::vector<std::uint32_t> stamp(n, 0);
  std::vector<ItemId> stack;
  DissatisfactionProfile out;
  std::uint32_t round = 0;
  for (const auto& b : allocation.bundles()) {
    ++round;
    std::uint64_t reached = 0;
    for (ItemId v : b) {
      if (stamp[v] == round) continue;
      stamp[v] = round;
      stack.push_back(v);
      while (!stack.empty()) {
        ItemId u = stack.back();
        stack.pop_back();
        ++reached;
        for (ItemId w : graph.out_neighbors(u)) {
          if (stamp[w] != round) {
            stamp[w] = round;
            stack.push_back(w);
          }
        }
      }
    }
    out.per_agent.push_back(n - reached);
    out.total += out.per_agent.back();
  }
  return out;
}

}  // namespace prefalloc
