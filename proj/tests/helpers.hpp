#ifndef PREFALLOC_TESTS_HELPERS_HPP
#define PREFALLOC_TESTS_HELPERS_HPP

#include <cstdint>
#include <vector>

#include "prefalloc/allocation.hpp"
#include "prefalloc/graph.hpp"
#include "prefalloc/reachability.hpp"

namespace testing {

using namespace prefalloc;

inline PreferenceGraph make(std::size_t n, std::vector<Arc> arcs) {
  return PreferenceGraph::build(n, std::move(arcs));
}

inline PreferenceGraph path(std::size_t n) {
  std::vector<Arc> arcs;
  for (ItemId v = 0; v + 1 < n; ++v) arcs.push_back({v, v + 1});
  return make(n, arcs);
}

inline PreferenceGraph edgeless(std::size_t n) { return make(n, {}); }

// s=0, a=1, b=2, t=3
inline PreferenceGraph diamond() { return make(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}); }

inline std::uint64_t total_of(const PreferenceGraph& g, const Allocation& a) {
  const ReachabilityIndex index(g);
  return profile(g, index, a).total;
}

// Per-vertex DFS, independent of the bitset index.
inline std::vector<std::vector<bool>> reach_by_dfs(const PreferenceGraph& g) {
  const std::size_t n = g.item_count();
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (ItemId s = 0; s < n; ++s) {
    std::vector<ItemId> stack{s};
    r[s][s] = true;
    while (!stack.empty()) {
      const ItemId v = stack.back();
      stack.pop_back();
      for (ItemId w : g.out_neighbors(v)) {
        if (!r[s][w]) {
          r[s][w] = true;
          stack.push_back(w);
        }
      }
    }
  }
  return r;
}

}  // namespace testing

#endif  // PREFALLOC_TESTS_HELPERS_HPP
