#include "prefalloc/oracle.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <string>

#include "prefalloc/errors.hpp"

namespace prefalloc {

namespace {

using Mask = std::uint64_t;

void check_limits(std::size_t n, std::size_t agents, const OracleLimits& limits) {
  if (agents == 0) throw Error(ErrorCode::kPreconditionViolated, "need at least one agent");
  if (n > limits.item_limit || n > 64) {
    throw Error(ErrorCode::kInstanceTooLarge,
                "exhaustive search is capped at " + std::to_string(limits.item_limit) + " items");
  }
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (count > limits.labeling_limit / (agents + 1)) {
      throw Error(ErrorCode::kInstanceTooLarge, "(k+1)^n exceeds the labeling budget");
    }
    count *= agents + 1;
  }
}

// Depth-first enumeration of labelings in lexicographic order (agents before
// NULL), keeping the first strict improvement.
class Search {
 public:
  Search(const PreferenceGraph& graph, const ReachabilityIndex& index, std::size_t agents,
         bool antichains_only)
      : n_(graph.item_count()),
        k_(agents),
        antichains_only_(antichains_only),
        succ_(n_, 0),
        pred_(n_, 0),
        cover_(agents, 0),
        held_(agents, 0),
        label_(n_, kNullLabel) {
    for (ItemId v = 0; v < n_; ++v) {
      for (ItemId w = 0; w < n_; ++w) {
        if (index.dominates(v, w)) {
          succ_[v] |= Mask{1} << w;
          pred_[w] |= Mask{1} << v;
        }
      }
    }
  }

  OracleResult run() {
    recurse(0);
    OracleResult result;
    result.total = best_total_;
    result.leaves_visited = leaves_;
    result.allocation = Allocation(k_);
    for (ItemId v = 0; v < n_; ++v) {
      if (best_label_[v] != kNullLabel) result.allocation.assign(v, best_label_[v]);
    }
    return result;
  }

 private:
  static constexpr std::uint32_t kNullLabel = UINT32_MAX;

  void recurse(ItemId v) {
    if (v == n_) {
      leaf();
      return;
    }
    const Mask related = succ_[v] | pred_[v];
    for (std::uint32_t a = 0; a < k_; ++a) {
      if (antichains_only_ && (held_[a] & related) != 0) continue;
      const Mask saved_cover = cover_[a];
      cover_[a] |= succ_[v];
      held_[a] |= Mask{1} << v;
      label_[v] = a;
      recurse(v + 1);
      held_[a] &= ~(Mask{1} << v);
      cover_[a] = saved_cover;
    }
    label_[v] = kNullLabel;
    recurse(v + 1);
  }

  void leaf() {
    ++leaves_;
    if (antichains_only_ && k_ <= n_) {
      for (Mask h : held_) {
        if (h == 0) return;
      }
    }
    std::uint64_t total = 0;
    for (Mask c : cover_) total += n_ - static_cast<std::uint64_t>(std::popcount(c));
    if (total < best_total_) {
      best_total_ = total;
      best_label_ = label_;
    }
  }

  std::size_t n_;
  std::size_t k_;
  bool antichains_only_;
  std::vector<Mask> succ_;
  std::vector<Mask> pred_;
  std::vector<Mask> cover_;
  std::vector<Mask> held_;
  std::vector<std::uint32_t> label_;
  std::vector<std::uint32_t> best_label_;
  std::uint64_t best_total_ = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t leaves_ = 0;
};

}  // namespace

OracleResult brute_force_optimum(const PreferenceGraph& graph, const ReachabilityIndex& index,
                                 std::size_t agents, const OracleLimits& limits) {
  check_limits(graph.item_count(), agents, limits);
  return Search(graph, index, agents, false).run();
}

OracleResult antichain_optimum(const PreferenceGraph& graph, const ReachabilityIndex& index,
                               std::size_t agents, const OracleLimits& limits) {
  check_limits(graph.item_count(), agents, limits);
  return Search(graph, index, agents, true).run();
}

std::optional<std::vector<std::uint32_t>> exact_k_coloring(const UndirectedGraph& graph,
                                                           std::size_t colors) {
  const std::size_t n = graph.vertex_count;
  if (n > 16) throw Error(ErrorCode::kInstanceTooLarge, "coloring search is capped at 16 vertices");
  const auto adj = graph.adjacency();
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0U);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return adj[a].size() > adj[b].size(); });

  constexpr std::uint32_t kNone = UINT32_MAX;
  std::vector<std::uint32_t> color(n, kNone);
  auto place = [&](auto&& self, std::size_t i) -> bool {
    if (i == n) return true;
    const std::uint32_t v = order[i];
    for (std::uint32_t c = 0; c < colors; ++c) {
      bool clash = false;
      for (std::uint32_t w : adj[v]) {
        if (color[w] == c) {
          clash = true;
          break;
        }
      }
      if (clash) continue;
      color[v] = c;
      if (self(self, i + 1)) return true;
      color[v] = kNone;
    }
    return false;
  };
  if (!place(place, 0)) return std::nullopt;
  return color;
}

std::vector<ItemId> max_antichain_brute(const PreferenceGraph& graph,
                                        const ReachabilityIndex& index) {
  const std::size_t n = graph.item_count();
  if (n > 20) throw Error(ErrorCode::kInstanceTooLarge, "antichain search is capped at 20 items");
  std::vector<std::uint32_t> related(n, 0);
  for (ItemId v = 0; v < n; ++v) {
    for (ItemId w = 0; w < n; ++w) {
      if (index.comparable(v, w)) related[v] |= 1U << w;
    }
  }
  std::uint32_t best = 0;
  int best_size = 0;
  auto grow = [&](auto&& self, ItemId v, std::uint32_t chosen, int size) -> void {
    if (v == n) {
      if (size > best_size) {
        best_size = size;
        best = chosen;
      }
      return;
    }
    if (size + static_cast<int>(n - v) <= best_size) return;
    if ((related[v] & chosen) == 0) self(self, v + 1, chosen | (1U << v), size + 1);
    self(self, v + 1, chosen, size);
  };
  grow(grow, 0, 0, 0);
  std::vector<ItemId> out;
  for (ItemId v = 0; v < n; ++v) {
    if (best >> v & 1U) out.push_back(v);
  }
  return out;
}

}  // namespace prefalloc
