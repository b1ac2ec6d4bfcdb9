#include "prefalloc/instances.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <numeric>
#include <optional>
#include <set>

#include "prefalloc/errors.hpp"

namespace prefalloc {

PreferenceGraph reduce_coloring_to_instance(const UndirectedGraph& h, std::size_t k) {
  if (k < 3) throw Error(ErrorCode::kPreconditionViolated, "the reduction is stated for k >= 3");
  const std::size_t n = h.vertex_count;
  std::vector<Arc> arcs;
  std::vector<std::string> names;
  for (std::size_t v = 0; v < n; ++v) names.push_back("v" + std::to_string(v));
  for (std::size_t e = 0; e < h.edges.size(); ++e) {
    const auto [u, v] = h.edges[e];
    const auto w = static_cast<ItemId>(n + e);
    arcs.push_back({u, w});
    arcs.push_back({v, w});
    names.push_back("w" + std::to_string(u) + "_" + std::to_string(v));
  }
  return PreferenceGraph::build(n + h.edges.size(), std::move(arcs), std::move(names));
}

XGraph x_graph(const PreferenceGraph& graph) {
  XGraph out;
  std::vector<std::uint32_t> position(graph.item_count(), UINT32_MAX);
  for (ItemId v = 0; v < graph.item_count(); ++v) {
    if (graph.in_degree(v) > 0 && graph.out_degree(v) > 0) {
      throw Error(ErrorCode::kNotOneWayBipartite,
                  "item " + std::to_string(v) + " has both in- and out-arcs");
    }
    if (graph.is_source(v)) {
      position[v] = static_cast<std::uint32_t>(out.x_items.size());
      out.x_items.push_back(v);
    }
  }
  std::set<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (ItemId y = 0; y < graph.item_count(); ++y) {
    const auto parents = graph.in_neighbors(y);
    for (std::size_t i = 0; i < parents.size(); ++i) {
      for (std::size_t j = i + 1; j < parents.size(); ++j) {
        const auto a = position[parents[i]];
        const auto b = position[parents[j]];
        edges.emplace(std::min(a, b), std::max(a, b));
      }
    }
  }
  out.graph.vertex_count = out.x_items.size();
  out.graph.edges.assign(edges.begin(), edges.end());
  return out;
}

Allocation good_allocation_from_coloring(const PreferenceGraph& graph,
                                         const std::vector<std::uint32_t>& coloring,
                                         std::size_t agents) {
  const XGraph xg = x_graph(graph);
  if (agents <= graph.max_in_degree()) {
    throw Error(ErrorCode::kPreconditionViolated, "k must exceed the maximum in-degree");
  }
  if (coloring.size() != xg.x_items.size()) {
    throw Error(ErrorCode::kPreconditionViolated, "coloring does not cover the X side");
  }
  for (std::uint32_t c : coloring) {
    if (c >= agents) throw Error(ErrorCode::kPreconditionViolated, "color outside 0..k-1");
  }
  for (const auto& [a, b] : xg.graph.edges) {
    if (coloring[a] == coloring[b]) {
      throw Error(ErrorCode::kPreconditionViolated, "coloring is not proper");
    }
  }
  std::vector<AgentId> agent_of(graph.item_count(), UINT32_MAX);
  for (std::size_t i = 0; i < xg.x_items.size(); ++i) agent_of[xg.x_items[i]] = coloring[i];
  Allocation alloc(agents);
  for (ItemId v = 0; v < graph.item_count(); ++v) {
    if (!graph.is_source(v)) {
      std::vector<char> taken(agents, 0);
      for (ItemId u : graph.in_neighbors(v)) taken[agent_of[u]] = 1;
      agent_of[v] = static_cast<AgentId>(std::find(taken.begin(), taken.end(), 0) - taken.begin());
    }
    alloc.assign(v, agent_of[v]);
  }
  return alloc;
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw Error(ErrorCode::kPreconditionViolated, "empty range");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return x % bound;
}

std::vector<ItemId> Rng::permutation(std::size_t n) {
  std::vector<ItemId> perm(n);
  std::iota(perm.begin(), perm.end(), 0U);
  for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[below(i)]);
  return perm;
}

namespace {

PreferenceGraph relabelled(std::size_t n, std::vector<Arc> arcs, Rng& rng) {
  const auto perm = rng.permutation(n);
  for (Arc& a : arcs) a = {perm[a.tail], perm[a.head]};
  std::sort(arcs.begin(), arcs.end());
  return PreferenceGraph::build(n, std::move(arcs));
}

}  // namespace

PreferenceGraph random_polytree(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Arc> arcs;
  for (ItemId v = 1; v < n; ++v) {
    const auto u = static_cast<ItemId>(rng.below(v));
    arcs.push_back(rng.chance(0.5) ? Arc{u, v} : Arc{v, u});
  }
  return relabelled(n, std::move(arcs), rng);
}

PreferenceGraph random_out_tree(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Arc> arcs;
  for (ItemId v = 1; v < n; ++v) arcs.push_back({static_cast<ItemId>(rng.below(v)), v});
  return relabelled(n, std::move(arcs), rng);
}

PreferenceGraph random_sp(std::size_t depth, std::uint64_t seed, std::size_t max_items) {
  Rng rng(seed);
  std::vector<Arc> arcs;
  std::size_t count = 2;
  // Any graph built here holds at most one s -> t arc, and a series
  // composition none, so a parallel composition with a series right-hand
  // side never duplicates an arc.
  std::function<void(std::size_t, ItemId, ItemId, bool)> grow = [&](std::size_t d, ItemId s,
                                                                      ItemId t, bool force_series) {
    const bool can_split = d > 0 && count < max_items;
    if (!can_split || (!force_series && rng.chance(0.25))) {
      if (force_series) throw Error(ErrorCode::kInternalInconsistency, "series split unavailable");
      arcs.push_back({s, t});
      return;
    }
    if (force_series || rng.chance(0.5)) {
      const auto m = static_cast<ItemId>(count++);
      grow(d - 1, s, m, false);
      grow(d - 1, m, t, false);
    } else {
      grow(d - 1, s, t, false);
      if (d >= 1 && count < max_items) grow(d, s, t, true);
    }
  };
  grow(depth, 0, 1, false);
  return relabelled(count, std::move(arcs), rng);
}

PreferenceGraph random_out_cactus(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Arc> arcs;
  std::size_t count = n == 0 ? 0 : 1;
  while (count < n) {
    const auto s = static_cast<ItemId>(rng.below(count));
    const std::size_t room = n - count;
    if (room < 2 || rng.chance(0.3)) {
      arcs.push_back({s, static_cast<ItemId>(count++)});
      continue;
    }
    // Two paths s ~> t with a and b arcs: a + b - 1 new items, a + b >= 3.
    const std::size_t total = rng.between(3, std::min<std::size_t>(room + 1, 7));
    const std::size_t a = rng.between(1, total - 2);
    const std::size_t b = total - a;
    const auto t = static_cast<ItemId>(count++);
    for (std::size_t len : {a, b}) {
      ItemId prev = s;
      for (std::size_t i = 1; i < len; ++i) {
        const auto mid = static_cast<ItemId>(count++);
        arcs.push_back({prev, mid});
        prev = mid;
      }
      arcs.push_back({prev, t});
    }
  }
  return relabelled(n, std::move(arcs), rng);
}

PreferenceGraph random_width_two(std::size_t n, std::uint64_t seed, double cross_probability) {
  Rng rng(seed);
  // A random interleaving of two chains; arcs only go forward in it.
  std::vector<int> side(n);
  for (auto& s : side) s = rng.chance(0.5) ? 1 : 0;
  std::vector<Arc> arcs;
  std::array<std::optional<ItemId>, 2> last;
  for (ItemId v = 0; v < n; ++v) {
    if (last[side[v]]) arcs.push_back({*last[side[v]], v});
    last[side[v]] = v;
  }
  for (ItemId u = 0; u < n; ++u) {
    for (ItemId v = u + 1; v < n; ++v) {
      if (side[u] != side[v] && rng.chance(cross_probability)) arcs.push_back({u, v});
    }
  }
  return relabelled(n, std::move(arcs), rng);
}

PreferenceGraph random_dag(std::size_t n, double p, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Arc> arcs;
  for (ItemId u = 0; u < n; ++u) {
    for (ItemId v = u + 1; v < n; ++v) {
      if (rng.chance(p)) arcs.push_back({u, v});
    }
  }
  return relabelled(n, std::move(arcs), rng);
}

UndirectedGraph random_undirected(std::size_t n, double p, std::uint64_t seed) {
  Rng rng(seed);
  UndirectedGraph g;
  g.vertex_count = n;
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = u + 1; v < n; ++v) {
      if (rng.chance(p)) g.edges.emplace_back(u, v);
    }
  }
  return g;
}

std::vector<std::string_view> fixture_names() { return {"fig1", "fig2", "fig3"}; }

std::optional<PreferenceGraph> fixture(std::string_view name) {
  if (name == "fig1") {
    std::vector<std::string> names{"tablet"};
    for (char c = 'a'; c <= 'm'; ++c) names.emplace_back(1, c);
    auto id = [](char c) { return static_cast<ItemId>(c - 'a' + 1); };
    std::vector<Arc> arcs{{0, id('a')},       {0, id('b')},       {0, id('c')},
                          {id('a'), id('d')}, {id('b'), id('h')}, {id('b'), id('i')},
                          {id('c'), id('j')}, {id('c'), id('l')}, {id('d'), id('e')},
                          {id('j'), id('k')}, {id('l'), id('m')}, {id('e'), id('f')},
                          {id('e'), id('g')}};
    return PreferenceGraph::build(14, std::move(arcs), std::move(names));
  }
  if (name == "fig2") {
    std::vector<std::string> names;
    for (int i = 1; i <= 8; ++i) names.push_back(std::to_string(i));
    return PreferenceGraph::build(8, {{3, 5}, {3, 6}, {1, 5}, {2, 5}, {5, 7}, {4, 6}, {0, 2}},
                                  std::move(names));
  }
  if (name == "fig3") {
    std::vector<std::string> names{"x1", "x2", "x3", "x4"};
    std::vector<Arc> arcs;
    ItemId y = 4;
    for (ItemId a = 0; a < 4; ++a) {
      for (ItemId b = a + 1; b < 4; ++b, ++y) {
        names.push_back("y" + std::to_string(a + 1) + std::to_string(b + 1));
        arcs.push_back({a, y});
        arcs.push_back({b, y});
      }
    }
    return PreferenceGraph::build(10, std::move(arcs), std::move(names));
  }
  return std::nullopt;
}

Allocation fig2_example_allocation() { return Allocation({{1, 3, 4}, {5, 6}, {0, 2, 7}}); }

}  // namespace prefalloc
