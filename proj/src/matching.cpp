#include "prefalloc/matching.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <string>
#include <tuple>

#include "prefalloc/errors.hpp"

namespace prefalloc {

namespace {

constexpr std::uint32_t kFree = UINT32_MAX;

Matching collect(const BipartiteGraph& graph, const std::vector<std::uint32_t>& match_left_edge) {
  Matching m;
  for (std::uint32_t e : match_left_edge) {
    if (e == kFree) continue;
    m.edge_indices.push_back(e);
    m.total_weight += graph.edges()[e].weight;
  }
  return m;
}

}  // namespace

BipartiteGraph::BipartiteGraph(std::size_t left_count, std::size_t right_count,
                               std::vector<BipartiteEdge> edges)
    : left_count_(left_count), right_count_(right_count), edges_(std::move(edges)) {
  by_left_.resize(left_count_);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> seen;
  seen.reserve(edges_.size());
  for (std::uint32_t i = 0; i < edges_.size(); ++i) {
    const BipartiteEdge& e = edges_[i];
    if (e.left >= left_count_ || e.right >= right_count_) {
      throw Error(ErrorCode::kOutOfRangeItem, "bipartite edge endpoint out of range");
    }
    if (e.weight < 0) {
      throw Error(ErrorCode::kPreconditionViolated, "bipartite edge weights must be non-negative");
    }
    by_left_[e.left].push_back(i);
    seen.emplace_back(e.left, e.right);
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
    throw Error(ErrorCode::kDuplicateArc, "duplicate bipartite edge");
  }
}

Matching max_matching(const BipartiteGraph& graph) {
  const std::size_t nl = graph.left_count();
  const std::size_t nr = graph.right_count();
  const auto& edges = graph.edges();
  const auto& inc = graph.left_incidence();
  std::vector<std::uint32_t> match_left(nl, kFree);   // edge index
  std::vector<std::uint32_t> match_right(nr, kFree);  // left vertex
  std::vector<std::uint32_t> layer(nl);
  std::vector<std::size_t> cursor(nl);
  constexpr std::uint32_t kInf = UINT32_MAX;

  while (true) {
    // BFS layers from every free left vertex over alternating paths.
    std::queue<std::uint32_t> queue;
    for (std::uint32_t u = 0; u < nl; ++u) {
      layer[u] = match_left[u] == kFree ? 0 : kInf;
      if (layer[u] == 0) queue.push(u);
    }
    bool found = false;
    while (!queue.empty()) {
      const std::uint32_t u = queue.front();
      queue.pop();
      for (std::uint32_t e : inc[u]) {
        const std::uint32_t w = match_right[edges[e].right];
        if (w == kFree) {
          found = true;
        } else if (layer[w] == kInf) {
          layer[w] = layer[u] + 1;
          queue.push(w);
        }
      }
    }
    if (!found) break;

    // Vertex-disjoint shortest augmenting paths, iterative DFS.
    std::fill(cursor.begin(), cursor.end(), 0);
    for (std::uint32_t root = 0; root < nl; ++root) {
      if (match_left[root] != kFree) continue;
      std::vector<std::uint32_t> path_edges;
      std::vector<std::uint32_t> stack{root};
      bool augmented = false;
      while (!stack.empty() && !augmented) {
        const std::uint32_t u = stack.back();
        if (cursor[u] == inc[u].size()) {
          layer[u] = kInf;  // dead end for this phase
          stack.pop_back();
          if (!path_edges.empty()) path_edges.pop_back();
          continue;
        }
        const std::uint32_t e = inc[u][cursor[u]++];
        const std::uint32_t w = match_right[edges[e].right];
        if (w == kFree) {
          path_edges.push_back(e);
          augmented = true;
        } else if (layer[w] == layer[u] + 1) {
          path_edges.push_back(e);
          stack.push_back(w);
        }
      }
      if (!augmented) continue;
      for (std::uint32_t e : path_edges) {
        match_left[edges[e].left] = e;
        match_right[edges[e].right] = edges[e].left;
      }
    }
  }
  return collect(graph, match_left);
}

Matching min_weight_k_matching(const BipartiteGraph& graph, std::size_t cardinality) {
  const std::size_t nl = graph.left_count();
  const std::size_t nr = graph.right_count();
  const auto& edges = graph.edges();
  const auto& inc = graph.left_incidence();
  // Node ids: source 0, left 1..nl, right nl+1..nl+nr, sink nl+nr+1.
  const std::size_t source = 0;
  const std::size_t sink = nl + nr + 1;
  const std::size_t node_count = nl + nr + 2;
  auto left_node = [](std::uint32_t u) { return std::size_t{u} + 1; };
  auto right_node = [nl](std::uint32_t v) { return nl + 1 + v; };

  std::vector<std::uint32_t> match_left(nl, kFree);   // edge index
  std::vector<std::uint32_t> match_right(nr, kFree);  // edge index
  std::vector<std::int64_t> potential(node_count, 0);
  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

  std::vector<std::int64_t> dist(node_count);
  std::vector<char> done(node_count);
  // Predecessor on the shortest path: for a left node, the matched edge that
  // was traversed backwards (or kFree when reached from the source); for a
  // right node, the forward edge.
  std::vector<std::uint32_t> via(node_count);
  std::vector<std::size_t> prev(node_count);

  for (std::size_t round = 0; round < cardinality; ++round) {
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(done.begin(), done.end(), 0);
    std::fill(via.begin(), via.end(), kFree);
    std::fill(prev.begin(), prev.end(), source);
    using Entry = std::pair<std::int64_t, std::size_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    dist[source] = 0;
    heap.emplace(0, source);
    auto relax = [&](std::size_t from, std::size_t to, std::int64_t cost, std::uint32_t edge) {
      const std::int64_t reduced = cost + potential[from] - potential[to];
      const std::int64_t cand = dist[from] + reduced;
      if (cand < dist[to]) {
        dist[to] = cand;
        via[to] = edge;
        prev[to] = from;
        heap.emplace(cand, to);
      }
    };
    while (!heap.empty()) {
      const auto [d, x] = heap.top();
      heap.pop();
      if (done[x] || d != dist[x]) continue;
      done[x] = 1;
      if (x == sink) break;
      if (x == source) {
        for (std::uint32_t u = 0; u < nl; ++u) {
          if (match_left[u] == kFree) relax(source, left_node(u), 0, kFree);
        }
      } else if (x <= nl) {
        const auto u = static_cast<std::uint32_t>(x - 1);
        for (std::uint32_t e : inc[u]) {
          if (e != match_left[u]) relax(x, right_node(edges[e].right), edges[e].weight, e);
        }
      } else {
        const auto v = static_cast<std::uint32_t>(x - nl - 1);
        const std::uint32_t e = match_right[v];
        if (e == kFree) {
          relax(x, sink, 0, kFree);
        } else {
          relax(x, left_node(edges[e].left), -edges[e].weight, e);
        }
      }
    }
    if (dist[sink] >= kInf) {
      throw Error(ErrorCode::kInfeasibleCardinality,
                  "no matching of cardinality " + std::to_string(cardinality) + " (maximum is " +
                      std::to_string(round) + ")");
    }
    for (std::size_t x = 0; x < node_count; ++x) {
      potential[x] += std::min(done[x] ? dist[x] : kInf, dist[sink]);
    }

    // Walk back from the sink flipping edges along the path.
    std::size_t x = prev[sink];
    while (true) {
      const std::uint32_t e = via[x];
      const std::uint32_t u = edges[e].left;
      match_right[edges[e].right] = e;
      match_left[u] = e;
      const std::size_t before = prev[left_node(u)];
      if (before == source) break;
      x = before;
    }
  }
  return collect(graph, match_left);
}

ChainPartition chain_partition(const PreferenceGraph& graph, const ReachabilityIndex& index) {
  const std::size_t n = graph.item_count();
  std::vector<BipartiteEdge> split;
  for (ItemId u = 0; u < n; ++u) {
    index.succ_closed(u).for_each_set([&](std::size_t v) {
      if (v != u) split.push_back({u, static_cast<std::uint32_t>(v), 0});
    });
  }
  const BipartiteGraph bip(n, n, std::move(split));
  const Matching m = max_matching(bip);
  std::vector<std::uint32_t> next(n, kFree);
  std::vector<char> has_prev(n, 0);
  for (std::uint32_t e : m.edge_indices) {
    next[bip.edges()[e].left] = bip.edges()[e].right;
    has_prev[bip.edges()[e].right] = 1;
  }
  ChainPartition out;
  for (ItemId start = 0; start < n; ++start) {
    if (has_prev[start]) continue;
    std::vector<ItemId> chain;
    for (std::uint32_t v = start; v != kFree; v = next[v]) chain.push_back(v);
    out.chains.push_back(std::move(chain));
  }
  return out;
}

}  // namespace prefalloc
