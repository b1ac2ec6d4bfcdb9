#include <algorithm>
#include <iterator>
#include <map>
#include <string>
#include <vector>

#include "prefalloc/errors.hpp"
#include "prefalloc/recognizers.hpp"

namespace prefalloc {

namespace {

struct LiveEdge {
  ItemId tail;
  ItemId head;
  std::uint32_t node;
};

// Working multigraph for the reduction. Parallel edges are merged the moment
// they appear, so each (tail, head) pair holds at most one live edge.
class Reducer {
 public:
  Reducer(const PreferenceGraph& graph, ItemId source, ItemId sink)
      : out_(graph.item_count()), in_(graph.item_count()), source_(source), sink_(sink) {
    for (const Arc& a : graph.arcs()) {
      const auto node = push_node({SpKind::kLeaf, a.tail, a.head, 0, 0});
      link(a.tail, a.head, node);
    }
  }

  std::optional<SpDecomposition> run(std::string* why) {
    std::vector<ItemId> work;
    for (ItemId v = 0; v < out_.size(); ++v) work.push_back(v);
    std::reverse(work.begin(), work.end());
    while (!work.empty()) {
      const ItemId v = work.back();
      work.pop_back();
      if (v == source_ || v == sink_ || in_[v].size() != 1 || out_[v].size() != 1) continue;
      const auto [u, e1] = *in_[v].begin();
      const auto [w, e2] = *out_[v].begin();
      unlink(u, v);
      unlink(v, w);
      const auto series = push_node({SpKind::kSeries, u, w, edges_[e1].node, edges_[e2].node});
      link(u, w, series);
      work.push_back(w);
      work.push_back(u);
    }
    if (live_ != 1 || out_[source_].size() != 1 || out_[source_].begin()->first != sink_) {
      if (why) *why = "series/parallel reduction stops with " + std::to_string(live_) + " edges";
      return std::nullopt;
    }
    // The surviving edge's node is the root; move it to the back if needed.
    const std::uint32_t root = edges_[out_[source_].begin()->second].node;
    if (root + 1 != nodes_.size()) {
      if (why) *why = "internal: root is not the last composition node";
      return std::nullopt;
    }
    return SpDecomposition{std::move(nodes_)};
  }

 private:
  std::uint32_t push_node(SpNode node) {
    nodes_.push_back(node);
    return static_cast<std::uint32_t>(nodes_.size() - 1);
  }

  void link(ItemId u, ItemId w, std::uint32_t node) {
    auto it = out_[u].find(w);
    if (it != out_[u].end()) {
      LiveEdge& existing = edges_[it->second];
      existing.node = push_node({SpKind::kParallel, u, w, existing.node, node});
      return;
    }
    const auto id = static_cast<std::uint32_t>(edges_.size());
    edges_.push_back({u, w, node});
    out_[u].emplace(w, id);
    in_[w].emplace(u, id);
    ++live_;
  }

  void unlink(ItemId u, ItemId w) {
    out_[u].erase(w);
    in_[w].erase(u);
    --live_;
  }

  std::vector<std::map<ItemId, std::uint32_t>> out_;
  std::vector<std::map<ItemId, std::uint32_t>> in_;
  std::vector<LiveEdge> edges_;
  std::vector<SpNode> nodes_;
  std::size_t live_ = 0;
  ItemId source_;
  ItemId sink_;
};

}  // namespace

std::optional<SpDecomposition> find_sp_decomposition(const PreferenceGraph& graph,
                                                     std::string* why) {
  if (graph.arc_count() == 0) {
    if (why) *why = "an s,t-series-parallel graph has at least one arc";
    return std::nullopt;
  }
  const auto sources = graph.sources();
  const auto sinks = graph.sinks();
  if (sources.size() != 1 || sinks.size() != 1) {
    if (why) {
      *why = "needs exactly one source and one sink (found " + std::to_string(sources.size()) +
             " and " + std::to_string(sinks.size()) + ")";
    }
    return std::nullopt;
  }
  Reducer reducer(graph, sources.front(), sinks.front());
  return reducer.run(why);
}

SpDecomposition sp_decompose(const PreferenceGraph& graph) {
  std::string why;
  auto d = find_sp_decomposition(graph, &why);
  if (!d) throw Error(ErrorCode::kNotSeriesParallel, why);
  return std::move(*d);
}

std::vector<Arc> replay_sp(const SpDecomposition& decomposition) {
  const auto& nodes = decomposition.nodes;
  if (nodes.empty()) throw Error(ErrorCode::kDecompositionMismatch, "empty decomposition");
  std::vector<Arc> arcs;
  for (std::uint32_t i = 0; i < nodes.size(); ++i) {
    const SpNode& node = nodes[i];
    if (node.kind == SpKind::kLeaf) {
      arcs.push_back({node.source, node.sink});
      continue;
    }
    if (node.left >= i || node.right >= i) {
      throw Error(ErrorCode::kDecompositionMismatch, "child does not precede its parent");
    }
    const SpNode& l = nodes[node.left];
    const SpNode& r = nodes[node.right];
    const bool ok = node.kind == SpKind::kSeries
                        ? l.sink == r.source && node.source == l.source && node.sink == r.sink
                        : l.source == r.source && l.sink == r.sink && node.source == l.source &&
                              node.sink == l.sink;
    if (!ok) {
      throw Error(ErrorCode::kDecompositionMismatch,
                  "composition node " + std::to_string(i) + " has inconsistent terminals");
    }
  }
  // Every node except the root must be used exactly once as a child.
  std::vector<int> uses(nodes.size(), 0);
  for (const SpNode& node : nodes) {
    if (node.kind != SpKind::kLeaf) {
      ++uses[node.left];
      ++uses[node.right];
    }
  }
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    if (uses[i] != 1) throw Error(ErrorCode::kDecompositionMismatch, "node is not part of one tree");
  }
  if (uses.back() != 0) throw Error(ErrorCode::kDecompositionMismatch, "root has a parent");
  return arcs;
}

std::vector<std::vector<ItemId>> sp_vertex_sets(const SpDecomposition& decomposition) {
  std::vector<std::vector<ItemId>> sets(decomposition.nodes.size());
  for (std::size_t i = 0; i < decomposition.nodes.size(); ++i) {
    const SpNode& node = decomposition.nodes[i];
    if (node.kind == SpKind::kLeaf) {
      sets[i] = {std::min(node.source, node.sink), std::max(node.source, node.sink)};
    } else {
      std::set_union(sets[node.left].begin(), sets[node.left].end(), sets[node.right].begin(),
                     sets[node.right].end(), std::back_inserter(sets[i]));
    }
  }
  return sets;
}

}  // namespace prefalloc
