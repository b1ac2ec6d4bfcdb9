#include "prefalloc/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>

#include "prefalloc/errors.hpp"

namespace prefalloc {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kCycleDetected: return "CycleDetected";
    case ErrorCode::kDuplicateArc: return "DuplicateArc";
    case ErrorCode::kSelfLoop: return "SelfLoop";
    case ErrorCode::kOutOfRangeItem: return "OutOfRangeItem";
    case ErrorCode::kInvalidAllocation: return "InvalidAllocation";
    case ErrorCode::kInternalInconsistency: return "InternalInconsistency";
    case ErrorCode::kPreconditionViolated: return "PreconditionViolated";
    case ErrorCode::kInfeasibleCardinality: return "InfeasibleCardinality";
    case ErrorCode::kNotSeriesParallel: return "NotSeriesParallel";
    case ErrorCode::kNotOutCactus: return "NotOutCactus";
    case ErrorCode::kNotPolytree: return "NotPolytree";
    case ErrorCode::kNotOutTree: return "NotOutTree";
    case ErrorCode::kNotOneWayBipartite: return "NotOneWayBipartite";
    case ErrorCode::kDecompositionMismatch: return "DecompositionMismatch";
    case ErrorCode::kWidthExceeded: return "WidthExceeded";
    case ErrorCode::kUnsupported: return "Unsupported";
    case ErrorCode::kInstanceTooLarge: return "InstanceTooLarge";
    case ErrorCode::kParseError: return "ParseError";
  }
  return "Unknown";
}

namespace {

// Interleaved CSR: slot 2v holds the out-list of v, slot 2v + 1 its in-list.
void fill_csr(std::size_t n, std::span<const Arc> arcs, std::vector<std::uint32_t>& offset,
              std::vector<ItemId>& adj) {
  offset.assign(2 * n + 1, 0);
  for (const Arc& a : arcs) {
    ++offset[2 * std::size_t{a.tail} + 1];
    ++offset[2 * std::size_t{a.head} + 2];
  }
  std::partial_sum(offset.begin(), offset.end(), offset.begin());
  adj.resize(2 * arcs.size());
  std::vector<std::uint32_t> cursor(offset.begin(), offset.end() - 1);
  for (const Arc& a : arcs) {
    adj[cursor[2 * std::size_t{a.tail}]++] = a.head;
    adj[cursor[2 * std::size_t{a.head} + 1]++] = a.tail;
  }
}

// Called when Kahn's algorithm left vertices unprocessed; every such vertex
// has an unprocessed in-neighbour, so walking backwards must revisit a vertex.
std::vector<ItemId> find_cycle(const PreferenceGraph& g, const std::vector<std::size_t>& indeg_left) {
  const std::size_t n = g.item_count();
  ItemId start = 0;
  while (indeg_left[start] == 0) ++start;
  std::vector<std::size_t> seen_at(n, SIZE_MAX);
  std::vector<ItemId> walk;
  ItemId v = start;
  while (seen_at[v] == SIZE_MAX) {
    seen_at[v] = walk.size();
    walk.push_back(v);
    for (ItemId u : g.in_neighbors(v)) {
      if (indeg_left[u] > 0) {
        v = u;
        break;
      }
    }
  }
  std::vector<ItemId> cycle(walk.begin() + static_cast<std::ptrdiff_t>(seen_at[v]), walk.end());
  std::reverse(cycle.begin(), cycle.end());
  return cycle;
}

}  // namespace

PreferenceGraph PreferenceGraph::build(std::size_t item_count, std::vector<Arc> arcs,
                                       std::vector<std::string> item_names) {
  if (item_count > UINT32_MAX - 1) {
    throw Error(ErrorCode::kOutOfRangeItem, "item count exceeds 32-bit id space");
  }
  if (arcs.size() > UINT32_MAX / 2) {
    throw Error(ErrorCode::kOutOfRangeItem, "arc count exceeds 32-bit offsets");
  }
  if (!item_names.empty() && item_names.size() != item_count) {
    throw Error(ErrorCode::kOutOfRangeItem, "item_names size does not match item_count");
  }
  for (const Arc& a : arcs) {
    if (a.tail >= item_count || a.head >= item_count) {
      std::ostringstream msg;
      msg << "arc (" << a.tail << "," << a.head << ") references an item outside [0,"
          << item_count << ")";
      throw Error(ErrorCode::kOutOfRangeItem, msg.str());
    }
    if (a.tail == a.head) {
      throw Error(ErrorCode::kSelfLoop, "self-loop on item " + std::to_string(a.tail));
    }
  }
  std::vector<Arc> sorted = arcs;
  std::sort(sorted.begin(), sorted.end());
  auto dup = std::adjacent_find(sorted.begin(), sorted.end());
  if (dup != sorted.end()) {
    std::ostringstream msg;
    msg << "arc (" << dup->tail << "," << dup->head << ") appears more than once";
    throw Error(ErrorCode::kDuplicateArc, msg.str());
  }

  PreferenceGraph g;
  g.item_count_ = item_count;
  g.arcs_ = std::move(arcs);
  g.names_ = std::move(item_names);
  // Filling from the sorted arcs keeps every neighbour list ascending.
  fill_csr(item_count, sorted, g.offset_, g.adj_);

  std::vector<std::size_t> indeg(item_count);
  for (ItemId v = 0; v < item_count; ++v) indeg[v] = g.in_degree(v);
  std::priority_queue<ItemId, std::vector<ItemId>, std::greater<>> ready;
  for (ItemId v = 0; v < item_count; ++v) {
    if (indeg[v] == 0) ready.push(v);
  }
  g.topo_order_.reserve(item_count);
  while (!ready.empty()) {
    ItemId v = ready.top();
    ready.pop();
    g.topo_order_.push_back(v);
    for (ItemId w : g.out_neighbors(v)) {
      if (--indeg[w] == 0) ready.push(w);
    }
  }
  if (g.topo_order_.size() != item_count) {
    std::vector<ItemId> cycle = find_cycle(g, indeg);
    std::ostringstream msg;
    msg << "preference relation is cyclic:";
    for (ItemId v : cycle) msg << ' ' << v << " ->";
    msg << ' ' << cycle.front();
    throw Error(ErrorCode::kCycleDetected, msg.str());
  }
  g.topo_rank_.resize(item_count);
  for (std::size_t i = 0; i < item_count; ++i) g.topo_rank_[g.topo_order_[i]] = i;
  return g;
}

std::size_t PreferenceGraph::max_in_degree() const noexcept {
  std::size_t best = 0;
  for (ItemId v = 0; v < item_count_; ++v) best = std::max(best, in_degree(v));
  return best;
}

std::vector<ItemId> PreferenceGraph::sources() const {
  std::vector<ItemId> out;
  for (ItemId v = 0; v < item_count_; ++v) {
    if (is_source(v)) out.push_back(v);
  }
  return out;
}

std::vector<ItemId> PreferenceGraph::sinks() const {
  std::vector<ItemId> out;
  for (ItemId v = 0; v < item_count_; ++v) {
    if (is_sink(v)) out.push_back(v);
  }
  return out;
}

std::string PreferenceGraph::item_name(ItemId v) const {
  return names_.empty() ? std::to_string(v) : names_[v];
}

std::vector<std::vector<ItemId>> weak_components(const PreferenceGraph& graph) {
  const std::size_t n = graph.item_count();
  std::vector<std::uint32_t> comp(n, UINT32_MAX);
  std::uint32_t count = 0;
  std::vector<ItemId> stack;
  for (ItemId root = 0; root < n; ++root) {
    if (comp[root] != UINT32_MAX) continue;
    const std::uint32_t id = count++;
    comp[root] = id;
    stack.push_back(root);
    while (!stack.empty()) {
      ItemId v = stack.back();
      stack.pop_back();
      auto visit = [&](ItemId w) {
        if (comp[w] == UINT32_MAX) {
          comp[w] = id;
          stack.push_back(w);
        }
      };
      for (ItemId w : graph.out_neighbors(v)) visit(w);
      for (ItemId w : graph.in_neighbors(v)) visit(w);
    }
  }
  // Components are numbered by smallest member, so a sweep in id order
  // yields sorted member lists.
  std::vector<std::vector<ItemId>> out(count);
  for (ItemId v = 0; v < n; ++v) out[comp[v]].push_back(v);
  return out;
}

PreferenceGraph induced_subgraph(const PreferenceGraph& graph, std::span<const ItemId> items) {
  std::vector<ItemId> local(graph.item_count(), UINT32_MAX);
  for (std::size_t i = 0; i < items.size(); ++i) local[items[i]] = static_cast<ItemId>(i);
  std::vector<Arc> arcs;
  std::vector<std::string> names;
  for (ItemId v : items) {
    for (ItemId w : graph.out_neighbors(v)) {
      if (local[w] != UINT32_MAX) arcs.push_back({local[v], local[w]});
    }
    if (graph.has_names()) names.push_back(graph.item_names()[v]);
  }
  return PreferenceGraph::build(items.size(), std::move(arcs), std::move(names));
}

std::vector<std::vector<std::uint32_t>> UndirectedGraph::adjacency() const {
  std::vector<std::vector<std::uint32_t>> adj(vertex_count);
  for (auto [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  return adj;
}

}  // namespace prefalloc
