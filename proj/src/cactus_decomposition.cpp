#include <algorithm>
#include <map>
#include <queue>
#include <string>
#include <tuple>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/biconnected_components.hpp>

#include "prefalloc/errors.hpp"
#include "prefalloc/recognizers.hpp"

namespace prefalloc {

namespace {

using UndirectedBoostGraph =
    boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS, boost::no_property,
                          boost::property<boost::edge_index_t, std::size_t>>;

// Kahn order of the cycle's items restricted to its own arcs, smallest id
// first on ties.
std::vector<ItemId> order_cycle(const std::vector<ItemId>& items, const std::vector<Arc>& arcs) {
  std::map<ItemId, int> indeg;
  std::map<ItemId, std::vector<ItemId>> out;
  for (ItemId v : items) indeg[v] = 0;
  for (const Arc& a : arcs) {
    ++indeg[a.head];
    out[a.tail].push_back(a.head);
  }
  std::priority_queue<ItemId, std::vector<ItemId>, std::greater<>> ready;
  for (auto [v, d] : indeg) {
    if (d == 0) ready.push(v);
  }
  std::vector<ItemId> order;
  while (!ready.empty()) {
    ItemId v = ready.top();
    ready.pop();
    order.push_back(v);
    for (ItemId w : out[v]) {
      if (--indeg[w] == 0) ready.push(w);
    }
  }
  return order;
}

}  // namespace

std::optional<CactusDecomposition> find_cactus_decomposition(const PreferenceGraph& graph,
                                                             std::string* why) {
  auto fail = [why](std::string reason) -> std::optional<CactusDecomposition> {
    if (why) *why = std::move(reason);
    return std::nullopt;
  };
  const std::size_t n = graph.item_count();
  if (n == 0) return fail("empty graph has no root");
  const auto sources = graph.sources();
  if (sources.size() != 1) {
    return fail("an out-cactus has exactly one source (found " + std::to_string(sources.size()) +
                ")");
  }

  const auto arcs = graph.arcs();
  UndirectedBoostGraph ug(n);
  for (std::size_t i = 0; i < arcs.size(); ++i) boost::add_edge(arcs[i].tail, arcs[i].head, i, ug);
  std::vector<std::size_t> block_of(arcs.size());
  auto block_map =
      boost::make_iterator_property_map(block_of.begin(), boost::get(boost::edge_index, ug));
  const std::size_t block_count = boost::biconnected_components(ug, block_map);

  std::vector<std::vector<Arc>> block_arcs(block_count);
  for (std::size_t i = 0; i < arcs.size(); ++i) block_arcs[block_of[i]].push_back(arcs[i]);

  CactusDecomposition out;
  out.root = sources.front();
  for (auto& cycle_arcs : block_arcs) {
    std::sort(cycle_arcs.begin(), cycle_arcs.end());
    std::vector<ItemId> items;
    for (const Arc& a : cycle_arcs) {
      items.push_back(a.tail);
      items.push_back(a.head);
    }
    std::sort(items.begin(), items.end());
    items.erase(std::unique(items.begin(), items.end()), items.end());
    if (cycle_arcs.size() > 1 && cycle_arcs.size() != items.size()) {
      return fail("underlying graph is not a cactus: a block with " + std::to_string(items.size()) +
                  " vertices has " + std::to_string(cycle_arcs.size()) + " edges");
    }
    std::map<ItemId, int> cycle_in;
    std::map<ItemId, int> cycle_out;
    for (const Arc& a : cycle_arcs) {
      ++cycle_out[a.tail];
      ++cycle_in[a.head];
    }
    std::vector<ItemId> cycle_sources;
    std::vector<ItemId> cycle_sinks;
    for (ItemId v : items) {
      if (cycle_in[v] == 0) cycle_sources.push_back(v);
      if (cycle_out[v] == 0) cycle_sinks.push_back(v);
    }
    if (cycle_sources.size() != 1 || cycle_sinks.size() != 1) {
      return fail("cycle through item " + std::to_string(items.front()) +
                  " lacks a unique source and sink");
    }
    const ItemId s = cycle_sources.front();
    for (ItemId v : items) {
      if (v != s && graph.in_degree(v) != static_cast<std::size_t>(cycle_in[v])) {
        return fail("item " + std::to_string(v) + " receives an arc from outside its cycle (source " +
                    std::to_string(s) + ")");
      }
    }
    CactusCycle cycle;
    cycle.items = order_cycle(items, cycle_arcs);
    cycle.source = s;
    cycle.sink = cycle_sinks.front();
    cycle.arcs = std::move(cycle_arcs);
    out.cycles.push_back(std::move(cycle));
  }
  std::sort(out.cycles.begin(), out.cycles.end(), [&](const CactusCycle& a, const CactusCycle& b) {
    return std::tuple(graph.topological_rank(a.source), graph.topological_rank(a.sink), a.items) <
           std::tuple(graph.topological_rank(b.source), graph.topological_rank(b.sink), b.items);
  });
  return out;
}

CactusDecomposition cactus_decompose(const PreferenceGraph& graph) {
  std::string why;
  auto d = find_cactus_decomposition(graph, &why);
  if (!d) throw Error(ErrorCode::kNotOutCactus, why);
  return std::move(*d);
}

void validate_cactus_decomposition(const PreferenceGraph& graph,
                                   const CactusDecomposition& decomposition) {
  std::vector<Arc> all;
  for (const CactusCycle& c : decomposition.cycles) {
    if (c.items.empty() || c.items.front() != c.source || c.items.back() != c.sink) {
      throw Error(ErrorCode::kDecompositionMismatch, "cycle items must run from source to sink");
    }
    std::vector<ItemId> from_arcs;
    for (const Arc& a : c.arcs) {
      from_arcs.push_back(a.tail);
      from_arcs.push_back(a.head);
    }
    std::sort(from_arcs.begin(), from_arcs.end());
    from_arcs.erase(std::unique(from_arcs.begin(), from_arcs.end()), from_arcs.end());
    std::vector<ItemId> items = c.items;
    std::sort(items.begin(), items.end());
    if (items != from_arcs) {
      throw Error(ErrorCode::kDecompositionMismatch, "cycle items do not match its arcs");
    }
    all.insert(all.end(), c.arcs.begin(), c.arcs.end());
  }
  std::vector<Arc> expected(graph.arcs().begin(), graph.arcs().end());
  std::sort(all.begin(), all.end());
  std::sort(expected.begin(), expected.end());
  if (all != expected) {
    throw Error(ErrorCode::kDecompositionMismatch, "cycles do not partition the arc set");
  }
  if (graph.item_count() > 0 &&
      (decomposition.root >= graph.item_count() || !graph.is_source(decomposition.root))) {
    throw Error(ErrorCode::kDecompositionMismatch, "root is not a source");
  }
}

}  // namespace prefalloc
