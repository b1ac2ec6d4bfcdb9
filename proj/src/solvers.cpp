#include "prefalloc/solvers.hpp"

#include <algorithm>
#include <cstdlib>
#include <memory>
#include <string>
#include <type_traits>

#if defined(__linux__)
#include <sys/mman.h>
#endif

#include "prefalloc/errors.hpp"
#include "prefalloc/matching.hpp"
#include "prefalloc/oracle.hpp"

namespace prefalloc {

namespace {

// Uninitialised array of trivial T; large ones ask the kernel for huge pages,
// which keeps TLB misses down on random walks over million-item graphs.
template <class T>
class PageArray {
  static_assert(std::is_trivially_copyable_v<T>);
  static constexpr std::size_t kHuge = std::size_t{2} << 20;

 public:
  explicit PageArray(std::size_t count) {
    const std::size_t bytes = std::max<std::size_t>(count * sizeof(T), 1);
    if (bytes >= kHuge) {
      const std::size_t rounded = (bytes + kHuge - 1) / kHuge * kHuge;
      data_.reset(static_cast<T*>(std::aligned_alloc(kHuge, rounded)));
#if defined(__linux__) && defined(MADV_HUGEPAGE)
      if (data_) madvise(data_.get(), rounded, MADV_HUGEPAGE);
#endif
    } else {
      data_.reset(static_cast<T*>(std::malloc(bytes)));
    }
    if (!data_) throw std::bad_alloc();
  }

  T& operator[](std::size_t i) noexcept { return data_.get()[i]; }

 private:
  struct Free {
    void operator()(T* p) const noexcept { std::free(p); }
  };
  std::unique_ptr<T, Free> data_;
};

void require_agents_below_items(const PreferenceGraph& graph, std::size_t agents,
                                bool allow_equal = false) {
  const std::size_t n = graph.item_count();
  if (agents == 0 || agents > n || (agents == n && !allow_equal)) {
    throw Error(ErrorCode::kPreconditionViolated,
                std::string("needs 1 <= k ") + (allow_equal ? "<=" : "<") + " n (k = " +
                    std::to_string(agents) + ", n = " + std::to_string(n) + ")");
  }
}

}  // namespace

Allocation solve_canonical_many_agents(const PreferenceGraph& graph, std::size_t agents) {
  if (agents < graph.item_count()) {
    throw Error(ErrorCode::kPreconditionViolated,
                "canonical allocation needs k >= n (k = " + std::to_string(agents) +
                    ", n = " + std::to_string(graph.item_count()) + ")");
  }
  Allocation alloc(agents);
  for (ItemId v = 0; v < graph.item_count(); ++v) alloc.assign(v, v);
  return alloc;
}

Allocation solve_two_agents(const PreferenceGraph& graph) {
  if (graph.item_count() < 2) {
    throw Error(ErrorCode::kPreconditionViolated, "two-agent rule needs at least two items");
  }
  Allocation alloc(2);
  for (ItemId v = 0; v < graph.item_count(); ++v) {
    if (graph.is_source(v)) {
      alloc.assign(v, 0);
      continue;
    }
    const auto ins = graph.in_neighbors(v);
    if (std::all_of(ins.begin(), ins.end(), [&](ItemId u) { return graph.is_source(u); })) {
      alloc.assign(v, 1);
    }
  }
  return alloc;
}

Allocation solve_out_tree(const PreferenceGraph& graph, std::size_t agents) {
  if (!is_out_forest(graph)) {
    throw Error(ErrorCode::kNotOutTree, "an item has more than one in-neighbour");
  }
  require_agents_below_items(graph, agents);
  std::vector<std::size_t> depth(graph.item_count(), 0);
  Allocation alloc(agents);
  for (ItemId v : graph.topological_order()) {
    const auto ins = graph.in_neighbors(v);
    if (!ins.empty()) depth[v] = depth[ins.front()] + 1;
    if (depth[v] < agents) alloc.assign(v, static_cast<AgentId>(depth[v]));
  }
  alloc.canonicalize();
  return alloc;
}

Allocation solve_polytree(const PreferenceGraph& graph, std::size_t agents) {
  const std::size_t n = graph.item_count();
  // With n - 1 arcs the graph is a tree iff the run below reaches every item.
  if (n == 0 || graph.arc_count() + 1 != n) {
    throw Error(ErrorCode::kNotPolytree, "underlying graph is not a tree");
  }
  require_agents_below_items(graph, agents, true);
  constexpr std::uint32_t kUnset = UINT32_MAX;
  const auto k = static_cast<std::uint32_t>(agents);

  // Adjacency bounds are copied next to the per-item state in one sequential
  // pass, so each visit touches a single record.
  struct Node {
    std::uint32_t out;
    std::uint32_t in;
    std::uint32_t end;
    std::uint32_t q;
    std::uint32_t owner;
    std::uint32_t cursor;
  };
  const ItemId* base = graph.out_neighbors(0).data();
  PageArray<Node> nd(n);
  for (ItemId v = 0; v < n; ++v) {
    const auto outs = graph.out_neighbors(v);
    const auto ins = graph.in_neighbors(v);
    nd[v] = {static_cast<std::uint32_t>(outs.data() - base),
             static_cast<std::uint32_t>(ins.data() - base),
             static_cast<std::uint32_t>(ins.data() + ins.size() - base), kUnset, kUnset, 0};
  }
  Allocation alloc(agents);

  ItemId s = 0;
  while (!graph.is_source(s)) ++s;
  // L as a ring buffer: every item enters it at most once.
  std::vector<ItemId> ring(n);
  std::size_t head = 0;
  std::size_t size = 1;
  ring[0] = s;
  nd[s].q = k - 1;
  std::size_t placed = 0;
  while (size > 0) {
    const ItemId v = ring[head];
    Node& sv = nd[v];
    const ItemId* ins = base + sv.in;
    const std::uint32_t in_count = sv.end - sv.in;
    while (sv.cursor < in_count && nd[ins[sv.cursor]].q != kUnset) ++sv.cursor;
    if (sv.cursor < in_count) {
      const ItemId u = ins[sv.cursor];
      nd[u].q = sv.q;
      head = head == 0 ? n - 1 : head - 1;
      ring[head] = u;
      ++size;
      continue;
    }
    sv.owner = sv.q;
    ++placed;
    head = head + 1 == n ? 0 : head + 1;
    --size;
    const std::uint32_t next = (sv.q + 1) % k;
    for (const ItemId* p = base + sv.out; p != ins; ++p) {
      const ItemId u = *p;
      if (nd[u].q == kUnset) {
        std::size_t tail = head + size;
        if (tail >= n) tail -= n;
        ring[tail] = u;
        ++size;
      }
      nd[u].q = next;
    }
  }
  if (placed != n) throw Error(ErrorCode::kNotPolytree, "underlying graph is not connected");
  // Filling in id order leaves every bundle sorted.
  for (ItemId v = 0; v < n; ++v) {
    if (nd[v].owner != kUnset) alloc.assign(v, nd[v].owner);
  }
  return alloc;
}

std::vector<std::int32_t> sp_labeling(const PreferenceGraph& graph,
                                      const SpDecomposition& decomposition, std::size_t kappa) {
  std::vector<Arc> replayed = replay_sp(decomposition);
  std::vector<Arc> expected(graph.arcs().begin(), graph.arcs().end());
  std::sort(replayed.begin(), replayed.end());
  std::sort(expected.begin(), expected.end());
  if (replayed != expected) {
    throw Error(ErrorCode::kDecompositionMismatch, "decomposition leaves do not match the arcs");
  }
  const auto sets = sp_vertex_sets(decomposition);
  const auto& nodes = decomposition.nodes;
  const std::uint32_t root = decomposition.root();
  if (sets[root].size() != graph.item_count()) {
    throw Error(ErrorCode::kDecompositionMismatch, "decomposition does not span every item");
  }
  if (kappa == 0 || kappa > graph.item_count()) {
    throw Error(ErrorCode::kPreconditionViolated,
                "series-parallel labelling needs 1 <= k <= n (k = " + std::to_string(kappa) + ")");
  }

  // Top-down: how many agents each node's labelling is asked for.
  std::vector<std::size_t> want(nodes.size(), 0);
  want[root] = kappa;
  for (std::uint32_t i = root + 1; i-- > 0;) {
    const SpNode& node = nodes[i];
    if (node.kind == SpKind::kLeaf || want[i] == 0) continue;
    const std::size_t k1 = std::min(want[i], sets[node.left].size());
    const std::size_t k2 = node.kind == SpKind::kParallel
                               ? std::min(want[i], sets[node.right].size())
                               : std::min(want[i] - k1 + 1, sets[node.right].size());
    want[node.left] = k1;
    want[node.right] = k2;
  }

  // Bottom-up: labels[i] is aligned with sets[i].
  std::vector<std::vector<std::int32_t>> labels(nodes.size());
  for (std::uint32_t i = 0; i <= root; ++i) {
    const SpNode& node = nodes[i];
    const std::size_t k = want[i];
    if (k == 0) continue;
    if (node.kind == SpKind::kLeaf) {
      const std::int32_t at_sink = k >= 2 ? 0 : kSpNull;
      labels[i] = node.source < node.sink ? std::vector{kSpBottom, at_sink}
                                          : std::vector{at_sink, kSpBottom};
      continue;
    }
    const auto& v1 = sets[node.left];
    const auto& v2 = sets[node.right];
    const auto& l1 = labels[node.left];
    const auto& l2 = labels[node.right];
    const std::size_t k1 = want[node.left];
    const std::size_t k2 = want[node.right];
    const bool parallel = node.kind == SpKind::kParallel;

    // Where the second child's non-bottom labels go. Series: shift past the
    // first child's labels. Parallel: fill the labels the first child leaves
    // unused (sink excluded) first, so at most one agent stays uncovered.
    std::vector<std::int32_t> phi(k2 > 0 ? k2 - 1 : 0);
    if (!parallel) {
      for (std::size_t j = 0; j < phi.size(); ++j) {
        phi[j] = static_cast<std::int32_t>(j + k1 - 1);
        if (static_cast<std::size_t>(phi[j]) + 2 > k) {
          throw Error(ErrorCode::kInternalInconsistency, "series shift leaves the agent range");
        }
      }
    } else {
      std::vector<char> used1(k - 1, 0);
      for (std::size_t j = 0; j < v1.size(); ++j) {
        if (v1[j] != node.sink && l1[j] >= 0) used1[static_cast<std::size_t>(l1[j])] = 1;
      }
      std::vector<char> private2(phi.size(), 0);
      for (std::size_t j = 0; j < v2.size(); ++j) {
        if (v2[j] != node.source && v2[j] != node.sink && l2[j] >= 0) {
          private2[static_cast<std::size_t>(l2[j])] = 1;
        }
      }
      std::vector<std::int32_t> domain;
      std::vector<std::int32_t> target;
      for (char pass : {1, 0}) {
        for (std::size_t j = 0; j < private2.size(); ++j) {
          if (private2[j] == pass) domain.push_back(static_cast<std::int32_t>(j));
        }
      }
      for (char pass : {0, 1}) {
        for (std::size_t j = 0; j < used1.size(); ++j) {
          if (used1[j] == pass) target.push_back(static_cast<std::int32_t>(j));
        }
      }
      for (std::size_t j = 0; j < domain.size(); ++j) {
        phi[static_cast<std::size_t>(domain[j])] = target[j];
      }
    }

    auto& out = labels[i];
    out.reserve(sets[i].size());
    std::size_t a = 0;
    std::size_t b = 0;
    std::size_t sink_at = sets[i].size();
    for (ItemId v : sets[i]) {
      while (a < v1.size() && v1[a] < v) ++a;
      while (b < v2.size() && v2[b] < v) ++b;
      if (v == node.sink) sink_at = out.size();
      if (a < v1.size() && v1[a] == v) {
        out.push_back(l1[a]);
        continue;
      }
      const std::int32_t lab = l2[b];
      if (lab == kSpBottom) {
        throw Error(ErrorCode::kInternalInconsistency, "second child's source is not shared");
      }
      out.push_back(lab == kSpNull ? kSpNull : phi[static_cast<std::size_t>(lab)]);
    }

    if (parallel) {
      // The sink lies in no other predecessor set, so its label is free:
      // hand it the one agent nothing else holds, if any.
      std::vector<char> used(k - 1, 0);
      for (std::size_t j = 0; j < out.size(); ++j) {
        if (j != sink_at && out[j] >= 0) used[static_cast<std::size_t>(out[j])] = 1;
      }
      std::size_t missing = 0;
      for (std::size_t j = 0; j < used.size(); ++j) {
        if (used[j]) continue;
        if (++missing > 1) {
          throw Error(ErrorCode::kInternalInconsistency, "parallel merge leaves two agents idle");
        }
        out[sink_at] = static_cast<std::int32_t>(j);
      }
    }
    labels[node.left] = {};
    labels[node.right] = {};
  }

  std::vector<std::int32_t> result(graph.item_count(), kSpNull);
  for (std::size_t j = 0; j < sets[root].size(); ++j) result[sets[root][j]] = labels[root][j];
  return result;
}

Allocation sp_labels_to_allocation(const std::vector<std::int32_t>& labels, std::size_t agents) {
  Allocation alloc(agents);
  for (ItemId v = 0; v < labels.size(); ++v) {
    if (labels[v] == kSpNull) continue;
    const auto agent = static_cast<AgentId>(labels[v] + 1);
    if (agent >= agents) {
      throw Error(ErrorCode::kInternalInconsistency, "label outside the agent range");
    }
    alloc.assign(v, agent);
  }
  return alloc;
}

Allocation solve_series_parallel(const PreferenceGraph& graph, const SpDecomposition& decomposition,
                                 std::size_t agents) {
  return sp_labels_to_allocation(sp_labeling(graph, decomposition, agents), agents);
}

Allocation solve_out_cactus(const PreferenceGraph& graph, const CactusDecomposition& decomposition,
                            std::size_t agents) {
  validate_cactus_decomposition(graph, decomposition);
  if (agents == 0 || agents > graph.item_count()) {
    throw Error(ErrorCode::kPreconditionViolated,
                "out-cactus solver needs 1 <= k <= n (k = " + std::to_string(agents) + ")");
  }
  const std::size_t n = graph.item_count();
  if (graph.sources().size() != 1) {
    throw Error(ErrorCode::kNotOutCactus, "an out-cactus has exactly one source");
  }

  // dominated_by[x]: agents holding an item of pred[x].
  std::vector<DynamicBitset> dominated_by(n, DynamicBitset(agents));
  std::vector<bool> done(n, false);
  Allocation alloc(agents);
  alloc.assign(decomposition.root, 0);
  dominated_by[decomposition.root].set(0);
  done[decomposition.root] = true;

  std::vector<AgentId> free_agents;
  for (const CactusCycle& cycle : decomposition.cycles) {
    if (!done[cycle.source]) {
      throw Error(ErrorCode::kDecompositionMismatch, "cycle visited before its source");
    }
    free_agents.clear();
    for (AgentId a = 0; a < agents; ++a) {
      if (!dominated_by[cycle.source].test(a)) free_agents.push_back(a);
    }
    for (std::size_t i = 1; i < cycle.items.size(); ++i) {
      const ItemId x = cycle.items[i];
      if (done[x]) throw Error(ErrorCode::kDecompositionMismatch, "item lies on two cycles");
      DynamicBitset dom(agents);
      for (ItemId p : graph.in_neighbors(x)) {
        if (!done[p]) throw Error(ErrorCode::kDecompositionMismatch, "cycle order is not topological");
        dom |= dominated_by[p];
      }
      std::optional<AgentId> agent;
      if (i <= free_agents.size()) {
        agent = free_agents[i - 1];
      } else {
        for (AgentId a : free_agents) {
          if (!dom.test(a)) {
            agent = a;
            break;
          }
        }
      }
      if (agent) {
        alloc.assign(x, *agent);
        dom.set(*agent);
      }
      dominated_by[x] = std::move(dom);
      done[x] = true;
    }
  }
  alloc.canonicalize();
  return alloc;
}

Allocation solve_width_two(const PreferenceGraph& graph, const ReachabilityIndex& index,
                           std::size_t agents) {
  const std::size_t n = graph.item_count();
  if (agents == 0 || agents > n) {
    throw Error(ErrorCode::kPreconditionViolated,
                "width-two solver needs 1 <= k <= n (k = " + std::to_string(agents) + ")");
  }
  const ChainPartition partition = chain_partition(graph, index);
  if (partition.size() > 2) {
    throw Error(ErrorCode::kWidthExceeded,
                "width is " + std::to_string(partition.size()) + ", expected at most 2");
  }
  std::vector<char> in_first(n, 0);
  for (ItemId v : partition.chains[0]) in_first[v] = 1;

  std::vector<BipartiteEdge> edges;
  for (ItemId x = 0; x < n; ++x) {
    edges.push_back({x, x, static_cast<std::int64_t>(n - index.succ_closed_size(x))});
    if (!in_first[x]) continue;
    for (ItemId y = 0; y < n; ++y) {
      if (in_first[y] || index.comparable(x, y)) continue;
      DynamicBitset both = index.succ_closed(x);
      both |= index.succ_closed(y);
      edges.push_back({x, y, static_cast<std::int64_t>(n - both.count())});
    }
  }
  const BipartiteGraph bip(n, n, std::move(edges));
  const Matching matching = min_weight_k_matching(bip, agents);

  Allocation alloc(agents);
  AgentId next = 0;
  for (std::uint32_t e : matching.edge_indices) {
    const BipartiteEdge& edge = bip.edges()[e];
    alloc.assign(edge.left, next);
    if (edge.right != edge.left) alloc.assign(edge.right, next);
    ++next;
  }
  alloc.canonicalize();
  return alloc;
}

Allocation solve_by_components(const PreferenceGraph& graph, std::size_t agents,
                               const ComponentSolver& solver) {
  Allocation merged(agents);
  for (const auto& comp : weak_components(graph)) {
    const PreferenceGraph sub = induced_subgraph(graph, comp);
    const Allocation local = solver(sub, agents);
    if (local.agent_count() != agents) {
      throw Error(ErrorCode::kInternalInconsistency, "component solver changed the agent count");
    }
    for (AgentId a = 0; a < agents; ++a) {
      for (ItemId v : local.bundle(a)) merged.assign(comp[v], a);
    }
  }
  merged.canonicalize();
  return merged;
}

bool solver_guarantees_goodness(SolverKind kind) {
  switch (kind) {
    case SolverKind::kCanonical:
    case SolverKind::kTwoAgents:
    case SolverKind::kOutTree:
    case SolverKind::kPolytree:
    case SolverKind::kSeriesParallel:
    case SolverKind::kOutCactus:
      return true;
    default:
      return false;
  }
}

namespace {

Allocation dispatch(const PreferenceGraph& graph, std::size_t agents, SolverKind kind,
                    const ClassifyOptions& options) {
  const std::size_t n = graph.item_count();
  switch (kind) {
    case SolverKind::kCanonical:
      return solve_canonical_many_agents(graph, agents);
    case SolverKind::kTwoAgents:
      if (agents != 2) {
        throw Error(ErrorCode::kPreconditionViolated, "two-agent rule needs k = 2");
      }
      return solve_two_agents(graph);
    case SolverKind::kOutTree:
      if (!is_out_forest(graph)) {
        throw Error(ErrorCode::kNotOutTree, "an item has more than one in-neighbour");
      }
      return solve_by_components(graph, agents, [](const PreferenceGraph& g, std::size_t k) {
        return k >= g.item_count() ? solve_canonical_many_agents(g, k) : solve_out_tree(g, k);
      });
    case SolverKind::kPolytree:
      if (!is_polytree(graph)) {
        throw Error(ErrorCode::kNotPolytree, "underlying graph is not a forest");
      }
      return solve_by_components(graph, agents, [](const PreferenceGraph& g, std::size_t k) {
        return k >= g.item_count() ? solve_canonical_many_agents(g, k) : solve_polytree(g, k);
      });
    case SolverKind::kSeriesParallel:
      return solve_by_components(graph, agents, [](const PreferenceGraph& g, std::size_t k) {
        if (g.item_count() == 1 || k > g.item_count()) return solve_canonical_many_agents(g, k);
        return solve_series_parallel(g, sp_decompose(g), k);
      });
    case SolverKind::kOutCactus:
      return solve_by_components(graph, agents, [](const PreferenceGraph& g, std::size_t k) {
        if (k >= g.item_count()) return solve_canonical_many_agents(g, k);
        return solve_out_cactus(g, cactus_decompose(g), k);
      });
    case SolverKind::kWidthTwo: {
      if (n > options.width_item_limit) {
        throw Error(ErrorCode::kInstanceTooLarge, "width-two solver needs the reachability index");
      }
      if (agents >= n) return solve_canonical_many_agents(graph, agents);
      const ReachabilityIndex index(graph);
      return solve_width_two(graph, index, agents);
    }
    case SolverKind::kOracle: {
      if (!oracle_fits(n, agents, options)) {
        throw Error(ErrorCode::kInstanceTooLarge,
                    "instance too large for exhaustive search (n = " + std::to_string(n) + ")");
      }
      const ReachabilityIndex index(graph);
      return brute_force_optimum(graph, index, agents,
                                 {options.oracle_item_limit, options.oracle_labeling_limit})
          .allocation;
    }
    case SolverKind::kUnsupported:
      break;
  }
  throw Error(ErrorCode::kUnsupported,
              "no exact method applies (not a polytree, series-parallel graph, out-cactus or "
              "width-two order, k != 2, and too large for exhaustive search)");
}

}  // namespace

SolveResult solve_auto(const PreferenceGraph& graph, std::size_t agents,
                       const SolveOptions& options) {
  SolveResult result;
  result.report = classify(graph, agents, options.classify);
  result.solver = options.forced.value_or(result.report.chosen_solver);
  result.allocation = dispatch(graph, agents, result.solver, options.classify);
  result.allocation.validate(graph.item_count());

  if (graph.item_count() <= options.certify_item_limit) {
    const ReachabilityIndex index(graph);
    Certificate cert = certify(graph, index, result.allocation);
    result.profile = cert.profile;
    result.lower_bound = cert.lower_bound;
    result.certificate = std::move(cert);
  } else {
    result.profile = profile_by_search(graph, result.allocation);
    if (is_polytree(graph)) result.lower_bound = lower_bound_polyforest(graph, agents);
  }
  if (solver_guarantees_goodness(result.solver) && result.lower_bound &&
      result.profile.total != *result.lower_bound) {
    throw Error(ErrorCode::kInternalInconsistency,
                std::string(solver_name(result.solver)) + " produced total " +
                    std::to_string(result.profile.total) + " above the bound " +
                    std::to_string(*result.lower_bound));
  }
  return result;
}

}  // namespace prefalloc
