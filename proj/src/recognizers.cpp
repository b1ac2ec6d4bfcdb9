#include "prefalloc/recognizers.hpp"

#include <array>
#include <cmath>
#include <utility>

#include "prefalloc/errors.hpp"
#include "prefalloc/matching.hpp"

namespace prefalloc {

bool is_polytree(const PreferenceGraph& graph) {
  // A simple graph is a forest iff |E| = |V| - #components. Antiparallel arcs
  // cannot occur in a DAG, so the underlying graph is simple.
  return graph.arc_count() + weak_components(graph).size() == graph.item_count();
}

bool is_connected_polytree(const PreferenceGraph& graph) {
  const std::size_t n = graph.item_count();
  if (n == 0 || graph.arc_count() + 1 != n) return false;
  std::vector<char> seen(n, 0);
  std::vector<ItemId> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const ItemId v = stack.back();
    stack.pop_back();
    for (auto side : {graph.out_neighbors(v), graph.in_neighbors(v)}) {
      for (ItemId w : side) {
        if (seen[w]) continue;
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == n;
}

bool is_out_forest(const PreferenceGraph& graph) { return graph.max_in_degree() <= 1; }

std::size_t width(const PreferenceGraph& graph, const ReachabilityIndex& index) {
  return chain_partition(graph, index).size();
}

namespace {

constexpr std::array<std::pair<SolverKind, std::string_view>, 9> kSolverNames{{
    {SolverKind::kCanonical, "canonical"},
    {SolverKind::kTwoAgents, "two_agents"},
    {SolverKind::kOutTree, "out_tree"},
    {SolverKind::kPolytree, "polytree"},
    {SolverKind::kSeriesParallel, "series_parallel"},
    {SolverKind::kOutCactus, "out_cactus"},
    {SolverKind::kWidthTwo, "width_two"},
    {SolverKind::kOracle, "oracle_fallback"},
    {SolverKind::kUnsupported, "unsupported"},
}};

}  // namespace

std::string_view solver_name(SolverKind kind) {
  for (auto [k, name] : kSolverNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<SolverKind> solver_from_name(std::string_view name) {
  for (auto [k, n] : kSolverNames) {
    if (n == name) return k;
  }
  if (name == "oracle") return SolverKind::kOracle;
  return std::nullopt;
}

bool oracle_fits(std::size_t item_count, std::size_t agents, const ClassifyOptions& options) {
  if (item_count > options.oracle_item_limit || item_count > 64) return false;
  // (k+1)^n, stopping as soon as the budget is exceeded.
  std::uint64_t labelings = 1;
  for (std::size_t i = 0; i < item_count; ++i) {
    if (labelings > options.oracle_labeling_limit / (agents + 1)) return false;
    labelings *= agents + 1;
  }
  return labelings <= options.oracle_labeling_limit;
}

ClassReport classify(const PreferenceGraph& graph, std::size_t agents,
                     const ClassifyOptions& options) {
  if (agents == 0) throw Error(ErrorCode::kPreconditionViolated, "need at least one agent");
  const std::size_t n = graph.item_count();
  ClassReport report;
  report.is_polytree = is_polytree(graph);
  report.is_out_tree = report.is_polytree && is_out_forest(graph);
  report.is_sp = true;
  report.is_out_cactus = true;
  for (const auto& comp : weak_components(graph)) {
    if (!report.is_sp && !report.is_out_cactus) break;
    const PreferenceGraph sub = induced_subgraph(graph, comp);
    if (report.is_sp && comp.size() >= 2 && !find_sp_decomposition(sub)) report.is_sp = false;
    if (report.is_out_cactus && !find_cactus_decomposition(sub)) report.is_out_cactus = false;
  }
  if (n <= options.width_item_limit) {
    const ReachabilityIndex index(graph);
    report.width = width(graph, index);
  }
  report.has_two_agents_shortcut = agents == 2;

  if (agents >= n) {
    report.chosen_solver = SolverKind::kCanonical;
  } else if (report.has_two_agents_shortcut) {
    report.chosen_solver = SolverKind::kTwoAgents;
  } else if (report.is_polytree) {
    report.chosen_solver = SolverKind::kPolytree;
  } else if (report.is_sp) {
    report.chosen_solver = SolverKind::kSeriesParallel;
  } else if (report.is_out_cactus) {
    report.chosen_solver = SolverKind::kOutCactus;
  } else if (report.width && *report.width <= 2) {
    report.chosen_solver = SolverKind::kWidthTwo;
  } else if (oracle_fits(n, agents, options)) {
    report.chosen_solver = SolverKind::kOracle;
  } else {
    report.chosen_solver = SolverKind::kUnsupported;
  }
  return report;
}

}  // namespace prefalloc
