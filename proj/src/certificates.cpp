#include "prefalloc/certificates.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "prefalloc/errors.hpp"

namespace prefalloc {

std::uint64_t lower_bound(const PreferenceGraph& graph, const ReachabilityIndex& index,
                          std::size_t agents) {
  std::uint64_t bound = 0;
  for (ItemId v = 0; v < graph.item_count(); ++v) {
    const std::size_t preds = index.pred_closed_size(v);
    if (preds < agents) bound += agents - preds;
  }
  return bound;
}

std::uint64_t lower_bound_polyforest(const PreferenceGraph& graph, std::size_t agents) {
  const std::size_t n = graph.item_count();
  if (graph.arc_count() + weak_components(graph).size() != n) {
    throw Error(ErrorCode::kNotPolytree, "linear-time bound needs a polyforest");
  }
  std::vector<std::uint64_t> preds(n, 1);
  std::uint64_t bound = 0;
  for (ItemId v : graph.topological_order()) {
    for (ItemId u : graph.in_neighbors(v)) preds[v] += preds[u];
    if (preds[v] < agents) bound += agents - preds[v];
  }
  return bound;
}

GoodnessReport check_goodness(const PreferenceGraph& graph, const ReachabilityIndex& index,
                              const Allocation& allocation, std::span<const ItemId> subset) {
  const Labeling labels = allocation.labeling(graph.item_count());
  const std::size_t k = allocation.agent_count();
  std::vector<std::size_t> stamp(k, SIZE_MAX);

  GoodnessReport report;
  report.checked_items.assign(subset.begin(), subset.end());
  report.witness.reserve(subset.size());
  for (std::size_t idx = 0; idx < subset.size(); ++idx) {
    const ItemId v = subset[idx];
    const DynamicBitset& pred = index.pred_closed(v);

    // Condition (a): count distinct agents among the labels on pred[v].
    std::size_t distinct = 0;
    pred.for_each_set([&](std::size_t u) {
      if (auto a = labels[static_cast<ItemId>(u)]; a && stamp[*a] != 2 * idx) {
        stamp[*a] = 2 * idx;
        ++distinct;
      }
    });
    if (distinct == k) {
      report.witness.push_back(GoodnessWitness::kDominatedByAll);
      continue;
    }

    // Condition (b): labels over pred[v] pairwise distinct and non-NULL.
    bool distinct_labels = true;
    pred.for_each_set([&](std::size_t u) {
      if (!distinct_labels) return;
      auto a = labels[static_cast<ItemId>(u)];
      if (!a || stamp[*a] == 2 * idx + 1) {
        distinct_labels = false;
        return;
      }
      stamp[*a] = 2 * idx + 1;
    });
    if (distinct_labels) {
      report.witness.push_back(GoodnessWitness::kDistinctPredecessorLabels);
    } else {
      report.witness.push_back(GoodnessWitness::kViolated);
      report.violating_items.push_back(v);
    }
  }
  report.is_good = report.violating_items.empty();
  return report;
}

GoodnessReport check_goodness(const PreferenceGraph& graph, const ReachabilityIndex& index,
                              const Allocation& allocation) {
  std::vector<ItemId> all(graph.item_count());
  std::iota(all.begin(), all.end(), ItemId{0});
  return check_goodness(graph, index, allocation, all);
}

Certificate certify(const PreferenceGraph& graph, const ReachabilityIndex& index,
                    const Allocation& allocation) {
  Certificate cert;
  cert.profile = profile(graph, index, allocation);
  cert.lower_bound = lower_bound(graph, index, allocation.agent_count());
  if (cert.profile.total < cert.lower_bound) {
    throw Error(ErrorCode::kInternalInconsistency,
                "total " + std::to_string(cert.profile.total) + " is below the lower bound " +
                    std::to_string(cert.lower_bound));
  }
  cert.matches_bound = cert.profile.total == cert.lower_bound;
  cert.goodness = check_goodness(graph, index, allocation);
  if (cert.matches_bound != cert.goodness.is_good) {
    throw Error(ErrorCode::kInternalInconsistency,
                std::string("bound check says ") + (cert.matches_bound ? "tight" : "loose") +
                    " but goodness check says " + (cert.goodness.is_good ? "good" : "not good"));
  }
  return cert;
}

Allocation normalize_to_antichains(const PreferenceGraph& graph, const ReachabilityIndex& index,
                                   const Allocation& allocation) {
  allocation.validate(graph.item_count());
  Allocation out(allocation.agent_count());
  for (AgentId a = 0; a < allocation.agent_count(); ++a) {
    const auto& bundle = allocation.bundle(a);
    std::vector<ItemId> kept;
    for (ItemId v : bundle) {
      const bool dominated = std::any_of(bundle.begin(), bundle.end(), [&](ItemId u) {
        return u != v && index.dominates(u, v);
      });
      if (!dominated) kept.push_back(v);
    }
    out.set_bundle(a, std::move(kept));
  }
  return out;
}

}  // namespace prefalloc
