#include "doctest.h"

#include <algorithm>
#include <string>

#include "helpers.hpp"
#include "prefalloc/errors.hpp"
#include "prefalloc/instances.hpp"

using namespace testing;

namespace {

ErrorCode code_of(std::size_t n, std::vector<Arc> arcs) {
  try {
    PreferenceGraph::build(n, std::move(arcs));
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kInternalInconsistency;
}

PreferenceGraph fig2() { return *fixture("fig2"); }

}  // namespace

TEST_CASE("build validates its input") {
  const auto g = make(2, {{0, 1}});
  CHECK(g.sources() == std::vector<ItemId>{0});
  CHECK(g.sinks() == std::vector<ItemId>{1});

  CHECK(code_of(2, {{0, 1}, {1, 0}}) == ErrorCode::kCycleDetected);
  CHECK(code_of(2, {{0, 0}}) == ErrorCode::kSelfLoop);
  CHECK(code_of(2, {{0, 1}, {0, 1}}) == ErrorCode::kDuplicateArc);
  CHECK(code_of(2, {{0, 2}}) == ErrorCode::kOutOfRangeItem);
}

TEST_CASE("cycle error names the cycle") {
  try {
    PreferenceGraph::build(4, {{0, 1}, {1, 2}, {2, 3}, {3, 1}});
    FAIL("no error");
  } catch (const Error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("CycleDetected") != std::string::npos);
    CHECK(msg.find('1') != std::string::npos);
    CHECK(msg.find('3') != std::string::npos);
  }
}

TEST_CASE("fig2 fixture is a valid graph") {
  const auto g = fig2();
  CHECK(g.item_count() == 8);
  CHECK(g.arc_count() == 7);
  CHECK(g.max_in_degree() == 3);
  // Kahn order with smallest id first.
  const auto order = g.topological_order();
  CHECK(std::vector<ItemId>(order.begin(), order.end()) ==
        std::vector<ItemId>{0, 1, 2, 3, 4, 5, 6, 7});
  for (const Arc& a : g.arcs()) CHECK(g.topological_rank(a.tail) < g.topological_rank(a.head));
}

TEST_CASE("neighbour lists mirror the arcs") {
  const auto g = random_dag(30, 0.2, 5);
  std::size_t out_total = 0;
  for (ItemId v = 0; v < g.item_count(); ++v) {
    for (ItemId w : g.out_neighbors(v)) {
      const auto ins = g.in_neighbors(w);
      CHECK(std::find(ins.begin(), ins.end(), v) != ins.end());
    }
    out_total += g.out_degree(v);
  }
  CHECK(out_total == g.arc_count());
}

TEST_CASE("reachability") {
  SUBCASE("path") {
    const ReachabilityIndex idx(path(3));
    CHECK(idx.succ_closed_size(0) == 3);
    CHECK(idx.dominates(0, 2));
    CHECK_FALSE(idx.dominates(2, 0));
  }
  SUBCASE("fig2: item 6 has five predecessors") {
    const auto g = fig2();
    const ReachabilityIndex idx(g);
    CHECK(idx.pred_closed_size(5) == 5);
    for (ItemId u : {0, 1, 2, 3, 5}) CHECK(idx.dominates(u, 5));
  }
  SUBCASE("edgeless") {
    const ReachabilityIndex idx(edgeless(4));
    for (ItemId v = 0; v < 4; ++v) CHECK(idx.succ_closed_size(v) == 1);
  }
  SUBCASE("agrees with DFS on random DAGs") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
      const auto g = random_dag(1 + seed % 50, 0.15, seed);
      const ReachabilityIndex idx(g);
      const auto ref = reach_by_dfs(g);
      for (ItemId u = 0; u < g.item_count(); ++u) {
        std::size_t preds = 0;
        for (ItemId v = 0; v < g.item_count(); ++v) {
          REQUIRE(idx.dominates(u, v) == ref[u][v]);
          preds += ref[v][u] ? 1 : 0;
        }
        CHECK(idx.pred_closed_size(u) == preds);
      }
    }
  }
}

TEST_CASE("dissatisfaction on the worked example") {
  const auto g = fig2();
  const ReachabilityIndex idx(g);
  const std::vector<ItemId> a1{1, 3, 4};
  const std::vector<ItemId> a2{5, 6};
  CHECK(dissatisfaction(g, idx, a1) == 2);
  CHECK(dissatisfaction(g, idx, a2) == 5);
  CHECK(dissatisfaction(g, idx, std::vector<ItemId>{}) == 8);

  const auto p = profile(g, idx, fig2_example_allocation());
  CHECK(p.per_agent == std::vector<std::uint64_t>{2, 5, 4});
  CHECK(p.total == 11);
  CHECK(profile_by_search(g, fig2_example_allocation()) == p);

  CHECK(profile(g, idx, Allocation(3)).per_agent == std::vector<std::uint64_t>{8, 8, 8});
}

TEST_CASE("root bundle of an out-tree misses nothing") {
  const auto g = *fixture("fig1");
  const ReachabilityIndex idx(g);
  CHECK(profile(g, idx, Allocation(std::vector<std::vector<ItemId>>{{0}})).per_agent == std::vector<std::uint64_t>{0});
}

TEST_CASE("dissatisfaction properties") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto g = random_dag(12, 0.25, seed);
    const ReachabilityIndex idx(g);
    Rng rng(seed);
    std::vector<ItemId> bundle;
    for (ItemId v = 0; v < 12; ++v) {
      if (rng.chance(0.3)) bundle.push_back(v);
    }
    DynamicBitset covered(12);
    for (ItemId v : bundle) covered |= idx.succ_closed(v);
    CHECK(dissatisfaction(g, idx, bundle) + covered.count() == 12);
    CHECK(satisfaction(g, idx, bundle) == covered.count());

    // Growing a bundle never hurts; adding a dominated item changes nothing.
    std::vector<ItemId> bigger = bundle;
    bigger.push_back(static_cast<ItemId>(rng.below(12)));
    std::sort(bigger.begin(), bigger.end());
    bigger.erase(std::unique(bigger.begin(), bigger.end()), bigger.end());
    CHECK(dissatisfaction(g, idx, bigger) <= dissatisfaction(g, idx, bundle));
    for (ItemId w = 0; w < 12; ++w) {
      if (covered.test(w) && std::find(bundle.begin(), bundle.end(), w) == bundle.end()) {
        auto with = bundle;
        with.push_back(w);
        CHECK(dissatisfaction(g, idx, with) == dissatisfaction(g, idx, bundle));
      }
    }
  }
}

TEST_CASE("profile by search matches the index route") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto g = random_dag(15, 0.2, seed);
    const ReachabilityIndex idx(g);
    Rng rng(seed + 1000);
    Allocation a(3);
    for (ItemId v = 0; v < 15; ++v) {
      const auto r = rng.below(4);
      if (r < 3) a.assign(v, static_cast<AgentId>(r));
    }
    CHECK(profile_by_search(g, a) == profile(g, idx, a));
  }
}

TEST_CASE("allocations and labelings") {
  Allocation a(2);
  a.assign(0, 1);
  a.assign(2, 0);
  const Labeling lab = a.labeling(3);
  CHECK(lab[0] == std::optional<AgentId>(1));
  CHECK(lab.is_null(1));
  CHECK(lab[2] == std::optional<AgentId>(0));
  CHECK(Allocation::from_labeling(lab, 2) == a);

  Allocation overlap({{0, 1}, {1}});
  CHECK_THROWS_AS(overlap.validate(3), Error);
  Allocation outside(std::vector<std::vector<ItemId>>{{5}});
  CHECK_THROWS_AS(outside.validate(3), Error);
  CHECK(a.allocated_item_count() == 2);
}

TEST_CASE("weak components") {
  CHECK(weak_components(fig2()).size() == 1);
  CHECK(weak_components(make(4, {{0, 1}, {2, 3}})) ==
        std::vector<std::vector<ItemId>>{{0, 1}, {2, 3}});
  CHECK(weak_components(edgeless(3)).size() == 3);
}

TEST_CASE("induced subgraph keeps arcs inside the item set") {
  const auto g = fig2();
  const std::vector<ItemId> items{1, 3, 5, 7};
  const auto sub = induced_subgraph(g, items);
  CHECK(sub.item_count() == 4);
  // 1->5, 3->5, 5->7 survive as 0->2, 1->2, 2->3.
  std::vector<Arc> arcs(sub.arcs().begin(), sub.arcs().end());
  std::sort(arcs.begin(), arcs.end());
  CHECK(arcs == std::vector<Arc>{{0, 2}, {1, 2}, {2, 3}});
  CHECK(sub.item_name(2) == "6");
}
