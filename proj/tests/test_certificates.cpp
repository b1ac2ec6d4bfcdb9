#include "doctest.h"

#include <algorithm>

#include "helpers.hpp"
#include "prefalloc/certificates.hpp"
#include "prefalloc/errors.hpp"
#include "prefalloc/instances.hpp"
#include "prefalloc/oracle.hpp"
#include "prefalloc/solvers.hpp"

using namespace testing;

namespace {

Allocation random_allocation(std::size_t n, std::size_t k, Rng& rng) {
  Allocation a(k);
  for (ItemId v = 0; v < n; ++v) {
    const auto r = rng.below(k + 1);
    if (r < k) a.assign(v, static_cast<AgentId>(r));
  }
  return a;
}

}  // namespace

TEST_CASE("lower bound values") {
  const auto fig2 = *fixture("fig2");
  const ReachabilityIndex idx(fig2);
  const std::uint64_t bound = lower_bound(fig2, idx, 3);
  CHECK(bound == 9);
  // The bound is attained on this instance.
  CHECK(brute_force_optimum(fig2, idx, 3).total == bound);

  CHECK(lower_bound(edgeless(1), ReachabilityIndex(edgeless(1)), 1) == 0);
  CHECK(lower_bound(edgeless(5), ReachabilityIndex(edgeless(5)), 3) == 10);

  const auto fig3 = *fixture("fig3");
  CHECK(lower_bound(fig3, ReachabilityIndex(fig3), 3) == 8);
}

TEST_CASE("linear bound agrees on polyforests") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto g = random_polytree(1 + seed % 40, seed);
    const ReachabilityIndex idx(g);
    for (std::size_t k : {1, 2, 3, 7}) CHECK(lower_bound_polyforest(g, k) == lower_bound(g, idx, k));
  }
  const auto forest = make(5, {{0, 1}, {2, 1}, {3, 4}});
  CHECK(lower_bound_polyforest(forest, 3) == lower_bound(forest, ReachabilityIndex(forest), 3));
  CHECK_THROWS_AS(lower_bound_polyforest(diamond(), 2), Error);
}

TEST_CASE("bound ignores transitive arcs") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto g = random_dag(10, 0.2, seed);
    const ReachabilityIndex idx(g);
    std::vector<Arc> arcs(g.arcs().begin(), g.arcs().end());
    for (ItemId u = 0; u < 10; ++u) {
      for (ItemId w = 0; w < 10; ++w) {
        if (u != w && idx.dominates(u, w) &&
            std::find(arcs.begin(), arcs.end(), Arc{u, w}) == arcs.end()) {
          arcs.push_back({u, w});
        }
      }
    }
    const auto closed = make(10, arcs);
    for (std::size_t k = 1; k <= 4; ++k) {
      CHECK(lower_bound(closed, ReachabilityIndex(closed), k) == lower_bound(g, idx, k));
    }
  }
}

TEST_CASE("goodness of the worked example") {
  const auto g = *fixture("fig2");
  const ReachabilityIndex idx(g);
  const auto report = check_goodness(g, idx, fig2_example_allocation());
  CHECK_FALSE(report.is_good);
  // Label 3 (id 2): itself and label 1 are both held by a3.
  CHECK(std::find(report.violating_items.begin(), report.violating_items.end(), 2) !=
        report.violating_items.end());
  CHECK(report.checked_items.size() == 8);
  for (std::size_t i = 0; i < report.checked_items.size(); ++i) {
    const bool violated = report.witness[i] == GoodnessWitness::kViolated;
    const bool listed = std::find(report.violating_items.begin(), report.violating_items.end(),
                                  report.checked_items[i]) != report.violating_items.end();
    CHECK(violated == listed);
  }

  const Certificate cert = certify(g, idx, fig2_example_allocation());
  CHECK(cert.profile.total == 11);
  CHECK(cert.lower_bound == 9);
  CHECK_FALSE(cert.matches_bound);
  CHECK_FALSE(cert.goodness.is_good);
}

TEST_CASE("goodness, simple cases") {
  SUBCASE("edgeless, one item per agent") {
    const auto g = edgeless(3);
    const auto report = check_goodness(g, ReachabilityIndex(g), Allocation({{0}, {1}, {2}}));
    CHECK(report.is_good);
  }
  SUBCASE("unallocated source violates") {
    const auto g = make(3, {{0, 1}, {2, 1}});
    const auto report = check_goodness(g, ReachabilityIndex(g), Allocation({{0}, {1}}));
    CHECK(std::find(report.violating_items.begin(), report.violating_items.end(), 2) !=
          report.violating_items.end());
  }
  SUBCASE("one agent holding the unique source") {
    const auto g = diamond();
    const ReachabilityIndex idx(g);
    const auto cert = certify(g, idx, Allocation(std::vector<std::vector<ItemId>>{{0}}));
    CHECK(cert.profile.total == 0);
    CHECK(cert.matches_bound);
    CHECK(cert.goodness.is_good);
  }
  SUBCASE("subset check only reports the subset") {
    const auto g = *fixture("fig2");
    const std::vector<ItemId> subset{0, 1};
    const auto report = check_goodness(g, ReachabilityIndex(g), fig2_example_allocation(), subset);
    CHECK(report.checked_items == subset);
  }
}

TEST_CASE("certified solver output on fig2") {
  const auto g = *fixture("fig2");
  const ReachabilityIndex idx(g);
  const auto cert = certify(g, idx, solve_polytree(g, 3));
  CHECK(cert.profile.total == 9);
  CHECK(cert.matches_bound);
  CHECK(cert.goodness.is_good);
}

TEST_CASE("bound meets goodness on random allocations") {
  std::size_t good = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    const std::size_t n = 2 + seed % 7;
    const std::size_t k = 1 + seed % 4;
    const auto g = random_dag(n, 0.3, seed);
    const ReachabilityIndex idx(g);
    Rng rng(seed);
    const Allocation a = random_allocation(n, k, rng);
    Certificate cert;
    REQUIRE_NOTHROW(cert = certify(g, idx, a));
    CHECK(cert.matches_bound == cert.goodness.is_good);
    CHECK(cert.profile.total >= cert.lower_bound);
    good += cert.goodness.is_good ? 1 : 0;
  }
  // Both outcomes must actually occur for the check to mean anything.
  CHECK(good > 0);
  CHECK(good < 400);
}

TEST_CASE("oracle optimum versus the bound") {
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    const std::size_t n = 1 + seed % 7;
    const std::size_t k = 1 + seed % 4;
    const auto g = random_dag(n, 0.35, seed);
    const ReachabilityIndex idx(g);
    const auto best = brute_force_optimum(g, idx, k);
    const auto bound = lower_bound(g, idx, k);
    CHECK(best.total >= bound);
    CHECK((best.total == bound) == check_goodness(g, idx, best.allocation).is_good);
  }
}

TEST_CASE("antichain normalization") {
  const auto g = *fixture("fig2");
  const ReachabilityIndex idx(g);
  const auto norm = normalize_to_antichains(g, idx, Allocation({{0, 2, 7}}));
  CHECK(norm.bundle(0) == std::vector<ItemId>{0});

  const auto same = normalize_to_antichains(g, idx, Allocation({{1, 3, 4}}));
  CHECK(same.bundle(0) == std::vector<ItemId>{1, 3, 4});

  const auto p = path(5);
  const auto src = normalize_to_antichains(p, ReachabilityIndex(p), Allocation({{0, 1, 2, 3, 4}}));
  CHECK(src.bundle(0) == std::vector<ItemId>{0});

  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto d = random_dag(10, 0.3, seed);
    const ReachabilityIndex di(d);
    Rng rng(seed);
    const Allocation a = random_allocation(10, 3, rng);
    const Allocation b = normalize_to_antichains(d, di, a);
    CHECK(profile(d, di, b) == profile(d, di, a));
    for (const auto& bundle : b.bundles()) {
      for (ItemId x : bundle) {
        for (ItemId y : bundle) CHECK((x == y || !di.comparable(x, y)));
      }
    }
  }
}
