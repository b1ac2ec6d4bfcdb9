#include "doctest.h"

#include "helpers.hpp"
#include "prefalloc/certificates.hpp"
#include "prefalloc/errors.hpp"
#include "prefalloc/instances.hpp"
#include "prefalloc/oracle.hpp"

using namespace testing;

namespace {

UndirectedGraph clique(std::uint32_t n) {
  UndirectedGraph g;
  g.vertex_count = n;
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = u + 1; v < n; ++v) g.edges.emplace_back(u, v);
  }
  return g;
}

UndirectedGraph cycle(std::uint32_t n) {
  UndirectedGraph g;
  g.vertex_count = n;
  for (std::uint32_t v = 0; v < n; ++v) g.edges.emplace_back(v, (v + 1) % n);
  return g;
}

bool proper(const UndirectedGraph& g, const std::vector<std::uint32_t>& c, std::size_t k) {
  for (const auto& [u, v] : g.edges) {
    if (c[u] == c[v]) return false;
  }
  for (auto x : c) {
    if (x >= k) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("brute force optimum") {
  const auto fig2 = *fixture("fig2");
  const ReachabilityIndex idx(fig2);
  const auto r = brute_force_optimum(fig2, idx, 3);
  CHECK(r.total == 9);
  CHECK(r.leaves_visited == 65536);
  CHECK(profile(fig2, idx, r.allocation).total == 9);

  const auto p = path(3);
  const auto rp = brute_force_optimum(p, ReachabilityIndex(p), 2);
  CHECK(rp.total == 1);
  CHECK(rp.leaves_visited == 27);

  CHECK(brute_force_optimum(edgeless(1), ReachabilityIndex(edgeless(1)), 1).total == 0);
}

TEST_CASE("brute force returns the lexicographically first optimum") {
  // Path 0 -> 1, one agent: labelings in order (0,0), (0,1)=(0,NULL)... the
  // first optimal one gives both items to agent 0.
  const auto g = path(2);
  const auto r = brute_force_optimum(g, ReachabilityIndex(g), 1);
  CHECK(r.total == 0);
  CHECK(r.allocation.bundle(0) == std::vector<ItemId>{0, 1});

  // Two agents on an edgeless pair: (0, 0) comes first and is already optimal.
  const auto e = edgeless(2);
  const auto re = brute_force_optimum(e, ReachabilityIndex(e), 2);
  CHECK(re.total == 2);
  CHECK(re.allocation.bundles() == std::vector<std::vector<ItemId>>{{0, 1}, {}});
}

TEST_CASE("limits") {
  const auto big = path(13);
  CHECK_THROWS_AS(brute_force_optimum(big, ReachabilityIndex(big), 2), Error);
  OracleLimits tight;
  tight.labeling_limit = 100;
  const auto p = path(5);
  CHECK_THROWS_AS(brute_force_optimum(p, ReachabilityIndex(p), 3, tight), Error);
  CHECK_THROWS_AS(brute_force_optimum(p, ReachabilityIndex(p), 0), Error);
}

TEST_CASE("antichain search agrees with the full search") {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const std::size_t n = 1 + seed % 7;
    const std::size_t k = 1 + (seed / 7) % 4;
    const auto g = random_dag(n, 0.35, seed);
    const ReachabilityIndex idx(g);
    const auto full = brute_force_optimum(g, idx, k);
    const auto anti = antichain_optimum(g, idx, k);
    CHECK(full.total == anti.total);
    CHECK(full.total >= lower_bound(g, idx, k));
    CHECK(profile(g, idx, anti.allocation).total == anti.total);
  }
}

TEST_CASE("exact coloring") {
  const auto k3 = clique(3);
  const auto c = exact_k_coloring(k3, 3);
  REQUIRE(c);
  CHECK(proper(k3, *c, 3));
  CHECK_FALSE(exact_k_coloring(clique(4), 3));
  CHECK_FALSE(exact_k_coloring(cycle(5), 2));
  CHECK(exact_k_coloring(cycle(6), 2));
  UndirectedGraph big;
  big.vertex_count = 17;
  CHECK_THROWS_AS(exact_k_coloring(big, 3), Error);
}

TEST_CASE("maximum antichain") {
  const auto p = path(5);
  CHECK(max_antichain_brute(p, ReachabilityIndex(p)).size() == 1);
  const auto fig2 = *fixture("fig2");
  const auto a = max_antichain_brute(fig2, ReachabilityIndex(fig2));
  CHECK(a.size() == 4);
  const ReachabilityIndex idx(fig2);
  for (ItemId x : a) {
    for (ItemId y : a) CHECK((x == y || !idx.comparable(x, y)));
  }
  CHECK(max_antichain_brute(edgeless(6), ReachabilityIndex(edgeless(6))) ==
        std::vector<ItemId>{0, 1, 2, 3, 4, 5});
}
