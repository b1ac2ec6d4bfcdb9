#include "doctest.h"

#include <algorithm>

#include "helpers.hpp"
#include "prefalloc/errors.hpp"
#include "prefalloc/instances.hpp"
#include "prefalloc/oracle.hpp"
#include "prefalloc/recognizers.hpp"

using namespace testing;

namespace {

std::vector<Arc> sorted_arcs(const PreferenceGraph& g) {
  std::vector<Arc> a(g.arcs().begin(), g.arcs().end());
  std::sort(a.begin(), a.end());
  return a;
}

// Three interleaved chains of ten items with forward cross arcs; width 3,
// three sources.
PreferenceGraph braid() {
  std::vector<Arc> arcs;
  auto id = [](int chain, int i) { return static_cast<ItemId>(chain * 10 + i); };
  for (int c = 0; c < 3; ++c) {
    for (int i = 0; i + 1 < 10; ++i) {
      arcs.push_back({id(c, i), id(c, i + 1)});
      arcs.push_back({id(c, i), id((c + 1) % 3, i + 1)});
    }
  }
  return make(30, arcs);
}

}  // namespace

TEST_CASE("polytree recognition") {
  CHECK(is_polytree(*fixture("fig2")));
  CHECK_FALSE(is_polytree(diamond()));
  CHECK(is_polytree(edgeless(1)));
  CHECK(is_polytree(make(5, {{0, 1}, {2, 1}, {3, 4}})));
  CHECK_FALSE(is_connected_polytree(make(5, {{0, 1}, {2, 1}, {3, 4}})));
  CHECK(is_out_forest(*fixture("fig1")));
  CHECK_FALSE(is_out_forest(*fixture("fig2")));

  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto g = random_dag(8, 0.3, seed);
    if (is_polytree(g)) CHECK(g.arc_count() == g.item_count() - weak_components(g).size());
  }
}

TEST_CASE("series-parallel decomposition shapes") {
  SUBCASE("single arc") {
    const auto d = sp_decompose(make(2, {{0, 1}}));
    REQUIRE(d.nodes.size() == 1);
    CHECK(d.nodes[0].kind == SpKind::kLeaf);
  }
  SUBCASE("path of three") {
    const auto d = sp_decompose(path(3));
    REQUIRE(d.nodes.size() == 3);
    const SpNode& root = d.nodes.back();
    CHECK(root.kind == SpKind::kSeries);
    CHECK(d.nodes[root.left].kind == SpKind::kLeaf);
    CHECK(d.nodes[root.right].kind == SpKind::kLeaf);
    CHECK(d.nodes[root.left].sink == 1);
  }
  SUBCASE("diamond") {
    const auto d = sp_decompose(diamond());
    const SpNode& root = d.nodes.back();
    CHECK(root.kind == SpKind::kParallel);
    CHECK(d.nodes[root.left].kind == SpKind::kSeries);
    CHECK(d.nodes[root.right].kind == SpKind::kSeries);
    CHECK(d.source() == 0);
    CHECK(d.sink() == 3);
    auto replayed = replay_sp(d);
    std::sort(replayed.begin(), replayed.end());
    CHECK(replayed == sorted_arcs(diamond()));
  }
}

TEST_CASE("series-parallel refusals") {
  auto code = [](const PreferenceGraph& g) {
    try {
      sp_decompose(g);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kInternalInconsistency;
  };
  CHECK(code(*fixture("fig3")) == ErrorCode::kNotSeriesParallel);
  CHECK(code(edgeless(2)) == ErrorCode::kNotSeriesParallel);
  // The forbidden "N": s->a, s->b, a->t, b->t, a->b is not reducible.
  CHECK(code(make(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {1, 2}})) == ErrorCode::kNotSeriesParallel);
  // Transitive arc over a path is fine: s->t parallel to s->m->t.
  CHECK_NOTHROW(sp_decompose(make(3, {{0, 1}, {1, 2}, {0, 2}})));
}

TEST_CASE("series-parallel replay on random instances") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto g = random_sp(1 + seed % 5, seed, 30);
    const auto d = sp_decompose(g);
    auto replayed = replay_sp(d);
    std::sort(replayed.begin(), replayed.end());
    REQUIRE(replayed == sorted_arcs(g));
    CHECK(sp_vertex_sets(d).back().size() == g.item_count());
  }
}

TEST_CASE("malformed decompositions are rejected") {
  auto d = sp_decompose(diamond());
  d.nodes.back().kind = SpKind::kSeries;
  CHECK_THROWS_AS(replay_sp(d), Error);
}

TEST_CASE("cactus decomposition") {
  SUBCASE("out-tree gives one cycle per arc") {
    const auto g = *fixture("fig1");
    const auto d = cactus_decompose(g);
    CHECK(d.root == 0);
    CHECK(d.cycles.size() == g.arc_count());
    for (const auto& c : d.cycles) CHECK(c.items.size() == 2);
  }
  SUBCASE("diamond is one cycle") {
    const auto d = cactus_decompose(diamond());
    REQUIRE(d.cycles.size() == 1);
    CHECK(d.cycles[0].source == 0);
    CHECK(d.cycles[0].sink == 3);
    CHECK(d.cycles[0].items == std::vector<ItemId>{0, 1, 2, 3});
  }
  SUBCASE("two stacked diamonds come in order") {
    const auto g = make(7, {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {3, 4}, {3, 5}, {4, 6}, {5, 6}});
    const auto d = cactus_decompose(g);
    REQUIRE(d.cycles.size() == 2);
    CHECK(d.cycles[0].source == 0);
    CHECK(d.cycles[0].sink == 3);
    CHECK(d.cycles[1].source == 3);
    CHECK(d.cycles[1].sink == 6);
    CHECK_NOTHROW(validate_cactus_decomposition(g, d));
  }
  SUBCASE("refusals") {
    CHECK_THROWS_AS(cactus_decompose(*fixture("fig3")), Error);
    // Diamond plus the chord s->t: a block with more edges than vertices.
    CHECK_THROWS_AS(cactus_decompose(make(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {0, 3}})), Error);
    std::string why;
    CHECK_FALSE(find_cactus_decomposition(make(3, {{0, 2}, {1, 2}}), &why));
    CHECK(why.find("source") != std::string::npos);
  }
  SUBCASE("random out-cacti partition their arcs") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const auto g = random_out_cactus(2 + seed % 20, seed);
      const auto d = cactus_decompose(g);
      CHECK_NOTHROW(validate_cactus_decomposition(g, d));
      for (std::size_t i = 1; i < d.cycles.size(); ++i) {
        CHECK(g.topological_rank(d.cycles[i - 1].source) <= g.topological_rank(d.cycles[i].source));
      }
    }
  }
  SUBCASE("tampered decomposition") {
    auto d = cactus_decompose(diamond());
    d.cycles[0].arcs.pop_back();
    CHECK_THROWS_AS(validate_cactus_decomposition(diamond(), d), Error);
  }
}

TEST_CASE("width") {
  CHECK(width(path(5), ReachabilityIndex(path(5))) == 1);
  CHECK(width(edgeless(6), ReachabilityIndex(edgeless(6))) == 6);
  const auto fig2 = *fixture("fig2");
  CHECK(width(fig2, ReachabilityIndex(fig2)) == 4);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto g = random_width_two(1 + seed % 12, seed);
    CHECK(width(g, ReachabilityIndex(g)) <= 2);
  }
}

TEST_CASE("classification and dispatch") {
  CHECK(classify(*fixture("fig2"), 3).chosen_solver == SolverKind::kPolytree);
  CHECK(classify(make(2, {{0, 1}}), 5).chosen_solver == SolverKind::kCanonical);
  CHECK(classify(*fixture("fig3"), 3).chosen_solver == SolverKind::kOracle);
  CHECK(classify(*fixture("fig3"), 2).chosen_solver == SolverKind::kTwoAgents);
  CHECK(classify(diamond(), 3).chosen_solver == SolverKind::kSeriesParallel);

  const auto b = braid();
  const auto report = classify(b, 3);
  CHECK_FALSE(report.is_polytree);
  CHECK_FALSE(report.is_sp);
  CHECK_FALSE(report.is_out_cactus);
  CHECK(report.width == std::optional<std::size_t>(3));
  CHECK(report.chosen_solver == SolverKind::kUnsupported);

  const auto fig1 = classify(*fixture("fig1"), 3);
  CHECK(fig1.is_out_tree);
  CHECK(fig1.is_polytree);
  CHECK(fig1.is_out_cactus);

  CHECK_THROWS_AS(classify(diamond(), 0), Error);

  for (auto kind : {SolverKind::kCanonical, SolverKind::kTwoAgents, SolverKind::kOutTree,
                    SolverKind::kPolytree, SolverKind::kSeriesParallel, SolverKind::kOutCactus,
                    SolverKind::kWidthTwo, SolverKind::kOracle, SolverKind::kUnsupported}) {
    CHECK(solver_from_name(solver_name(kind)) == kind);
  }
  CHECK(solver_from_name("oracle") == SolverKind::kOracle);
  CHECK_FALSE(solver_from_name("nope"));
}

TEST_CASE("out-tree flag implies polytree flag") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto g = random_dag(7, 0.25, seed);
    const auto r = classify(g, 3);
    if (r.is_out_tree) CHECK(r.is_polytree);
  }
}
