#ifndef PREFALLOC_INSTANCES_HPP
#define PREFALLOC_INSTANCES_HPP

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "prefalloc/allocation.hpp"
#include "prefalloc/graph.hpp"

namespace prefalloc {

// Hardness gadget: the items are V(H) followed by one item w_e per edge e of H
// (in edge order), with arcs u -> w_e and v -> w_e for every e = {u, v}.
// Throws Error(kPreconditionViolated) if k < 3.
PreferenceGraph reduce_coloring_to_instance(const UndirectedGraph& h, std::size_t k);

struct XGraph {
  // Vertex i stands for item x_items[i].
  UndirectedGraph graph;
  // Sources of the preference graph, ascending.
  std::vector<ItemId> x_items;
};

// Two sources are adjacent iff they share an out-neighbour. Throws
// Error(kNotOneWayBipartite) if some directed path has length two.
XGraph x_graph(const PreferenceGraph& graph);

// X items take the agent of their color; every other item takes the smallest
// agent not held by any of its in-neighbours. `coloring` is indexed like
// XGraph::x_items. Throws Error(kPreconditionViolated) unless k exceeds the
// maximum in-degree and the coloring is proper with colors below k.
Allocation good_allocation_from_coloring(const PreferenceGraph& graph,
                                         const std::vector<std::uint32_t>& coloring,
                                         std::size_t agents);

// Seeded source of randomness for the generators. Draws are defined on top
// of the raw 64-bit mt19937_64 stream, so a seed gives the same instance on
// every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, bound); bound > 0. Rejection sampling.
  std::uint64_t below(std::uint64_t bound);
  // Uniform in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
  // Uniform in [0, 1) with 53 bits.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return unit() < p; }
  std::vector<ItemId> permutation(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

// Uniform random labelled tree with every edge oriented by a coin flip.
PreferenceGraph random_polytree(std::size_t n, std::uint64_t seed);
PreferenceGraph random_out_tree(std::size_t n, std::uint64_t seed);
// Random composition tree of the given depth; compositions stop once
// `max_items` items exist.
PreferenceGraph random_sp(std::size_t depth, std::uint64_t seed,
                          std::size_t max_items = std::numeric_limits<std::size_t>::max());
// Cycles (two internally disjoint paths between a fresh sink and an existing
// item) and single arcs hung below random existing items.
PreferenceGraph random_out_cactus(std::size_t n, std::uint64_t seed);
// Two chains plus cross arcs that respect a random interleaving.
PreferenceGraph random_width_two(std::size_t n, std::uint64_t seed, double cross_probability = 0.3);
// Each pair is joined with probability p, forward along a random order.
PreferenceGraph random_dag(std::size_t n, double p, std::uint64_t seed);
UndirectedGraph random_undirected(std::size_t n, double p, std::uint64_t seed);

// Named fixtures, ids 0-based:
//   fig1: 0 = tablet, 1..13 = toys a..m (out-tree)
//   fig2: item labelled i is id i - 1 (polytree)
//   fig3: 0..3 = x1..x4, 4..9 = y12, y13, y14, y23, y24, y34
std::vector<std::string_view> fixture_names();
std::optional<PreferenceGraph> fixture(std::string_view name);

// The three-agent allocation from the worked example on fig2.
Allocation fig2_example_allocation();

}  // namespace prefalloc

#endif  // PREFALLOC_INSTANCES_HPP
