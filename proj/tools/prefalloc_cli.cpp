// prefalloc: solve, certify and generate common-preference allocation instances.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "prefalloc/allocation.hpp"
#include "prefalloc/certificates.hpp"
#include "prefalloc/errors.hpp"
#include "prefalloc/instances.hpp"
#include "prefalloc/io.hpp"
#include "prefalloc/oracle.hpp"
#include "prefalloc/reachability.hpp"
#include "prefalloc/recognizers.hpp"
#include "prefalloc/solvers.hpp"

using namespace prefalloc;
using nlohmann::json;

namespace {

struct Common {
  std::string instance;
  std::optional<std::size_t> agents;
  std::string output;
  std::string format = "json";
};

std::size_t agents_for(const Common& c, const Instance& inst) {
  if (c.agents) return *c.agents;
  if (inst.agents) return *inst.agents;
  throw Error(ErrorCode::kPreconditionViolated, "number of agents missing: pass --agents");
}

void emit(const Common& c, const std::string& text) {
  if (c.output.empty()) {
    std::cout << text;
  } else {
    write_file(c.output, text);
  }
}

void emit_json(const Common& c, const json& j) { emit(c, j.dump(2) + "\n"); }

// Solver-applicability failures exit with 2, everything else with 1.
int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnsupported:
    case ErrorCode::kNotPolytree:
    case ErrorCode::kNotOutTree:
    case ErrorCode::kNotSeriesParallel:
    case ErrorCode::kNotOutCactus:
    case ErrorCode::kNotOneWayBipartite:
    case ErrorCode::kWidthExceeded:
    case ErrorCode::kInstanceTooLarge:
    case ErrorCode::kPreconditionViolated:
    case ErrorCode::kInfeasibleCardinality:
      return 2;
    default:
      return 1;
  }
}

int cmd_solve(const Common& c, const std::string& solver, bool with_certificate) {
  const Instance inst = load_instance(c.instance);
  SolveOptions options;
  if (!solver.empty() && solver != "auto") {
    const auto kind = solver_from_name(solver);
    if (!kind) throw Error(ErrorCode::kParseError, "unknown solver '" + solver + "'");
    options.forced = *kind;
  }
  const SolveResult result = solve_auto(inst.graph, agents_for(c, inst), options);
  if (c.format == "dot") {
    emit(c, write_dot(inst.graph, &result.allocation));
  } else {
    emit_json(c, result_to_json(result, with_certificate));
  }
  return 0;
}

int cmd_classify(const Common& c) {
  const Instance inst = load_instance(c.instance);
  const std::size_t k = c.agents ? *c.agents : inst.agents.value_or(inst.graph.item_count());
  json j = report_to_json(classify(inst.graph, k));
  j["items"] = inst.graph.item_count();
  j["arcs"] = inst.graph.arc_count();
  j["agents"] = k;
  emit_json(c, j);
  return 0;
}

int cmd_bound(const Common& c) {
  const Instance inst = load_instance(c.instance);
  const std::size_t k = agents_for(c, inst);
  const ReachabilityIndex index(inst.graph);
  emit_json(c, {{"agents", k}, {"lower_bound", lower_bound(inst.graph, index, k)}});
  return 0;
}

int cmd_check(const Common& c, const std::string& allocation_path) {
  const Instance inst = load_instance(c.instance);
  json aj;
  try {
    aj = json::parse(read_file(allocation_path));
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParseError, allocation_path + ": " + e.what());
  }
  const Allocation alloc = allocation_from_json(aj);
  const ReachabilityIndex index(inst.graph);
  const Certificate cert = certify(inst.graph, index, alloc);
  json j{{"agents", alloc.agent_count()},
         {"profile", cert.profile.per_agent},
         {"total", cert.profile.total},
         {"lower_bound", cert.lower_bound},
         {"good", cert.goodness.is_good}};
  j["certificate"] = certificate_to_json(cert);
  emit_json(c, j);
  return 0;
}

int cmd_oracle(const Common& c, std::size_t item_limit) {
  const Instance inst = load_instance(c.instance);
  const std::size_t k = agents_for(c, inst);
  const ReachabilityIndex index(inst.graph);
  OracleLimits limits;
  limits.item_limit = item_limit;
  const OracleResult r = brute_force_optimum(inst.graph, index, k, limits);
  emit_json(c, {{"agents", k},
                {"bundles", r.allocation.bundles()},
                {"total", r.total},
                {"lower_bound", lower_bound(inst.graph, index, k)},
                {"labelings", r.leaves_visited}});
  return 0;
}

struct GenArgs {
  std::string cls = "polytree";
  std::size_t n = 10;
  std::size_t depth = 4;
  double p = 0.3;
  std::uint64_t seed = 1;
  std::string name;
};

int cmd_gen(const Common& c, const GenArgs& g) {
  PreferenceGraph graph;
  if (g.cls == "polytree") {
    graph = random_polytree(g.n, g.seed);
  } else if (g.cls == "out_tree") {
    graph = random_out_tree(g.n, g.seed);
  } else if (g.cls == "series_parallel" || g.cls == "sp") {
    graph = random_sp(g.depth, g.seed);
  } else if (g.cls == "out_cactus") {
    graph = random_out_cactus(g.n, g.seed);
  } else if (g.cls == "width_two") {
    graph = random_width_two(g.n, g.seed);
  } else if (g.cls == "dag") {
    graph = random_dag(g.n, g.p, g.seed);
  } else if (g.cls == "fixture") {
    auto f = fixture(g.name);
    if (!f) throw Error(ErrorCode::kParseError, "unknown fixture '" + g.name + "'");
    graph = std::move(*f);
  } else {
    throw Error(ErrorCode::kParseError, "unknown class '" + g.cls + "'");
  }
  if (c.format == "dot") {
    emit(c, write_dot(graph));
  } else {
    emit_json(c, instance_to_json(graph, c.agents));
  }
  return 0;
}

int cmd_bench(const Common& c, const std::vector<std::size_t>& sizes, std::size_t k,
              std::uint64_t seed, int repeats) {
  json rows = json::array();
  for (std::size_t n : sizes) {
    const PreferenceGraph g = random_polytree(n, seed);
    double best = 0;
    for (int r = 0; r < repeats; ++r) {
      const auto t0 = std::chrono::steady_clock::now();
      const Allocation a = solve_polytree(g, std::min(k, n > 1 ? n - 1 : 1));
      const auto t1 = std::chrono::steady_clock::now();
      const double s = std::chrono::duration<double>(t1 - t0).count();
      if (r == 0 || s < best) best = s;
      if (a.agent_count() == 0) return 1;
    }
    rows.push_back({{"n", n}, {"seconds", best}});
  }
  emit_json(c, {{"solver", "polytree"}, {"agents", k}, {"seed", seed}, {"runs", rows}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Allocation of items under common preferences (min-sum dissatisfaction)"};
  app.require_subcommand(1);

  Common common;
  std::string solver;
  bool certify_flag = false;
  std::string allocation_path;
  std::size_t oracle_limit = 12;
  GenArgs gen;
  std::vector<std::size_t> sizes{100000, 1000000};
  std::size_t bench_agents = 3;
  int repeats = 3;

  auto add_agents = [&](CLI::App* sub) {
    sub->add_option("--agents,-k", common.agents, "Number of agents (overrides the file)");
  };
  auto add_io = [&](CLI::App* sub) {
    sub->add_option("--output,-o", common.output, "Write to this file instead of stdout");
    sub->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"json", "dot"}));
  };

  auto* solve = app.add_subcommand("solve", "Solve an instance and report the allocation");
  solve->add_option("instance", common.instance)->required();
  add_agents(solve);
  solve->add_option("--solver", solver, "Force a solver (default: auto)");
  solve->add_flag("--certify", certify_flag, "Append the certificate block");
  add_io(solve);

  auto* cls = app.add_subcommand("classify", "Report graph classes and the solver that would run");
  cls->add_option("instance", common.instance)->required();
  add_agents(cls);
  add_io(cls);

  auto* bound = app.add_subcommand("bound", "Print the lower bound on total dissatisfaction");
  bound->add_option("instance", common.instance)->required();
  add_agents(bound);
  add_io(bound);

  auto* check = app.add_subcommand("check", "Certify a given allocation");
  check->add_option("instance", common.instance)->required();
  check->add_option("allocation", allocation_path)->required();
  add_io(check);

  auto* oracle = app.add_subcommand("oracle", "Exhaustive optimum for small instances");
  oracle->add_option("instance", common.instance)->required();
  add_agents(oracle);
  oracle->add_option("--limit", oracle_limit, "Largest item count searched");
  add_io(oracle);

  auto* gen_cmd = app.add_subcommand("gen", "Generate an instance");
  gen_cmd->add_option("--class", gen.cls,
                      "polytree, out_tree, series_parallel, out_cactus, width_two, dag, fixture");
  gen_cmd->add_option("--n", gen.n, "Number of items");
  gen_cmd->add_option("--depth", gen.depth, "Composition depth (series_parallel)");
  gen_cmd->add_option("--p", gen.p, "Arc probability (dag)");
  gen_cmd->add_option("--seed", gen.seed, "PRNG seed");
  gen_cmd->add_option("--name", gen.name, "Fixture name: fig1, fig2, fig3");
  add_agents(gen_cmd);
  add_io(gen_cmd);

  auto* bench = app.add_subcommand("bench", "Time the polytree solver on growing instances");
  bench->add_option("--sizes", sizes, "Item counts");
  add_agents(bench);
  bench->add_option("--seed", gen.seed, "PRNG seed");
  bench->add_option("--repeats", repeats, "Runs per size (best is reported)");
  add_io(bench);

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return cmd_solve(common, solver, certify_flag);
    if (cls->parsed()) return cmd_classify(common);
    if (bound->parsed()) return cmd_bound(common);
    if (check->parsed()) return cmd_check(common, allocation_path);
    if (oracle->parsed()) return cmd_oracle(common, oracle_limit);
    if (gen_cmd->parsed()) return cmd_gen(common, gen);
    if (bench->parsed()) {
      if (common.agents) bench_agents = *common.agents;
      return cmd_bench(common, sizes, bench_agents, gen.seed, repeats);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
