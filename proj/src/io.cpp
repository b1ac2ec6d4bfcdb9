#include "prefalloc/io.hpp"

#include <fstream>
#include <regex>
#include <sstream>

#include "prefalloc/errors.hpp"

namespace prefalloc {

using nlohmann::json;

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::kParseError, what); }

std::uint64_t as_index(const json& v, const char* what) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    parse_error(std::string(what) + " must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

std::string dot_unescape(const std::string& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\\' && i + 1 < s.size()) ++i;
    out.push_back(s[i]);
  }
  return out;
}

const char* witness_name(GoodnessWitness w) {
  switch (w) {
    case GoodnessWitness::kDominatedByAll:
      return "dominated_by_all";
    case GoodnessWitness::kDistinctPredecessorLabels:
      return "distinct_predecessor_labels";
    case GoodnessWitness::kViolated:
      break;
  }
  return "violated";
}

}  // namespace

Instance instance_from_json(const json& j) {
  if (!j.is_object()) parse_error("instance must be a JSON object");
  if (!j.contains("items") || !j.contains("arcs")) parse_error("instance needs \"items\" and \"arcs\"");
  std::size_t n = 0;
  std::vector<std::string> names;
  const json& items = j.at("items");
  if (items.is_array()) {
    for (const json& name : items) {
      if (!name.is_string()) parse_error("item names must be strings");
      names.push_back(name.get<std::string>());
    }
    n = names.size();
  } else {
    n = as_index(items, "\"items\"");
  }
  const json& arcs_json = j.at("arcs");
  if (!arcs_json.is_array()) parse_error("\"arcs\" must be an array");
  std::vector<Arc> arcs;
  for (const json& a : arcs_json) {
    if (!a.is_array() || a.size() != 2) parse_error("each arc is a [tail, head] pair");
    const auto tail = as_index(a[0], "arc tail");
    const auto head = as_index(a[1], "arc head");
    if (tail > UINT32_MAX || head > UINT32_MAX) {
      throw Error(ErrorCode::kOutOfRangeItem, "arc endpoint out of range");
    }
    arcs.push_back({static_cast<ItemId>(tail), static_cast<ItemId>(head)});
  }
  Instance inst{PreferenceGraph::build(n, std::move(arcs), std::move(names)), std::nullopt};
  if (j.contains("agents") && !j.at("agents").is_null()) {
    inst.agents = as_index(j.at("agents"), "\"agents\"");
  }
  return inst;
}

json instance_to_json(const PreferenceGraph& graph, std::optional<std::size_t> agents) {
  json items = json::array();
  for (ItemId v = 0; v < graph.item_count(); ++v) items.push_back(graph.item_name(v));
  json arcs = json::array();
  for (const Arc& a : graph.arcs()) arcs.push_back({a.tail, a.head});
  json j{{"items", std::move(items)}, {"arcs", std::move(arcs)}};
  if (agents) j["agents"] = *agents;
  return j;
}

Allocation allocation_from_json(const json& j) {
  if (!j.is_object() || !j.contains("bundles") || !j.at("bundles").is_array()) {
    parse_error("allocation needs a \"bundles\" array");
  }
  std::vector<std::vector<ItemId>> bundles;
  for (const json& b : j.at("bundles")) {
    if (!b.is_array()) parse_error("each bundle is an array of item ids");
    auto& bundle = bundles.emplace_back();
    for (const json& v : b) {
      const auto id = as_index(v, "bundle item");
      if (id > UINT32_MAX) throw Error(ErrorCode::kOutOfRangeItem, "bundle item out of range");
      bundle.push_back(static_cast<ItemId>(id));
    }
  }
  if (j.contains("agents")) {
    const auto k = as_index(j.at("agents"), "\"agents\"");
    if (k < bundles.size()) parse_error("more bundles than agents");
    bundles.resize(k);
  }
  return Allocation(std::move(bundles));
}

json certificate_to_json(const Certificate& cert) {
  json witness = json::array();
  for (std::size_t i = 0; i < cert.goodness.checked_items.size(); ++i) {
    witness.push_back(
        {{"item", cert.goodness.checked_items[i]}, {"witness", witness_name(cert.goodness.witness[i])}});
  }
  return {{"total", cert.profile.total},
          {"lower_bound", cert.lower_bound},
          {"matches_bound", cert.matches_bound},
          {"is_good", cert.goodness.is_good},
          {"violating_items", cert.goodness.violating_items},
          {"witness", std::move(witness)}};
}

json result_to_json(const SolveResult& result, bool with_certificate) {
  json j{{"agents", result.allocation.agent_count()},
         {"bundles", result.allocation.bundles()},
         {"profile", result.profile.per_agent},
         {"total", result.profile.total}};
  j["lower_bound"] = result.lower_bound ? json(*result.lower_bound) : json(nullptr);
  if (result.certificate) {
    j["good"] = result.certificate->goodness.is_good;
  } else if (result.lower_bound) {
    j["good"] = result.profile.total == *result.lower_bound;
  } else {
    j["good"] = nullptr;
  }
  j["solver"] = solver_name(result.solver);
  if (with_certificate && result.certificate) j["certificate"] = certificate_to_json(*result.certificate);
  return j;
}

json report_to_json(const ClassReport& report) {
  return {{"is_polytree", report.is_polytree},
          {"is_out_tree", report.is_out_tree},
          {"is_series_parallel", report.is_sp},
          {"is_out_cactus", report.is_out_cactus},
          {"width", report.width ? json(*report.width) : json(nullptr)},
          {"two_agents_shortcut", report.has_two_agents_shortcut},
          {"solver", solver_name(report.chosen_solver)}};
}

std::string write_dot(const PreferenceGraph& graph, const Allocation* allocation) {
  std::vector<std::optional<AgentId>> agent_of(graph.item_count());
  if (allocation) {
    for (AgentId a = 0; a < allocation->agent_count(); ++a) {
      for (ItemId v : allocation->bundle(a)) agent_of.at(v) = a;
    }
  }
  std::ostringstream out;
  out << "digraph preferences {\n";
  if (allocation) out << "  graph [agents=" << allocation->agent_count() << "];\n";
  for (ItemId v = 0; v < graph.item_count(); ++v) {
    out << "  v" << v << " [label=\"" << dot_escape(graph.item_name(v)) << "\"";
    if (agent_of[v]) out << ", agent=" << *agent_of[v];
    out << "];\n";
  }
  for (const Arc& a : graph.arcs()) out << "  v" << a.tail << " -> v" << a.head << ";\n";
  out << "}\n";
  return out.str();
}

Instance read_dot(const std::string& text) {
  static const std::regex header(R"(^\s*digraph\s+\w*\s*\{\s*$)");
  static const std::regex agents(R"(^\s*graph\s*\[agents=(\d+)\];\s*$)");
  static const std::regex node(R"re(^\s*v(\d+)\s*\[label="((?:[^"\\]|\\.)*)"(?:,\s*agent=\d+)?\];\s*$)re");
  static const std::regex edge(R"(^\s*v(\d+)\s*->\s*v(\d+);\s*$)");
  static const std::regex close(R"(^\s*\}\s*$)");

  std::istringstream in(text);
  std::string line;
  std::vector<std::pair<ItemId, std::string>> nodes;
  std::vector<Arc> arcs;
  std::optional<std::size_t> k;
  bool opened = false;
  std::smatch m;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (!opened) {
      if (!std::regex_match(line, header)) parse_error("expected 'digraph ... {'");
      opened = true;
    } else if (std::regex_match(line, m, agents)) {
      k = std::stoull(m[1]);
    } else if (std::regex_match(line, m, node)) {
      nodes.emplace_back(static_cast<ItemId>(std::stoul(m[1])), dot_unescape(m[2]));
    } else if (std::regex_match(line, m, edge)) {
      arcs.push_back({static_cast<ItemId>(std::stoul(m[1])), static_cast<ItemId>(std::stoul(m[2]))});
    } else if (std::regex_match(line, close)) {
      break;
    } else {
      parse_error("unrecognised DOT line: " + line);
    }
  }
  std::vector<std::string> names(nodes.size());
  for (const auto& [id, name] : nodes) {
    if (id >= nodes.size()) parse_error("node ids must be 0..n-1");
    names[id] = name;
  }
  return {PreferenceGraph::build(nodes.size(), std::move(arcs), std::move(names)), k};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) parse_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << content)) parse_error("cannot write " + path);
}

Instance load_instance(const std::string& path) {
  const std::string text = read_file(path);
  if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".dot") == 0) return read_dot(text);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    parse_error(path + ": " + e.what());
  }
  return instance_from_json(j);
}

}  // namespace prefalloc
