#ifndef PREFALLOC_IO_HPP
#define PREFALLOC_IO_HPP

#include <cstddef>
#include <optional>
#include <string>

#include "json.hpp"

#include "prefalloc/allocation.hpp"
#include "prefalloc/certificates.hpp"
#include "prefalloc/graph.hpp"
#include "prefalloc/recognizers.hpp"
#include "prefalloc/solvers.hpp"

namespace prefalloc {

struct Instance {
  PreferenceGraph graph;
  std::optional<std::size_t> agents;
};

// {"items": [names...], "arcs": [[tail, head], ...], "agents": k}
// "items" may also be a plain item count; "agents" is optional.
Instance instance_from_json(const nlohmann::json& j);
nlohmann::json instance_to_json(const PreferenceGraph& graph, std::optional<std::size_t> agents);

// {"agents": k, "bundles": [[...], ...]}; extra keys are ignored.
Allocation allocation_from_json(const nlohmann::json& j);

nlohmann::json certificate_to_json(const Certificate& cert);
nlohmann::json result_to_json(const SolveResult& result, bool with_certificate);
nlohmann::json report_to_json(const ClassReport& report);

// Items become nodes "v<id>" labelled by name; with an allocation, each node
// also carries an "agent" attribute. read_dot accepts what write_dot emits.
std::string write_dot(const PreferenceGraph& graph, const Allocation* allocation = nullptr);
Instance read_dot(const std::string& text);

// Throws Error(kParseError) for unreadable files or malformed content.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);
Instance load_instance(const std::string& path);

}  // namespace prefalloc

#endif  // PREFALLOC_IO_HPP
