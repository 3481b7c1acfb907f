#pragma once

#include <functional>
#include <string>

#include "json.hpp"
#include "minex/graph.hpp"
#include "minex/group.hpp"
#include "minex/kpr.hpp"
#include "minex/minor.hpp"

namespace minex {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "minex";
inline constexpr const char* kToolVersion = "1.0.0";

// {"vertices":[{"id":0,"label":"..."}],"edges":[[u,v],...]}, edges sorted.
// label, when given, overrides the graph's own labels.
Json graph_to_json(const Graph& g, const std::function<std::string(Vertex)>& label = {});
Json ball_to_json(const CayleyBall& ball);
Graph graph_from_json(const Json& j);

// FNV-1a 64 over the canonical vertex count and edge list, as 16 hex digits.
std::string host_hash(const Graph& g);

// {"pattern":"K4"|"custom","pattern_vertices":n,"pattern_edges":[[i,j],...],
//  "sets":[[ids],...],"host_hash":"..."}
Json decomposition_to_json(const BranchDecomposition& bd, const Graph& host);
BranchDecomposition decomposition_from_json(const Json& j);

Json verdict_to_json(const MinorVerdict& v);
Json scale_report_to_json(const ScaleReport& r);

// Output envelope: tool, version, command and configuration. Carries no
// timestamp so identical runs produce identical bytes.
Json make_header(const std::string& command, const Json& config);

std::string read_text_file(const std::string& path);  // "-" reads stdin
void write_text_file(const std::string& path, const std::string& text);  // "-" writes stdout

}  // namespace minex
