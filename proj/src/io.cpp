#include "minex/io.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "minex/error.hpp"

namespace minex {

Json graph_to_json(const Graph& g, const std::function<std::string(Vertex)>& label) {
  Json vertices = Json::array();
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    Json vj{{"id", v}};
    if (label) {
      vj["label"] = label(v);
    } else if (g.has_labels()) {
      vj["label"] = g.label(v);
    }
    vertices.push_back(std::move(vj));
  }
  Json edges = Json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
  return Json{{"vertices", std::move(vertices)}, {"edges", std::move(edges)}};
}

Json ball_to_json(const CayleyBall& ball) {
  return graph_to_json(ball.graph, [&ball](Vertex v) { return ball.label(v); });
}

Graph graph_from_json(const Json& j) {
  require(j.is_object() && j.contains("vertices") && j.contains("edges"),
          "graph JSON needs 'vertices' and 'edges'");
  const auto& vs = j.at("vertices");
  const std::size_t n = vs.size();
  GraphBuilder b(n);
  std::vector<char> seen(n, 0);
  for (const auto& v : vs) {
    const auto id = v.at("id").get<std::uint64_t>();
    require(id < n && !seen[id], "vertex ids must be exactly 0..n-1");
    seen[id] = 1;
    if (v.contains("label")) b.set_label(static_cast<Vertex>(id), v.at("label").get<std::string>());
  }
  for (const auto& e : j.at("edges")) {
    require(e.is_array() && e.size() == 2, "edges must be [u,v] pairs");
    b.add_edge(e[0].get<Vertex>(), e[1].get<Vertex>());
  }
  return std::move(b).build();
}

std::string host_hash(const Graph& g) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](std::uint64_t x) {
    for (int i = 0; i < 8; ++i) {
      h ^= (x >> (8 * i)) & 0xff;
      h *= 1099511628211ull;
    }
  };
  mix(g.num_vertices());
  for (const Edge& e : g.edges()) {
    mix(e.u);
    mix(e.v);
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json decomposition_to_json(const BranchDecomposition& bd, const Graph& host) {
  Json pe = Json::array();
  for (const Edge& e : bd.pattern.edges()) pe.push_back({e.u, e.v});
  Json sets = Json::array();
  for (const VertexSet& s : bd.sets) sets.push_back(s.members());
  return Json{{"pattern", bd.pattern.name()},
              {"pattern_vertices", bd.pattern.size()},
              {"pattern_edges", std::move(pe)},
              {"sets", std::move(sets)},
              {"host_hash", host_hash(host)}};
}

BranchDecomposition decomposition_from_json(const Json& j) {
  require(j.is_object() && j.contains("sets"), "decomposition JSON needs 'sets'");
  BranchDecomposition bd;
  for (const auto& s : j.at("sets")) bd.sets.emplace_back(s.get<std::vector<Vertex>>());
  const std::string name = j.value("pattern", std::string("custom"));
  if (j.contains("pattern_edges")) {
    std::vector<Edge> edges;
    for (const auto& e : j.at("pattern_edges")) edges.emplace_back(e[0].get<Vertex>(), e[1].get<Vertex>());
    const std::size_t n = j.value("pattern_vertices", bd.sets.size());
    bd.pattern = PatternGraph(n, std::move(edges));
  } else {
    require(name.size() > 1 && name[0] == 'K', "pattern must be K<m> when no pattern_edges are given");
    bd.pattern = PatternGraph::complete(std::stoul(name.substr(1)));
  }
  return bd;
}

Json verdict_to_json(const MinorVerdict& v) {
  Json j{{"pass", v.passed()},
         {"shape_ok", v.shape_ok},
         {"disjoint", v.disjoint},
         {"connected", v.connected},
         {"edges_realized", v.edges_realized}};
  Json w = Json::object();
  if (!v.shape_witness.empty()) w["shape"] = v.shape_witness;
  if (v.overlap_sets) {
    w["overlap"] = {{"sets", {v.overlap_sets->first, v.overlap_sets->second}}, {"vertex", *v.overlap_vertex}};
  }
  if (v.disconnected_set) w["disconnected_set"] = *v.disconnected_set;
  if (v.missing_pattern_edge) w["missing_pattern_edge"] = {v.missing_pattern_edge->u, v.missing_pattern_edge->v};
  j["witnesses"] = std::move(w);
  return j;
}

Json scale_report_to_json(const ScaleReport& r) {
  Json hist = Json::object();
  for (const auto& [d, c] : r.diameters.histogram) hist[std::to_string(d)] = c;
  Json j{{"m", r.m},
         {"s", r.s},
         {"R", r.R},
         {"num_partitions", r.num_partitions},
         {"num_elements", r.num_elements},
         {"num_nonempty_elements", r.num_nonempty_elements},
         {"multiplicity", r.multiplicity.multiplicity},
         {"multiplicity_bound", std::size_t{1} << (2 * r.m)},
         {"multiplicity_witness", r.multiplicity.witness},
         {"interior_multiplicity", r.multiplicity.interior_multiplicity},
         {"max_diameter", r.diameters.max_diameter},
         {"gamma_emp", r.diameters.gamma_emp},
         {"coverage_pass", r.coverage_pass},
         {"separation_pass", r.separation.passed},
         {"interior_separation_pass", r.separation.interior_passed},
         {"partition_pass", r.partition_pass},
         {"interior_fraction", r.interior_fraction},
         {"diameter_histogram", std::move(hist)},
         {"pass", r.passed()}};
  if (r.coverage_witness) j["coverage_witness"] = *r.coverage_witness;
  if (r.separation.x) {
    j["separation_witness"] = {{"x", *r.separation.x}, {"y", *r.separation.y}, {"partition", *r.separation.partition}};
  }
  if (r.partition_witness) j["partition_witness"] = *r.partition_witness;
  return j;
}

Json make_header(const std::string& command, const Json& config) {
  return Json{{"tool", kToolName}, {"version", kToolVersion}, {"command", command}, {"config", config}};
}

std::string read_text_file(const std::string& path) {
  std::ostringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  require(static_cast<bool>(in), "cannot open '" + path + "'");
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  if (path == "-" || path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path);
  require(static_cast<bool>(out), "cannot write '" + path + "'");
  out << text;
}

}  // namespace minex
