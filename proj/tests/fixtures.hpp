#pragma once

// Searched witness graphs, persisted as JSON under tests/fixtures/ by
// fixture_search and loaded by the tests.

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "unionsub/graph.hpp"

#ifndef UNIONSUB_FIXTURE_DIR
#error "UNIONSUB_FIXTURE_DIR must be defined"
#endif

namespace fixtures {

using unionsub::Graph;
using unionsub::NodeId;

inline std::string path(const std::string& name) { return std::string(UNIONSUB_FIXTURE_DIR) + "/" + name; }

inline nlohmann::json graph_json(const Graph& g) { return nlohmann::json::parse(unionsub::to_json(g)); }
inline Graph json_graph(const nlohmann::json& j) { return unionsub::parse_graph(j.dump()); }

inline nlohmann::json load(const std::string& name) {
  std::ifstream f(path(name));
  if (!f) throw std::runtime_error("missing fixture " + path(name));
  return nlohmann::json::parse(f);
}

inline void save(const std::string& name, const nlohmann::json& j) {
  std::ofstream f(path(name));
  if (!f) throw std::runtime_error("cannot write fixture " + path(name));
  f << j.dump(2) << "\n";
}

/// Two rooted graphs: nodes i in g1 and j in g2.
struct NodePair {
  Graph g1, g2;
  NodeId i = 0, j = 0;
};

/// Two graphs, each the union subgraph of its marked edge.
struct EdgePair {
  Graph g1, g2;
  NodeId v1 = 0, u1 = 0, v2 = 0, u2 = 0;
};

struct CaseStudy {
  Graph graph;
  NodeId v = 0, u = 0;
  std::map<std::string, NodeId> nodes;  // named neighbours
  // One representative edge per type, in E1..E4 order.
  std::pair<NodeId, NodeId> typed[4];
};

inline NodePair load_node_pair(const std::string& name) {
  const auto j = load(name);
  return {json_graph(j["g1"]), json_graph(j["g2"]), j["i"].get<NodeId>(), j["j"].get<NodeId>()};
}

inline EdgePair load_edge_pair(const std::string& name) {
  const auto j = load(name);
  return {json_graph(j["g1"]), json_graph(j["g2"]), j["edge1"][0].get<NodeId>(), j["edge1"][1].get<NodeId>(),
          j["edge2"][0].get<NodeId>(), j["edge2"][1].get<NodeId>()};
}

inline CaseStudy load_case_study(const std::string& name) {
  const auto j = load(name);
  CaseStudy c;
  c.graph = json_graph(j["graph"]);
  c.v = j["v"].get<NodeId>();
  c.u = j["u"].get<NodeId>();
  for (auto& [k, val] : j["nodes"].items()) c.nodes[k] = val.get<NodeId>();
  const char* keys[] = {"e1", "e2", "e3", "e4"};
  for (int t = 0; t < 4; ++t) c.typed[t] = {j["typed"][keys[t]][0].get<NodeId>(), j["typed"][keys[t]][1].get<NodeId>()};
  return c;
}

}  // namespace fixtures
