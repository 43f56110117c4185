#include "tropmod/graphs/graph_io.hpp"

#include <sstream>

#include "tropmod/error.hpp"

namespace tropmod {

namespace {

// Reads an id-indexed array into slot order, checking ids are 0..n-1.
template <typename F>
void read_indexed(const nlohmann::json& arr, const char* what, F&& f) {
  if (!arr.is_array()) throw Error("bad_graph", std::string(what) + " must be an array");
  std::vector<bool> seen(arr.size(), false);
  for (const auto& item : arr) {
    if (!item.is_object() || !item.contains("id") || !item["id"].is_number_integer())
      throw Error("bad_graph", std::string(what) + " entries need an integer id");
    const auto id = item["id"].get<long long>();
    if (id < 0 || id >= static_cast<long long>(arr.size()) || seen[id])
      throw Error("bad_graph", std::string(what) + " ids must be 0..n-1 without repeats");
    seen[id] = true;
    f(static_cast<int>(id), item);
  }
}

}  // namespace

WeightedGraph graph_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
    throw Error("bad_graph", "graph needs \"vertices\" and \"edges\"");
  std::vector<int> weights(j["vertices"].is_array() ? j["vertices"].size() : 0);
  read_indexed(j["vertices"], "vertices", [&](int id, const nlohmann::json& v) {
    if (!v.contains("weight") || !v["weight"].is_number_integer())
      throw Error("bad_graph", "vertex weight must be an integer");
    weights[id] = v["weight"].get<int>();
  });
  std::vector<Edge> edges(j["edges"].is_array() ? j["edges"].size() : 0);
  read_indexed(j["edges"], "edges", [&](int id, const nlohmann::json& e) {
    if (!e.contains("ends") || !e["ends"].is_array() || e["ends"].size() != 2 ||
        !e["ends"][0].is_number_integer() || !e["ends"][1].is_number_integer())
      throw Error("bad_graph", "edge ends must be a pair of vertex ids");
    edges[id] = {e["ends"][0].get<int>(), e["ends"][1].get<int>()};
  });
  WeightedGraph g(std::move(weights), std::move(edges));
  if (!g.is_connected()) throw Error("disconnected", "graph must be connected");
  return g;
}

nlohmann::json graph_to_json(const WeightedGraph& g) {
  nlohmann::json vs = nlohmann::json::array(), es = nlohmann::json::array();
  for (int v = 0; v < static_cast<int>(g.num_vertices()); ++v) vs.push_back({{"id", v}, {"weight", g.weight(v)}});
  for (int e = 0; e < static_cast<int>(g.num_edges()); ++e)
    es.push_back({{"id", e}, {"ends", {g.edge(e).tail, g.edge(e).head}}});
  return {{"vertices", vs}, {"edges", es}};
}

std::string graph_to_dot(const WeightedGraph& g, const std::string& name) {
  std::ostringstream os;
  os << "graph " << name << " {\n";
  for (int v = 0; v < static_cast<int>(g.num_vertices()); ++v)
    os << "  v" << v << " [label=\"" << g.weight(v) << "\"];\n";
  for (int e = 0; e < static_cast<int>(g.num_edges()); ++e)
    os << "  v" << g.edge(e).tail << " -- v" << g.edge(e).head << " [label=\"e" << e << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace tropmod
