#pragma once

#include <string>

#include <json.hpp>

#include "tropmod/graphs/weighted_graph.hpp"

namespace tropmod {

/// {"vertices":[{"id":int,"weight":int}],"edges":[{"id":int,"ends":[int,int]}]}
/// Ids must be exactly 0..n-1 (in any order). Throws Error("bad_graph").
WeightedGraph graph_from_json(const nlohmann::json& j);
nlohmann::json graph_to_json(const WeightedGraph& g);

/// Undirected DOT with vertex weights as labels and edge ids as edge labels.
std::string graph_to_dot(const WeightedGraph& g, const std::string& name = "G");

}  // namespace tropmod
