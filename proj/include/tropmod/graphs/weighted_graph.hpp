#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tropmod/ratlin/matrix.hpp"

namespace tropmod {

/// An edge with a fixed orientation tail -> head. Loops have tail == head.
struct Edge {
  int tail = 0;
  int head = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Finite multigraph with nonnegative vertex weights. Vertices and edges are
/// indexed from zero; loops and parallel edges are allowed.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  /// Throws Error on negative weights or out-of-range endpoints.
  WeightedGraph(std::vector<int> weights, std::vector<Edge> edges);

  std::size_t num_vertices() const noexcept { return weights_.size(); }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  int weight(int v) const { return weights_[v]; }
  const std::vector<int>& weights() const noexcept { return weights_; }
  const Edge& edge(int e) const { return edges_[e]; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  bool is_loop(int e) const { return edges_[e].tail == edges_[e].head; }
  /// Loops count twice.
  int valence(int v) const;
  int total_weight() const;
  bool is_connected() const;
  /// |E| - |V| + 1 of the underlying graph (requires connectivity).
  int first_betti() const;

  friend bool operator==(const WeightedGraph&, const WeightedGraph&) = default;
  friend auto operator<=>(const WeightedGraph&, const WeightedGraph&) = default;

 private:
  std::vector<int> weights_;
  std::vector<Edge> edges_;
};

using EdgeSubset = std::vector<int>;

/// |E| - |V| + 1 + sum of weights. Throws Error("disconnected").
int genus(const WeightedGraph& g);

/// Every weight-zero vertex has valence at least 3.
bool is_stable(const WeightedGraph& g);

struct Contraction {
  WeightedGraph graph;
  std::vector<int> vertex_map;  ///< old vertex -> new vertex
  std::vector<int> edge_map;    ///< old edge -> new edge, -1 if contracted
};

/// Contracts the edges of `subset`. A contracted loop adds one to the weight
/// of its vertex; merged vertices add weights. New vertices are ordered by the
/// smallest old vertex they contain, surviving edges keep their relative order
/// and orientation. Throws Error("unknown_edge").
Contraction contract(const WeightedGraph& g, const EdgeSubset& subset);

/// Spanning forest of the subgraph formed by `subset`, greedily by lowest
/// edge id.
EdgeSubset spanning_forest(const WeightedGraph& g, const EdgeSubset& subset);

/// True when the edges of `subset` contain a cycle (including a loop).
bool contains_cycle(const WeightedGraph& g, const EdgeSubset& subset);

/// Signed incidence rows of the fundamental cycles, one per non-tree edge in
/// increasing id order, for the spanning tree grown greedily by lowest edge id.
IntMatrix cycle_basis(const WeightedGraph& g);

/// Edge ids of the deterministic spanning tree used by cycle_basis.
EdgeSubset spanning_tree(const WeightedGraph& g);

/// Vertices along a tree path: returns the (edge, direction) steps from `from`
/// to `to` inside the spanning tree.
std::vector<std::pair<int, int>> tree_path(const WeightedGraph& g, int from, int to);

struct VirtualLoop {
  int vertex = 0;
  int edge = 0;  ///< id in the virtual graph
  friend bool operator==(const VirtualLoop&, const VirtualLoop&) = default;
};

/// The graph with w(v) extra loops attached at every vertex v. Base edges keep
/// their ids; virtual loops follow, ordered by vertex.
struct VirtualGraph {
  WeightedGraph base;
  WeightedGraph graph;  ///< all weights zero
  std::vector<VirtualLoop> loops;

  bool is_virtual(int e) const { return e >= static_cast<int>(base.num_edges()); }
  /// Virtual loop edges attached at v, in order.
  std::vector<int> loops_at(int v) const;
  friend bool operator==(const VirtualGraph&, const VirtualGraph&) = default;
};

VirtualGraph virtual_graph(const WeightedGraph& g);

// Handy constructors for small named graphs used across the tool.
namespace named {
WeightedGraph theta();          ///< two vertices, three parallel edges
WeightedGraph dumbbell();       ///< two loops joined by a bridge
WeightedGraph figure_eight();   ///< one vertex, two loops
WeightedGraph weighted_point(int w);
}  // namespace named

}  // namespace tropmod
