#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tropmod/graphs/weighted_graph.hpp"

namespace tropmod {

/// Largest vertex count accepted by the exhaustive searches below.
inline constexpr std::size_t kMaxSearchVertices = 12;

/// A relabeling of a graph: vertex v goes to vertex_map[v], edge e to
/// edge_map[e]; edge_sign[e] is -1 when the relabeled edge is stored with the
/// opposite orientation.
struct GraphMap {
  std::vector<int> vertex_map;
  std::vector<int> edge_map;
  std::vector<int> edge_sign;
};

struct CanonicalForm {
  WeightedGraph graph;  ///< the canonical representative
  GraphMap map;         ///< input -> canonical
  std::string key;      ///< printable encoding; equal iff isomorphic
};

/// Lexicographic minimum over vertex relabelings of (weight sequence, sorted
/// edge multiset). Canonical edges are stored as (smaller, larger) endpoint.
/// Throws Error("too_large") past kMaxSearchVertices.
CanonicalForm canonical_form(const WeightedGraph& g);

/// Every weight-preserving automorphism as a (vertex, edge) permutation pair.
/// Loop reversal is not a separate automorphism; edge_sign records the
/// orientation change of non-loop edges.
std::vector<GraphMap> automorphisms(const WeightedGraph& g);

/// Distinct edge permutations induced by the automorphisms.
std::vector<std::vector<int>> edge_permutation_group(const WeightedGraph& g);

/// Some isomorphism a -> b, if any.
std::optional<GraphMap> find_isomorphism(const WeightedGraph& a, const WeightedGraph& b);

/// Applies a relabeling to a graph (the image graph is rebuilt from scratch).
WeightedGraph relabel(const WeightedGraph& g, const GraphMap& m);

GraphMap compose(const GraphMap& first, const GraphMap& second);
GraphMap invert(const GraphMap& m);
GraphMap identity_map(const WeightedGraph& g);

}  // namespace tropmod
