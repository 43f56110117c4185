#pragma once

#include <map>
#include <string>
#include <vector>

#include "tropmod/graphs/isomorphism.hpp"
#include "tropmod/stackyfan/stacky_fan.hpp"

namespace tropmod {

/// Isomorphism classes of stable weighted graphs of one genus, each stored in
/// canonical form. Ordered by edge count, then vertex count, then key.
struct Catalogue {
  int genus = 0;
  std::vector<WeightedGraph> graphs;
  std::vector<std::string> keys;
  std::map<std::string, int> index;  ///< canonical key -> position

  std::size_t size() const noexcept { return graphs.size(); }
  /// Position of the class of g, or -1.
  int find(const WeightedGraph& g) const;
};

/// Largest genus accepted by enumerate_stable.
inline constexpr int kMaxEnumerationGenus = 4;

/// Every connected stable weighted graph of genus g up to isomorphism, by
/// generating edge multisets (|E| <= max(3g-3, 1), |V| <= max(2g-2, 1)) with
/// vertices introduced in breadth-first order, distributing the weight
/// deficit, and deduplicating by canonical form. Throws Error("too_large")
/// outside 1 <= g <= kMaxEnumerationGenus.
Catalogue enumerate_stable(int g);

/// The classes with all weights zero.
Catalogue pure_part(const Catalogue& c);

/// One closed orthant per class (coordinates = canonical edge order), a face
/// map for every nonempty edge subset and a self-map per automorphism.
StackyFan build_moduli_fan(const Catalogue& c);
StackyFan build_moduli_fan(int g);

/// The pure classes, each orthant minus the faces whose vanishing edges
/// contain a cycle; face maps for acyclic contractions only.
StackyFan pure_subfan(int g);
StackyFan pure_subfan(const Catalogue& c);

struct Located {
  int cell = -1;
  RatVector coords;  ///< canonical edge order, lexicographically least over Aut
};

/// Cell of a tropical curve and its orbit-normalized lengths. Throws
/// Error("unstable") or Error("bad_lengths") (wrong count, nonpositive).
Located locate(const Catalogue& c, const WeightedGraph& g, const RatVector& lengths);

/// Pairs (i, j) where class j arises from class i by contracting one edge.
std::vector<std::pair<int, int>> covering_relations(const Catalogue& c);

/// Hasse diagram of the specialization order in DOT.
std::string hasse_dot(const Catalogue& c);

}  // namespace tropmod
