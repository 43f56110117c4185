#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tropmod/graphs/isomorphism.hpp"
#include "tropmod/markings/marking.hpp"

namespace tropmod {

enum class EquivalenceMode { strict, weak };

/// Isomorphisms between the virtual graphs of two isomorphic weighted graphs:
/// base isomorphisms, times reversal of every base loop, times permutations
/// and reversals of the virtual loops at each vertex.
std::vector<GraphMap> virtual_isomorphisms(const VirtualGraph& a, const VirtualGraph& b);

/// Image of a path under an edge relabeling with orientation signs.
Path map_path(const GraphMap& f, const Path& p);

/// `iso` is a map between the virtual graphs (strict) or the base graphs
/// (weak). `conjugator` runs from the basepoint of m2 to the image of the
/// basepoint of m1 and satisfies conjugator . iso(p_i) . conjugator^{-1} ~ q_i.
struct EquivalenceWitness {
  GraphMap iso;
  Path conjugator;
};

/// Strict: an isomorphism of virtual graphs followed by a common change of
/// basepoint carries the petals of m1 to those of m2 up to homotopy. Weak:
/// the same after erasing every virtual-loop step. The basepoint change is
/// solved exactly in free-group coordinates rather than searched. Throws
/// Error("graph_mismatch") when the weighted graphs are not isomorphic.
std::optional<EquivalenceWitness> find_equivalence(const Marking& m1, const Marking& m2, EquivalenceMode mode);
bool markings_equivalent(const Marking& m1, const Marking& m2, EquivalenceMode mode);

/// Petals with all virtual-loop steps deleted, as loops in the base graph.
std::vector<Path> erase_virtual(const Marking& m);

/// One face of a marked cell: contraction classes of the base edge set under
/// strict equivalence of the specialized markings.
struct MarkedFace {
  EdgeSubset subset;                 ///< first subset (by size, then lex) reaching the class
  Marking marking;                   ///< specialization by `subset`
  std::string key;                   ///< canonical key of the contracted graph
  std::vector<EdgeSubset> subsets;   ///< every subset landing in the class
};

/// All 2^|E| specializations grouped by strict equivalence, in order of
/// first subset.
std::vector<MarkedFace> cell_star(const Marking& m);

}  // namespace tropmod
