#pragma once

#include <string>
#include <vector>

#include "tropmod/graphs/isomorphism.hpp"

namespace tropmod {

struct Specialization {
  EdgeSubset subset;      ///< lexicographically smallest subset giving this class
  WeightedGraph graph;    ///< contraction by `subset`
  std::string key;        ///< canonical key of `graph`
  std::size_t count = 0;  ///< number of subsets landing in this class
};

/// Contractions by all 2^|E| edge subsets, grouped by isomorphism class.
/// The trivial specialization comes first; the rest follow in order of the
/// first subset (by size, then lexicographically) that reaches them.
std::vector<Specialization> specializations(const WeightedGraph& g);

/// All subsets of {0..n-1}, ordered by size and then lexicographically.
std::vector<EdgeSubset> all_subsets(std::size_t n);

}  // namespace tropmod
