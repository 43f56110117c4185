#pragma once

#include <vector>

#include "tropmod/ratlin/matrix.hpp"

namespace tropmod {

/// Extreme rays of the pointed cone {x : a.x >= 0 for a in ineqs, e.x = 0 for
/// e in eqs} in R^dim, as primitive integer vectors in lexicographic order.
/// Exact double description with the algebraic adjacency test. Throws
/// Error("not_pointed") when the cone contains a line.
std::vector<IntVector> extreme_rays(const std::vector<IntVector>& ineqs, const std::vector<IntVector>& eqs,
                                    std::size_t dim);

struct ConeFacets {
  std::vector<IntVector> facets;     ///< primitive normals a with a.x >= 0, lying in the span
  std::vector<IntVector> equations;  ///< Z-basis of the functionals vanishing on the span
};

/// Facet description of cone(rays) inside its linear span.
ConeFacets facets_of(const std::vector<IntVector>& rays, std::size_t dim);

}  // namespace tropmod
