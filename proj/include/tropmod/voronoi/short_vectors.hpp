#pragma once

#include <vector>

#include "tropmod/ratlin/quadform.hpp"
#include "tropmod/stackyfan/ideal_cone.hpp"

namespace tropmod {

/// Every integer x with q(x - center) <= bound, in lexicographic order. Exact
/// Fincke-Pohst enumeration over the LDL^T factorization. Throws
/// Error("not_definite") unless q is positive definite.
std::vector<IntVector> lattice_points_in_ellipsoid(const QuadForm& q, const RatVector& center, const Rational& bound);

/// Nonzero x with q(x) <= bound.
std::vector<IntVector> short_vectors(const QuadForm& q, const Rational& bound);

struct MinVecSet {
  Rational mu;                    ///< arithmetic minimum
  std::vector<IntVector> vectors;  ///< all minimal vectors, closed under negation, sorted
};

MinVecSet min_vectors(const QuadForm& q);

/// Cone over the rank-one forms x x^T of the minimal vectors, in symmetric
/// coordinates (each pair +-x contributes one generator).
IdealCone perfect_cone(const QuadForm& q);
bool is_perfect(const QuadForm& q);

/// Same ray set and ambient dimension, ignoring generator order.
bool same_cone(const IdealCone& a, const IdealCone& b);

/// The cone spanned by the given generators after dropping those that are not
/// extreme (and duplicates).
IdealCone cone_hull(const std::vector<IntVector>& generators, std::size_t ambient_dim);

}  // namespace tropmod
