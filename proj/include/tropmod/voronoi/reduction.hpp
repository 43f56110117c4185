#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tropmod/ratlin/quadform.hpp"
#include "tropmod/stackyfan/ideal_cone.hpp"

namespace tropmod {

struct FormReduction {
  IntMatrix h;       ///< unimodular
  QuadForm reduced;  ///< h q h^T
};

/// Descent into the closed principal cone q12 <= 0, q11 + q12 >= 0,
/// q22 + q12 >= 0: flip the sign of q12 when positive, otherwise add one
/// basis vector to the other while that lowers the trace. Throws
/// Error("not_definite") unless q is a positive definite 2 x 2 form.
FormReduction reduce_binary(const QuadForm& q);

/// Pairwise reduction in any dimension: subtract the nearest integer multiple
/// of one basis vector from another while that lowers a diagonal entry.
/// Terminates because the trace strictly decreases. Throws
/// Error("not_definite").
FormReduction pairwise_reduce(const QuadForm& q);

bool in_principal_cone(const QuadForm& q);

/// Some h in GL_g(Z) with h q1 h^T = q2. Row i of h must have q1-value
/// q2(i,i), so rows are drawn from finitely many short vectors of q1 and
/// matched against the off-diagonal entries by backtracking.
std::optional<IntMatrix> gl_equivalent(const QuadForm& q1, const QuadForm& q2);

/// Random matrix in GL_g(Z) as a product of elementary operations, keeping
/// every entry within [-max_entry, max_entry].
IntMatrix random_unimodular(std::size_t g, int max_entry, std::uint64_t seed);

struct AdmissibilityReport {
  bool face_closed = true;
  bool intersections_are_faces = true;
  std::size_t images_in_slice = 0;
  std::size_t images_leaving = 0;
  std::vector<std::string> notes;  ///< witnesses for failures and departures
  /// Finiteness modulo GL_g(Z) and the covering condition are global and not
  /// checked on a finite slice.
  std::string out_of_scope = "finiteness mod GL_g(Z) and covering of the rational closure are global";
  bool ok() const { return face_closed && intersections_are_faces; }
};

/// Checks a finite list of cones in symmetric coordinates: every nonzero face
/// is listed, every pairwise intersection is a face of both, and records
/// whether h c h^T for each generator h lands in the list.
AdmissibilityReport check_admissible_axioms(const std::vector<IdealCone>& slice,
                                            const std::vector<IntMatrix>& generators);

/// The cone spanned by the rays of a face.
IdealCone face_cone(const IdealCone& c, FaceMask face);

/// Intersection of two cones in the same ambient space.
IdealCone intersect(const IdealCone& a, const IdealCone& b);

}  // namespace tropmod
