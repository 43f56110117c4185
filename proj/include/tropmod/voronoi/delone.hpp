#pragma once

#include <vector>

#include "tropmod/ratlin/quadform.hpp"
#include "tropmod/stackyfan/ideal_cone.hpp"

namespace tropmod {

/// A Delone polytope given by its lattice vertices (sorted, the
/// lexicographically least one translated to the origin).
struct DeloneCell {
  std::vector<IntVector> vertices;
  friend bool operator==(const DeloneCell&, const DeloneCell&) = default;
  friend auto operator<=>(const DeloneCell&, const DeloneCell&) = default;
};

/// Cells `a` and `b` + `shift` share a facet.
struct DeloneAdjacency {
  int a = 0;
  int b = 0;
  IntVector shift;
  std::vector<IntVector> facet;  ///< shared vertices, in the frame of cell a
};

struct DeloneSubdivision {
  QuadForm sample;                  ///< the form it was computed from
  std::vector<DeloneCell> cells;    ///< one per translation class, sorted
  std::vector<DeloneAdjacency> adjacency;
};

/// Delone subdivision of a positive definite form: the cells through the
/// origin are read off the vertices of the Voronoi polytope, computed by
/// double description from lattice points in a box. Each cell is certified
/// by enumerating its empty circumscribed ellipsoid exactly; the box grows
/// until every certificate holds. Throws Error("degenerate") for
/// semidefinite input (split off the null block first) and
/// Error("not_definite") for indefinite input.
DeloneSubdivision delone(const QuadForm& q);

struct SecondaryCone {
  IdealCone cone;                      ///< in symmetric coordinates
  std::vector<IntVector> equalities;   ///< flatness of the cells
  std::vector<IntVector> inequalities; ///< regulators, positive on the sample
};

/// Closure of the set of forms with Delone subdivision d.
SecondaryCone secondary_cone(const DeloneSubdivision& d);

/// Secondary cone of a semidefinite form: the cone of its definite block,
/// carried back into g x g symmetric coordinates through split_off_null.
IdealCone secondary_cone_of_form(const QuadForm& q);

/// Sends each cell through x -> x h^{-1}, so that the result is the Delone
/// subdivision of h q h^T when d is that of q.
std::vector<DeloneCell> transform_cells(const std::vector<DeloneCell>& cells, const IntMatrix& h);

/// Cone image under q -> h q h^T.
IdealCone congruence_image(const IdealCone& c, const IntMatrix& h);

}  // namespace tropmod
