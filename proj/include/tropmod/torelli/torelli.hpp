#pragma once

#include <string>
#include <vector>

#include "tropmod/markings/marking.hpp"
#include "tropmod/ratlin/quadform.hpp"
#include "tropmod/stackyfan/ideal_cone.hpp"

namespace tropmod {

struct TropicalJacobian {
  std::size_t genus = 0;
  QuadForm block_form;  ///< cycle block, then a zero block for the virtual loops
  std::size_t rank = 0;
};

/// Gram matrix of cycle_basis(g) for the inner product sum_e a_e b_e l(e),
/// padded by a zero block of size total weight. Throws Error("unstable"),
/// Error("bad_lengths") (wrong count or a non-positive length).
TropicalJacobian jacobian(const WeightedGraph& g, const RatVector& lengths);

/// Row i: petal i abelianized into base-edge coordinates; virtual-loop steps
/// contribute nothing.
IntMatrix petal_matrix(const Marking& m);

/// The linear map l -> B diag(l) B^T from edge lengths to symmetric matrices:
/// column e is the rank-one form of column e of B, in symmetric coordinates.
struct PeriodMatrixMap {
  IntMatrix b;       ///< g x |E|
  IntMatrix linear;  ///< sym_dim(g) x |E|
  QuadForm evaluate(const RatVector& lengths) const;
  /// The nonzero columns: generators of the image of the closed cell.
  std::vector<IntVector> image_generators() const;
};

PeriodMatrixMap period_on_cell(const Marking& m);

/// B diag(l) B^T for positive lengths. Throws Error("bad_lengths").
QuadForm marked_period(const Marking& m, const RatVector& lengths);

/// Compares the cell's linear map with l_e = 0 on `subset` against the map of
/// the specialized marked cell, column by column through the contraction.
/// Requires `subset` to be acyclic (Error("cyclic_subset")).
bool boundary_consistent(const Marking& m, const EdgeSubset& subset, std::string* witness = nullptr);

enum class Sigma { voronoi, perfect };

struct CompatResult {
  bool ok = false;
  IdealCone witness;                  ///< cone containing the closed image of the cell
  std::vector<IntVector> generators;  ///< image generators, symmetric coordinates
  QuadForm sample;                    ///< image of the all-ones length vector
  std::string counterexample;         ///< a generator outside the witness, if any
};

/// Finds the cone of the chosen decomposition containing the image of the
/// sample point in its relative interior and checks every image generator
/// against it. Sigma::voronoi needs g <= 3, Sigma::perfect needs g = 2
/// (Error("out_of_scope")).
CompatResult compat_check(const Marking& m, Sigma sigma);

struct TorelliClass {
  QuadForm jacobian;
  QuadForm definite;  ///< definite block after split_off_null
  std::string tag;
};

/// Genus-two blocks are tagged by their sorted Selling parameters (a complete
/// invariant of the GL_2(Z)-class); rank one by the single entry; rank three
/// and up by the combinatorial type of the Delone subdivision of the definite
/// block, which is sound but possibly coarser than GL-equivalence.
TorelliClass torelli_class(const WeightedGraph& g, const RatVector& lengths);

/// Canonical representative of a definite binary form: [[a+c, -c], [-c, b+c]]
/// with Selling parameters a <= b <= c.
QuadForm binary_normal_form(const QuadForm& q);

}  // namespace tropmod
