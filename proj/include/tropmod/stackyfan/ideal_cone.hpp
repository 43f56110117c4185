#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "tropmod/ratlin/matrix.hpp"

namespace tropmod {

/// A face of a cone, identified by the set of its rays (bit i = ray i).
using FaceMask = std::uint64_t;

enum class Location { interior, retained_face, removed, outside };

struct Membership {
  Location where = Location::outside;
  FaceMask face = 0;  ///< smallest face containing the point (valid unless outside)
};

/// A pointed rational polyhedral cone spanned by primitive extreme rays, with
/// a downward-closed set of faces removed.
class IdealCone {
 public:
  IdealCone() = default;

  /// Normalizes generators to primitive vectors and computes the face
  /// lattice. Every generator must be extreme and the generators pairwise
  /// distinct. `removed` lists faces by ray mask; all their subfaces are
  /// removed as well. Throws Error("bad_cone").
  static IdealCone make(const std::vector<IntVector>& generators, std::size_t ambient_dim,
                        const std::vector<FaceMask>& removed = {});

  std::size_t ambient_dim() const noexcept { return dim_; }
  std::size_t dim() const noexcept { return cone_dim_; }
  std::size_t num_rays() const noexcept { return rays_.size(); }
  const std::vector<IntVector>& rays() const noexcept { return rays_; }
  const std::vector<IntVector>& facets() const noexcept { return facets_; }
  const std::vector<IntVector>& equations() const noexcept { return equations_; }
  FaceMask full_mask() const noexcept;

  /// All faces (including the origin and the cone itself), sorted.
  const std::vector<FaceMask>& faces() const noexcept { return faces_; }
  bool is_face(FaceMask m) const;
  bool is_removed(FaceMask m) const { return removed_.count(m) != 0; }
  const std::set<FaceMask>& removed_faces() const noexcept { return removed_; }
  std::vector<FaceMask> retained_faces() const;
  std::size_t face_dim(FaceMask m) const;
  /// Smallest face containing the given rays.
  FaceMask closure(FaceMask m) const;

  /// Sum of the rays of a face: a point of its relative interior.
  IntVector face_point(FaceMask m) const;

  Membership locate(const RatVector& x) const;

  bool is_simplicial() const { return rays_.size() == cone_dim_; }

  friend bool operator==(const IdealCone& a, const IdealCone& b) {
    return a.dim_ == b.dim_ && a.rays_ == b.rays_ && a.removed_ == b.removed_;
  }

 private:
  std::size_t dim_ = 0;
  std::size_t cone_dim_ = 0;
  std::vector<IntVector> rays_;
  std::vector<IntVector> facets_;
  std::vector<IntVector> equations_;
  std::vector<RatVector> rat_facets_;
  std::vector<RatVector> rat_equations_;
  std::vector<FaceMask> facet_masks_;
  std::vector<FaceMask> faces_;
  std::set<FaceMask> removed_;
};

/// The closed orthant R^n_{>=0} with the standard basis as rays.
IdealCone orthant(std::size_t n, const std::vector<FaceMask>& removed = {});

inline IdealCone make_cone(const std::vector<IntVector>& generators, std::size_t ambient_dim,
                           const std::vector<FaceMask>& removed = {}) {
  return IdealCone::make(generators, ambient_dim, removed);
}
inline Membership membership(const IdealCone& c, const RatVector& x) { return c.locate(x); }

std::vector<int> mask_members(FaceMask m);
FaceMask mask_of(const std::vector<int>& members);

}  // namespace tropmod
