#include "tropmod/stackyfan/ideal_cone.hpp"

#include <algorithm>

#include "tropmod/error.hpp"
#include "tropmod/ratlin/linalg.hpp"
#include "tropmod/stackyfan/polycone.hpp"

namespace tropmod {

std::vector<int> mask_members(FaceMask m) {
  std::vector<int> out;
  for (int i = 0; i < 64; ++i)
    if (m & (FaceMask{1} << i)) out.push_back(i);
  return out;
}

FaceMask mask_of(const std::vector<int>& members) {
  FaceMask m = 0;
  for (int i : members) m |= FaceMask{1} << i;
  return m;
}

IdealCone IdealCone::make(const std::vector<IntVector>& generators, std::size_t ambient_dim,
                          const std::vector<FaceMask>& removed) {
  if (generators.size() > 63) throw Error("bad_cone", "too many generators");
  IdealCone c;
  c.dim_ = ambient_dim;
  for (const auto& g : generators) {
    if (g.size() != ambient_dim) throw Error("bad_cone", "generator has the wrong length");
    if (is_zero(g)) throw Error("bad_cone", "zero generator");
    IntVector p = primitive(g);
    if (std::find(c.rays_.begin(), c.rays_.end(), p) != c.rays_.end())
      throw Error("bad_cone", "repeated generator");
    c.rays_.push_back(std::move(p));
  }
  c.cone_dim_ = c.rays_.empty() ? 0 : rank(stack_rows(c.rays_, ambient_dim));
  const ConeFacets fd = facets_of(c.rays_, ambient_dim);
  c.facets_ = fd.facets;
  c.equations_ = fd.equations;
  for (const auto& a : c.facets_) c.rat_facets_.push_back(to_rational(a));
  for (const auto& e : c.equations_) c.rat_equations_.push_back(to_rational(e));
  for (const auto& a : c.facets_) {
    FaceMask m = 0;
    for (std::size_t r = 0; r < c.rays_.size(); ++r)
      if (sgn(dot(a, c.rays_[r])) == 0) m |= FaceMask{1} << r;
    c.facet_masks_.push_back(m);
  }
  // Every generator must be extreme: some set of facets cuts out exactly it.
  for (std::size_t r = 0; r < c.rays_.size(); ++r)
    if (c.closure(FaceMask{1} << r) != (FaceMask{1} << r)) throw Error("bad_cone", "generator is not extreme");

  std::set<FaceMask> faces{c.full_mask()};
  std::vector<FaceMask> frontier{c.full_mask()};
  while (!frontier.empty()) {
    const FaceMask f = frontier.back();
    frontier.pop_back();
    for (FaceMask m : c.facet_masks_)
      if (faces.insert(f & m).second) frontier.push_back(f & m);
  }
  c.faces_.assign(faces.begin(), faces.end());

  for (FaceMask r : removed) {
    if (!c.is_face(r)) throw Error("bad_cone", "removed set is not a face");
    if (r == c.full_mask()) throw Error("bad_cone", "cannot remove the whole cone");
    for (FaceMask f : c.faces_)
      if ((f & r) == f) c.removed_.insert(f);
  }
  return c;
}

FaceMask IdealCone::full_mask() const noexcept {
  return rays_.empty() ? 0 : (rays_.size() == 64 ? ~FaceMask{0} : (FaceMask{1} << rays_.size()) - 1);
}

bool IdealCone::is_face(FaceMask m) const { return std::binary_search(faces_.begin(), faces_.end(), m); }

std::vector<FaceMask> IdealCone::retained_faces() const {
  std::vector<FaceMask> out;
  for (FaceMask f : faces_)
    if (!is_removed(f)) out.push_back(f);
  return out;
}

std::size_t IdealCone::face_dim(FaceMask m) const {
  std::vector<IntVector> rows;
  for (int i : mask_members(m)) rows.push_back(rays_[i]);
  return rows.empty() ? 0 : rank(stack_rows(rows, dim_));
}

FaceMask IdealCone::closure(FaceMask m) const {
  FaceMask out = full_mask();
  for (FaceMask f : facet_masks_)
    if ((m & f) == m) out &= f;
  return out;
}

IntVector IdealCone::face_point(FaceMask m) const {
  IntVector x(dim_);
  for (int i : mask_members(m))
    for (std::size_t j = 0; j < dim_; ++j) x[j] += rays_[i][j];
  return x;
}

Membership IdealCone::locate(const RatVector& x) const {
  if (x.size() != dim_) throw Error("dimension_mismatch", "point has the wrong length");
  for (const auto& e : rat_equations_)
    if (dot(e, x) != 0) return {};
  FaceMask face = full_mask();
  for (std::size_t i = 0; i < facets_.size(); ++i) {
    const int s = sgn(dot(rat_facets_[i], x));
    if (s < 0) return {};
    if (s == 0) face &= facet_masks_[i];
  }
  Membership m;
  m.face = face;
  if (face == full_mask())
    m.where = Location::interior;
  else
    m.where = is_removed(face) ? Location::removed : Location::retained_face;
  return m;
}

IdealCone orthant(std::size_t n, const std::vector<FaceMask>& removed) {
  std::vector<IntVector> rays;
  for (std::size_t i = 0; i < n; ++i) {
    IntVector e(n);
    e[i] = 1;
    rays.push_back(e);
  }
  return IdealCone::make(rays, n, removed);
}

}  // namespace tropmod
