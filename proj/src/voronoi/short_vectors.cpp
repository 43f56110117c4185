#include "tropmod/voronoi/short_vectors.hpp"

#include <algorithm>
#include <set>

#include "tropmod/error.hpp"
#include "tropmod/stackyfan/polycone.hpp"

namespace tropmod {

namespace {

// q(x) = sum_i d(i,i) (x_i + sum_{j>i} d(i,j) x_j)^2.
RatMatrix fincke_pohst_factor(const QuadForm& q) {
  const std::size_t n = q.dim();
  RatMatrix d = q.matrix();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      d(j, i) = d(i, j);
      d(i, j) /= d(i, i);
    }
    for (std::size_t k = i + 1; k < n; ++k)
      for (std::size_t l = k; l < n; ++l) d(k, l) -= d(k, i) * d(i, l);
  }
  return d;
}

Integer floor_of(const Rational& r) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return out;
}

Integer ceil_of(const Rational& r) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return out;
}

void enumerate(const RatMatrix& d, const RatVector& center, int i, const Rational& budget, IntVector& x,
               std::vector<IntVector>& out) {
  if (i < 0) {
    out.push_back(x);
    return;
  }
  const std::size_t n = x.size();
  Rational c = -center[i];
  for (std::size_t j = i + 1; j < n; ++j) c += d(i, j) * (Rational(x[j]) - center[j]);
  const Rational s = budget / d(i, i);
  Integer k;
  mpz_sqrt(k.get_mpz_t(), floor_of(s).get_mpz_t());
  k += 1;
  const Integer lo = ceil_of(-c - Rational(k)), hi = floor_of(-c + Rational(k));
  for (Integer v = lo; v <= hi; ++v) {
    const Rational t = Rational(v) + c;
    const Rational used = d(i, i) * t * t;
    if (used > budget) continue;
    x[i] = v;
    enumerate(d, center, i - 1, budget - used, x, out);
  }
  x[i] = 0;
}

}  // namespace

std::vector<IntVector> lattice_points_in_ellipsoid(const QuadForm& q, const RatVector& center, const Rational& bound) {
  if (!is_positive_definite(q)) throw Error("not_definite", "form is not positive definite");
  if (center.size() != q.dim()) throw Error("dimension_mismatch", "center has the wrong length");
  std::vector<IntVector> out;
  if (bound < 0) return out;
  const RatMatrix d = fincke_pohst_factor(q);
  IntVector x(q.dim());
  enumerate(d, center, static_cast<int>(q.dim()) - 1, bound, x, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<IntVector> short_vectors(const QuadForm& q, const Rational& bound) {
  auto pts = lattice_points_in_ellipsoid(q, RatVector(q.dim()), bound);
  pts.erase(std::remove_if(pts.begin(), pts.end(), [](const IntVector& v) { return is_zero(v); }), pts.end());
  return pts;
}

MinVecSet min_vectors(const QuadForm& q) {
  if (!is_positive_definite(q)) throw Error("not_definite", "form is not positive definite");
  if (q.dim() == 0) throw Error("not_definite", "the zero-dimensional form has no minimum");
  Rational bound = q(0, 0);
  for (std::size_t i = 1; i < q.dim(); ++i) bound = std::min(bound, q(i, i));
  MinVecSet out;
  out.mu = bound;
  const auto candidates = short_vectors(q, bound);
  for (const auto& v : candidates) out.mu = std::min(out.mu, q.evaluate(v));
  for (const auto& v : candidates)
    if (q.evaluate(v) == out.mu) out.vectors.push_back(v);
  return out;
}

IdealCone perfect_cone(const QuadForm& q) {
  std::set<IntVector> gens;
  for (const auto& v : min_vectors(q).vectors) gens.insert(rank_one(sign_normalized(v)));
  return IdealCone::make({gens.begin(), gens.end()}, sym_dim(q.dim()));
}

bool is_perfect(const QuadForm& q) { return perfect_cone(q).dim() == sym_dim(q.dim()); }

bool same_cone(const IdealCone& a, const IdealCone& b) {
  if (a.ambient_dim() != b.ambient_dim()) return false;
  auto ra = a.rays(), rb = b.rays();
  std::sort(ra.begin(), ra.end());
  std::sort(rb.begin(), rb.end());
  return ra == rb;
}

IdealCone cone_hull(const std::vector<IntVector>& generators, std::size_t ambient_dim) {
  std::set<IntVector> gens;
  for (const auto& g : generators)
    if (!is_zero(g)) gens.insert(primitive(g));
  if (gens.empty()) return IdealCone::make({}, ambient_dim);
  const ConeFacets fd = facets_of({gens.begin(), gens.end()}, ambient_dim);
  return IdealCone::make(extreme_rays(fd.facets, fd.equations, ambient_dim), ambient_dim);
}

}  // namespace tropmod
