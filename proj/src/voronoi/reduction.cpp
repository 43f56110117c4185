#include "tropmod/voronoi/reduction.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include "tropmod/error.hpp"
#include "tropmod/ratlin/linalg.hpp"
#include "tropmod/stackyfan/polycone.hpp"
#include "tropmod/voronoi/delone.hpp"
#include "tropmod/voronoi/short_vectors.hpp"

namespace tropmod {

bool in_principal_cone(const QuadForm& q) {
  return q.dim() == 2 && q(0, 1) <= 0 && q(0, 0) + q(0, 1) >= 0 && q(1, 1) + q(0, 1) >= 0;
}

FormReduction reduce_binary(const QuadForm& q) {
  if (q.dim() != 2 || !is_positive_definite(q))
    throw Error("not_definite", "reduce2 needs a positive definite 2x2 form");
  FormReduction r{IntMatrix::identity(2), q};
  auto step = [&](const IntMatrix& s) {
    r.h = s * r.h;
    r.reduced = act(s, r.reduced);
  };
  while (!in_principal_cone(r.reduced)) {
    const QuadForm& f = r.reduced;
    if (f(0, 1) > 0)
      step(IntMatrix::from_rows({{1, 0}, {0, -1}}, 2));
    else if (f(0, 0) + f(0, 1) < 0)
      step(IntMatrix::from_rows({{1, 0}, {1, 1}}, 2));
    else
      step(IntMatrix::from_rows({{1, 1}, {0, 1}}, 2));
  }
  return r;
}

namespace {

// Nearest integer to r, ties towards zero.
Integer nearest(const Rational& r) {
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  const Rational frac = r - Rational(fl);
  if (frac > Rational(1, 2) || (frac == Rational(1, 2) && sgn(r) < 0)) fl += 1;
  return fl;
}

}  // namespace

FormReduction pairwise_reduce(const QuadForm& q) {
  if (!is_positive_definite(q)) throw Error("not_definite", "reduction needs a positive definite form");
  const std::size_t g = q.dim();
  FormReduction r{IntMatrix::identity(g), q};
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < g; ++i)
      for (std::size_t j = 0; j < g; ++j) {
        if (i == j) continue;
        const Integer k = nearest(r.reduced(i, j) / r.reduced(j, j));
        if (k == 0) continue;
        // Row i minus k row j; q_ii drops by 2k q_ij - k^2 q_jj > 0.
        const Rational drop = 2 * Rational(k) * r.reduced(i, j) - Rational(k * k) * r.reduced(j, j);
        if (drop <= 0) continue;
        IntMatrix s = IntMatrix::identity(g);
        s(i, j) = -k;
        r.h = s * r.h;
        r.reduced = act(s, r.reduced);
        changed = true;
      }
  }
  return r;
}

std::optional<IntMatrix> gl_equivalent(const QuadForm& q1, const QuadForm& q2) {
  const std::size_t g = q1.dim();
  if (q2.dim() != g) return std::nullopt;
  if (!is_positive_definite(q1) || !is_positive_definite(q2))
    throw Error("not_definite", "gl-equiv needs positive definite forms");
  if (g == 0) return IntMatrix(0, 0);
  if (determinant(q1.matrix()) != determinant(q2.matrix())) return std::nullopt;
  const MinVecSet m1 = min_vectors(q1), m2 = min_vectors(q2);
  if (m1.mu != m2.mu || m1.vectors.size() != m2.vectors.size()) return std::nullopt;

  std::vector<std::vector<IntVector>> candidates(g);
  for (std::size_t i = 0; i < g; ++i)
    for (const auto& v : short_vectors(q1, q2(i, i)))
      if (q1.evaluate(v) == q2(i, i)) candidates[i].push_back(v);
  std::vector<IntVector> rows(g);
  std::function<bool(std::size_t)> place = [&](std::size_t i) -> bool {
    if (i == g) return abs(determinant(stack_rows(rows, g))) == 1;
    for (const auto& v : candidates[i]) {
      bool fits = true;
      for (std::size_t j = 0; j < i && fits; ++j) fits = q1.bilinear(rows[j], v) == q2(j, i);
      if (!fits) continue;
      rows[i] = v;
      if (place(i + 1)) return true;
    }
    return false;
  };
  if (!place(0)) return std::nullopt;
  return stack_rows(rows, g);
}

IntMatrix random_unimodular(std::size_t g, int max_entry, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  IntMatrix h = IntMatrix::identity(g);
  if (g == 0) return h;
  std::uniform_int_distribution<std::size_t> idx(0, g - 1);
  std::uniform_int_distribution<int> kind(0, 3);
  for (int step = 0; step < 12; ++step) {
    const std::size_t i = idx(rng), j = idx(rng);
    IntMatrix next = h;
    const int k = kind(rng);
    if (k == 0 || i == j) {
      for (std::size_t c = 0; c < g; ++c) next(i, c) = -next(i, c);
    } else if (k == 1) {
      next.swap_rows(i, j);
    } else {
      const int s = k == 2 ? 1 : -1;
      for (std::size_t c = 0; c < g; ++c) next(i, c) += s * next(j, c);
    }
    const bool small = std::all_of(next.data().begin(), next.data().end(),
                                   [&](const Integer& x) { return abs(x) <= max_entry; });
    if (small) h = std::move(next);
  }
  return h;
}

IdealCone face_cone(const IdealCone& c, FaceMask face) {
  std::vector<IntVector> rays;
  for (int r : mask_members(face)) rays.push_back(c.rays()[r]);
  return IdealCone::make(rays, c.ambient_dim());
}

IdealCone intersect(const IdealCone& a, const IdealCone& b) {
  std::vector<IntVector> ineqs = a.facets(), eqs = a.equations();
  ineqs.insert(ineqs.end(), b.facets().begin(), b.facets().end());
  eqs.insert(eqs.end(), b.equations().begin(), b.equations().end());
  return IdealCone::make(extreme_rays(ineqs, eqs, a.ambient_dim()), a.ambient_dim());
}

namespace {

// True when `sub` is spanned by the rays of some face of `c`.
bool is_face_of(const IdealCone& sub, const IdealCone& c) {
  FaceMask m = 0;
  for (std::size_t r = 0; r < c.num_rays(); ++r)
    if (std::find(sub.rays().begin(), sub.rays().end(), c.rays()[r]) != sub.rays().end()) m |= FaceMask{1} << r;
  return c.is_face(m) && same_cone(face_cone(c, m), sub);
}

std::string describe(const IdealCone& c) {
  std::string s = "cone(";
  for (std::size_t r = 0; r < c.num_rays(); ++r) {
    s += r ? " [" : "[";
    for (std::size_t i = 0; i < c.rays()[r].size(); ++i) s += (i ? "," : "") + to_string(c.rays()[r][i]);
    s += "]";
  }
  return s + ")";
}

}  // namespace

AdmissibilityReport check_admissible_axioms(const std::vector<IdealCone>& slice,
                                            const std::vector<IntMatrix>& generators) {
  AdmissibilityReport rep;
  auto listed = [&](const IdealCone& c) {
    return std::any_of(slice.begin(), slice.end(), [&](const IdealCone& s) { return same_cone(s, c); });
  };
  for (const auto& c : slice)
    for (FaceMask f : c.faces()) {
      if (f == 0) continue;
      const IdealCone fc = face_cone(c, f);
      if (!listed(fc)) {
        rep.face_closed = false;
        rep.notes.push_back("missing face " + describe(fc) + " of " + describe(c));
      }
    }
  for (std::size_t i = 0; i < slice.size(); ++i)
    for (std::size_t j = i + 1; j < slice.size(); ++j) {
      const IdealCone meet = intersect(slice[i], slice[j]);
      if (!is_face_of(meet, slice[i]) || !is_face_of(meet, slice[j])) {
        rep.intersections_are_faces = false;
        rep.notes.push_back("intersection of " + describe(slice[i]) + " and " + describe(slice[j]) +
                            " is not a face of both");
      }
    }
  for (std::size_t k = 0; k < generators.size(); ++k)
    for (const auto& c : slice) {
      const IdealCone img = congruence_image(c, generators[k]);
      if (listed(img)) {
        ++rep.images_in_slice;
      } else {
        ++rep.images_leaving;
        rep.notes.push_back("generator " + std::to_string(k) + " moves " + describe(c) + " to " + describe(img));
      }
    }
  return rep;
}

}  // namespace tropmod
