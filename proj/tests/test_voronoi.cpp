#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "oracles.hpp"
#include "tropmod/error.hpp"
#include "tropmod/ratlin/linalg.hpp"
#include "tropmod/voronoi/delone.hpp"
#include "tropmod/voronoi/reduction.hpp"
#include "tropmod/voronoi/short_vectors.hpp"

using namespace tropmod;
using namespace oracle;

namespace {

QuadForm form(std::initializer_list<std::initializer_list<const char*>> rows) {
  std::vector<RatVector> r;
  for (const auto& row : rows) {
    RatVector v;
    for (const char* s : row) v.push_back(parse_rational(s));
    r.push_back(v);
  }
  return QuadForm(RatMatrix::from_rows(r, r.size()));
}

const IntVector R12{1, -1, 1}, R13{1, 0, 0}, R23{0, 0, 1};

IdealCone g2_cone(const std::vector<IntVector>& rays) { return IdealCone::make(rays, 3); }

Rational simplex_volume(const std::vector<IntVector>& v) {
  const std::size_t g = v[0].size();
  IntMatrix m(g, g);
  for (std::size_t k = 1; k <= g; ++k)
    for (std::size_t i = 0; i < g; ++i) m(k - 1, i) = v[k][i] - v[0][i];
  Integer fact = 1;
  for (std::size_t i = 2; i <= g; ++i) fact *= Integer(static_cast<long>(i));
  return Rational(abs(determinant(m))) / Rational(fact);
}

QuadForm random_definite(std::size_t g, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> e(-2, 2), den(1, 3);
  IntMatrix b(g, g);
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j) b(i, j) = e(rng);
  const IntMatrix p = b * b.transpose();
  RatMatrix m(g, g);
  const Rational scale(1, den(rng));
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j) m(i, j) = (Rational(p(i, j)) + (i == j ? Rational(1, 2) : Rational(0))) * scale;
  return QuadForm(m);
}

}  // namespace

TEST_CASE("minimal vectors") {
  const MinVecSet id = min_vectors(QuadForm::identity(2));
  CHECK(id.mu == 1);
  CHECK(id.vectors == std::vector<IntVector>{{-1, 0}, {0, -1}, {0, 1}, {1, 0}});
  const MinVecSet a2 = min_vectors(form({{"1", "1/2"}, {"1/2", "1"}}));
  CHECK(a2.mu == 1);
  CHECK(a2.vectors == std::vector<IntVector>{{-1, 0}, {-1, 1}, {0, -1}, {0, 1}, {1, -1}, {1, 0}});
  const MinVecSet b = min_vectors(form({{"2", "1"}, {"1", "2"}}));
  CHECK(b.mu == 2);
  CHECK(b.vectors == std::vector<IntVector>{{-1, 0}, {-1, 1}, {0, -1}, {0, 1}, {1, -1}, {1, 0}});
  CHECK_THROWS_AS(min_vectors(form({{"1", "0"}, {"0", "0"}})), Error);
  CHECK_THROWS_AS(min_vectors(form({{"1", "2"}, {"2", "1"}})), Error);

  std::mt19937_64 rng(1);
  for (std::size_t g : {2u, 3u})
    for (int trial = 0; trial < 25; ++trial) {
      const QuadForm q = random_definite(g, rng);
      Rational mu;
      const auto expected = oracle_min_vectors(q, &mu);
      const MinVecSet got = min_vectors(q);
      CHECK(got.mu == mu);
      CHECK(got.vectors == expected);
    }
}

TEST_CASE("ellipsoid enumeration agrees with a box search") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const QuadForm q = random_definite(3, rng);
    const Rational bound = q(0, 0) + q(1, 1);
    std::vector<IntVector> expected;
    for (const auto& x : box(3, coordinate_bounds(q, bound)))
      if (!is_zero(x) && q.evaluate(x) <= bound) expected.push_back(x);
    std::sort(expected.begin(), expected.end());
    CHECK(short_vectors(q, bound) == expected);
  }
}

TEST_CASE("genus-two perfect cones") {
  const IdealCone principal = perfect_cone(form({{"1", "1/2"}, {"1/2", "1"}}));
  CHECK(same_cone(principal, g2_cone({R12, R13, R23})));
  CHECK(is_perfect(form({{"1", "1/2"}, {"1/2", "1"}})));
  for (const char* lambda : {"0", "1/4", "-1/4"}) {
    const QuadForm q = form({{"1", lambda}, {lambda, "1"}});
    CHECK(same_cone(perfect_cone(q), g2_cone({R13, R23})));
    CHECK_FALSE(is_perfect(q));
  }
  CHECK(same_cone(perfect_cone(form({{"1", "0"}, {"0", "5"}})), g2_cone({R13})));
}

TEST_CASE("Delone subdivisions") {
  const DeloneSubdivision sq = delone(QuadForm::identity(2));
  REQUIRE(sq.cells.size() == 1);
  CHECK(sq.cells[0].vertices == std::vector<IntVector>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});

  const DeloneSubdivision tri = delone(form({{"2", "-1"}, {"-1", "2"}}));
  REQUIRE(tri.cells.size() == 2);
  CHECK(tri.cells[0].vertices == std::vector<IntVector>{{0, 0}, {0, 1}, {1, 1}});
  CHECK(tri.cells[1].vertices == std::vector<IntVector>{{0, 0}, {1, 0}, {1, 1}});

  const DeloneSubdivision cube = delone(QuadForm::identity(3));
  REQUIRE(cube.cells.size() == 1);
  CHECK(cube.cells[0].vertices.size() == 8);

  CHECK_THROWS_WITH_AS(delone(form({{"1", "0"}, {"0", "0"}})), doctest::Contains("split_off_null"), Error);

  // Every cell has an empty ellipsoid; simplicial subdivisions tile with
  // total volume one per translation class.
  std::mt19937_64 rng(3);
  for (std::size_t g : {2u, 3u})
    for (int trial = 0; trial < 12; ++trial) {
      const QuadForm q = random_definite(g, rng);
      const DeloneSubdivision d = delone(q);
      bool simplicial = true;
      Rational volume = 0;
      for (const auto& c : d.cells) {
        CHECK(oracle_empty(q, c));
        if (c.vertices.size() != g + 1) simplicial = false;
        else volume += simplex_volume(c.vertices);
      }
      if (simplicial) CHECK(volume == 1);
    }
}

TEST_CASE("genus-two secondary cones") {
  const DeloneSubdivision d1 = delone(form({{"2", "-1"}, {"-1", "2"}}));
  const SecondaryCone s1 = secondary_cone(d1);
  CHECK(same_cone(s1.cone, g2_cone({R12, R13, R23})));
  CHECK(s1.cone.locate(sym_coords(d1.sample)).where == Location::interior);

  const DeloneSubdivision d2 = delone(QuadForm::identity(2));
  const SecondaryCone s2 = secondary_cone(d2);
  CHECK(same_cone(s2.cone, g2_cone({R13, R23})));
  CHECK(s2.cone.locate(sym_coords(d2.sample)).where == Location::interior);

  CHECK(same_cone(secondary_cone_of_form(form({{"1", "0"}, {"0", "0"}})), g2_cone({R13})));
  CHECK(same_cone(secondary_cone_of_form(form({{"3", "0"}, {"0", "0"}})), g2_cone({R13})));

  // The square cone is a face of the triangle cone and the triangles refine
  // the squares.
  const IdealCone meet = intersect(s1.cone, s2.cone);
  CHECK(same_cone(meet, s2.cone));
  FaceMask m = 0;
  for (std::size_t r = 0; r < s1.cone.num_rays(); ++r)
    if (s1.cone.rays()[r] != R12) m |= FaceMask{1} << r;
  CHECK(s1.cone.is_face(m));
  for (const auto& c : d1.cells)
    for (const auto& v : c.vertices) CHECK(std::find(d2.cells[0].vertices.begin(), d2.cells[0].vertices.end(), v) != d2.cells[0].vertices.end());
}

TEST_CASE("interiority of sample forms") {
  std::mt19937_64 rng(4);
  for (std::size_t g : {2u, 3u})
    for (int trial = 0; trial < 10; ++trial) {
      const QuadForm q = random_definite(g, rng);
      const SecondaryCone s = secondary_cone(delone(q));
      CHECK(s.cone.locate(sym_coords(q)).where == Location::interior);
    }
}

TEST_CASE("GL equivariance of minimal vectors and secondary cones") {
  std::mt19937_64 rng(5);
  int checked = 0;
  for (std::size_t g : {2u, 3u})
    for (int trial = 0; trial < 25; ++trial) {
      const QuadForm q = random_definite(g, rng);
      const IntMatrix h = random_unimodular(g, 2, rng());
      const QuadForm hq = act(h, q);
      // x in M(h q h^T) iff h^T x in M(q).
      std::set<IntVector> image;
      for (const auto& x : min_vectors(hq).vectors) image.insert(h.transpose() * x);
      const auto base = min_vectors(q).vectors;
      CHECK(image == std::set<IntVector>(base.begin(), base.end()));
      CHECK(min_vectors(hq).mu == min_vectors(q).mu);
      // Rank-one forms of minimal vectors move contragrediently.
      const IntMatrix hinv_t = inverse_unimodular(h).transpose();
      CHECK(same_cone(perfect_cone(hq), congruence_image(perfect_cone(q), hinv_t)));
      const DeloneSubdivision d = delone(q), dh = delone(hq);
      CHECK(transform_cells(d.cells, h) == dh.cells);
      CHECK(same_cone(secondary_cone(dh).cone, congruence_image(secondary_cone(d).cone, h)));
      ++checked;
    }
  CHECK(checked == 50);
}

TEST_CASE("pairwise reduction") {
  std::mt19937_64 rng(8);
  for (std::size_t g : {2u, 3u})
    for (int trial = 0; trial < 20; ++trial) {
      const QuadForm q = act(random_unimodular(g, 2, rng()), random_definite(g, rng));
      const FormReduction r = pairwise_reduce(q);
      CHECK(abs(determinant(r.h)) == 1);
      CHECK(act(r.h, q) == r.reduced);
      for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < g; ++j)
          if (i != j) CHECK(2 * abs(r.reduced(i, j)) <= r.reduced(j, j));
    }
}

TEST_CASE("binary reduction") {
  const FormReduction r = reduce_binary(form({{"2", "1"}, {"1", "2"}}));
  CHECK(r.h == IntMatrix::from_rows({{1, 0}, {0, -1}}, 2));
  CHECK(r.reduced == form({{"2", "-1"}, {"-1", "2"}}));
  const FormReduction id = reduce_binary(QuadForm::identity(2));
  CHECK(id.h == IntMatrix::identity(2));
  CHECK(id.reduced == QuadForm::identity(2));
  const QuadForm q = form({{"5", "3"}, {"3", "2"}});
  const FormReduction p = reduce_binary(q);
  CHECK(act(p.h, q) == p.reduced);
  CHECK(in_principal_cone(p.reduced));
  CHECK(p.h == IntMatrix::from_rows({{1, -1}, {0, -1}}, 2));
  CHECK(p.reduced == form({{"1", "-1"}, {"-1", "2"}}));
  CHECK_THROWS_AS(reduce_binary(form({{"1", "1"}, {"1", "1"}})), Error);

  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 40; ++trial) {
    const QuadForm f = random_definite(2, rng);
    const FormReduction b = reduce_binary(f);
    CHECK(abs(determinant(b.h)) == 1);
    CHECK(act(b.h, f) == b.reduced);
    CHECK(in_principal_cone(b.reduced));
  }
}

TEST_CASE("GL equivalence") {
  const auto w = gl_equivalent(form({{"2", "1"}, {"1", "2"}}), form({{"2", "-1"}, {"-1", "2"}}));
  REQUIRE(w);
  CHECK(act(*w, form({{"2", "1"}, {"1", "2"}})) == form({{"2", "-1"}, {"-1", "2"}}));
  CHECK_FALSE(gl_equivalent(QuadForm::identity(2), form({{"1", "0"}, {"0", "2"}})));
  CHECK(gl_equivalent(QuadForm::identity(2), form({{"2", "1"}, {"1", "1"}})).has_value());

  std::mt19937_64 rng(7);
  for (std::size_t g : {2u, 3u})
    for (int trial = 0; trial < 10; ++trial) {
      const QuadForm q = random_definite(g, rng);
      const IntMatrix h = random_unimodular(g, 2, rng());
      const auto found = gl_equivalent(q, act(h, q));
      REQUIRE(found);
      CHECK(act(*found, q) == act(h, q));
    }
}

TEST_CASE("admissibility checks on a genus-two slice") {
  const IdealCone top = g2_cone({R12, R13, R23});
  std::vector<IdealCone> slice;
  for (FaceMask f : top.faces())
    if (f != 0) slice.push_back(face_cone(top, f));
  const IntMatrix s = IntMatrix::from_rows({{0, -1}, {1, 0}}, 2), t = IntMatrix::from_rows({{1, 1}, {0, 1}}, 2);
  const AdmissibilityReport rep = check_admissible_axioms(slice, {s, t});
  CHECK(rep.face_closed);
  CHECK(rep.intersections_are_faces);
  CHECK(rep.images_in_slice + rep.images_leaving == 2 * slice.size());
  CHECK(rep.images_in_slice > 0);

  std::vector<IdealCone> missing{top, g2_cone({R12, R13})};
  CHECK_FALSE(check_admissible_axioms(missing, {}).face_closed);

  // Two maximal cones meeting along the R13 ray.
  const IdealCone other = congruence_image(top, IntMatrix::from_rows({{1, 2}, {0, 1}}, 2));
  CHECK(same_cone(intersect(top, other), g2_cone({R13})));
  CHECK(check_admissible_axioms({top, other}, {}).intersections_are_faces);
  const IdealCone overlapping = g2_cone({R13, IntVector{2, -1, 2}, R23});
  CHECK_FALSE(check_admissible_axioms({top, overlapping}, {}).intersections_are_faces);
}
