#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "tropmod/error.hpp"
#include "tropmod/ratlin/quadform.hpp"

using namespace tropmod;

namespace {

IntMatrix imat(std::vector<std::vector<long>> rows) {
  IntMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

QuadForm qf(std::vector<std::vector<long>> rows) { return QuadForm::from_integer(imat(rows)); }

// Leibniz determinant; independent of the elimination code under test.
Rational leibniz(const RatMatrix& m, const std::vector<std::size_t>& idx) {
  std::vector<std::size_t> perm(idx.size());
  std::iota(perm.begin(), perm.end(), 0);
  Rational total = 0;
  do {
    int inversions = 0;
    for (std::size_t a = 0; a < perm.size(); ++a)
      for (std::size_t b = a + 1; b < perm.size(); ++b)
        if (perm[a] > perm[b]) ++inversions;
    Rational term = inversions % 2 ? -1 : 1;
    for (std::size_t a = 0; a < perm.size(); ++a) term *= m(idx[a], idx[perm[a]]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

// Principal-minor oracle: psd iff every principal minor is >= 0, pd iff every
// leading minor is > 0; rank is the size of the largest nonzero principal
// minor (valid for psd matrices).
Classification minors_oracle(const QuadForm& q) {
  const std::size_t n = q.dim();
  bool psd = true;
  std::size_t rank = 0;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) idx.push_back(i);
    const Rational d = leibniz(q.matrix(), idx);
    if (d < 0) psd = false;
    if (d != 0) rank = std::max(rank, idx.size());
  }
  if (!psd) return {0, Definiteness::indefinite};
  return {rank, rank == n ? Definiteness::positive_definite : Definiteness::positive_semidefinite};
}

bool is_row_hnf(const IntMatrix& h) {
  std::size_t last_pivot_col = 0;
  bool seen_zero_row = false;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    std::size_t c = 0;
    while (c < h.cols() && h(i, c) == 0) ++c;
    if (c == h.cols()) {
      seen_zero_row = true;
      continue;
    }
    if (seen_zero_row) return false;
    if (i > 0 && c <= last_pivot_col) return false;
    if (h(i, c) <= 0) return false;
    for (std::size_t k = 0; k < i; ++k)
      if (h(k, c) < 0 || h(k, c) >= h(i, c)) return false;
    last_pivot_col = c;
  }
  return true;
}

}  // namespace

TEST_CASE("rational parsing and printing") {
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK(to_string(parse_rational("-2/1")) == "-2");
  CHECK(to_string(parse_rational("0/7")) == "0");
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("x"), Error);
  CHECK_THROWS_AS(parse_rational("1.5"), Error);
}

TEST_CASE("ldlt_classify examples") {
  auto c = ldlt_classify(QuadForm::identity(2));
  CHECK(c.rank == 2);
  CHECK(c.kind == Definiteness::positive_definite);
  c = ldlt_classify(qf({{1, 0}, {0, 0}}));
  CHECK(c.rank == 1);
  CHECK(c.kind == Definiteness::positive_semidefinite);
  c = ldlt_classify(qf({{1, 2}, {2, 1}}));
  CHECK(c.kind == Definiteness::indefinite);
  CHECK(ldlt_classify(qf({{0, 1}, {1, 0}})).kind == Definiteness::indefinite);
  CHECK(ldlt_classify(qf({{0, 0}, {0, -1}})).kind == Definiteness::indefinite);
}

TEST_CASE("ldlt_classify agrees with the principal-minor oracle") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> entry(-3, 3);
  for (std::size_t n : {2u, 3u}) {
    for (int trial = 0; trial < 400; ++trial) {
      RatMatrix m(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
          Rational v(entry(rng), 1 + (trial % 3));
          v.canonicalize();
          m(i, j) = v;
          m(j, i) = v;
        }
      const QuadForm q(m);
      const auto got = ldlt_classify(q);
      const auto want = minors_oracle(q);
      CHECK(got.kind == want.kind);
      if (want.kind != Definiteness::indefinite) CHECK(got.rank == want.rank);
    }
  }
}

TEST_CASE("kernel_basis examples") {
  auto k = kernel_basis(qf({{1, 0}, {0, 0}}));
  REQUIRE(k.size() == 1);
  CHECK(k[0] == IntVector{0, 1});
  CHECK(kernel_basis(QuadForm::identity(3)).empty());
  k = kernel_basis(qf({{1, 1}, {1, 1}}));
  REQUIRE(k.size() == 1);
  CHECK(k[0] == IntVector{1, -1});
  CHECK_THROWS_AS(kernel_basis(qf({{1, 2}, {2, 1}})), Error);
}

TEST_CASE("every psd rational form passes the rational-closure predicate") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> entry(-2, 2);
  for (int trial = 0; trial < 200; ++trial) {
    // B^T B with a random rational 2x3 B is psd of rank <= 2.
    RatMatrix b(2, 3);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 3; ++j) b(i, j) = make_rational(entry(rng), 1 + trial % 2);
    const QuadForm q(b.transpose() * b);
    CHECK(in_rational_closure(q));
    const auto basis = kernel_basis(q);
    CHECK(basis.size() == 3 - ldlt_classify(q).rank);
    for (const auto& v : basis) CHECK(is_zero(q.matrix() * to_rational(v)));
  }
}

TEST_CASE("split_off_null examples") {
  auto s = split_off_null(qf({{1, 1}, {1, 1}}));
  CHECK(s.h == imat({{1, 0}, {1, -1}}));
  CHECK(determinant(s.h) == -1);
  CHECK(s.definite == qf({{1}}));
  CHECK(act(s.h, qf({{1, 1}, {1, 1}})) == qf({{1, 0}, {0, 0}}));

  s = split_off_null(QuadForm::identity(3));
  CHECK(s.h == IntMatrix::identity(3));
  CHECK(s.definite == QuadForm::identity(3));

  s = split_off_null(QuadForm::zero(2));
  CHECK(s.h == IntMatrix::identity(2));
  CHECK(s.definite.dim() == 0);

  CHECK_THROWS_AS(split_off_null(qf({{1, 2}, {2, 1}})), Error);
}

TEST_CASE("split_off_null produces unimodular block forms") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> entry(-2, 2);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t g = 2 + trial % 3;
    const std::size_t r = trial % g;
    RatMatrix b(r, g);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < g; ++j) b(i, j) = make_rational(entry(rng), 1 + trial % 2);
    const QuadForm q(b.transpose() * b);
    const auto s = split_off_null(q);
    CHECK(abs(determinant(s.h)) == 1);
    const QuadForm moved = act(s.h, q);
    const std::size_t k = s.definite.dim();
    CHECK(k == ldlt_classify(q).rank);
    for (std::size_t i = 0; i < g; ++i)
      for (std::size_t j = 0; j < g; ++j) {
        if (i < k && j < k)
          CHECK(moved(i, j) == s.definite(i, j));
        else
          CHECK(moved(i, j) == 0);
      }
    if (k > 0) CHECK(ldlt_classify(s.definite).kind == Definiteness::positive_definite);
  }
}

TEST_CASE("hnf examples") {
  auto f = hnf(IntMatrix::identity(3));
  CHECK(f.h == IntMatrix::identity(3));
  CHECK(f.u == IntMatrix::identity(3));

  const IntMatrix m = imat({{2, 4}, {1, 3}});
  f = hnf(m);
  // Entries above pivots are reduced into [0, pivot): (1,3) becomes (1,1).
  CHECK(f.h == imat({{1, 1}, {0, 2}}));
  CHECK(f.u * m == f.h);
  CHECK(abs(determinant(f.u)) == 1);

  f = hnf(IntMatrix(2, 3));
  CHECK(f.h == IntMatrix(2, 3));
  CHECK(f.u == IntMatrix::identity(2));
}

TEST_CASE("hnf shape and unimodularity on random matrices") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> entry(-6, 6);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t r = 1 + trial % 4, c = 1 + (trial / 4) % 4;
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = entry(rng);
    const auto f = hnf(m);
    CHECK(f.u * m == f.h);
    CHECK(abs(determinant(f.u)) == 1);
    CHECK(is_row_hnf(f.h));
  }
}

TEST_CASE("smith invariants and saturation") {
  CHECK(smith_invariants(imat({{2, 0}, {0, 3}})) == std::vector<Integer>{1, 6});
  CHECK(smith_invariants(imat({{2, 4}, {1, 3}})) == std::vector<Integer>{1, 2});
  CHECK(smith_invariants(imat({{1, 1, 0}, {0, 2, 2}})) == std::vector<Integer>{1, 2});
  // span{(2,2)} meets Z^2 in Z(1,1).
  CHECK(saturate_rows(imat({{2, 2}})) == imat({{1, 1}}));
  const IntMatrix ker = integer_kernel(imat({{1, 1, 1}}));
  CHECK(ker.rows() == 2);
  CHECK(smith_invariants(ker) == std::vector<Integer>{1, 1});
}

TEST_CASE("symmetric coordinates and congruence action") {
  const IntMatrix h = imat({{1, 1}, {0, 1}});
  const QuadForm q = qf({{2, -1}, {-1, 3}});
  const auto a = congruence_action(h);
  const RatVector y = to_rational(a) * sym_coords(q);
  CHECK(from_sym_coords(2, y) == act(h, q));
  CHECK(rank_one(IntVector{1, -1}) == IntVector{1, -1, 1});
  CHECK(dot(evaluation_functional(IntVector{1, 2}), IntVector{2, -1, 3}) == 2 - 4 + 12);
}
