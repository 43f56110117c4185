#include "tropmod/ratlin/linalg.hpp"

#include <algorithm>
#include <utility>

#include "tropmod/error.hpp"

namespace tropmod {

RatMatrix rref(RatMatrix m, std::vector<std::size_t>* pivots) {
  if (pivots) pivots->clear();
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(r, p);
    const Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    if (pivots) pivots->push_back(c);
    ++r;
  }
  return m;
}

std::size_t rank(const RatMatrix& m) {
  std::vector<std::size_t> pivots;
  rref(m, &pivots);
  return pivots.size();
}

std::size_t rank(const IntMatrix& m) { return rank(to_rational(m)); }

std::vector<RatVector> nullspace(const RatMatrix& m) {
  std::vector<std::size_t> pivots;
  const RatMatrix r = rref(m, &pivots);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<RatVector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    RatVector v(m.cols());
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

Rational determinant(const RatMatrix& m0) {
  if (m0.rows() != m0.cols()) throw Error("dimension", "determinant of a non-square matrix");
  RatMatrix m = m0;
  const std::size_t n = m.rows();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      m.swap_rows(p, c);
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      const Rational f = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

Integer determinant(const IntMatrix& m) { return determinant(to_rational(m)).get_num(); }

std::optional<RatMatrix> inverse(const RatMatrix& m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) return std::nullopt;
  if (n == 0) return RatMatrix(0, 0);
  RatMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  std::vector<std::size_t> pivots;
  const RatMatrix r = rref(aug, &pivots);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = r(i, n + j);
  return inv;
}

IntMatrix to_integer(const RatMatrix& m) {
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).get_den() != 1) throw Error("not_integral", "matrix entry is not an integer");
      out(i, j) = m(i, j).get_num();
    }
  return out;
}

IntMatrix inverse_unimodular(const IntMatrix& m) {
  const auto inv = inverse(to_rational(m));
  if (!inv || abs(determinant(m)) != 1) throw Error("not_unimodular", "matrix is not unimodular");
  return to_integer(*inv);
}

std::optional<RatVector> solve(const RatMatrix& a, const RatVector& b) {
  RatMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  std::vector<std::size_t> pivots;
  const RatMatrix r = rref(aug, &pivots);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  RatVector x(a.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = r(i, a.cols());
  return x;
}

namespace {

// Floor division for big integers (mpz_fdiv_q).
Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

void add_row_multiple(IntMatrix& m, std::size_t target, std::size_t source, const Integer& f) {
  if (f == 0) return;
  for (std::size_t j = 0; j < m.cols(); ++j) m(target, j) += f * m(source, j);
}

void negate_row(IntMatrix& m, std::size_t i) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = -m(i, j);
}

}  // namespace

HermiteForm hnf(const IntMatrix& m) {
  IntMatrix h = m;
  IntMatrix u = IntMatrix::identity(m.rows());
  std::size_t r = 0;
  for (std::size_t c = 0; c < h.cols() && r < h.rows(); ++c) {
    // Euclid on column c among rows r.. until a single nonzero entry remains.
    while (true) {
      std::size_t best = h.rows();
      for (std::size_t i = r; i < h.rows(); ++i) {
        if (h(i, c) == 0) continue;
        if (best == h.rows() || abs(h(i, c)) < abs(h(best, c))) best = i;
      }
      if (best == h.rows()) break;
      h.swap_rows(r, best);
      u.swap_rows(r, best);
      bool done = true;
      for (std::size_t i = r + 1; i < h.rows(); ++i) {
        if (h(i, c) == 0) continue;
        const Integer q = floor_div(h(i, c), h(r, c));
        add_row_multiple(h, i, r, -q);
        add_row_multiple(u, i, r, -q);
        if (h(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (h(r, c) == 0) continue;
    if (h(r, c) < 0) {
      negate_row(h, r);
      negate_row(u, r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      const Integer q = floor_div(h(i, c), h(r, c));
      add_row_multiple(h, i, r, -q);
      add_row_multiple(u, i, r, -q);
    }
    ++r;
  }
  return {std::move(h), std::move(u)};
}

std::vector<Integer> smith_invariants(const IntMatrix& m) {
  // Alternate row and column Hermite reductions until diagonal.
  IntMatrix a = m;
  for (int guard = 0; guard < 1000; ++guard) {
    a = hnf(a).h;
    a = hnf(a.transpose()).h.transpose();
    bool diagonal = true;
    for (std::size_t i = 0; i < a.rows() && diagonal; ++i)
      for (std::size_t j = 0; j < a.cols(); ++j)
        if (i != j && a(i, j) != 0) {
          diagonal = false;
          break;
        }
    if (diagonal) break;
  }
  std::vector<Integer> d;
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i)
    if (a(i, i) != 0) d.push_back(abs(a(i, i)));
  // Enforce divisibility: (a, b) -> (gcd, lcm) pairwise.
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      const Integer g = gcd(d[i], d[j]);
      const Integer l = d[i] / g * d[j];
      d[i] = g;
      d[j] = l;
    }
  return d;
}

IntMatrix integer_kernel(const IntMatrix& m) {
  const HermiteForm f = hnf(m.transpose());
  std::vector<IntVector> rows;
  for (std::size_t i = 0; i < f.h.rows(); ++i) {
    bool zero = true;
    for (std::size_t j = 0; j < f.h.cols(); ++j)
      if (f.h(i, j) != 0) {
        zero = false;
        break;
      }
    if (zero) rows.push_back(f.u.row_vector(i));
  }
  if (rows.empty()) return IntMatrix(0, m.cols());
  return hnf(stack_rows(rows, m.cols())).h;
}

IntMatrix saturate_rows(const IntMatrix& m) {
  const std::size_t n = m.cols();
  const auto perp = nullspace(to_rational(m));
  if (perp.empty()) {
    if (rank(m) == 0) return IntMatrix(0, n);
    return IntMatrix::identity(n);
  }
  std::vector<IntVector> rows;
  for (const auto& v : perp) rows.push_back(primitive(v));
  return integer_kernel(stack_rows(rows, n));
}

IntMatrix stack_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  return m;
}

bool is_unimodular(const IntMatrix& m) {
  return m.rows() == m.cols() && abs(determinant(m)) == 1;
}

IntMatrix clear_denominators(const RatMatrix& m) {
  Integer lcm = 1;
  for (const auto& x : m.data()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den_mpz_t());
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      out(i, j) = m(i, j).get_num() * (lcm / m(i, j).get_den());
  return out;
}

}  // namespace tropmod
