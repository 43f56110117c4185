#include "tropmod/ratlin/quadform.hpp"

#include "tropmod/error.hpp"

namespace tropmod {

QuadForm::QuadForm(RatMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw Error("not_symmetric", "quadratic form matrix is not square");
  for (std::size_t i = 0; i < m_.rows(); ++i)
    for (std::size_t j = i + 1; j < m_.cols(); ++j)
      if (m_(i, j) != m_(j, i)) throw Error("not_symmetric", "quadratic form matrix is not symmetric");
}

QuadForm QuadForm::from_integer(const IntMatrix& m) { return QuadForm(to_rational(m)); }

Rational QuadForm::evaluate(const IntVector& x) const { return bilinear(x, x); }

Rational QuadForm::bilinear(const IntVector& x, const IntVector& y) const {
  Rational s = 0;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < dim(); ++j)
      if (y[j] != 0) s += m_(i, j) * x[i] * y[j];
  }
  return s;
}

std::string to_string(Definiteness d) {
  switch (d) {
    case Definiteness::positive_definite: return "positive_definite";
    case Definiteness::positive_semidefinite: return "positive_semidefinite";
    case Definiteness::indefinite: return "indefinite";
  }
  return "?";
}

Classification ldlt_classify(const QuadForm& q) {
  RatMatrix a = q.matrix();
  const std::size_t n = a.rows();
  std::vector<bool> done(n, false);
  std::size_t rank = 0;
  while (true) {
    std::size_t p = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || a(i, i) == 0) continue;
      if (a(i, i) < 0) return {rank, Definiteness::indefinite};
      if (p == n) p = i;
    }
    if (p == n) {
      // Remaining diagonal is zero; any off-diagonal residue is indefinite.
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (!done[i] && !done[j] && a(i, j) != 0) return {rank, Definiteness::indefinite};
      break;
    }
    done[p] = true;
    ++rank;
    const Rational pivot = a(p, p);
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || a(i, p) == 0) continue;
      const Rational f = a(i, p) / pivot;
      for (std::size_t j = 0; j < n; ++j)
        if (!done[j]) a(i, j) -= f * a(p, j);
    }
  }
  return {rank, rank == n ? Definiteness::positive_definite : Definiteness::positive_semidefinite};
}

bool is_positive_semidefinite(const QuadForm& q) {
  return ldlt_classify(q).kind != Definiteness::indefinite;
}

bool is_positive_definite(const QuadForm& q) {
  return ldlt_classify(q).kind == Definiteness::positive_definite;
}

std::vector<IntVector> kernel_basis(const QuadForm& q) {
  if (!is_positive_semidefinite(q)) throw Error("indefinite", "form is indefinite");
  std::vector<IntVector> out;
  for (const auto& v : nullspace(q.matrix())) out.push_back(sign_normalized(primitive(v)));
  return out;
}

NullSplit split_off_null(const QuadForm& q) {
  const Classification c = ldlt_classify(q);
  if (c.kind == Definiteness::indefinite) throw Error("indefinite", "form is indefinite");
  const std::size_t g = q.dim();
  const HermiteForm f = hnf(clear_denominators(q.matrix()));
  // Zero rows of the Hermite form sit at the bottom; the matching rows of u
  // span the integral kernel and the remaining rows complete them.
  const std::size_t k = g - c.rank;
  IntMatrix h = f.u;
  if (k > 0) {
    IntMatrix kernel(k, g);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < g; ++j) kernel(i, j) = h(c.rank + i, j);
    kernel = hnf(kernel).h;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < g; ++j) h(c.rank + i, j) = kernel(i, j);
  }
  const QuadForm moved = act(h, q);
  RatMatrix block(c.rank, c.rank);
  for (std::size_t i = 0; i < c.rank; ++i)
    for (std::size_t j = 0; j < c.rank; ++j) block(i, j) = moved(i, j);
  return {std::move(h), QuadForm(std::move(block))};
}

QuadForm act(const IntMatrix& h, const QuadForm& q) {
  const RatMatrix hr = to_rational(h);
  return QuadForm(hr * q.matrix() * hr.transpose());
}

std::size_t sym_dim(std::size_t g) { return g * (g + 1) / 2; }

RatVector sym_coords(const QuadForm& q) {
  RatVector y;
  for (std::size_t i = 0; i < q.dim(); ++i)
    for (std::size_t j = i; j < q.dim(); ++j) y.push_back(q(i, j));
  return y;
}

IntVector sym_coords(const IntMatrix& m) {
  IntVector y;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j) y.push_back(m(i, j));
  return y;
}

QuadForm from_sym_coords(std::size_t g, const RatVector& y) {
  if (y.size() != sym_dim(g)) throw Error("dimension", "wrong number of symmetric coordinates");
  RatMatrix m(g, g);
  std::size_t k = 0;
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = i; j < g; ++j) {
      m(i, j) = y[k];
      m(j, i) = y[k];
      ++k;
    }
  return QuadForm(std::move(m));
}

IntMatrix int_from_sym_coords(std::size_t g, const IntVector& y) {
  if (y.size() != sym_dim(g)) throw Error("dimension", "wrong number of symmetric coordinates");
  IntMatrix m(g, g);
  std::size_t k = 0;
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = i; j < g; ++j) {
      m(i, j) = y[k];
      m(j, i) = y[k];
      ++k;
    }
  return m;
}

IntVector evaluation_functional(const IntVector& x) {
  IntVector f;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i; j < x.size(); ++j) f.push_back(i == j ? Integer(x[i] * x[i]) : Integer(2 * x[i] * x[j]));
  return f;
}

IntVector rank_one(const IntVector& x) {
  IntVector y;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i; j < x.size(); ++j) y.push_back(x[i] * x[j]);
  return y;
}

IntMatrix congruence_action(const IntMatrix& h) {
  const std::size_t g = h.rows();
  const std::size_t n = sym_dim(g);
  IntMatrix a(n, n);
  std::size_t col = 0;
  for (std::size_t k = 0; k < g; ++k)
    for (std::size_t l = k; l < g; ++l, ++col) {
      // Image of the basis matrix E_kl + E_lk (or E_kk).
      IntMatrix e(g, g);
      e(k, l) = 1;
      e(l, k) = 1;
      const IntMatrix img = h * e * h.transpose();
      std::size_t row = 0;
      for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = i; j < g; ++j, ++row) a(row, col) = img(i, j);
    }
  return a;
}

}  // namespace tropmod
