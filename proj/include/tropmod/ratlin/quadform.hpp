#pragma once

#include <string>
#include <vector>

#include "tropmod/ratlin/linalg.hpp"

namespace tropmod {

/// Symmetric g x g matrix with rational entries, read as the quadratic form
/// x -> x^T m x.
class QuadForm {
 public:
  QuadForm() = default;
  /// Throws Error("not_symmetric") unless m is square and symmetric.
  explicit QuadForm(RatMatrix m);
  static QuadForm from_integer(const IntMatrix& m);
  static QuadForm zero(std::size_t g) { return QuadForm(RatMatrix(g, g)); }
  static QuadForm identity(std::size_t g) { return QuadForm(RatMatrix::identity(g)); }

  std::size_t dim() const noexcept { return m_.rows(); }
  const RatMatrix& matrix() const noexcept { return m_; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

  Rational evaluate(const IntVector& x) const;
  Rational bilinear(const IntVector& x, const IntVector& y) const;

  friend bool operator==(const QuadForm& a, const QuadForm& b) { return a.m_ == b.m_; }
  friend bool operator<(const QuadForm& a, const QuadForm& b) { return a.m_ < b.m_; }

 private:
  RatMatrix m_;
};

enum class Definiteness { positive_definite, positive_semidefinite, indefinite };

std::string to_string(Definiteness d);

struct Classification {
  std::size_t rank = 0;
  Definiteness kind = Definiteness::positive_definite;
};

/// Exact symmetric elimination. A negative pivot, or a zero diagonal facing a
/// nonzero off-diagonal entry, means indefinite.
Classification ldlt_classify(const QuadForm& q);

bool is_positive_semidefinite(const QuadForm& q);
bool is_positive_definite(const QuadForm& q);

/// Membership in the rational closure of the definite cone. For rational
/// input the kernel is automatically rational, so this coincides with psd.
inline bool in_rational_closure(const QuadForm& q) { return is_positive_semidefinite(q); }

/// Primitive integer basis of the kernel (first nonzero entry positive).
/// Throws Error("indefinite") on indefinite input.
std::vector<IntVector> kernel_basis(const QuadForm& q);

struct NullSplit {
  IntMatrix h;      ///< unimodular, h q h^T = diag(definite, 0)
  QuadForm definite;  ///< the top-left positive definite block
};

/// Splits a semidefinite form into its definite part and a zero block. The
/// bottom rows of `h` are a Hermite basis of the saturated kernel lattice.
NullSplit split_off_null(const QuadForm& q);

/// h q h^T.
QuadForm act(const IntMatrix& h, const QuadForm& q);

/// Coordinates on symmetric matrices: upper triangle, row-major
/// (m11, m12, ..., m1g, m22, ..., mgg). Integral symmetric matrices form the
/// lattice.
std::size_t sym_dim(std::size_t g);
RatVector sym_coords(const QuadForm& q);
IntVector sym_coords(const IntMatrix& m);
QuadForm from_sym_coords(std::size_t g, const RatVector& y);
IntMatrix int_from_sym_coords(std::size_t g, const IntVector& y);

/// Linear functional y -> Q(x) in symmetric coordinates.
IntVector evaluation_functional(const IntVector& x);

/// The rank-one form x x^T in symmetric coordinates.
IntVector rank_one(const IntVector& x);

/// Symmetric coordinates of h M h^T as a linear map (sym_dim x sym_dim).
IntMatrix congruence_action(const IntMatrix& h);

}  // namespace tropmod
