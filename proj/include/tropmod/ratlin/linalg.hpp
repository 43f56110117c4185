#pragma once

#include <optional>
#include <vector>

#include "tropmod/ratlin/matrix.hpp"

namespace tropmod {

/// Reduced row echelon form; `pivots` receives the pivot column of each
/// nonzero row.
RatMatrix rref(RatMatrix m, std::vector<std::size_t>* pivots = nullptr);

std::size_t rank(const RatMatrix& m);
std::size_t rank(const IntMatrix& m);

/// Basis of {x : m x = 0}, one vector per free column of the RREF.
std::vector<RatVector> nullspace(const RatMatrix& m);

Rational determinant(const RatMatrix& m);
Integer determinant(const IntMatrix& m);

std::optional<RatMatrix> inverse(const RatMatrix& m);

/// Inverse of a matrix with determinant +-1. Throws Error otherwise.
IntMatrix inverse_unimodular(const IntMatrix& m);

/// Some solution of a x = b, or nullopt when inconsistent.
std::optional<RatVector> solve(const RatMatrix& a, const RatVector& b);

struct HermiteForm {
  IntMatrix h;  ///< row Hermite normal form
  IntMatrix u;  ///< unimodular, h = u * m
};

/// Row-style HNF: pivots positive, zero rows at the bottom, entries above a
/// pivot reduced into [0, pivot).
HermiteForm hnf(const IntMatrix& m);

/// Invariant factors d_1 | d_2 | ... of the Smith normal form (nonzero ones
/// only; their count is the rank).
std::vector<Integer> smith_invariants(const IntMatrix& m);

/// Z-basis (as rows) of {x in Z^n : m x = 0}.
IntMatrix integer_kernel(const IntMatrix& m);

/// Z-basis (as rows, in Hermite form) of span_Q(rows of m) intersected with Z^n.
IntMatrix saturate_rows(const IntMatrix& m);

/// Rows of integer vectors stacked into a matrix with `cols` columns.
IntMatrix stack_rows(const std::vector<IntVector>& rows, std::size_t cols);

bool is_unimodular(const IntMatrix& m);

/// Multiplies a rational matrix by the lcm of its denominators.
IntMatrix clear_denominators(const RatMatrix& m);

/// Exact conversion; throws Error when an entry is not integral.
IntMatrix to_integer(const RatMatrix& m);

}  // namespace tropmod
