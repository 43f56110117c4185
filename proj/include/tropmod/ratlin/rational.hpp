#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace tropmod {

using Integer = mpz_class;
using Rational = mpq_class;

using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

/// Parses "p", "-p" or "p/q" into a canonical rational. Throws Error on junk
/// or a zero denominator.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& value);
std::string to_string(const Integer& value);

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Integer gcd(const Integer& a, const Integer& b);

/// Clears denominators and divides by the content. The zero vector maps to
/// itself. Sign is left untouched.
IntVector primitive(const RatVector& v);
IntVector primitive(const IntVector& v);

/// Flips sign so the first nonzero entry is positive.
IntVector sign_normalized(IntVector v);

RatVector to_rational(const IntVector& v);
Rational dot(const RatVector& a, const RatVector& b);
Integer dot(const IntVector& a, const IntVector& b);
bool is_zero(const IntVector& v);
bool is_zero(const RatVector& v);

}  // namespace tropmod
