#pragma once

#include <string>
#include <vector>

namespace tropmod {

/// Element of a free group as signed letters: +k is generator k-1, -k its
/// inverse. Functions below return freely reduced words.
using Word = std::vector<int>;

Word reduce(const Word& w);
Word inverse(const Word& w);
Word concat(const Word& a, const Word& b);
Word concat(const Word& a, const Word& b, const Word& c);
bool is_reduced(const Word& w);

/// w = prefix * core * prefix^{-1} with core cyclically reduced.
struct CyclicSplit {
  Word prefix;
  Word core;
};
CyclicSplit cyclic_split(const Word& w);

/// Shortest z with w = z^k for some k >= 1 (w reduced and nonempty).
Word root(const Word& w);

/// Word power z^n (n may be negative).
Word power(const Word& z, int n);

/// All u with u x u^{-1} = y, represented as u0 * z^n: returns the finite
/// list of u0 (one per matching rotation within a root period) and the root
/// z of x. Empty list when x and y are not conjugate.
struct Conjugators {
  std::vector<Word> base;
  Word centralizer;  ///< generator of the centralizer of x (empty if x = 1)
};
Conjugators conjugators(const Word& x, const Word& y);

/// "x1 x2- x3" style rendering with letter names supplied by the caller.
std::string render(const Word& w, const std::vector<std::string>& names);

}  // namespace tropmod
