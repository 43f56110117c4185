#include "tropmod/markings/word.hpp"

#include <algorithm>

namespace tropmod {

Word reduce(const Word& w) {
  Word out;
  for (int x : w) {
    if (!out.empty() && out.back() == -x)
      out.pop_back();
    else
      out.push_back(x);
  }
  return out;
}

Word inverse(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (int& x : out) x = -x;
  return out;
}

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return reduce(out);
}

Word concat(const Word& a, const Word& b, const Word& c) { return concat(concat(a, b), c); }

bool is_reduced(const Word& w) {
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] == -w[i - 1]) return false;
  return true;
}

CyclicSplit cyclic_split(const Word& w0) {
  const Word w = reduce(w0);
  std::size_t k = 0;
  while (2 * k + 1 < w.size() && w[k] == -w[w.size() - 1 - k]) ++k;
  return {Word(w.begin(), w.begin() + k), Word(w.begin() + k, w.end() - k)};
}

Word root(const Word& w) {
  const std::size_t n = w.size();
  for (std::size_t p = 1; p <= n; ++p) {
    if (n % p) continue;
    bool periodic = true;
    for (std::size_t i = p; i < n && periodic; ++i) periodic = w[i] == w[i - p];
    if (periodic) return Word(w.begin(), w.begin() + p);
  }
  return w;
}

Word power(const Word& z, int n) {
  const Word base = n >= 0 ? z : inverse(z);
  Word out;
  for (int i = 0; i < std::abs(n); ++i) out.insert(out.end(), base.begin(), base.end());
  return reduce(out);
}

Conjugators conjugators(const Word& x0, const Word& y0) {
  const Word x = reduce(x0), y = reduce(y0);
  Conjugators out;
  if (x.empty() || y.empty()) {
    if (x.empty() && y.empty()) out.base.push_back({});
    return out;
  }
  const CyclicSplit sx = cyclic_split(x), sy = cyclic_split(y);
  if (sx.core.size() != sy.core.size()) return out;
  // x = a x' a^-1, y = b y' b^-1. If y' = r^-1 x' r then u = b r^-1 a^-1.
  const Word z = root(sx.core);
  for (std::size_t k = 0; k < z.size(); ++k) {
    Word rotated(sx.core.begin() + k, sx.core.end());
    rotated.insert(rotated.end(), sx.core.begin(), sx.core.begin() + k);
    if (rotated != sy.core) continue;
    const Word r(sx.core.begin(), sx.core.begin() + k);
    out.base.push_back(concat(sy.prefix, inverse(r), inverse(sx.prefix)));
  }
  out.centralizer = concat(sx.prefix, z, inverse(sx.prefix));
  return out;
}

std::string render(const Word& w, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    const int g = std::abs(w[i]) - 1;
    out += g < static_cast<int>(names.size()) ? names[g] : "x" + std::to_string(g + 1);
    if (w[i] < 0) out += '-';
  }
  return out;
}

}  // namespace tropmod
