#include "tropmod/stackyfan/polycone.hpp"

#include <algorithm>
#include <set>

#include "tropmod/error.hpp"
#include "tropmod/ratlin/linalg.hpp"

namespace tropmod {

namespace {

struct DdRay {
  IntVector y;
  std::vector<char> tight;  // per processed constraint position
};

std::size_t rank_of_rows(const std::vector<IntVector>& rows, std::size_t k) {
  if (rows.empty()) return 0;
  return rank(stack_rows(rows, k));
}

}  // namespace

std::vector<IntVector> extreme_rays(const std::vector<IntVector>& ineqs, const std::vector<IntVector>& eqs,
                                    std::size_t dim) {
  // Coordinates on the subspace cut out by the equations.
  std::vector<RatVector> basis;
  if (eqs.empty()) {
    for (std::size_t i = 0; i < dim; ++i) {
      RatVector e(dim);
      e[i] = 1;
      basis.push_back(e);
    }
  } else {
    basis = nullspace(to_rational(stack_rows(eqs, dim)));
  }
  const std::size_t k = basis.size();
  if (k == 0) return {};

  std::vector<IntVector> rows;
  for (const auto& a : ineqs) {
    RatVector r(k);
    for (std::size_t j = 0; j < k; ++j) r[j] = dot(to_rational(a), basis[j]);
    IntVector p = primitive(r);
    if (!is_zero(p)) rows.push_back(std::move(p));
  }
  if (rank_of_rows(rows, k) < k) throw Error("not_pointed", "cone contains a line");

  // Initial simplicial cone from k independent constraints.
  std::vector<std::size_t> order;
  std::vector<IntVector> chosen;
  std::vector<bool> used(rows.size(), false);
  for (std::size_t i = 0; i < rows.size() && chosen.size() < k; ++i) {
    chosen.push_back(rows[i]);
    if (rank_of_rows(chosen, k) == chosen.size()) {
      order.push_back(i);
      used[i] = true;
    } else {
      chosen.pop_back();
    }
  }
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (!used[i]) order.push_back(i);

  const auto inv = *inverse(to_rational(stack_rows(chosen, k)));
  std::vector<DdRay> rays;
  for (std::size_t j = 0; j < k; ++j) {
    DdRay r;
    r.y = primitive(inv.col_vector(j));
    for (std::size_t i = 0; i < k; ++i) r.tight.push_back(i == j ? 0 : 1);
    rays.push_back(std::move(r));
  }

  std::vector<IntVector> processed(chosen);
  for (std::size_t step = k; step < order.size(); ++step) {
    const IntVector& a = rows[order[step]];
    std::vector<Integer> val(rays.size());
    for (std::size_t r = 0; r < rays.size(); ++r) val[r] = dot(a, rays[r].y);
    std::vector<DdRay> next;
    for (std::size_t r = 0; r < rays.size(); ++r)
      if (sgn(val[r]) >= 0) {
        DdRay copy = rays[r];
        copy.tight.push_back(sgn(val[r]) == 0 ? 1 : 0);
        next.push_back(std::move(copy));
      }
    for (std::size_t p = 0; p < rays.size(); ++p) {
      if (sgn(val[p]) <= 0) continue;
      for (std::size_t n = 0; n < rays.size(); ++n) {
        if (sgn(val[n]) >= 0) continue;
        std::vector<IntVector> common;
        for (std::size_t c = 0; c < processed.size(); ++c)
          if (rays[p].tight[c] && rays[n].tight[c]) common.push_back(processed[c]);
        if (k >= 2 && (common.size() < k - 2 || rank_of_rows(common, k) != k - 2)) continue;
        DdRay r;
        IntVector y(k);
        for (std::size_t j = 0; j < k; ++j) y[j] = val[p] * rays[n].y[j] - val[n] * rays[p].y[j];
        r.y = primitive(y);
        r.tight.resize(processed.size());
        for (std::size_t c = 0; c < processed.size(); ++c) r.tight[c] = rays[p].tight[c] && rays[n].tight[c];
        r.tight.push_back(1);
        next.push_back(std::move(r));
      }
    }
    rays = std::move(next);
    processed.push_back(a);
  }

  std::set<IntVector> out;
  for (const auto& r : rays) {
    RatVector x(dim);
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < dim; ++i) x[i] += Rational(r.y[j]) * basis[j][i];
    out.insert(primitive(x));
  }
  return {out.begin(), out.end()};
}

ConeFacets facets_of(const std::vector<IntVector>& rays, std::size_t dim) {
  ConeFacets out;
  if (rays.empty()) {
    for (std::size_t i = 0; i < dim; ++i) {
      IntVector e(dim);
      e[i] = 1;
      out.equations.push_back(e);
    }
    return out;
  }
  out.equations = integer_kernel(stack_rows(rays, dim)).to_rows();
  out.facets = extreme_rays(rays, out.equations, dim);
  return out;
}

}  // namespace tropmod
