#include "tropmod/voronoi/delone.hpp"

#include <algorithm>
#include <set>

#include "tropmod/error.hpp"
#include "tropmod/ratlin/linalg.hpp"
#include "tropmod/stackyfan/polycone.hpp"
#include "tropmod/voronoi/reduction.hpp"
#include "tropmod/voronoi/short_vectors.hpp"

namespace tropmod {

namespace {

constexpr int kMaxBoxRadius = 12;

DeloneCell normalized(std::vector<IntVector> vs) {
  std::sort(vs.begin(), vs.end());
  const IntVector base = vs.front();
  for (auto& v : vs)
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= base[i];
  return DeloneCell{std::move(vs)};
}

std::vector<IntVector> box_points(std::size_t g, int r) {
  std::vector<IntVector> out{IntVector(g)};
  for (std::size_t i = 0; i < g; ++i) {
    std::vector<IntVector> next;
    for (const auto& p : out)
      for (int v = -r; v <= r; ++v) {
        IntVector q = p;
        q[i] = v;
        next.push_back(std::move(q));
      }
    out = std::move(next);
  }
  return out;
}

IntVector shifted(IntVector v, const IntVector& t) {
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += t[i];
  return v;
}

std::size_t affine_rank(const std::vector<IntVector>& pts) {
  if (pts.empty()) return 0;
  std::vector<IntVector> diffs;
  for (std::size_t k = 1; k < pts.size(); ++k) {
    IntVector d = pts[k];
    for (std::size_t i = 0; i < d.size(); ++i) d[i] -= pts[0][i];
    diffs.push_back(std::move(d));
  }
  return diffs.empty() ? 0 : rank(stack_rows(diffs, pts[0].size()));
}

// Integer affine dependencies (sum l_k p_k = 0, sum l_k = 0) spanning all of them.
std::vector<IntVector> affine_dependencies(const std::vector<IntVector>& pts) {
  const std::size_t g = pts.front().size();
  RatMatrix m(g + 1, pts.size());
  for (std::size_t k = 0; k < pts.size(); ++k) {
    for (std::size_t i = 0; i < g; ++i) m(i, k) = pts[k][i];
    m(g, k) = 1;
  }
  std::vector<IntVector> out;
  for (const auto& v : nullspace(m)) out.push_back(primitive(v));
  return out;
}

IntVector functional_of(const std::vector<IntVector>& pts, const IntVector& lambda) {
  IntVector f(sym_dim(pts.front().size()));
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const IntVector e = evaluation_functional(pts[k]);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] += lambda[k] * e[i];
  }
  return primitive(f);
}

// Cells through the origin from the vertices of {c : c.x <= q(x)}, or empty
// when some vertex fails its empty-ellipsoid certificate.
std::optional<std::vector<DeloneCell>> cells_from_box(const QuadForm& q, int r) {
  const std::size_t g = q.dim();
  const auto pts = box_points(g, r);
  std::vector<IntVector> ineqs;
  for (const auto& x : pts) {
    if (is_zero(x)) continue;
    IntVector a(g + 1);
    for (std::size_t i = 0; i < g; ++i) a[i] = -x[i];
    a[g] = q.evaluate(x).get_num();  // q is integral here
    ineqs.push_back(std::move(a));
  }
  IntVector t_nonneg(g + 1);
  t_nonneg[g] = 1;
  ineqs.push_back(t_nonneg);
  const RatMatrix qinv = *inverse(q.matrix());
  std::set<DeloneCell> cells;
  for (const auto& ray : extreme_rays(ineqs, {}, g + 1)) {
    if (sgn(ray[g]) == 0) continue;
    RatVector c(g);
    for (std::size_t i = 0; i < g; ++i) c[i] = Rational(ray[i]) / Rational(ray[g]);
    // q(x) - c.x = q(x - y) - q(y) with c = 2 q y.
    RatVector y = qinv * c;
    for (auto& v : y) v /= 2;
    Rational qy = 0;
    for (std::size_t i = 0; i < g; ++i)
      for (std::size_t j = 0; j < g; ++j) qy += q(i, j) * y[i] * y[j];
    std::vector<IntVector> tight;
    for (const auto& x : lattice_points_in_ellipsoid(q, y, qy)) {
      Rational cx = 0;
      for (std::size_t i = 0; i < g; ++i) cx += c[i] * x[i];
      if (q.evaluate(x) - cx != 0) return std::nullopt;  // lattice point strictly inside
      tight.push_back(x);
    }
    if (affine_rank(tight) != g) return std::nullopt;
    for (const auto& x : tight)
      for (const auto& v : x)
        if (abs(v) >= r) return std::nullopt;  // box too tight to trust the vertex set
    cells.insert(normalized(tight));
  }
  return std::vector<DeloneCell>(cells.begin(), cells.end());
}

QuadForm integral_multiple(const QuadForm& q) {
  Integer den = 1;
  for (const auto& v : q.matrix().data()) den = lcm(den, Integer(v.get_den()));
  RatMatrix m = q.matrix();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) *= den;
  return QuadForm(m);
}

}  // namespace

DeloneSubdivision delone(const QuadForm& q) {
  const Classification cl = ldlt_classify(q);
  if (cl.kind == Definiteness::indefinite) throw Error("not_definite", "form is indefinite");
  if (cl.kind != Definiteness::positive_definite)
    throw Error("degenerate", "form is degenerate; apply split_off_null and use its definite block");
  if (q.dim() == 0) throw Error("degenerate", "zero-dimensional form");
  // Work with a reduced basis, where the Voronoi polytope is small, and move
  // the cells back.
  const FormReduction red = pairwise_reduce(q);
  const QuadForm qi = integral_multiple(red.reduced);
  DeloneSubdivision d;
  d.sample = q;
  for (int r = 2;; ++r) {
    if (r > kMaxBoxRadius) throw Error("too_large", "Delone search box exceeded its radius budget");
    if (auto cells = cells_from_box(qi, r)) {
      d.cells = transform_cells(*cells, inverse_unimodular(red.h));
      break;
    }
  }
  const std::size_t g = q.dim();
  std::set<std::tuple<int, int, IntVector>> seen;
  for (int a = 0; a < static_cast<int>(d.cells.size()); ++a)
    for (int b = a; b < static_cast<int>(d.cells.size()); ++b)
      for (const auto& v : d.cells[a].vertices)
        for (const auto& w : d.cells[b].vertices) {
          IntVector t(g);
          for (std::size_t i = 0; i < g; ++i) t[i] = v[i] - w[i];
          if (a == b && is_zero(t)) continue;
          IntVector neg = t;
          for (auto& x : neg) x = -x;
          if (seen.count({a, b, t}) || (a == b && seen.count({a, b, neg}))) continue;
          std::vector<IntVector> common;
          for (const auto& u : d.cells[b].vertices) {
            const IntVector s = shifted(u, t);
            if (std::find(d.cells[a].vertices.begin(), d.cells[a].vertices.end(), s) != d.cells[a].vertices.end())
              common.push_back(s);
          }
          seen.insert({a, b, t});
          if (common.size() >= g && affine_rank(common) + 1 == g) d.adjacency.push_back({a, b, t, common});
        }
  return d;
}

SecondaryCone secondary_cone(const DeloneSubdivision& d) {
  const std::size_t g = d.sample.dim();
  const RatVector sample = sym_coords(d.sample);
  SecondaryCone out;
  std::set<IntVector> eqs, ineqs;
  for (const auto& cell : d.cells)
    for (const auto& lambda : affine_dependencies(cell.vertices)) {
      const IntVector f = functional_of(cell.vertices, lambda);
      if (!is_zero(f)) eqs.insert(sign_normalized(f));
    }
  for (const auto& adj : d.adjacency) {
    const auto& ca = d.cells[adj.a].vertices;
    auto in_facet = [&](const IntVector& v) {
      return std::find(adj.facet.begin(), adj.facet.end(), v) != adj.facet.end();
    };
    IntVector p1, p2;
    for (const auto& v : ca)
      if (!in_facet(v)) {
        p1 = v;
        break;
      }
    for (const auto& w : d.cells[adj.b].vertices) {
      const IntVector s = shifted(w, adj.shift);
      if (!in_facet(s)) {
        p2 = s;
        break;
      }
    }
    // An affinely independent g-subset of the facet.
    std::vector<IntVector> basis;
    for (const auto& v : adj.facet) {
      basis.push_back(v);
      if (affine_rank(basis) + 1 != basis.size()) basis.pop_back();
      if (basis.size() == g) break;
    }
    std::vector<IntVector> pts{p1, p2};
    pts.insert(pts.end(), basis.begin(), basis.end());
    const auto deps = affine_dependencies(pts);
    if (deps.size() != 1) throw Error("internal", "adjacent Delone cells give no unique dependency");
    IntVector f = functional_of(pts, deps.front());
    const int s = sgn(dot(to_rational(f), sample));
    if (s == 0) throw Error("internal", "regulator vanishes on the sample form");
    if (s < 0)
      for (auto& x : f) x = -x;
    ineqs.insert(f);
  }
  out.equalities.assign(eqs.begin(), eqs.end());
  out.inequalities.assign(ineqs.begin(), ineqs.end());
  out.cone = IdealCone::make(extreme_rays(out.inequalities, out.equalities, sym_dim(g)), sym_dim(g));
  return out;
}

IdealCone secondary_cone_of_form(const QuadForm& q) {
  const std::size_t g = q.dim();
  if (is_positive_definite(q)) return secondary_cone(delone(q)).cone;
  const NullSplit split = split_off_null(q);
  const std::size_t r = split.definite.dim();
  if (r == 0) return IdealCone::make({}, sym_dim(g));
  const IdealCone inner = secondary_cone(delone(split.definite)).cone;
  const IntMatrix hinv = inverse_unimodular(split.h);
  std::vector<IntVector> rays;
  for (const auto& y : inner.rays()) {
    const IntMatrix block = int_from_sym_coords(r, y);
    IntMatrix full(g, g);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) full(i, j) = block(i, j);
    rays.push_back(sym_coords(hinv * full * hinv.transpose()));
  }
  return IdealCone::make(rays, sym_dim(g));
}

std::vector<DeloneCell> transform_cells(const std::vector<DeloneCell>& cells, const IntMatrix& h) {
  const IntMatrix hinv = inverse_unimodular(h);
  std::set<DeloneCell> out;
  for (const auto& c : cells) {
    std::vector<IntVector> vs;
    for (const auto& v : c.vertices) vs.push_back(hinv.transpose() * v);
    // Re-pick the translation representative: the normalized vertex set.
    out.insert(normalized(vs));
  }
  return {out.begin(), out.end()};
}

IdealCone congruence_image(const IdealCone& c, const IntMatrix& h) {
  const IntMatrix a = congruence_action(h);
  std::vector<IntVector> rays;
  for (const auto& r : c.rays()) rays.push_back(a * r);
  return IdealCone::make(rays, c.ambient_dim());
}

}  // namespace tropmod
