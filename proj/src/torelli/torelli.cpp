#include "tropmod/torelli/torelli.hpp"

#include <algorithm>
#include <map>

#include "tropmod/error.hpp"
#include "tropmod/voronoi/delone.hpp"
#include "tropmod/voronoi/reduction.hpp"
#include "tropmod/voronoi/short_vectors.hpp"

namespace tropmod {

namespace {

void check_lengths(std::size_t edges, const RatVector& lengths, bool allow_zero) {
  if (lengths.size() != edges)
    throw Error("bad_lengths", "expected " + std::to_string(edges) + " edge lengths, got " +
                                   std::to_string(lengths.size()));
  for (const auto& l : lengths)
    if (l < 0 || (!allow_zero && l == 0)) throw Error("bad_lengths", "edge lengths must be positive");
}

QuadForm gram(const IntMatrix& rows, const RatVector& lengths, std::size_t pad) {
  const std::size_t n = rows.rows() + pad;
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < rows.rows(); ++i)
    for (std::size_t j = 0; j < rows.rows(); ++j) {
      Rational s = 0;
      for (std::size_t e = 0; e < rows.cols(); ++e) s += Rational(rows(i, e) * rows(j, e)) * lengths[e];
      m(i, j) = s;
    }
  return QuadForm(m);
}

std::string describe_vector(const IntVector& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
  return s + "]";
}

}  // namespace

TropicalJacobian jacobian(const WeightedGraph& g, const RatVector& lengths) {
  if (!is_stable(g)) throw Error("unstable", "graph is not stable");
  check_lengths(g.num_edges(), lengths, false);
  const IntMatrix c = cycle_basis(g);
  TropicalJacobian j;
  j.genus = static_cast<std::size_t>(genus(g));
  j.block_form = gram(c, lengths, static_cast<std::size_t>(g.total_weight()));
  j.rank = c.rows();
  return j;
}

IntMatrix petal_matrix(const Marking& m) {
  const std::size_t ne = m.base().num_edges();
  IntMatrix b(m.rank(), ne);
  for (std::size_t i = 0; i < m.rank(); ++i)
    for (const auto& s : m.petals[i])
      if (!m.target.is_virtual(s.edge)) b(i, s.edge) += s.dir;
  return b;
}

QuadForm PeriodMatrixMap::evaluate(const RatVector& lengths) const {
  check_lengths(b.cols(), lengths, true);
  return gram(b, lengths, 0);
}

std::vector<IntVector> PeriodMatrixMap::image_generators() const {
  std::vector<IntVector> out;
  for (std::size_t e = 0; e < linear.cols(); ++e) {
    IntVector col = linear.col_vector(e);
    if (!is_zero(col)) out.push_back(std::move(col));
  }
  return out;
}

PeriodMatrixMap period_on_cell(const Marking& m) {
  PeriodMatrixMap p;
  p.b = petal_matrix(m);
  p.linear = IntMatrix(sym_dim(m.rank()), p.b.cols());
  for (std::size_t e = 0; e < p.b.cols(); ++e) {
    const IntVector col = rank_one(p.b.col_vector(e));
    for (std::size_t k = 0; k < col.size(); ++k) p.linear(k, e) = col[k];
  }
  return p;
}

QuadForm marked_period(const Marking& m, const RatVector& lengths) {
  check_lengths(m.base().num_edges(), lengths, false);
  return period_on_cell(m).evaluate(lengths);
}

bool boundary_consistent(const Marking& m, const EdgeSubset& subset, std::string* witness) {
  if (contains_cycle(m.base(), subset))
    throw Error("cyclic_subset", "boundary consistency is defined for acyclic contractions");
  const PeriodMatrixMap cell = period_on_cell(m);
  const SpecializedMarking sp = specialize_marking(m, subset);
  const PeriodMatrixMap face = period_on_cell(sp.marking);
  for (std::size_t e = 0; e < cell.linear.cols(); ++e) {
    const int image = sp.contraction.edge_map[e];
    if (image < 0) continue;
    if (cell.linear.col_vector(e) != face.linear.col_vector(image)) {
      if (witness)
        *witness = "edge " + std::to_string(e) + ": cell column " + describe_vector(cell.linear.col_vector(e)) +
                   " differs from face column " + describe_vector(face.linear.col_vector(image));
      return false;
    }
  }
  return true;
}

QuadForm binary_normal_form(const QuadForm& q) {
  const FormReduction r = reduce_binary(q);
  const QuadForm& f = r.reduced;
  std::vector<Rational> s{-f(0, 1), f(0, 0) + f(0, 1), f(1, 1) + f(0, 1)};
  std::sort(s.begin(), s.end());
  const Rational &a = s[0], &b = s[1], &c = s[2];
  return QuadForm(RatMatrix::from_rows({{a + c, -c}, {-c, b + c}}, 2));
}

CompatResult compat_check(const Marking& m, Sigma sigma) {
  const std::size_t g = m.rank();
  if (sigma == Sigma::voronoi && g > 3) throw Error("out_of_scope", "Voronoi compatibility is checked for g <= 3");
  if (sigma == Sigma::perfect && g != 2) throw Error("out_of_scope", "perfect-cone compatibility is checked for g = 2");
  const PeriodMatrixMap p = period_on_cell(m);
  CompatResult r;
  r.generators = p.image_generators();
  r.sample = p.evaluate(RatVector(m.base().num_edges(), Rational(1)));
  if (sigma == Sigma::voronoi || !is_positive_definite(r.sample)) {
    // In genus two both decompositions agree; degenerate samples go through
    // the definite block either way.
    r.witness = secondary_cone_of_form(r.sample);
  } else {
    const FormReduction red = reduce_binary(r.sample);
    const IdealCone principal = IdealCone::make({{1, -1, 1}, {1, 0, 0}, {0, 0, 1}}, 3);
    const IdealCone translate = congruence_image(principal, inverse_unimodular(red.h));
    // The smallest face of the translate containing the sample.
    const Membership where = translate.locate(sym_coords(r.sample));
    r.witness = where.face == translate.full_mask() ? translate : IdealCone::make([&] {
      std::vector<IntVector> rays;
      for (int k : mask_members(where.face)) rays.push_back(translate.rays()[k]);
      return rays;
    }(), 3);
  }
  r.ok = true;
  for (const auto& gen : r.generators)
    if (r.witness.locate(to_rational(gen)).where == Location::outside) {
      r.ok = false;
      r.counterexample = describe_vector(gen);
      break;
    }
  return r;
}

TorelliClass torelli_class(const WeightedGraph& g, const RatVector& lengths) {
  const TropicalJacobian j = jacobian(g, lengths);
  TorelliClass t;
  t.jacobian = j.block_form;
  t.definite = j.block_form.dim() == 0 ? j.block_form : split_off_null(j.block_form).definite;
  const std::size_t r = t.definite.dim();
  if (r == 0) {
    t.tag = "rank0";
  } else if (r == 1) {
    t.tag = "rank1:" + to_string(t.definite(0, 0));
  } else if (r == 2) {
    const QuadForm n = binary_normal_form(t.definite);
    t.tag = "rank2:" + to_string(n(0, 0)) + "," + to_string(n(0, 1)) + "," + to_string(n(1, 1));
  } else {
    const DeloneSubdivision d = delone(t.definite);
    std::vector<std::size_t> sizes;
    for (const auto& c : d.cells) sizes.push_back(c.vertices.size());
    std::sort(sizes.begin(), sizes.end());
    t.tag = "rank" + std::to_string(r) + ":delone:" + std::to_string(d.cells.size()) + ":";
    for (std::size_t k = 0; k < sizes.size(); ++k) t.tag += (k ? "," : "") + std::to_string(sizes[k]);
    t.tag += ":dim" + std::to_string(secondary_cone(d).cone.dim());
  }
  return t;
}

}  // namespace tropmod
