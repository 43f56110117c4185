#include "tropmod/stackyfan/stacky_fan.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <sstream>

#include "tropmod/error.hpp"
#include "tropmod/ratlin/linalg.hpp"

namespace tropmod {

namespace {

std::string vec_string(const std::vector<Integer>& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].get_str();
  os << ")";
  return os.str();
}

std::string rat_string(const RatVector& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << to_string(v[i]);
  os << ")";
  return os.str();
}

std::string map_string(const FaceMap& m) {
  std::ostringstream os;
  os << "map " << m.source << "->" << m.target;
  return os.str();
}

int ray_index(const IdealCone& c, const IntVector& v) {
  const auto it = std::find(c.rays().begin(), c.rays().end(), v);
  return it == c.rays().end() ? -1 : static_cast<int>(it - c.rays().begin());
}

// Image of a face mask under a ray assignment; -1 entries make it invalid.
std::optional<FaceMask> image_mask(FaceMask m, const std::vector<int>& ray_image) {
  FaceMask out = 0;
  for (int i : mask_members(m)) {
    if (ray_image[i] < 0) return std::nullopt;
    out |= FaceMask{1} << ray_image[i];
  }
  return out;
}

}  // namespace

int StackyFan::add_cell(std::string label, IdealCone cone) {
  cells.push_back({std::move(label), std::move(cone)});
  return static_cast<int>(cells.size()) - 1;
}

void StackyFan::add_map(int source, int target, IntMatrix matrix) {
  FaceMap m{source, target, std::move(matrix)};
  if (std::find(maps.begin(), maps.end(), m) == maps.end()) maps.push_back(std::move(m));
}

std::vector<FanViolation> check_face_map(const StackyFan& f, const FaceMap& m) {
  std::vector<FanViolation> out;
  const IdealCone& src = f.cells.at(m.source).cone;
  const IdealCone& tgt = f.cells.at(m.target).cone;
  if (m.matrix.rows() != tgt.ambient_dim() || m.matrix.cols() != src.ambient_dim()) {
    out.push_back({"shape", map_string(m)});
    return out;
  }
  if (!src.rays().empty()) {
    const IntMatrix basis = saturate_rows(stack_rows(src.rays(), src.ambient_dim()));
    std::vector<IntVector> rows;
    for (std::size_t i = 0; i < basis.rows(); ++i) rows.push_back(m.matrix * basis.row_vector(i));
    const auto inv = smith_invariants(stack_rows(rows, tgt.ambient_dim()));
    const bool saturated =
        inv.size() == rows.size() && std::all_of(inv.begin(), inv.end(), [](const Integer& d) { return d == 1; });
    if (!saturated) {
      std::string factors;
      for (const auto& d : inv) factors += d.get_str() + " ";
      out.push_back({"lattice_preservation", map_string(m) + " invariant factors " + factors});
    }
  }
  std::vector<int> ray_image(src.num_rays(), -1);
  for (std::size_t r = 0; r < src.num_rays(); ++r) {
    const IntVector img = m.matrix * src.rays()[r];
    ray_image[r] = ray_index(tgt, img);
    if (ray_image[r] < 0) {
      const bool multiple = !is_zero(img) && ray_index(tgt, primitive(img)) >= 0;
      out.push_back({multiple ? "ray_primitivity" : "face_onto",
                     map_string(m) + " sends ray " + vec_string(src.rays()[r]) + " to " + vec_string(img)});
    }
  }
  if (!out.empty()) return out;
  std::set<int> distinct(ray_image.begin(), ray_image.end());
  std::vector<IntVector> images;
  for (const auto& r : src.rays()) images.push_back(m.matrix * r);
  if (distinct.size() != ray_image.size() ||
      (!images.empty() && rank(stack_rows(images, tgt.ambient_dim())) != src.dim())) {
    out.push_back({"injective", map_string(m)});
    return out;
  }
  const FaceMask img = *image_mask(src.full_mask(), ray_image);
  if (!tgt.is_face(img)) {
    out.push_back({"face_onto", map_string(m) + " image rays do not form a face"});
    return out;
  }
  if (tgt.is_removed(img)) out.push_back({"lands_in_removed", map_string(m)});
  for (FaceMask s : src.faces()) {
    const FaceMask t = *image_mask(s, ray_image);
    if (!tgt.is_face(t) || tgt.is_removed(t) != src.is_removed(s)) {
      out.push_back({"removed_mismatch", map_string(m) + " face mask " + std::to_string(s)});
      break;
    }
  }
  return out;
}

GluingIndex::GluingIndex(const StackyFan& f)
    : fan_(&f), by_source_(f.cells.size()), by_target_(f.cells.size()) {
  for (std::size_t k = 0; k < f.maps.size(); ++k) {
    const FaceMap& m = f.maps[k];
    by_source_[m.source].push_back(k);
    by_target_[m.target].push_back(k);
    rat_.push_back(to_rational(m.matrix));
    std::vector<std::size_t> rows;
    std::vector<IntVector> picked;
    for (std::size_t i = 0; i < m.matrix.rows() && picked.size() < m.matrix.cols(); ++i) {
      picked.push_back(m.matrix.row_vector(i));
      if (rank(stack_rows(picked, m.matrix.cols())) == picked.size())
        rows.push_back(i);
      else
        picked.pop_back();
    }
    if (picked.size() < m.matrix.cols()) throw Error("not_injective", "face map " + map_string(m) + " is not injective");
    pivot_rows_.push_back(rows);
    row_inverse_.push_back(picked.empty() ? RatMatrix(0, 0) : *inverse(to_rational(stack_rows(picked, m.matrix.cols()))));
  }
}

std::optional<RatVector> GluingIndex::preimage(std::size_t k, const RatVector& x) const {
  RatVector sub;
  for (std::size_t i : pivot_rows_[k]) sub.push_back(x[i]);
  RatVector y = row_inverse_[k] * sub;
  if (rat_[k] * y != x) return std::nullopt;
  return y;
}

std::vector<OpenPoint> open_representatives(const GluingIndex& index, int cell, const RatVector& x, std::size_t bound) {
  const StackyFan& f = index.fan();
  std::set<OpenPoint> seen{{cell, x}};
  std::deque<OpenPoint> queue{{cell, x}};
  std::set<OpenPoint> rejected;
  auto visit = [&](int c, RatVector y) {
    OpenPoint p{c, std::move(y)};
    if (seen.count(p) || rejected.count(p)) return;
    const Location where = f.cells[c].cone.locate(p.coords).where;
    if (where == Location::outside || where == Location::removed) {
      rejected.insert(std::move(p));
      return;
    }
    seen.insert(p);
    if (seen.size() > bound) throw Error("orbit_bound", "equivalence class exceeds the bound");
    queue.push_back(std::move(p));
  };
  while (!queue.empty()) {
    const OpenPoint p = queue.front();
    queue.pop_front();
    index.for_each_neighbor(p.cell, p.coords, visit);
  }
  std::vector<OpenPoint> out;
  for (const auto& p : seen)
    if (f.cells[p.cell].cone.locate(p.coords).where == Location::interior) out.push_back(p);
  return out;
}

FanReport validate_fan(const StackyFan& f, const ValidateOptions& opts) {
  FanReport report;
  for (std::size_t i = 0; i < f.cells.size(); ++i)
    if (f.cells[i].cone.dim() != f.cells[i].cone.ambient_dim())
      report.violations.push_back({"cell_dimension", "cell " + std::to_string(i) + " is not full-dimensional"});
  for (const auto& m : f.maps) {
    ++report.maps_checked;
    if (m.source < 0 || m.target < 0 || m.source >= static_cast<int>(f.cells.size()) ||
        m.target >= static_cast<int>(f.cells.size())) {
      report.violations.push_back({"unknown_cell", map_string(m)});
      continue;
    }
    for (auto& v : check_face_map(f, m)) report.violations.push_back(std::move(v));
  }
  if (!report.ok() || !opts.check_partition) return report;

  const GluingIndex index(f);
  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<int> coef(1, 9);
  std::vector<std::pair<std::size_t, FaceMask>> targets;
  for (std::size_t i = 0; i < f.cells.size(); ++i)
    for (FaceMask face : f.cells[i].cone.retained_faces()) targets.push_back({i, face});
  if (opts.max_faces && targets.size() > opts.max_faces) {
    std::shuffle(targets.begin(), targets.end(), rng);
    targets.resize(opts.max_faces);
    std::sort(targets.begin(), targets.end());
  }
  for (const auto& [i, face] : targets) {
    const IdealCone& c = f.cells[i].cone;
    for (std::size_t s = 0; s < opts.samples_per_face; ++s) {
      RatVector x(c.ambient_dim());
      for (int r : mask_members(face)) {
        const Rational k(coef(rng));
        for (std::size_t j = 0; j < x.size(); ++j) x[j] += k * c.rays()[r][j];
      }
      ++report.points_sampled;
      const auto reps = open_representatives(index, static_cast<int>(i), x, opts.orbit_bound);
      std::set<int> cells;
      for (const auto& p : reps) cells.insert(p.cell);
      if (cells.size() != 1) {
        std::string list;
        for (int k : cells) list += std::to_string(k) + " ";
        report.violations.push_back({cells.empty() ? "partition_missing" : "partition_overlap",
                                     "point " + rat_string(x) + " of cell " + std::to_string(i) +
                                         " has open representatives in cells: " + list});
        return report;
      }
    }
  }
  return report;
}

std::vector<IntMatrix> self_map_group(const StackyFan& f, int cell, std::size_t bound) {
  const std::size_t n = f.cells.at(cell).cone.ambient_dim();
  std::vector<IntMatrix> gens;
  for (const auto& m : f.maps)
    if (m.source == cell && m.target == cell) gens.push_back(m.matrix);
  std::set<IntMatrix> group{IntMatrix::identity(n)};
  std::vector<IntMatrix> frontier{IntMatrix::identity(n)};
  while (!frontier.empty()) {
    const IntMatrix g = frontier.back();
    frontier.pop_back();
    for (const auto& s : gens) {
      IntMatrix h = s * g;
      if (group.insert(h).second) {
        if (group.size() > bound) throw Error("orbit_bound", "self-map group exceeds the bound");
        frontier.push_back(std::move(h));
      }
    }
  }
  return {group.begin(), group.end()};
}

MapSets closed_map_sets(const StackyFan& f) {
  std::vector<std::vector<IntMatrix>> groups;
  for (std::size_t i = 0; i < f.cells.size(); ++i) groups.push_back(self_map_group(f, static_cast<int>(i)));
  MapSets out;
  for (const auto& m : f.maps) {
    if (m.source == m.target) continue;
    auto& set = out[{m.source, m.target}];
    for (const auto& t : groups[m.target])
      for (const auto& s : groups[m.source]) set.insert(t * m.matrix * s);
  }
  return out;
}

std::vector<IntMatrix> cone_isomorphisms(const IdealCone& a, const IdealCone& b) {
  std::vector<IntMatrix> out;
  const std::size_t n = a.ambient_dim();
  if (n != b.ambient_dim() || a.num_rays() != b.num_rays() || a.dim() != n || b.dim() != n ||
      a.removed_faces().size() != b.removed_faces().size())
    return out;
  if (n == 0) return {IntMatrix(0, 0)};
  std::vector<int> basis;
  {
    std::vector<IntVector> rows;
    for (std::size_t r = 0; r < a.num_rays() && basis.size() < n; ++r) {
      rows.push_back(a.rays()[r]);
      if (rank(stack_rows(rows, n)) == rows.size())
        basis.push_back(static_cast<int>(r));
      else
        rows.pop_back();
    }
  }
  IntMatrix src(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) src(i, j) = a.rays()[basis[j]][i];
  const RatMatrix src_inv = *inverse(to_rational(src));
  std::set<IntMatrix> found;
  std::vector<int> assign(n, -1);
  std::vector<bool> used(b.num_rays(), false);
  auto rec = [&](auto&& self, std::size_t j) -> void {
    if (j == n) {
      RatMatrix dst(n, n);
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t i = 0; i < n; ++i) dst(i, c) = b.rays()[assign[c]][i];
      const RatMatrix phi_q = dst * src_inv;
      for (const auto& v : phi_q.data())
        if (v.get_den() != 1) return;
      const IntMatrix phi = to_integer(phi_q);
      if (!is_unimodular(phi)) return;
      std::vector<int> ray_image(a.num_rays());
      std::set<int> hit;
      for (std::size_t r = 0; r < a.num_rays(); ++r) {
        ray_image[r] = ray_index(b, phi * a.rays()[r]);
        if (ray_image[r] < 0) return;
        hit.insert(ray_image[r]);
      }
      if (hit.size() != a.num_rays()) return;
      for (FaceMask s : a.faces()) {
        const FaceMask t = *image_mask(s, ray_image);
        if (!b.is_face(t) || b.is_removed(t) != a.is_removed(s)) return;
      }
      found.insert(phi);
      return;
    }
    for (std::size_t r = 0; r < b.num_rays(); ++r) {
      if (used[r]) continue;
      used[r] = true;
      assign[j] = static_cast<int>(r);
      self(self, j + 1);
      used[r] = false;
    }
  };
  rec(rec, 0);
  return {found.begin(), found.end()};
}

namespace {

struct IsoContext {
  const StackyFan& a;
  const StackyFan& b;
  MapSets sets_a, sets_b;
  std::vector<std::vector<IntMatrix>> groups_a, groups_b;
};

bool pair_matches(const IsoContext& ctx, const FanIsomorphism& iso, const std::vector<IntMatrix>& inverses, int i,
                  int k, std::string* witness) {
  const int bi = iso.cell_map[i], bk = iso.cell_map[k];
  std::set<IntMatrix> mapped;
  if (i == k) {
    for (const auto& g : ctx.groups_a[i]) mapped.insert(iso.lattice_maps[i] * g * inverses[i]);
    const std::set<IntMatrix> target(ctx.groups_b[bi].begin(), ctx.groups_b[bi].end());
    if (mapped != target) {
      if (witness) *witness = "self-map groups differ at cell " + std::to_string(i);
      return false;
    }
    return true;
  }
  const auto ia = ctx.sets_a.find({i, k});
  const auto ib = ctx.sets_b.find({bi, bk});
  if (ia != ctx.sets_a.end())
    for (const auto& m : ia->second) mapped.insert(iso.lattice_maps[k] * m * inverses[i]);
  const std::set<IntMatrix> empty;
  const auto& target = ib == ctx.sets_b.end() ? empty : ib->second;
  if (mapped != target) {
    if (witness) *witness = "face maps differ for cells " + std::to_string(i) + "->" + std::to_string(k);
    return false;
  }
  return true;
}

}  // namespace

bool verify_fan_isomorphism(const StackyFan& a, const StackyFan& b, const FanIsomorphism& iso, std::string* witness) {
  auto fail = [&](const std::string& w) {
    if (witness) *witness = w;
    return false;
  };
  const std::size_t n = a.cells.size();
  if (b.cells.size() != n || iso.cell_map.size() != n || iso.lattice_maps.size() != n)
    return fail("cell counts differ");
  std::set<int> image(iso.cell_map.begin(), iso.cell_map.end());
  if (image.size() != n || *image.begin() < 0 || *image.rbegin() >= static_cast<int>(n))
    return fail("cell map is not a bijection");
  std::vector<IntMatrix> inverses;
  for (std::size_t i = 0; i < n; ++i) {
    const auto cands = cone_isomorphisms(a.cells[i].cone, b.cells[iso.cell_map[i]].cone);
    if (std::find(cands.begin(), cands.end(), iso.lattice_maps[i]) == cands.end())
      return fail("lattice map of cell " + std::to_string(i) + " does not carry its cone onto the image cone");
    inverses.push_back(inverse_unimodular(iso.lattice_maps[i]));
  }
  IsoContext ctx{a, b, closed_map_sets(a), closed_map_sets(b), {}, {}};
  for (std::size_t i = 0; i < n; ++i) {
    ctx.groups_a.push_back(self_map_group(a, static_cast<int>(i)));
    ctx.groups_b.push_back(self_map_group(b, static_cast<int>(i)));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (!pair_matches(ctx, iso, inverses, static_cast<int>(i), static_cast<int>(k), witness)) return false;
  return true;
}

std::optional<FanIsomorphism> find_fan_isomorphism(const StackyFan& a, const StackyFan& b, bool match_labels) {
  const std::size_t n = a.cells.size();
  if (b.cells.size() != n) return std::nullopt;
  IsoContext ctx{a, b, closed_map_sets(a), closed_map_sets(b), {}, {}};
  for (std::size_t i = 0; i < n; ++i) {
    ctx.groups_a.push_back(self_map_group(a, static_cast<int>(i)));
    ctx.groups_b.push_back(self_map_group(b, static_cast<int>(i)));
  }
  FanIsomorphism iso;
  iso.cell_map.assign(n, -1);
  iso.lattice_maps.assign(n, IntMatrix());
  std::vector<IntMatrix> inverses(n);
  std::vector<bool> used(n, false);
  auto rec = [&](auto&& self, std::size_t i) -> bool {
    if (i == n) return true;
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j]) continue;
      if (match_labels && a.cells[i].label != b.cells[j].label) continue;
      if (ctx.groups_a[i].size() != ctx.groups_b[j].size()) continue;
      for (const auto& phi : cone_isomorphisms(a.cells[i].cone, b.cells[j].cone)) {
        iso.cell_map[i] = static_cast<int>(j);
        iso.lattice_maps[i] = phi;
        inverses[i] = inverse_unimodular(phi);
        bool ok = true;
        for (std::size_t k = 0; k <= i && ok; ++k)
          ok = pair_matches(ctx, iso, inverses, static_cast<int>(i), static_cast<int>(k), nullptr) &&
               pair_matches(ctx, iso, inverses, static_cast<int>(k), static_cast<int>(i), nullptr);
        if (!ok) continue;
        used[j] = true;
        if (self(self, i + 1)) return true;
        used[j] = false;
      }
    }
    iso.cell_map[i] = -1;
    return false;
  };
  if (!rec(rec, 0)) return std::nullopt;
  return iso;
}

ConeFan fan_of_cone(const IdealCone& cone) {
  ConeFan out;
  std::vector<FaceMask> faces = cone.retained_faces();
  std::stable_sort(faces.begin(), faces.end(), [&](FaceMask x, FaceMask y) {
    const auto dx = cone.face_dim(x), dy = cone.face_dim(y);
    return dx != dy ? dx < dy : x < y;
  });
  const std::size_t d = cone.ambient_dim();
  // Integer coordinates of v in the column basis (exists for saturated bases).
  auto coords_in = [](const IntMatrix& basis, const IntVector& v) {
    const auto sol = solve(to_rational(basis), to_rational(v));
    IntVector c;
    for (const auto& q : *sol) {
      if (q.get_den() != 1) throw Error("internal", "face basis is not saturated");
      c.push_back(q.get_num());
    }
    return c;
  };
  for (FaceMask f : faces) {
    const auto members = mask_members(f);
    IntMatrix basis(d, 0);
    if (!members.empty()) {
      std::vector<IntVector> rows;
      for (int r : members) rows.push_back(cone.rays()[r]);
      basis = saturate_rows(stack_rows(rows, d)).transpose();
    }
    std::vector<IntVector> coords;
    for (int r : members) coords.push_back(coords_in(basis, cone.rays()[r]));
    // Removed subfaces, re-indexed by position among the members.
    std::vector<FaceMask> removed;
    for (FaceMask g : cone.removed_faces()) {
      if ((g & f) != g) continue;
      FaceMask local = 0;
      for (std::size_t pos = 0; pos < members.size(); ++pos)
        if (g & (FaceMask{1} << members[pos])) local |= FaceMask{1} << pos;
      removed.push_back(local);
    }
    out.fan.add_cell("face" + std::to_string(f), IdealCone::make(coords, basis.cols(), removed));
    out.faces.push_back(f);
    out.bases.push_back(basis);
  }
  for (std::size_t small = 0; small < faces.size(); ++small)
    for (std::size_t big = 0; big < faces.size(); ++big) {
      if (small == big || (faces[small] & faces[big]) != faces[small]) continue;
      const IntMatrix& bs = out.bases[small];
      IntMatrix m(out.bases[big].cols(), bs.cols());
      for (std::size_t j = 0; j < bs.cols(); ++j) {
        const IntVector c = coords_in(out.bases[big], bs.col_vector(j));
        for (std::size_t i = 0; i < c.size(); ++i) m(i, j) = c[i];
      }
      out.fan.add_map(static_cast<int>(small), static_cast<int>(big), std::move(m));
    }
  return out;
}

}  // namespace tropmod
