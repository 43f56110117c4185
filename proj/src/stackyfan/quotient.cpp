#include "tropmod/stackyfan/quotient.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "tropmod/error.hpp"
#include "tropmod/ratlin/linalg.hpp"

namespace tropmod {

namespace {

std::size_t budget_from(const QuotientOptions& opts) {
  if (opts.cell_budget) return opts.cell_budget;
  if (const char* env = std::getenv("TROPMOD_CELL_BUDGET")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  return 100000;
}

RatVector times(const IntMatrix& m, const RatVector& x) { return to_rational(m) * x; }

}  // namespace

void check_action(const StackyFan& f, const AdmissibleAction& act) {
  for (const auto& mv : act.moves) {
    if (mv.source < 0 || mv.target < 0 || mv.source >= static_cast<int>(f.cells.size()) ||
        mv.target >= static_cast<int>(f.cells.size()))
      throw Error("not_admissible", "move refers to an unknown cell");
    const auto isos = cone_isomorphisms(f.cells[mv.source].cone, f.cells[mv.target].cone);
    if (std::find(isos.begin(), isos.end(), mv.matrix) == isos.end())
      throw Error("not_admissible", "move " + std::to_string(mv.source) + "->" + std::to_string(mv.target) +
                                        " is not a lattice isomorphism of cones");
  }
}

AdmissibleAction induced_action(const ConeFan& cf, const IdealCone& cone, const std::vector<IntMatrix>& generators) {
  AdmissibleAction act;
  act.num_generators = generators.size();
  std::map<FaceMask, int> cell_of;
  for (std::size_t i = 0; i < cf.faces.size(); ++i) cell_of[cf.faces[i]] = static_cast<int>(i);
  for (std::size_t g = 0; g < generators.size(); ++g) {
    const IntMatrix& a = generators[g];
    for (std::size_t i = 0; i < cf.faces.size(); ++i) {
      FaceMask image = 0;
      for (int r : mask_members(cf.faces[i])) {
        const IntVector v = a * cone.rays()[r];
        const auto it = std::find(cone.rays().begin(), cone.rays().end(), v);
        if (it == cone.rays().end()) throw Error("not_admissible", "generator does not preserve the cone");
        image |= FaceMask{1} << (it - cone.rays().begin());
      }
      const auto target = cell_of.find(image);
      if (target == cell_of.end()) throw Error("not_admissible", "generator moves a retained face to a removed one");
      const IntMatrix& src = cf.bases[i];
      const IntMatrix& dst = cf.bases[target->second];
      IntMatrix m(dst.cols(), src.cols());
      const IntMatrix moved = a * src;
      for (std::size_t j = 0; j < src.cols(); ++j) {
        const auto c = *solve(to_rational(dst), to_rational(moved.col_vector(j)));
        for (std::size_t k = 0; k < c.size(); ++k) m(k, j) = c[k].get_num();
      }
      act.moves.push_back({static_cast<int>(g), static_cast<int>(i), target->second, std::move(m)});
    }
  }
  return act;
}

Quotient stratified_quotient(const StackyFan& f, const AdmissibleAction& act, const QuotientOptions& opts) {
  const std::size_t n = f.cells.size();
  if (n > budget_from(opts)) throw Error("cell_budget", "fan exceeds the cell budget");
  check_action(f, act);

  std::vector<std::vector<std::size_t>> touching(n);
  for (std::size_t k = 0; k < act.moves.size(); ++k) {
    touching[act.moves[k].source].push_back(k);
    touching[act.moves[k].target].push_back(k);
  }
  // Orbits in index order of their smallest member.
  std::vector<int> orbit(n, -1);
  std::vector<std::vector<int>> members;
  for (std::size_t start = 0; start < n; ++start) {
    if (orbit[start] >= 0) continue;
    const int id = static_cast<int>(members.size());
    members.push_back({});
    std::deque<int> queue{static_cast<int>(start)};
    orbit[start] = id;
    while (!queue.empty()) {
      const int c = queue.front();
      queue.pop_front();
      members[id].push_back(c);
      for (std::size_t k : touching[c])
        for (int other : {act.moves[k].source, act.moves[k].target})
          if (orbit[other] < 0) {
            orbit[other] = id;
            queue.push_back(other);
          }
    }
    std::sort(members[id].begin(), members[id].end());
  }

  Quotient q;
  q.cell_class = orbit;
  q.transport.assign(n, IntMatrix());
  for (const auto& orb : members) {
    const int rep = orb[opts.rotation % orb.size()];
    q.representative.push_back(rep);
    q.fan.add_cell(f.cells[rep].label, f.cells[rep].cone);
    // Transports by breadth-first search from the representative.
    std::vector<bool> known(n, false);
    q.transport[rep] = IntMatrix::identity(f.cells[rep].cone.ambient_dim());
    known[rep] = true;
    std::deque<int> queue{rep};
    while (!queue.empty()) {
      const int c = queue.front();
      queue.pop_front();
      for (std::size_t k : touching[c]) {
        const ActionMove& mv = act.moves[k];
        if (mv.source == c && !known[mv.target]) {
          q.transport[mv.target] = q.transport[c] * inverse_unimodular(mv.matrix);
          known[mv.target] = true;
          queue.push_back(mv.target);
        } else if (mv.target == c && !known[mv.source]) {
          q.transport[mv.source] = q.transport[c] * mv.matrix;
          known[mv.source] = true;
          queue.push_back(mv.source);
        }
      }
    }
  }
  std::vector<IntMatrix> inv(n);
  for (std::size_t i = 0; i < n; ++i) inv[i] = inverse_unimodular(q.transport[i]);
  for (const auto& m : f.maps)
    q.fan.add_map(orbit[m.source], orbit[m.target], q.transport[m.target] * m.matrix * inv[m.source]);
  for (const auto& mv : act.moves) {
    IntMatrix self = q.transport[mv.target] * mv.matrix * inv[mv.source];
    if (self == IntMatrix::identity(self.rows())) continue;
    q.fan.add_map(orbit[mv.source], orbit[mv.target], std::move(self));
  }
  for (std::size_t c = 0; c < q.fan.num_cells(); ++c) q.self_maps.push_back(self_map_group(q.fan, static_cast<int>(c)));
  return q;
}

FanIsomorphism quotient_isomorphism(const Quotient& a, const Quotient& b) {
  FanIsomorphism iso;
  for (std::size_t c = 0; c < a.representative.size(); ++c) {
    const int rep = a.representative[c];
    iso.cell_map.push_back(b.cell_class[rep]);
    iso.lattice_maps.push_back(b.transport[rep]);
  }
  return iso;
}

std::vector<SamplePoint> sample_points(const StackyFan& f, const AdmissibleAction& act, std::size_t count,
                                       std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<SamplePoint> out;
  std::vector<std::vector<const ActionMove*>> from(f.cells.size());
  for (const auto& mv : act.moves) from[mv.source].push_back(&mv);
  while (out.size() < count) {
    if (!out.empty() && rng() % 2 == 0) {
      SamplePoint p = out[rng() % out.size()];
      const int steps = 1 + static_cast<int>(rng() % 3);
      for (int s = 0; s < steps && !from[p.cell].empty(); ++s) {
        const ActionMove* mv = from[p.cell][rng() % from[p.cell].size()];
        p = {mv->target, times(mv->matrix, p.coords)};
      }
      out.push_back(std::move(p));
      continue;
    }
    const int cell = static_cast<int>(rng() % f.cells.size());
    const IdealCone& c = f.cells[cell].cone;
    const auto faces = c.retained_faces();
    const FaceMask face = faces[rng() % faces.size()];
    RatVector x(c.ambient_dim());
    for (int r : mask_members(face)) {
      const Rational coef(static_cast<long>(1 + rng() % 7), static_cast<long>(1 + rng() % 3));
      for (std::size_t j = 0; j < x.size(); ++j) x[j] += coef * c.rays()[r][j];
    }
    for (auto& v : x) v.canonicalize();
    out.push_back({cell, std::move(x)});
  }
  return out;
}

OpenPoint quotient_point(const GluingIndex& index, const Quotient& q, int cell, const RatVector& x) {
  const auto reps = open_representatives(index, cell, x);
  if (reps.empty()) throw Error("not_in_fan", "point has no open representative");
  const OpenPoint& p = reps.front();
  const int qc = q.cell_class[p.cell];
  const RatVector y = times(q.transport[p.cell], p.coords);
  OpenPoint best{qc, y};
  for (const auto& s : q.self_maps[qc]) {
    RatVector z = times(s, y);
    if (z < best.coords) best.coords = std::move(z);
  }
  return best;
}

BijectionReport quotient_point_bijection_check(const StackyFan& f, const AdmissibleAction& act, const Quotient& q,
                                               const std::vector<SamplePoint>& samples, std::size_t bound) {
  BijectionReport report;
  const GluingIndex index(f);
  std::vector<std::vector<const ActionMove*>> moves_from(f.cells.size()), moves_to(f.cells.size());
  for (const auto& mv : act.moves) {
    moves_from[mv.source].push_back(&mv);
    moves_to[mv.target].push_back(&mv);
  }
  // Every point of a computed orbit is labelled with the orbit id, so later
  // samples landing in a known orbit are looked up instead of re-explored.
  std::map<OpenPoint, int> orbit_of;
  std::map<OpenPoint, int> key_to_orbit;
  std::map<int, OpenPoint> orbit_to_key;
  for (const auto& s : samples) {
    ++report.samples;
    OpenPoint start{s.cell, s.coords};
    int id;
    if (auto it = orbit_of.find(start); it != orbit_of.end()) {
      id = it->second;
    } else {
      id = static_cast<int>(report.orbits++);
      std::deque<OpenPoint> queue{start};
      orbit_of[start] = id;
      std::size_t size = 1;
      auto visit = [&](int c, RatVector y) {
        OpenPoint p{c, std::move(y)};
        if (orbit_of.count(p)) return;
        const Location where = f.cells[c].cone.locate(p.coords).where;
        if (where == Location::outside || where == Location::removed) return;
        if (++size > bound) throw Error("orbit_bound", "orbit exceeds the bound without stabilizing");
        orbit_of[p] = id;
        queue.push_back(std::move(p));
      };
      while (!queue.empty()) {
        const OpenPoint p = queue.front();
        queue.pop_front();
        index.for_each_neighbor(p.cell, p.coords, visit);
        for (const ActionMove* mv : moves_from[p.cell]) visit(mv->target, times(mv->matrix, p.coords));
        for (const ActionMove* mv : moves_to[p.cell])
          visit(mv->source, to_rational(inverse_unimodular(mv->matrix)) * p.coords);
      }
    }
    const OpenPoint key = quotient_point(index, q, s.cell, s.coords);
    const auto [kit, knew] = key_to_orbit.try_emplace(key, id);
    const auto [oit, onew] = orbit_to_key.try_emplace(id, key);
    if (kit->second != id || !(oit->second == key)) {
      report.ok = false;
      report.witness = "sample in cell " + std::to_string(s.cell) +
                       (kit->second != id ? " shares its quotient point with another orbit"
                                          : " maps to two quotient points within one orbit");
      return report;
    }
  }
  return report;
}

}  // namespace tropmod
