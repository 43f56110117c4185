#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "tropmod/error.hpp"
#include "tropmod/graphs/specialization.hpp"
#include "tropmod/moduli/moduli.hpp"

using namespace tropmod;
using namespace oracle;

namespace {

std::multiset<std::size_t> dims_of(const StackyFan& f) {
  std::multiset<std::size_t> d;
  for (const auto& c : f.cells) d.insert(c.cone.dim());
  return d;
}

}  // namespace

TEST_CASE("enumeration matches the brute-force oracle") {
  for (int g : {1, 2, 3}) {
    const auto oracle = oracle_classes(g);
    const auto cat = enumerate_stable(g);
    CHECK(cat.size() == oracle.size());
    for (const auto& r : oracle) CHECK(cat.find(to_weighted(r)) >= 0);
    std::size_t pure = 0;
    for (const auto& r : oracle) pure += std::all_of(r.w.begin(), r.w.end(), [](int w) { return w == 0; });
    CHECK(pure_part(cat).size() == pure);
  }
}

TEST_CASE("genus two catalogue") {
  const auto cat = enumerate_stable(2);
  REQUIRE(cat.size() == 7);
  const std::vector<WeightedGraph> expected = {
      named::weighted_point(2),
      WeightedGraph({1}, {{0, 0}}),
      WeightedGraph({1, 1}, {{0, 1}}),
      named::figure_eight(),
      WeightedGraph({0, 1}, {{0, 0}, {0, 1}}),
      named::theta(),
      named::dumbbell(),
  };
  std::set<int> hit;
  for (const auto& g : expected) hit.insert(cat.find(g));
  CHECK(hit.size() == 7);
  CHECK(hit.count(-1) == 0);
  const auto pure = pure_part(cat);
  CHECK(pure.size() == 3);
  CHECK(pure.find(named::theta()) >= 0);
  CHECK(pure.find(named::dumbbell()) >= 0);
  CHECK(pure.find(named::figure_eight()) >= 0);
  CHECK(enumerate_stable(1).size() == 1);
  CHECK_THROWS_AS(enumerate_stable(5), Error);
  CHECK_THROWS_AS(enumerate_stable(0), Error);
}

TEST_CASE("genus three self-consistency") {
  const auto cat = enumerate_stable(3);
  std::size_t maximal = 0;
  for (const auto& g : cat.graphs) {
    CHECK(genus(g) == 3);
    CHECK(is_stable(g));
    CHECK(g.num_edges() <= 6);
    maximal += g.num_edges() == 6;
  }
  CHECK(maximal == 5);
  // Every class is a contraction of a six-edge class.
  std::set<int> reached;
  for (const auto& g : cat.graphs)
    if (g.num_edges() == 6)
      for (const auto& s : specializations(g)) reached.insert(cat.find(s.graph));
  CHECK(reached.size() == cat.size());
  CHECK(reached.count(-1) == 0);
}

TEST_CASE("moduli fan genus two") {
  const auto fan = build_moduli_fan(2);
  CHECK(dims_of(fan) == std::multiset<std::size_t>{0, 1, 1, 2, 2, 3, 3});
  const auto report = validate_fan(fan, {.samples_per_face = 3});
  CHECK(report.ok());
  const auto cat = enumerate_stable(2);
  const int fig8 = cat.find(named::figure_eight());
  for (const auto& top : {named::theta(), named::dumbbell()}) {
    const int t = cat.find(top);
    CHECK(std::any_of(fan.maps.begin(), fan.maps.end(),
                      [&](const FaceMap& m) { return m.source == fig8 && m.target == t; }));
  }
  CHECK(self_map_group(fan, cat.find(named::theta())).size() == 6);
  CHECK(self_map_group(fan, cat.find(named::dumbbell())).size() == 2);
  CHECK(build_moduli_fan(1).num_cells() == 1);
  CHECK(build_moduli_fan(1).cells[0].cone.dim() == 0);
}

TEST_CASE("moduli fan maps are closed under composition") {
  const auto fan = build_moduli_fan(2);
  const auto sets = closed_map_sets(fan);
  for (const auto& [ab, first] : sets)
    for (const auto& [bc, second] : sets) {
      if (ab.second != bc.first || ab.first == bc.second) continue;
      const auto target = sets.find({ab.first, bc.second});
      REQUIRE(target != sets.end());
      for (const auto& m1 : first)
        for (const auto& m2 : second) CHECK(target->second.count(m2 * m1) == 1);
    }
}

TEST_CASE("moduli fan genus three validates") {
  const auto fan = build_moduli_fan(3);
  CHECK(fan.num_cells() == 42);
  for (const auto& c : fan.cells) CHECK(c.cone.dim() <= 6);
  const auto report = validate_fan(fan, {.max_faces = 120});
  CHECK(report.ok());
  CHECK(report.points_sampled == 120);
  if (!report.ok()) MESSAGE(report.violations[0].condition << " " << report.violations[0].witness);
}

TEST_CASE("pure subfan") {
  const auto fan = pure_subfan(2);
  REQUIRE(fan.num_cells() == 3);
  const auto pure = pure_part(enumerate_stable(2));
  const auto& theta = fan.cells[pure.find(named::theta())].cone;
  // Only faces where at most one edge vanishes survive.
  CHECK(theta.retained_faces().size() == 4);
  for (FaceMask f : theta.retained_faces()) CHECK(mask_members(f).size() >= 2);
  const WeightedGraph& db = pure.graphs[pure.find(named::dumbbell())];
  const auto& dumbbell = fan.cells[pure.find(named::dumbbell())].cone;
  CHECK(dumbbell.retained_faces().size() == 2);
  for (FaceMask f : dumbbell.faces()) {
    bool loop_vanishes = false;
    for (int e = 0; e < 3; ++e)
      if (db.is_loop(e) && !(f & (FaceMask{1} << e))) loop_vanishes = true;
    CHECK(dumbbell.is_removed(f) == loop_vanishes);
  }
  CHECK(validate_fan(fan, {.samples_per_face = 3}).ok());
  CHECK(pure_subfan(1).num_cells() == 0);
  CHECK(validate_fan(pure_subfan(3), {.max_faces = 80}).ok());
}

TEST_CASE("locate") {
  const auto cat = enumerate_stable(2);
  const auto a = locate(cat, named::theta(), {1, 2, 3});
  const auto b = locate(cat, named::theta(), {3, 1, 2});
  CHECK(a.cell == b.cell);
  CHECK(a.coords == b.coords);
  CHECK(a.cell == cat.find(named::theta()));
  const auto f = locate(cat, named::figure_eight(), {5, 7});
  CHECK(f.cell == cat.find(named::figure_eight()));
  CHECK(f.coords == RatVector{5, 7});
  CHECK_THROWS_AS(locate(cat, WeightedGraph({0, 0, 0}, {{0, 1}, {0, 1}, {0, 2}, {1, 2}}), {1, 1, 1, 1}), Error);
  CHECK_THROWS_AS(locate(cat, named::theta(), {1, 0, 2}), Error);

  // Invariance under automorphisms for random lengths on every genus-3 class.
  const auto cat3 = enumerate_stable(3);
  std::mt19937 rng(1);
  for (const auto& g : cat3.graphs) {
    RatVector l(g.num_edges());
    for (auto& x : l) x = Rational(static_cast<long>(1 + rng() % 4));
    const auto base = locate(cat3, g, l);
    for (const auto& aut : automorphisms(g)) {
      RatVector moved(l.size());
      for (std::size_t e = 0; e < l.size(); ++e) moved[aut.edge_map[e]] = l[e];
      const auto other = locate(cat3, g, moved);
      CHECK(other.cell == base.cell);
      CHECK(other.coords == base.coords);
    }
  }
}

TEST_CASE("hasse diagram") {
  const auto cat = enumerate_stable(2);
  const auto rel = covering_relations(cat);
  for (const auto& [a, b] : rel) CHECK(cat.graphs[b].num_edges() + 1 == cat.graphs[a].num_edges());
  CHECK(hasse_dot(cat).find("digraph") == 0);
}
