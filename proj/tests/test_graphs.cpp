#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "tropmod/error.hpp"
#include "tropmod/graphs/graph_io.hpp"
#include "tropmod/graphs/isomorphism.hpp"
#include "tropmod/graphs/specialization.hpp"
#include "tropmod/ratlin/linalg.hpp"

using namespace tropmod;

namespace {

WeightedGraph tailed_theta() {
  // u=0, v=1, w=2; a,b,c: u->v; d: v->w; e: loop at w.
  return WeightedGraph({0, 0, 0}, {{0, 1}, {0, 1}, {0, 1}, {1, 2}, {2, 2}});
}

// Oracle: tries every vertex bijection and compares the endpoint multisets
// directly, with no canonical ordering involved.
bool brute_isomorphic(const WeightedGraph& a, const WeightedGraph& b) {
  if (a.num_vertices() != b.num_vertices() || a.num_edges() != b.num_edges()) return false;
  std::vector<int> perm(a.num_vertices());
  std::iota(perm.begin(), perm.end(), 0);
  auto pair_count = [](const WeightedGraph& g, const std::vector<int>& p) {
    std::map<std::pair<int, int>, int> m;
    for (const auto& e : g.edges()) {
      int x = p[e.tail], y = p[e.head];
      ++m[{std::min(x, y), std::max(x, y)}];
    }
    return m;
  };
  std::vector<int> id(b.num_vertices());
  std::iota(id.begin(), id.end(), 0);
  const auto target = pair_count(b, id);
  do {
    bool ok = true;
    for (std::size_t v = 0; v < perm.size() && ok; ++v) ok = a.weight(v) == b.weight(perm[v]);
    if (ok && pair_count(a, perm) == target) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

// Oracle for |Aut|: vertex automorphisms times the permutations of parallel
// edge bundles (loops included).
std::size_t brute_aut_order(const WeightedGraph& g) {
  std::vector<int> perm(g.num_vertices());
  std::iota(perm.begin(), perm.end(), 0);
  std::map<std::pair<int, int>, int> mult;
  for (const auto& e : g.edges()) ++mult[{std::min(e.tail, e.head), std::max(e.tail, e.head)}];
  std::size_t fixed = 1;
  for (auto& [k, m] : mult)
    for (int i = 2; i <= m; ++i) fixed *= i;
  std::size_t count = 0;
  do {
    bool ok = true;
    for (std::size_t v = 0; v < perm.size() && ok; ++v) ok = g.weight(v) == g.weight(perm[v]);
    if (!ok) continue;
    std::map<std::pair<int, int>, int> img;
    for (const auto& [k, m] : mult)
      img[{std::min(perm[k.first], perm[k.second]), std::max(perm[k.first], perm[k.second])}] = m;
    if (img == mult) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count * fixed;
}

WeightedGraph random_connected(std::mt19937& rng, int n, int extra) {
  std::vector<int> w(n);
  std::vector<Edge> edges;
  for (int v = 0; v < n; ++v) w[v] = static_cast<int>(rng() % 2);
  for (int v = 1; v < n; ++v) edges.push_back({static_cast<int>(rng() % v), v});
  for (int k = 0; k < extra; ++k) edges.push_back({static_cast<int>(rng() % n), static_cast<int>(rng() % n)});
  std::shuffle(edges.begin(), edges.end(), rng);
  return WeightedGraph(w, edges);
}

WeightedGraph shuffled(const WeightedGraph& g, std::mt19937& rng) {
  std::vector<int> p(g.num_vertices());
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  std::vector<int> w(g.num_vertices());
  for (std::size_t v = 0; v < p.size(); ++v) w[p[v]] = g.weight(v);
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) {
    Edge f{p[e.tail], p[e.head]};
    if (rng() % 2) std::swap(f.tail, f.head);
    edges.push_back(f);
  }
  std::shuffle(edges.begin(), edges.end(), rng);
  return WeightedGraph(w, edges);
}

}  // namespace

TEST_CASE("genus") {
  CHECK(genus(named::theta()) == 2);
  CHECK(genus(named::weighted_point(2)) == 2);
  CHECK(genus(tailed_theta()) == 3);
  CHECK_THROWS_AS(genus(WeightedGraph({0, 0}, {})), Error);
}

TEST_CASE("stability") {
  CHECK(is_stable(named::theta()));
  CHECK_FALSE(is_stable(WeightedGraph({0}, {{0, 0}})));
  CHECK(is_stable(WeightedGraph({1}, {{0, 0}})));
  CHECK(is_stable(tailed_theta()));
}

TEST_CASE("contraction examples") {
  const auto fig8 = named::figure_eight();
  CHECK(contract(named::dumbbell(), {2}).graph == fig8);
  CHECK(brute_isomorphic(contract(named::theta(), {0}).graph, fig8));
  CHECK(contract(fig8, {0}).graph == WeightedGraph({1}, {{0, 0}}));
  CHECK(contract(fig8, {0, 1}).graph == named::weighted_point(2));
  const auto c = contract(tailed_theta(), {0});
  CHECK(c.edge_map == std::vector<int>{-1, 0, 1, 2, 3});
  CHECK_THROWS_AS(contract(fig8, {5}), Error);
}

TEST_CASE("contraction order independence") {
  // Contracting S all at once equals contracting its edges one at a time.
  const auto g = tailed_theta();
  for (const auto& s : all_subsets(g.num_edges())) {
    Contraction step{g, {}, {}};
    std::vector<int> alive(g.num_edges());
    std::iota(alive.begin(), alive.end(), 0);
    for (auto it = s.rbegin(); it != s.rend(); ++it) {
      const auto next = contract(step.graph, {alive[*it]});
      for (auto& a : alive)
        if (a >= 0) a = next.edge_map[a];
      step = next;
    }
    CHECK(brute_isomorphic(step.graph, contract(g, s).graph));
  }
}

TEST_CASE("genus and stability preserved under contraction") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const auto g = random_connected(rng, 1 + static_cast<int>(rng() % 4), static_cast<int>(rng() % 4));
    for (const auto& s : all_subsets(g.num_edges())) {
      const auto c = contract(g, s).graph;
      CHECK(genus(c) == genus(g));
      if (is_stable(g)) CHECK(is_stable(c));
    }
  }
}

TEST_CASE("specializations") {
  const auto fig8 = specializations(named::figure_eight());
  REQUIRE(fig8.size() == 3);
  CHECK(fig8[0].subset.empty());
  CHECK(brute_isomorphic(fig8[1].graph, WeightedGraph({1}, {{0, 0}})));
  CHECK(brute_isomorphic(fig8[2].graph, named::weighted_point(2)));

  const auto theta = specializations(named::theta());
  REQUIRE(theta.size() == 4);
  CHECK(brute_isomorphic(theta[1].graph, named::figure_eight()));
  CHECK(brute_isomorphic(theta[2].graph, WeightedGraph({1}, {{0, 0}})));
  CHECK(brute_isomorphic(theta[3].graph, named::weighted_point(2)));
  std::size_t total = 0;
  for (const auto& s : theta) total += s.count;
  CHECK(total == 8);

  CHECK(specializations(named::weighted_point(2)).size() == 1);
}

TEST_CASE("automorphism group orders") {
  CHECK(automorphisms(named::theta()).size() == 12);
  CHECK(edge_permutation_group(named::theta()).size() == 6);
  CHECK(edge_permutation_group(named::dumbbell()).size() == 2);
  CHECK(automorphisms(named::weighted_point(2)).size() == 1);
  for (const auto& a : automorphisms(named::dumbbell())) CHECK(a.edge_map[2] == 2);
  std::mt19937 rng(11);
  for (int trial = 0; trial < 80; ++trial) {
    const auto g = random_connected(rng, 1 + static_cast<int>(rng() % 5), static_cast<int>(rng() % 4));
    CHECK(automorphisms(g).size() == brute_aut_order(g));
    for (const auto& a : automorphisms(g)) CHECK(relabel(g, a) == g);
  }
  CHECK_THROWS_AS(canonical_form(WeightedGraph(std::vector<int>(13, 1), [] {
                    std::vector<Edge> e;
                    for (int v = 1; v < 13; ++v) e.push_back({0, v});
                    return e;
                  }())),
                  Error);
}

TEST_CASE("canonical form is a complete invariant") {
  std::mt19937 rng(3);
  std::vector<WeightedGraph> pool;
  for (int trial = 0; trial < 40; ++trial) {
    const auto g = random_connected(rng, 1 + static_cast<int>(rng() % 4), static_cast<int>(rng() % 3));
    pool.push_back(g);
    pool.push_back(shuffled(g, rng));
  }
  for (const auto& a : pool)
    for (const auto& b : pool) {
      const bool same = canonical_form(a).key == canonical_form(b).key;
      CHECK(same == brute_isomorphic(a, b));
      if (same) {
        const auto iso = find_isomorphism(a, b);
        REQUIRE(iso.has_value());
        CHECK(relabel(a, *iso) == b);
      }
    }
  for (const auto& g : pool) {
    const auto cf = canonical_form(g);
    CHECK(relabel(g, cf.map) == cf.graph);
  }
}

TEST_CASE("cycle basis") {
  const auto theta = cycle_basis(named::theta());
  CHECK(theta.to_rows() == std::vector<IntVector>{{-1, 1, 0}, {-1, 0, 1}});
  CHECK(cycle_basis(named::figure_eight()) == IntMatrix::identity(2));
  CHECK(cycle_basis(WeightedGraph({1, 1}, {{0, 1}})).rows() == 0);
  // Each row is a cycle (zero boundary) and the rows form a lattice basis.
  std::mt19937 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const auto g = random_connected(rng, 1 + static_cast<int>(rng() % 5), 1 + static_cast<int>(rng() % 4));
    const auto c = cycle_basis(g);
    CHECK(static_cast<int>(c.rows()) == g.first_betti());
    for (std::size_t r = 0; r < c.rows(); ++r) {
      std::vector<Integer> boundary(g.num_vertices());
      for (std::size_t e = 0; e < g.num_edges(); ++e) {
        boundary[g.edge(e).head] += c(r, e);
        boundary[g.edge(e).tail] -= c(r, e);
      }
      for (const auto& b : boundary) CHECK(b == 0);
    }
    if (c.rows() > 0) {
      const auto inv = smith_invariants(c);
      CHECK(inv.size() == c.rows());
      for (const auto& d : inv) CHECK(d == 1);
    }
  }
}

TEST_CASE("virtual graph") {
  const auto rose = virtual_graph(named::weighted_point(2));
  CHECK(rose.graph.num_edges() == 2);
  CHECK(rose.graph.first_betti() == 2);
  CHECK(virtual_graph(named::figure_eight()).graph == named::figure_eight());
  const auto v = virtual_graph(WeightedGraph({1}, {{0, 0}}));
  CHECK(v.graph.num_edges() == 2);
  CHECK_FALSE(v.is_virtual(0));
  CHECK(v.is_virtual(1));
  CHECK(v.loops_at(0) == std::vector<int>{1});
  CHECK(v.graph.first_betti() == genus(v.base));
}

TEST_CASE("json and dot") {
  const auto g = tailed_theta();
  CHECK(graph_from_json(graph_to_json(g)) == g);
  const auto j = nlohmann::json::parse(R"({"vertices":[{"id":1,"weight":0},{"id":0,"weight":2}],
                                          "edges":[{"id":0,"ends":[0,1]}]})");
  CHECK(graph_from_json(j) == WeightedGraph({2, 0}, {{0, 1}}));
  CHECK_THROWS_AS(graph_from_json(nlohmann::json::parse(R"({"vertices":[{"id":3,"weight":0}],"edges":[]})")), Error);
  CHECK_THROWS_AS(graph_from_json(nlohmann::json::parse(R"({"vertices":[{"id":0,"weight":0},{"id":1,"weight":0}],"edges":[]})")), Error);
  CHECK(graph_to_dot(named::theta()).find("v0 -- v1") != std::string::npos);
}
