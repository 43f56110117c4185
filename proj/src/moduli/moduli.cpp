#include "tropmod/moduli/moduli.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "tropmod/error.hpp"
#include "tropmod/graphs/specialization.hpp"
#include "tropmod/stackyfan/ideal_cone.hpp"

namespace tropmod {

namespace {

using Pair = std::pair<int, int>;

// Calls f(weights) for every distribution of `deficit` over the vertices in
// which every vertex of valence below 3 gets positive weight.
template <typename F>
void for_each_weighting(const std::vector<int>& valence, int deficit, F&& f) {
  const std::size_t n = valence.size();
  std::vector<int> w(n, 0);
  auto rec = [&](auto&& self, std::size_t v, int left) -> void {
    if (v == n) {
      if (left == 0) f(w);
      return;
    }
    const int lo = valence[v] < 3 ? 1 : 0;
    for (int k = lo; k <= left; ++k) {
      w[v] = k;
      self(self, v + 1, left - k);
    }
    w[v] = 0;
  };
  rec(rec, 0, deficit);
}

void insert_class(std::map<std::string, WeightedGraph>& found, const WeightedGraph& g) {
  if (!is_stable(g)) return;
  const CanonicalForm cf = canonical_form(g);
  found.emplace(cf.key, cf.graph);
}

Catalogue finish(int genus, std::map<std::string, WeightedGraph> found) {
  std::vector<std::pair<std::string, WeightedGraph>> items(found.begin(), found.end());
  std::stable_sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    if (a.second.num_edges() != b.second.num_edges()) return a.second.num_edges() < b.second.num_edges();
    if (a.second.num_vertices() != b.second.num_vertices()) return a.second.num_vertices() < b.second.num_vertices();
    return a.first < b.first;
  });
  Catalogue cat;
  cat.genus = genus;
  for (auto& [key, g] : items) {
    cat.index[key] = static_cast<int>(cat.graphs.size());
    cat.keys.push_back(key);
    cat.graphs.push_back(std::move(g));
  }
  return cat;
}

IntMatrix permutation_matrix(const std::vector<int>& image) {
  IntMatrix p(image.size(), image.size());
  for (std::size_t e = 0; e < image.size(); ++e) p(image[e], e) = 1;
  return p;
}

StackyFan assemble(const Catalogue& c, bool pure) {
  StackyFan fan;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const WeightedGraph& g = c.graphs[i];
    std::vector<FaceMask> removed;
    if (pure) {
      for (const auto& zero : all_subsets(g.num_edges()))
        if (contains_cycle(g, zero)) {
          FaceMask keep = 0;
          for (int e = 0; e < static_cast<int>(g.num_edges()); ++e)
            if (std::find(zero.begin(), zero.end(), e) == zero.end()) keep |= FaceMask{1} << e;
          removed.push_back(keep);
        }
    }
    fan.add_cell(c.keys[i], orthant(g.num_edges(), removed));
  }
  for (std::size_t i = 0; i < c.size(); ++i) {
    const WeightedGraph& g = c.graphs[i];
    for (const auto& a : automorphisms(g)) fan.add_map(static_cast<int>(i), static_cast<int>(i), permutation_matrix(a.edge_map));
    for (const auto& s : all_subsets(g.num_edges())) {
      if (s.empty()) continue;
      if (pure && contains_cycle(g, s)) continue;
      const Contraction con = contract(g, s);
      const CanonicalForm cf = canonical_form(con.graph);
      const auto it = c.index.find(cf.key);
      if (it == c.index.end()) throw Error("internal", "specialization missing from the catalogue");
      IntMatrix m(g.num_edges(), con.graph.num_edges());
      for (int e = 0; e < static_cast<int>(g.num_edges()); ++e)
        if (con.edge_map[e] >= 0) m(e, cf.map.edge_map[con.edge_map[e]]) = 1;
      fan.add_map(it->second, static_cast<int>(i), std::move(m));
    }
  }
  return fan;
}

}  // namespace

int Catalogue::find(const WeightedGraph& g) const {
  const auto it = index.find(canonical_form(g).key);
  return it == index.end() ? -1 : it->second;
}

Catalogue enumerate_stable(int g) {
  if (g < 1 || g > kMaxEnumerationGenus) throw Error("too_large", "genus outside the supported range 1..4");
  const int max_edges = std::max(3 * g - 3, 1);
  const int max_vertices = std::max(2 * g - 2, 1);
  std::map<std::string, WeightedGraph> found;
  // Edges are listed in increasing (min, max) order and may introduce only
  // the next unused vertex, which every breadth-first labeling satisfies.
  std::vector<Pair> edges;
  auto emit = [&](int used) {
    const int v = used;
    const int betti = static_cast<int>(edges.size()) - v + 1;
    if (betti > g) return;
    std::vector<int> valence(v, 0);
    for (const auto& [a, b] : edges) {
      ++valence[a];
      ++valence[b];
    }
    std::vector<Edge> list;
    for (const auto& [a, b] : edges) list.push_back({a, b});
    for_each_weighting(valence, g - betti, [&](const std::vector<int>& w) {
      insert_class(found, WeightedGraph(w, list));
    });
  };
  auto rec = [&](auto&& self, int used) -> void {
    emit(used);
    if (static_cast<int>(edges.size()) == max_edges) return;
    const Pair last = edges.empty() ? Pair{0, 0} : edges.back();
    for (int a = last.first; a < used; ++a)
      for (int b = (a == last.first ? last.second : a); b <= used && b < max_vertices; ++b) {
        // b == used introduces a new vertex.
        edges.push_back({a, b});
        self(self, std::max(used, b + 1));
        edges.pop_back();
      }
  };
  rec(rec, 1);
  return finish(g, std::move(found));
}

Catalogue pure_part(const Catalogue& c) {
  std::map<std::string, WeightedGraph> found;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c.graphs[i].total_weight() == 0) found.emplace(c.keys[i], c.graphs[i]);
  return finish(c.genus, std::move(found));
}

StackyFan build_moduli_fan(const Catalogue& c) { return assemble(c, false); }
StackyFan build_moduli_fan(int g) { return build_moduli_fan(enumerate_stable(g)); }
StackyFan pure_subfan(const Catalogue& c) { return assemble(pure_part(c), true); }
StackyFan pure_subfan(int g) { return pure_subfan(enumerate_stable(g)); }

Located locate(const Catalogue& c, const WeightedGraph& g, const RatVector& lengths) {
  if (!g.is_connected() || !is_stable(g)) throw Error("unstable", "curve is not a stable weighted graph");
  if (lengths.size() != g.num_edges()) throw Error("bad_lengths", "one length per edge is required");
  for (const auto& l : lengths)
    if (sgn(l) <= 0) throw Error("bad_lengths", "edge lengths must be positive");
  const CanonicalForm cf = canonical_form(g);
  const auto it = c.index.find(cf.key);
  if (it == c.index.end()) throw Error("wrong_genus", "curve is not in this catalogue");
  RatVector canon(lengths.size());
  for (std::size_t e = 0; e < lengths.size(); ++e) canon[cf.map.edge_map[e]] = lengths[e];
  Located out{it->second, canon};
  for (const auto& a : automorphisms(cf.graph)) {
    RatVector moved(canon.size());
    for (std::size_t e = 0; e < canon.size(); ++e) moved[a.edge_map[e]] = canon[e];
    if (moved < out.coords) out.coords = std::move(moved);
  }
  return out;
}

std::vector<std::pair<int, int>> covering_relations(const Catalogue& c) {
  std::set<std::pair<int, int>> rel;
  for (std::size_t i = 0; i < c.size(); ++i)
    for (int e = 0; e < static_cast<int>(c.graphs[i].num_edges()); ++e)
      rel.insert({static_cast<int>(i), c.find(contract(c.graphs[i], {e}).graph)});
  return {rel.begin(), rel.end()};
}

std::string hasse_dot(const Catalogue& c) {
  std::ostringstream os;
  os << "digraph specializations {\n";
  for (std::size_t i = 0; i < c.size(); ++i)
    os << "  c" << i << " [label=\"" << i << ": |E|=" << c.graphs[i].num_edges()
       << " |V|=" << c.graphs[i].num_vertices() << " |w|=" << c.graphs[i].total_weight() << "\"];\n";
  for (const auto& [a, b] : covering_relations(c)) os << "  c" << a << " -> c" << b << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace tropmod
