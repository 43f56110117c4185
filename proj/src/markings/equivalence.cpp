#include "tropmod/markings/equivalence.hpp"

#include <algorithm>
#include <functional>

#include "tropmod/error.hpp"
#include "tropmod/graphs/specialization.hpp"
#include "tropmod/markings/word.hpp"

namespace tropmod {

namespace {

std::vector<GraphMap> base_isomorphisms(const WeightedGraph& a, const WeightedGraph& b) {
  const auto first = find_isomorphism(a, b);
  if (!first) return {};
  std::vector<GraphMap> out;
  for (const auto& aut : automorphisms(a)) out.push_back(compose(aut, *first));
  return out;
}

// Expands a family of maps by independent sign choices on the listed edges.
std::vector<GraphMap> with_flips(std::vector<GraphMap> maps, const std::vector<int>& edges) {
  for (int e : edges) {
    const std::size_t n = maps.size();
    for (std::size_t k = 0; k < n; ++k) {
      GraphMap f = maps[k];
      f.edge_sign[e] = -f.edge_sign[e];
      maps.push_back(std::move(f));
    }
  }
  return maps;
}

std::vector<int> base_loops(const WeightedGraph& g) {
  std::vector<int> out;
  for (int e = 0; e < static_cast<int>(g.num_edges()); ++e)
    if (g.is_loop(e)) out.push_back(e);
  return out;
}

WeightedGraph unweighted(const WeightedGraph& g) {
  return WeightedGraph(std::vector<int>(g.num_vertices(), 0), g.edges());
}

// The loop graph used for weak comparison: the base graph with no virtual loops.
VirtualGraph bare(const WeightedGraph& base) {
  return VirtualGraph{base, unweighted(base), {}};
}

std::size_t total_length(const std::vector<Word>& ws) {
  std::size_t n = 0;
  for (const auto& w : ws) n += w.size();
  return n;
}

// Finds u with u x_i u^{-1} = y_i for all i.
std::optional<Word> common_conjugator(const std::vector<Word>& xs, const std::vector<Word>& ys) {
  std::size_t pivot = xs.size();
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (!xs[i].empty()) {
      pivot = i;
      break;
    }
  auto works = [&](const Word& u) {
    const Word ui = inverse(u);
    for (std::size_t i = 0; i < xs.size(); ++i)
      if (concat(u, xs[i], ui) != ys[i]) return false;
    return true;
  };
  if (pivot == xs.size()) return works({}) ? std::optional<Word>(Word{}) : std::nullopt;
  const Conjugators c = conjugators(xs[pivot], ys[pivot]);
  // Every solution is u0 z^n; a word outside <z> forces |n| below this bound
  // because conjugating it by z^n grows its length linearly in |n|.
  const int bound = static_cast<int>(total_length(xs) + total_length(ys)) + 2;
  for (const auto& u0 : c.base) {
    const int n_max = bound + static_cast<int>(u0.size());
    for (int n = 0; n <= n_max; ++n)
      for (int s : {1, -1}) {
        if (n == 0 && s < 0) continue;
        const Word u = concat(u0, power(c.centralizer, s * n));
        if (works(u)) return u;
      }
  }
  return std::nullopt;
}

Path to_path(const std::vector<std::pair<int, int>>& steps) {
  Path p;
  for (auto [e, d] : steps) p.push_back({e, d});
  return p;
}

std::optional<EquivalenceWitness> search(const VirtualGraph& g1, int b1, const std::vector<Path>& p1,
                                         const VirtualGraph& g2, int b2, const std::vector<Path>& p2,
                                         const std::vector<GraphMap>& isos) {
  if (p1.size() != p2.size()) return std::nullopt;
  const FreeCoordinates fc = free_coordinates(g2);
  std::vector<Word> ys;
  for (const auto& q : p2) ys.push_back(path_word(fc, q));
  for (const auto& f : isos) {
    const int c = f.vertex_map[b1];
    const Path tau = to_path(tree_path(g2.graph, b2, c));
    const Path tau_inv = reverse_path(tau);
    std::vector<Word> xs;
    for (const auto& p : p1) {
      Path loop = tau;
      const Path mapped = map_path(f, p);
      loop.insert(loop.end(), mapped.begin(), mapped.end());
      loop.insert(loop.end(), tau_inv.begin(), tau_inv.end());
      xs.push_back(path_word(fc, loop));
    }
    if (auto u = common_conjugator(xs, ys)) return EquivalenceWitness{f, concat_paths(word_path(g2, fc, b2, *u), tau)};
  }
  return std::nullopt;
}

}  // namespace

std::vector<GraphMap> virtual_isomorphisms(const VirtualGraph& a, const VirtualGraph& b) {
  std::vector<GraphMap> out;
  const std::size_t ne = a.graph.num_edges();
  for (const auto& f : with_flips(base_isomorphisms(a.base, b.base), base_loops(a.base))) {
    GraphMap ext{f.vertex_map, f.edge_map, f.edge_sign};
    ext.edge_map.resize(ne, -1);
    ext.edge_sign.resize(ne, 1);
    std::vector<GraphMap> family{ext};
    for (int v = 0; v < static_cast<int>(a.base.num_vertices()); ++v) {
      auto src = a.loops_at(v);
      const auto dst = b.loops_at(f.vertex_map[v]);
      std::vector<GraphMap> next;
      std::vector<int> perm(dst.size());
      for (std::size_t k = 0; k < perm.size(); ++k) perm[k] = static_cast<int>(k);
      do {
        for (auto g : family) {
          for (std::size_t k = 0; k < src.size(); ++k) g.edge_map[src[k]] = dst[perm[k]];
          next.push_back(std::move(g));
        }
      } while (std::next_permutation(perm.begin(), perm.end()));
      family = with_flips(std::move(next), src);
    }
    out.insert(out.end(), family.begin(), family.end());
  }
  return out;
}

Path map_path(const GraphMap& f, const Path& p) {
  Path out;
  for (const auto& s : p) out.push_back({f.edge_map[s.edge], s.dir * f.edge_sign[s.edge]});
  return out;
}

std::vector<Path> erase_virtual(const Marking& m) {
  std::vector<Path> out;
  for (const auto& p : m.petals) {
    Path q;
    for (const auto& s : p)
      if (!m.target.is_virtual(s.edge)) q.push_back(s);
    out.push_back(tighten(q));
  }
  return out;
}

std::optional<EquivalenceWitness> find_equivalence(const Marking& m1, const Marking& m2, EquivalenceMode mode) {
  if (!find_isomorphism(m1.base(), m2.base()))
    throw Error("graph_mismatch", "markings live on non-isomorphic weighted graphs");
  if (mode == EquivalenceMode::strict)
    return search(m1.target, m1.basepoint, m1.petals, m2.target, m2.basepoint, m2.petals,
                  virtual_isomorphisms(m1.target, m2.target));
  const auto isos = with_flips(base_isomorphisms(m1.base(), m2.base()), base_loops(m1.base()));
  return search(bare(m1.base()), m1.basepoint, erase_virtual(m1), bare(m2.base()), m2.basepoint, erase_virtual(m2),
                isos);
}

bool markings_equivalent(const Marking& m1, const Marking& m2, EquivalenceMode mode) {
  return find_equivalence(m1, m2, mode).has_value();
}

std::vector<MarkedFace> cell_star(const Marking& m) {
  std::vector<MarkedFace> faces;
  for (const auto& s : all_subsets(m.base().num_edges())) {
    SpecializedMarking sp = specialize_marking(m, s);
    const std::string key = canonical_form(sp.marking.base()).key;
    bool placed = false;
    for (auto& f : faces)
      if (f.key == key && markings_equivalent(f.marking, sp.marking, EquivalenceMode::strict)) {
        f.subsets.push_back(s);
        placed = true;
        break;
      }
    if (!placed) faces.push_back(MarkedFace{s, std::move(sp.marking), key, {s}});
  }
  return faces;
}

}  // namespace tropmod
