#include "tropmod/markings/teichmuller.hpp"

#include <map>
#include <set>

#include "tropmod/error.hpp"
#include "tropmod/graphs/specialization.hpp"
#include "tropmod/moduli/moduli.hpp"

namespace tropmod {

namespace {

struct Builder {
  TeichmullerPatch patch;
  std::map<std::string, std::vector<int>> by_key;

  // Index of the cell weakly equivalent to m, with the base isomorphism from
  // that cell to m; adds a cell when none matches.
  std::pair<int, GraphMap> find_or_add(const Marking& m) {
    const std::string key = canonical_form(m.base()).key;
    for (int c : by_key[key])
      if (auto w = find_equivalence(patch.cells[c].marking, m, EquivalenceMode::weak)) return {c, w->iso};
    const int c = patch.fan.add_cell(key, orthant(m.base().num_edges()));
    patch.cells.push_back(MarkedCell{m, key});
    by_key[key].push_back(c);
    return {c, identity_map(m.base())};
  }
};

// Extends a base isomorphism to the virtual graphs, matching virtual loops in
// order with no reversal.
GraphMap extend_to_virtual(const GraphMap& f, const VirtualGraph& a, const VirtualGraph& b) {
  GraphMap ext = f;
  ext.edge_map.resize(a.graph.num_edges(), -1);
  ext.edge_sign.resize(a.graph.num_edges(), 1);
  for (int v = 0; v < static_cast<int>(a.base.num_vertices()); ++v) {
    const auto src = a.loops_at(v), dst = b.loops_at(f.vertex_map[v]);
    for (std::size_t k = 0; k < src.size(); ++k) ext.edge_map[src[k]] = dst[k];
  }
  return ext;
}

// Petal words of f(m) read at the basepoint of `target`.
std::vector<Word> mapped_words(const Marking& m, const GraphMap& f, const Marking& target,
                               const FreeCoordinates& fc) {
  Path tau;
  for (auto [e, d] : tree_path(target.target.graph, target.basepoint, f.vertex_map[m.basepoint]))
    tau.push_back({e, d});
  const Path back = reverse_path(tau);
  std::vector<Word> out;
  for (const auto& p : m.petals) {
    Path loop = tau;
    const Path mapped = map_path(f, p);
    loop.insert(loop.end(), mapped.begin(), mapped.end());
    loop.insert(loop.end(), back.begin(), back.end());
    out.push_back(path_word(fc, loop));
  }
  return out;
}

IntMatrix coordinate_map(const GraphMap& f, std::size_t target_dim) {
  IntMatrix m(target_dim, f.edge_map.size());
  for (std::size_t e = 0; e < f.edge_map.size(); ++e) m(f.edge_map[e], e) = 1;
  return m;
}

}  // namespace

std::vector<NielsenMove> elementary_moves(int g) {
  std::vector<NielsenMove> out;
  for (int i = 0; i < g; ++i) out.push_back({NielsenMove::Kind::invert, i, 0});
  for (int i = 0; i + 1 < g; ++i) out.push_back({NielsenMove::Kind::swap, i, i + 1});
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j)
      if (i != j) out.push_back({NielsenMove::Kind::multiply, i, j});
  return out;
}

TeichmullerPatch teichmuller_patch(int g, const PatchOptions& opts) {
  Builder b;
  const Catalogue cat = enumerate_stable(g);
  const auto moves = elementary_moves(g);
  for (const auto& graph : cat.graphs) {
    if (static_cast<int>(graph.num_edges()) != std::max(3 * g - 3, 1) || graph.total_weight() != 0) continue;
    std::vector<Marking> frontier{standard_marking(graph)};
    b.find_or_add(frontier.front());
    for (int d = 0; d < opts.depth; ++d) {
      std::vector<Marking> next;
      for (const auto& m : frontier)
        for (const auto& mv : moves) {
          Marking img = apply_auto(m, {mv});
          const std::size_t before = b.patch.cells.size();
          b.find_or_add(img);
          if (b.patch.cells.size() > before) next.push_back(std::move(img));
        }
      frontier = std::move(next);
    }
  }

  // Close under specialization; new cells are appended and processed later.
  for (std::size_t c = 0; c < b.patch.cells.size(); ++c) {
    const std::size_t ne = b.patch.cells[c].marking.base().num_edges();
    for (const auto& s : all_subsets(ne)) {
      if (s.empty()) continue;
      const SpecializedMarking sp = specialize_marking(b.patch.cells[c].marking, s);
      const auto [face, iso] = b.find_or_add(sp.marking);
      // Coordinate of edge e of c is that of the face edge landing on its image.
      const std::size_t fd = b.patch.cells[face].marking.base().num_edges();
      IntMatrix m(ne, fd);
      for (std::size_t f = 0; f < fd; ++f)
        for (std::size_t e = 0; e < ne; ++e)
          if (sp.contraction.edge_map[e] == iso.edge_map[f]) m(e, f) = 1;
      b.patch.fan.add_map(face, static_cast<int>(c), std::move(m));
    }
  }

  // Moves to the first cell of each class, one per base isomorphism.
  for (const auto& [key, members] : b.by_key) {
    const Marking& root = b.patch.cells[members.front()].marking;
    const FreeCoordinates fc = free_coordinates(root.target);
    std::vector<Word> target_words;
    for (const auto& p : root.petals) target_words.push_back(path_word(fc, p));
    for (int c : members) {
      const Marking& m = b.patch.cells[c].marking;
      const auto first = find_isomorphism(m.base(), root.base());
      std::set<std::vector<int>> seen;
      for (const auto& aut : automorphisms(m.base())) {
        const GraphMap f = compose(aut, *first);
        if (!seen.insert(f.edge_map).second) continue;
        const GraphMap fw = extend_to_virtual(f, m.target, root.target);
        const std::vector<Word> images = express_in_basis(mapped_words(m, fw, root, fc), target_words);
        if (mapped_words(apply_words(m, images), fw, root, fc) != target_words)
          throw Error("internal", "automorphism does not carry the marking onto its class representative");
        b.patch.action.moves.push_back(ActionMove{static_cast<int>(b.patch.action.moves.size()), c, members.front(),
                                                  coordinate_map(f, root.base().num_edges())});
        b.patch.move_words.push_back(images);
      }
    }
  }
  b.patch.action.num_generators = b.patch.action.moves.size();
  return b.patch;
}

}  // namespace tropmod
