#include "tropmod/markings/marking.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

#include "tropmod/error.hpp"

namespace tropmod {

int step_start(const WeightedGraph& g, const Step& s) {
  return s.dir > 0 ? g.edge(s.edge).tail : g.edge(s.edge).head;
}

int step_end(const WeightedGraph& g, const Step& s) {
  return s.dir > 0 ? g.edge(s.edge).head : g.edge(s.edge).tail;
}

void check_closed(const WeightedGraph& g, int basepoint, const Path& p) {
  if (basepoint < 0 || basepoint >= static_cast<int>(g.num_vertices()))
    throw Error("basepoint", "basepoint is not a vertex");
  int at = basepoint;
  for (const auto& s : p) {
    if (s.edge < 0 || s.edge >= static_cast<int>(g.num_edges()) || (s.dir != 1 && s.dir != -1))
      throw Error("bad_path", "path step refers to an unknown edge or direction");
    if (step_start(g, s) != at) {
      if (&s == &p.front()) throw Error("basepoint", "petal does not start at the basepoint");
      throw Error("bad_path", "consecutive steps do not meet");
    }
    at = step_end(g, s);
  }
  if (at != basepoint) throw Error("basepoint", "petal does not return to the basepoint");
}

Path tighten(const Path& p) {
  Path out;
  for (const auto& s : p) {
    if (!out.empty() && out.back().edge == s.edge && out.back().dir == -s.dir)
      out.pop_back();
    else
      out.push_back(s);
  }
  return out;
}

Path reverse_path(const Path& p) {
  Path out(p.rbegin(), p.rend());
  for (auto& s : out) s.dir = -s.dir;
  return out;
}

Path concat_paths(const Path& a, const Path& b) {
  Path out = a;
  out.insert(out.end(), b.begin(), b.end());
  return tighten(out);
}

namespace {

struct FoldEdge {
  int src, dst, label;
  bool alive = true;
};

int uf_find(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

// Removes non-root vertices of degree <= 1 until none remain; returns the
// surviving edge indices.
std::vector<int> trim(std::size_t num_vertices, const std::vector<std::pair<int, int>>& ends, int root) {
  std::vector<bool> alive(ends.size(), true);
  std::vector<int> degree(num_vertices, 0);
  for (const auto& [a, b] : ends) {
    ++degree[a];
    ++degree[b];
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t k = 0; k < ends.size(); ++k) {
      if (!alive[k]) continue;
      const auto [a, b] = ends[k];
      if ((a != root && degree[a] == 1) || (b != root && degree[b] == 1)) {
        alive[k] = false;
        --degree[a];
        --degree[b];
        changed = true;
      }
    }
  }
  std::vector<int> out;
  for (std::size_t k = 0; k < ends.size(); ++k)
    if (alive[k]) out.push_back(static_cast<int>(k));
  return out;
}

}  // namespace

bool validate_marking(const VirtualGraph& target, int basepoint, const std::vector<Path>& petals) {
  const WeightedGraph& g = target.graph;
  for (const auto& p : petals) check_closed(g, basepoint, p);
  if (!g.is_connected()) throw Error("disconnected", "target graph is not connected");
  if (static_cast<int>(petals.size()) != g.first_betti())
    throw Error("genus_mismatch", "number of petals differs from the genus of the virtual graph");

  // The wedge of petal loops, labelled by the edges they run over.
  std::vector<int> vmap{basepoint};
  std::vector<FoldEdge> edges;
  for (const auto& p0 : petals) {
    const Path p = tighten(p0);
    int cur = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      int next = 0;
      if (i + 1 < p.size()) {
        next = static_cast<int>(vmap.size());
        vmap.push_back(step_end(g, p[i]));
      }
      if (p[i].dir > 0)
        edges.push_back({cur, next, p[i].edge});
      else
        edges.push_back({next, cur, p[i].edge});
      cur = next;
    }
  }
  std::vector<int> parent(vmap.size());
  std::iota(parent.begin(), parent.end(), 0);
  bool changed = true;
  while (changed) {
    changed = false;
    std::map<std::tuple<int, int, int>, int> seen;  // (vertex, label, side) -> edge
    for (std::size_t k = 0; k < edges.size() && !changed; ++k) {
      if (!edges[k].alive) continue;
      const int s = uf_find(parent, edges[k].src), d = uf_find(parent, edges[k].dst);
      for (int side = 0; side < 2 && !changed; ++side) {
        const auto key = std::make_tuple(side == 0 ? s : d, edges[k].label, side);
        const auto [it, inserted] = seen.try_emplace(key, static_cast<int>(k));
        if (inserted) continue;
        const FoldEdge& other = edges[it->second];
        const int a = uf_find(parent, side == 0 ? other.dst : other.src);
        const int b = side == 0 ? d : s;
        parent[std::max(a, b)] = std::min(a, b);
        edges[k].alive = false;
        changed = true;
      }
    }
  }

  // Compact the folded graph and trim hanging trees on both sides.
  std::map<int, int> vid;
  auto vertex_id = [&](int v) {
    v = uf_find(parent, v);
    return vid.try_emplace(v, static_cast<int>(vid.size())).first->second;
  };
  const int root = vertex_id(0);
  std::vector<std::pair<int, int>> fends;
  std::vector<int> labels;
  for (const auto& e : edges)
    if (e.alive) {
      fends.push_back({vertex_id(e.src), vertex_id(e.dst)});
      labels.push_back(e.label);
    }
  std::vector<int> image(vid.size(), -1);
  for (const auto& [v, id] : vid) image[id] = vmap[v];
  const auto kept = trim(vid.size(), fends, root);

  std::vector<std::pair<int, int>> gends;
  for (const auto& e : g.edges()) gends.push_back({e.tail, e.head});
  const auto gkept = trim(g.num_vertices(), gends, basepoint);

  std::set<int> folded_labels, folded_vertices{root}, image_vertices{image[root]};
  for (int k : kept) {
    if (!folded_labels.insert(labels[k]).second) return false;
    for (int v : {fends[k].first, fends[k].second})
      if (folded_vertices.insert(v).second && !image_vertices.insert(image[v]).second) return false;
  }
  std::set<int> target_edges(gkept.begin(), gkept.end()), target_vertices{basepoint};
  for (int k : gkept) {
    target_vertices.insert(gends[k].first);
    target_vertices.insert(gends[k].second);
  }
  return folded_labels == target_edges && image_vertices == target_vertices;
}

Marking make_marking(const VirtualGraph& target, int basepoint, std::vector<Path> petals) {
  for (auto& p : petals) p = tighten(p);
  if (!validate_marking(target, basepoint, petals))
    throw Error("invalid_marking", "petals do not form a homotopy equivalence");
  return Marking{target, basepoint, std::move(petals)};
}

FreeCoordinates free_coordinates(const VirtualGraph& vg) {
  FreeCoordinates fc;
  fc.tree = spanning_tree(vg.graph);
  fc.edge_letter.assign(vg.graph.num_edges(), -1);
  std::vector<bool> in_tree(vg.graph.num_edges(), false);
  for (int e : fc.tree) in_tree[e] = true;
  for (int e = 0; e < static_cast<int>(vg.graph.num_edges()); ++e)
    if (!in_tree[e]) {
      fc.edge_letter[e] = static_cast<int>(fc.letter_edge.size());
      fc.letter_edge.push_back(e);
    }
  return fc;
}

Word path_word(const FreeCoordinates& fc, const Path& p) {
  Word w;
  for (const auto& s : p)
    if (fc.edge_letter[s.edge] >= 0) w.push_back(s.dir * (fc.edge_letter[s.edge] + 1));
  return reduce(w);
}

Path word_path(const VirtualGraph& vg, const FreeCoordinates& fc, int basepoint, const Word& w) {
  const WeightedGraph& g = vg.graph;
  Path out;
  for (int letter : w) {
    const int f = fc.letter_edge[std::abs(letter) - 1];
    Path loop;
    for (auto [e, d] : tree_path(g, basepoint, g.edge(f).tail)) loop.push_back({e, d});
    loop.push_back({f, 1});
    for (auto [e, d] : tree_path(g, g.edge(f).head, basepoint)) loop.push_back({e, d});
    if (letter < 0) loop = reverse_path(loop);
    out.insert(out.end(), loop.begin(), loop.end());
  }
  return tighten(out);
}

Marking standard_marking(const WeightedGraph& g, int basepoint) {
  const VirtualGraph vg = virtual_graph(g);
  const FreeCoordinates fc = free_coordinates(vg);
  std::vector<Path> petals;
  for (std::size_t k = 0; k < fc.letter_edge.size(); ++k)
    petals.push_back(word_path(vg, fc, basepoint, {static_cast<int>(k) + 1}));
  return make_marking(vg, basepoint, std::move(petals));
}

IntVector edge_counts(const VirtualGraph& vg, const Path& p) {
  IntVector c(vg.graph.num_edges());
  for (const auto& s : p) c[s.edge] += s.dir;
  return c;
}

IntMatrix h1_matrix(const Marking& m) {
  const VirtualGraph& vg = m.target;
  const EdgeSubset tree = spanning_tree(vg.base);
  std::vector<int> columns;
  for (int e = 0; e < static_cast<int>(vg.base.num_edges()); ++e)
    if (std::find(tree.begin(), tree.end(), e) == tree.end()) columns.push_back(e);
  for (const auto& l : vg.loops) columns.push_back(l.edge);
  IntMatrix h(m.petals.size(), columns.size());
  for (std::size_t i = 0; i < m.petals.size(); ++i) {
    const IntVector c = edge_counts(vg, m.petals[i]);
    for (std::size_t j = 0; j < columns.size(); ++j) h(i, j) = c[columns[j]];
  }
  return h;
}

SpecializedMarking specialize_marking(const Marking& m, const EdgeSubset& subset) {
  const WeightedGraph& base = m.base();
  for (int e : subset)
    if (e < 0 || e >= static_cast<int>(base.num_edges()))
      throw Error("unknown_edge", "specialization may only contract edges of the base graph");
  const EdgeSubset forest = spanning_forest(base, subset);
  SpecializedMarking out;
  out.contraction = contract(base, subset);
  const VirtualGraph vg = virtual_graph(out.contraction.graph);

  std::vector<int> emap(m.target.graph.num_edges(), -1);
  for (int e = 0; e < static_cast<int>(base.num_edges()); ++e) emap[e] = out.contraction.edge_map[e];
  // New virtual loops at each merged vertex: the old ones first, then the
  // contracted non-forest edges.
  std::vector<std::vector<int>> incoming(vg.graph.num_vertices());
  for (const auto& l : m.target.loops) incoming[out.contraction.vertex_map[l.vertex]].push_back(l.edge);
  std::vector<int> sorted(subset.begin(), subset.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (int e : sorted)
    if (std::find(forest.begin(), forest.end(), e) == forest.end())
      incoming[out.contraction.vertex_map[base.edge(e).tail]].push_back(e);
  for (std::size_t v = 0; v < incoming.size(); ++v) {
    const auto slots = vg.loops_at(static_cast<int>(v));
    if (slots.size() != incoming[v].size()) throw Error("internal", "virtual loop count mismatch");
    for (std::size_t k = 0; k < slots.size(); ++k) emap[incoming[v][k]] = slots[k];
  }
  std::vector<Path> petals;
  for (const auto& p : m.petals) {
    Path q;
    for (const auto& s : p)
      if (emap[s.edge] >= 0) q.push_back({emap[s.edge], s.dir});
    petals.push_back(tighten(q));
  }
  out.virtual_edge_map = emap;
  out.marking = make_marking(vg, out.contraction.vertex_map[m.basepoint], std::move(petals));
  return out;
}

nlohmann::json marking_to_json(const Marking& m) {
  nlohmann::json petals = nlohmann::json::array();
  for (const auto& p : m.petals) {
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& s : p) steps.push_back({{"edge", s.edge}, {"dir", s.dir}});
    petals.push_back(steps);
  }
  return {{"basepoint", m.basepoint}, {"petals", petals}};
}

Marking marking_from_json(const WeightedGraph& base, const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("basepoint") || !j.contains("petals") || !j["basepoint"].is_number_integer() ||
      !j["petals"].is_array())
    throw Error("bad_marking", "marking needs an integer \"basepoint\" and a \"petals\" array");
  std::vector<Path> petals;
  for (const auto& p : j["petals"]) {
    if (!p.is_array()) throw Error("bad_marking", "each petal is an array of steps");
    Path path;
    for (const auto& s : p) {
      if (!s.is_object() || !s.contains("edge") || !s.contains("dir") || !s["edge"].is_number_integer() ||
          !s["dir"].is_number_integer())
        throw Error("bad_marking", "steps need integer \"edge\" and \"dir\"");
      path.push_back({s["edge"].get<int>(), s["dir"].get<int>()});
    }
    petals.push_back(std::move(path));
  }
  return make_marking(virtual_graph(base), j["basepoint"].get<int>(), std::move(petals));
}

std::vector<std::string> edge_names(const VirtualGraph& vg) {
  std::vector<std::string> names;
  for (std::size_t e = 0; e < vg.base.num_edges(); ++e)
    names.push_back(e < 26 ? std::string(1, static_cast<char>('a' + e)) : "e" + std::to_string(e));
  for (std::size_t k = 0; k < vg.loops.size(); ++k) names.push_back("v" + std::to_string(k + 1));
  return names;
}

std::string render_path(const VirtualGraph& vg, const Path& p) {
  const auto names = edge_names(vg);
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ' ';
    out += names[p[i].edge];
    if (p[i].dir < 0) out += '-';
  }
  return out;
}

}  // namespace tropmod
