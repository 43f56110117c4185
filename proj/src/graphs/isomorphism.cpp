#include "tropmod/graphs/isomorphism.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "tropmod/error.hpp"

namespace tropmod {

namespace {

using EndpointPair = std::pair<int, int>;

EndpointPair unordered(int a, int b) { return a <= b ? EndpointPair{a, b} : EndpointPair{b, a}; }

void check_size(const WeightedGraph& g) {
  if (g.num_vertices() > kMaxSearchVertices)
    throw Error("too_large", "graph has too many vertices for exhaustive search");
}

// Calls f(perm) for every vertex relabeling that sends vertices to positions
// with the same weight as in `target_weights` (perm[v] = new label).
template <typename F>
void for_each_weight_preserving(const std::vector<int>& weights, const std::vector<int>& target_weights, F&& f) {
  const std::size_t n = weights.size();
  std::vector<int> perm(n, -1);
  std::vector<bool> used(n, false);
  auto rec = [&](auto&& self, std::size_t p) -> void {
    if (p == n) {
      f(perm);
      return;
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (used[v] || weights[v] != target_weights[p]) continue;
      used[v] = true;
      perm[v] = static_cast<int>(p);
      self(self, p + 1);
      used[v] = false;
      perm[v] = -1;
    }
  };
  rec(rec, 0);
}

std::vector<EndpointPair> image_pairs(const WeightedGraph& g, const std::vector<int>& perm) {
  std::vector<EndpointPair> pairs;
  pairs.reserve(g.num_edges());
  for (const auto& e : g.edges()) pairs.push_back(unordered(perm[e.tail], perm[e.head]));
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

// Edge map for a fixed vertex bijection: edges are matched to target edges
// with the same endpoint pair in increasing id order.
GraphMap edge_assignment(const WeightedGraph& g, const WeightedGraph& target, const std::vector<int>& perm) {
  std::map<EndpointPair, std::vector<int>> pool;
  for (int e = 0; e < static_cast<int>(target.num_edges()); ++e)
    pool[unordered(target.edge(e).tail, target.edge(e).head)].push_back(e);
  std::map<EndpointPair, std::size_t> cursor;
  GraphMap m;
  m.vertex_map = perm;
  for (int e = 0; e < static_cast<int>(g.num_edges()); ++e) {
    const int t = perm[g.edge(e).tail], h = perm[g.edge(e).head];
    const auto key = unordered(t, h);
    const int image = pool[key][cursor[key]++];
    m.edge_map.push_back(image);
    m.edge_sign.push_back(target.edge(image).tail == t ? 1 : -1);
  }
  return m;
}

std::string encode(const WeightedGraph& g) {
  std::ostringstream os;
  os << "w";
  for (int w : g.weights()) os << ":" << w;
  os << "|e";
  for (const auto& e : g.edges()) os << ":" << e.tail << "-" << e.head;
  return os.str();
}

}  // namespace

CanonicalForm canonical_form(const WeightedGraph& g) {
  check_size(g);
  std::vector<int> sorted_weights = g.weights();
  std::sort(sorted_weights.begin(), sorted_weights.end());
  std::vector<EndpointPair> best;
  std::vector<int> best_perm;
  for_each_weight_preserving(g.weights(), sorted_weights, [&](const std::vector<int>& perm) {
    auto pairs = image_pairs(g, perm);
    if (best_perm.empty() || pairs < best) {
      best = std::move(pairs);
      best_perm = perm;
    }
  });
  std::vector<Edge> edges;
  for (const auto& [a, b] : best) edges.push_back({a, b});
  CanonicalForm cf;
  cf.graph = WeightedGraph(sorted_weights, std::move(edges));
  cf.map = edge_assignment(g, cf.graph, best_perm);
  cf.key = encode(cf.graph);
  return cf;
}

std::vector<GraphMap> automorphisms(const WeightedGraph& g) {
  check_size(g);
  const auto reference = image_pairs(g, [&] {
    std::vector<int> id(g.num_vertices());
    std::iota(id.begin(), id.end(), 0);
    return id;
  }());
  std::vector<GraphMap> out;
  for_each_weight_preserving(g.weights(), g.weights(), [&](const std::vector<int>& perm) {
    if (image_pairs(g, perm) != reference) return;
    // All bijections between edges with matching endpoint pairs.
    const GraphMap base = edge_assignment(g, g, perm);
    std::map<EndpointPair, std::vector<int>> classes;  // target pair -> source edges
    for (int e = 0; e < static_cast<int>(g.num_edges()); ++e)
      classes[unordered(perm[g.edge(e).tail], perm[g.edge(e).head])].push_back(e);
    std::vector<std::pair<std::vector<int>, std::vector<int>>> blocks;  // sources, targets
    for (auto& [key, sources] : classes) {
      std::vector<int> targets;
      for (int e : sources) targets.push_back(base.edge_map[e]);
      std::sort(targets.begin(), targets.end());
      blocks.push_back({sources, targets});
    }
    GraphMap m = base;
    auto rec = [&](auto&& self, std::size_t b) -> void {
      if (b == blocks.size()) {
        for (int e = 0; e < static_cast<int>(g.num_edges()); ++e)
          m.edge_sign[e] = g.edge(m.edge_map[e]).tail == perm[g.edge(e).tail] ? 1 : -1;
        out.push_back(m);
        return;
      }
      auto targets = blocks[b].second;
      do {
        for (std::size_t k = 0; k < targets.size(); ++k) m.edge_map[blocks[b].first[k]] = targets[k];
        self(self, b + 1);
      } while (std::next_permutation(targets.begin(), targets.end()));
    };
    rec(rec, 0);
  });
  return out;
}

std::vector<std::vector<int>> edge_permutation_group(const WeightedGraph& g) {
  std::set<std::vector<int>> perms;
  for (const auto& a : automorphisms(g)) perms.insert(a.edge_map);
  return {perms.begin(), perms.end()};
}

std::optional<GraphMap> find_isomorphism(const WeightedGraph& a, const WeightedGraph& b) {
  if (a.num_vertices() != b.num_vertices() || a.num_edges() != b.num_edges()) return std::nullopt;
  const CanonicalForm ca = canonical_form(a), cb = canonical_form(b);
  if (ca.key != cb.key) return std::nullopt;
  return compose(ca.map, invert(cb.map));
}

WeightedGraph relabel(const WeightedGraph& g, const GraphMap& m) {
  std::vector<int> weights(g.num_vertices());
  for (int v = 0; v < static_cast<int>(g.num_vertices()); ++v) weights[m.vertex_map[v]] = g.weight(v);
  std::vector<Edge> edges(g.num_edges());
  for (int e = 0; e < static_cast<int>(g.num_edges()); ++e) {
    Edge img{m.vertex_map[g.edge(e).tail], m.vertex_map[g.edge(e).head]};
    if (m.edge_sign[e] < 0) std::swap(img.tail, img.head);
    edges[m.edge_map[e]] = img;
  }
  return WeightedGraph(std::move(weights), std::move(edges));
}

GraphMap compose(const GraphMap& first, const GraphMap& second) {
  GraphMap m;
  for (int v : first.vertex_map) m.vertex_map.push_back(second.vertex_map[v]);
  for (std::size_t e = 0; e < first.edge_map.size(); ++e) {
    m.edge_map.push_back(second.edge_map[first.edge_map[e]]);
    m.edge_sign.push_back(first.edge_sign[e] * second.edge_sign[first.edge_map[e]]);
  }
  return m;
}

GraphMap invert(const GraphMap& m) {
  GraphMap inv;
  inv.vertex_map.assign(m.vertex_map.size(), -1);
  for (std::size_t v = 0; v < m.vertex_map.size(); ++v) inv.vertex_map[m.vertex_map[v]] = static_cast<int>(v);
  inv.edge_map.assign(m.edge_map.size(), -1);
  inv.edge_sign.assign(m.edge_map.size(), 1);
  for (std::size_t e = 0; e < m.edge_map.size(); ++e) {
    inv.edge_map[m.edge_map[e]] = static_cast<int>(e);
    inv.edge_sign[m.edge_map[e]] = m.edge_sign[e];
  }
  return inv;
}

GraphMap identity_map(const WeightedGraph& g) {
  GraphMap m;
  m.vertex_map.resize(g.num_vertices());
  std::iota(m.vertex_map.begin(), m.vertex_map.end(), 0);
  m.edge_map.resize(g.num_edges());
  std::iota(m.edge_map.begin(), m.edge_map.end(), 0);
  m.edge_sign.assign(g.num_edges(), 1);
  return m;
}

}  // namespace tropmod
