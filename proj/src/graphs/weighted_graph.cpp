#include "tropmod/graphs/weighted_graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

#include "tropmod/error.hpp"
#include "tropmod/ratlin/linalg.hpp"

namespace tropmod {

namespace {

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent[b] = a;
    return true;
  }
  std::vector<int> parent;
};

void check_subset(const WeightedGraph& g, const EdgeSubset& subset) {
  for (int e : subset)
    if (e < 0 || e >= static_cast<int>(g.num_edges()))
      throw Error("unknown_edge", "edge id " + std::to_string(e) + " is not in the graph");
}

}  // namespace

WeightedGraph::WeightedGraph(std::vector<int> weights, std::vector<Edge> edges)
    : weights_(std::move(weights)), edges_(std::move(edges)) {
  for (int w : weights_)
    if (w < 0) throw Error("bad_graph", "vertex weights must be nonnegative");
  const int n = static_cast<int>(weights_.size());
  for (const auto& e : edges_)
    if (e.tail < 0 || e.tail >= n || e.head < 0 || e.head >= n)
      throw Error("bad_graph", "edge endpoint out of range");
}

int WeightedGraph::valence(int v) const {
  int val = 0;
  for (const auto& e : edges_) val += (e.tail == v) + (e.head == v);
  return val;
}

int WeightedGraph::total_weight() const { return std::accumulate(weights_.begin(), weights_.end(), 0); }

bool WeightedGraph::is_connected() const {
  if (weights_.empty()) return false;
  UnionFind uf(weights_.size());
  std::size_t components = weights_.size();
  for (const auto& e : edges_)
    if (uf.unite(e.tail, e.head)) --components;
  return components == 1;
}

int WeightedGraph::first_betti() const {
  return static_cast<int>(edges_.size()) - static_cast<int>(weights_.size()) + 1;
}

int genus(const WeightedGraph& g) {
  if (!g.is_connected()) throw Error("disconnected", "graph is not connected");
  return g.first_betti() + g.total_weight();
}

bool is_stable(const WeightedGraph& g) {
  for (int v = 0; v < static_cast<int>(g.num_vertices()); ++v)
    if (g.weight(v) == 0 && g.valence(v) < 3) return false;
  return true;
}

Contraction contract(const WeightedGraph& g, const EdgeSubset& subset) {
  check_subset(g, subset);
  const std::size_t n = g.num_vertices();
  std::vector<bool> in_subset(g.num_edges(), false);
  for (int e : subset) in_subset[e] = true;

  UnionFind uf(n);
  for (int e = 0; e < static_cast<int>(g.num_edges()); ++e)
    if (in_subset[e]) uf.unite(g.edge(e).tail, g.edge(e).head);

  // Components ordered by their smallest vertex (the union-find root).
  Contraction out;
  out.vertex_map.assign(n, -1);
  std::vector<int> root_index(n, -1);
  int next = 0;
  for (int v = 0; v < static_cast<int>(n); ++v) {
    const int r = uf.find(v);
    if (root_index[r] < 0) root_index[r] = next++;
    out.vertex_map[v] = root_index[r];
  }
  std::vector<int> weights(next, 0);
  std::vector<int> comp_vertices(next, 0), comp_edges(next, 0);
  for (int v = 0; v < static_cast<int>(n); ++v) {
    weights[out.vertex_map[v]] += g.weight(v);
    ++comp_vertices[out.vertex_map[v]];
  }
  for (int e = 0; e < static_cast<int>(g.num_edges()); ++e)
    if (in_subset[e]) ++comp_edges[out.vertex_map[g.edge(e).tail]];
  // Each contracted component contributes its first Betti number as weight.
  for (int c = 0; c < next; ++c) weights[c] += comp_edges[c] - comp_vertices[c] + 1;

  std::vector<Edge> edges;
  out.edge_map.assign(g.num_edges(), -1);
  for (int e = 0; e < static_cast<int>(g.num_edges()); ++e) {
    if (in_subset[e]) continue;
    out.edge_map[e] = static_cast<int>(edges.size());
    edges.push_back({out.vertex_map[g.edge(e).tail], out.vertex_map[g.edge(e).head]});
  }
  out.graph = WeightedGraph(std::move(weights), std::move(edges));
  return out;
}

EdgeSubset spanning_forest(const WeightedGraph& g, const EdgeSubset& subset) {
  check_subset(g, subset);
  EdgeSubset sorted = subset;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  UnionFind uf(g.num_vertices());
  EdgeSubset forest;
  for (int e : sorted)
    if (uf.unite(g.edge(e).tail, g.edge(e).head)) forest.push_back(e);
  return forest;
}

bool contains_cycle(const WeightedGraph& g, const EdgeSubset& subset) {
  EdgeSubset sorted = subset;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  return spanning_forest(g, sorted).size() < sorted.size();
}

EdgeSubset spanning_tree(const WeightedGraph& g) {
  EdgeSubset all(g.num_edges());
  std::iota(all.begin(), all.end(), 0);
  return spanning_forest(g, all);
}

std::vector<std::pair<int, int>> tree_path(const WeightedGraph& g, int from, int to) {
  const EdgeSubset tree = spanning_tree(g);
  const std::size_t n = g.num_vertices();
  std::vector<std::vector<int>> adjacent(n);
  for (int e : tree) {
    adjacent[g.edge(e).tail].push_back(e);
    adjacent[g.edge(e).head].push_back(e);
  }
  // BFS from `from`, remembering the edge used to reach each vertex.
  std::vector<int> via(n, -1);
  std::vector<bool> seen(n, false);
  std::queue<int> queue;
  queue.push(from);
  seen[from] = true;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop();
    for (int e : adjacent[v]) {
      const int w = g.edge(e).tail == v ? g.edge(e).head : g.edge(e).tail;
      if (seen[w]) continue;
      seen[w] = true;
      via[w] = e;
      queue.push(w);
    }
  }
  if (!seen[to]) throw Error("disconnected", "no tree path between vertices");
  std::vector<std::pair<int, int>> steps;
  for (int v = to; v != from;) {
    const int e = via[v];
    const bool forward = g.edge(e).head == v;
    steps.push_back({e, forward ? 1 : -1});
    v = forward ? g.edge(e).tail : g.edge(e).head;
  }
  std::reverse(steps.begin(), steps.end());
  return steps;
}

IntMatrix cycle_basis(const WeightedGraph& g) {
  if (!g.is_connected()) throw Error("disconnected", "graph is not connected");
  const EdgeSubset tree = spanning_tree(g);
  std::vector<bool> in_tree(g.num_edges(), false);
  for (int e : tree) in_tree[e] = true;
  std::vector<IntVector> rows;
  for (int f = 0; f < static_cast<int>(g.num_edges()); ++f) {
    if (in_tree[f]) continue;
    IntVector row(g.num_edges());
    row[f] = 1;
    if (!g.is_loop(f))
      for (auto [e, dir] : tree_path(g, g.edge(f).head, g.edge(f).tail)) row[e] += dir;
    rows.push_back(std::move(row));
  }
  return stack_rows(rows, g.num_edges());
}

std::vector<int> VirtualGraph::loops_at(int v) const {
  std::vector<int> out;
  for (const auto& l : loops)
    if (l.vertex == v) out.push_back(l.edge);
  return out;
}

VirtualGraph virtual_graph(const WeightedGraph& g) {
  VirtualGraph vg;
  vg.base = g;
  std::vector<Edge> edges = g.edges();
  for (int v = 0; v < static_cast<int>(g.num_vertices()); ++v)
    for (int k = 0; k < g.weight(v); ++k) {
      vg.loops.push_back({v, static_cast<int>(edges.size())});
      edges.push_back({v, v});
    }
  vg.graph = WeightedGraph(std::vector<int>(g.num_vertices(), 0), std::move(edges));
  return vg;
}

namespace named {
WeightedGraph theta() { return WeightedGraph({0, 0}, {{0, 1}, {0, 1}, {0, 1}}); }
WeightedGraph dumbbell() { return WeightedGraph({0, 0}, {{0, 0}, {1, 1}, {0, 1}}); }
WeightedGraph figure_eight() { return WeightedGraph({0}, {{0, 0}, {0, 0}}); }
WeightedGraph weighted_point(int w) { return WeightedGraph({w}, {}); }
}  // namespace named

}  // namespace tropmod
