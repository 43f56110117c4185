#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "tropmod/graphs/weighted_graph.hpp"
#include "tropmod/markings/word.hpp"

namespace tropmod {

/// Traversal of one edge: dir = +1 goes tail -> head, -1 head -> tail.
struct Step {
  int edge = 0;
  int dir = 1;
  friend bool operator==(const Step&, const Step&) = default;
  friend auto operator<=>(const Step&, const Step&) = default;
};

using Path = std::vector<Step>;

int step_start(const WeightedGraph& g, const Step& s);
int step_end(const WeightedGraph& g, const Step& s);

/// Throws Error("bad_path") unless consecutive steps meet and the path is a
/// closed loop at `basepoint` (an empty path is closed everywhere).
void check_closed(const WeightedGraph& g, int basepoint, const Path& p);

/// Cancels immediate backtracks until none remain.
Path tighten(const Path& p);
Path reverse_path(const Path& p);
Path concat_paths(const Path& a, const Path& b);

/// g petal loops at a common basepoint of the virtual graph.
struct Marking {
  VirtualGraph target;
  int basepoint = 0;
  std::vector<Path> petals;

  std::size_t rank() const noexcept { return petals.size(); }
  const WeightedGraph& base() const noexcept { return target.base; }
};

/// Stallings folding test: true iff the petals are closed at the basepoint
/// and generate the fundamental group of the virtual graph. Throws
/// Error("bad_path"), Error("basepoint") or Error("genus_mismatch") on
/// malformed input.
bool validate_marking(const VirtualGraph& target, int basepoint, const std::vector<Path>& petals);

/// Validated constructor; throws Error("invalid_marking") when folding rejects.
Marking make_marking(const VirtualGraph& target, int basepoint, std::vector<Path> petals);

/// Tree paths to the non-tree edges of the virtual graph, in edge order; its
/// h1 matrix is the identity.
Marking standard_marking(const WeightedGraph& g, int basepoint = 0);

/// Rows: petals in H1 of the virtual graph, in the basis of fundamental
/// cycles of the base graph (non-tree edges in id order) followed by the
/// virtual loops.
IntMatrix h1_matrix(const Marking& m);

/// Abelianization of a closed path as a signed edge-count vector.
IntVector edge_counts(const VirtualGraph& vg, const Path& p);

/// Contracts a spanning forest of `subset` (lowest ids), turns the remaining
/// edges of `subset` into new virtual loops (after the old ones at each
/// merged vertex) and re-tightens. Throws Error("unknown_edge") for ids
/// outside the base graph.
struct SpecializedMarking {
  Marking marking;
  Contraction contraction;          ///< of the base graph
  std::vector<int> virtual_edge_map;  ///< old virtual-graph edge -> new edge, -1 if deleted
};
SpecializedMarking specialize_marking(const Marking& m, const EdgeSubset& subset);

/// Free-group coordinates at the basepoint: letters are non-tree edges of the
/// virtual graph (letter k+1 = k-th non-tree edge in id order).
struct FreeCoordinates {
  std::vector<int> letter_edge;   ///< letter index -> edge
  std::vector<int> edge_letter;   ///< edge -> letter index or -1 (tree edge)
  EdgeSubset tree;
};
FreeCoordinates free_coordinates(const VirtualGraph& vg);
Word path_word(const FreeCoordinates& fc, const Path& p);
/// The tightened loop at `basepoint` representing a word.
Path word_path(const VirtualGraph& vg, const FreeCoordinates& fc, int basepoint, const Word& w);

nlohmann::json marking_to_json(const Marking& m);
/// Reads {"basepoint":int,"petals":[[{"edge":int,"dir":1|-1}]]} over the
/// virtual graph of `base` and validates it.
Marking marking_from_json(const WeightedGraph& base, const nlohmann::json& j);

/// Edge names: a, b, ... for base edges, v1, v2, ... for virtual loops.
std::vector<std::string> edge_names(const VirtualGraph& vg);
/// "a- b" for the path a-bar b.
std::string render_path(const VirtualGraph& vg, const Path& p);

}  // namespace tropmod
