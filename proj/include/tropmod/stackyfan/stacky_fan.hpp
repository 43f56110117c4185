#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tropmod/stackyfan/ideal_cone.hpp"

namespace tropmod {

/// Integral linear map from the lattice of cell `source` to that of cell
/// `target` (matrix is target_dim x source_dim).
struct FaceMap {
  int source = 0;
  int target = 0;
  IntMatrix matrix;
  friend bool operator==(const FaceMap&, const FaceMap&) = default;
};

struct FanCell {
  std::string label;
  IdealCone cone;  ///< full-dimensional in its own lattice Z^n
};

/// Cells glued along lattice-preserving face maps. Self-maps (source ==
/// target) play the role of cell automorphisms.
struct StackyFan {
  std::vector<FanCell> cells;
  std::vector<FaceMap> maps;

  int add_cell(std::string label, IdealCone cone);
  /// Adds a map unless an identical one is present.
  void add_map(int source, int target, IntMatrix matrix);
  std::size_t num_cells() const noexcept { return cells.size(); }
};

struct FanViolation {
  std::string condition;
  std::string witness;
};

struct FanReport {
  std::vector<FanViolation> violations;
  std::size_t maps_checked = 0;
  std::size_t points_sampled = 0;
  bool ok() const noexcept { return violations.empty(); }
};

struct ValidateOptions {
  std::uint64_t seed = 1;
  std::size_t samples_per_face = 1;
  /// When nonzero, only this many randomly chosen (cell, face) pairs are sampled.
  std::size_t max_faces = 0;
  std::size_t orbit_bound = 20000;
  bool check_partition = true;
};

/// Checks each map for integrality, ray-to-ray primitivity, bijectivity onto a
/// retained face (with matching removed faces) and lattice preservation, and
/// samples the cell-partition law on points of every retained face.
FanReport validate_fan(const StackyFan& f, const ValidateOptions& opts = {});

/// Checks only the per-map conditions for one map.
std::vector<FanViolation> check_face_map(const StackyFan& f, const FaceMap& m);

/// Closure of the self-maps of a cell under composition (identity included).
/// Throws Error("orbit_bound") past `bound` elements.
std::vector<IntMatrix> self_map_group(const StackyFan& f, int cell, std::size_t bound = 5000);

/// For every ordered pair of distinct cells, the set of maps closed under
/// composition with self-maps on both sides.
using MapSets = std::map<std::pair<int, int>, std::set<IntMatrix>>;
MapSets closed_map_sets(const StackyFan& f);

/// Cell bijection plus lattice isomorphisms phi_i : Z^{n_i} -> Z^{n'_{cell_map[i]}}.
struct FanIsomorphism {
  std::vector<int> cell_map;
  std::vector<IntMatrix> lattice_maps;
};

/// Verifies an explicit isomorphism: cones correspond (with removed faces) and
/// the closed map sets correspond under conjugation. On failure `witness`
/// describes the first mismatch.
bool verify_fan_isomorphism(const StackyFan& a, const StackyFan& b, const FanIsomorphism& iso,
                            std::string* witness = nullptr);

/// Backtracking search for an isomorphism. When `match_labels` is set, cells
/// may only correspond to cells with the same label.
std::optional<FanIsomorphism> find_fan_isomorphism(const StackyFan& a, const StackyFan& b, bool match_labels);

/// Lattice isomorphisms Z^n -> Z^n' carrying cone a onto cone b (rays onto
/// rays, removed faces onto removed faces).
std::vector<IntMatrix> cone_isomorphisms(const IdealCone& a, const IdealCone& b);

/// The fan of an embedded ideal cone: one cell per retained face, written in
/// a Z-basis of the lattice points of its span, with all face inclusions.
struct ConeFan {
  StackyFan fan;
  std::vector<FaceMask> faces;     ///< face of the original cone behind each cell
  std::vector<IntMatrix> bases;    ///< columns: lattice basis of each face span
};
ConeFan fan_of_cone(const IdealCone& cone);

/// Ray-coordinate image of a point of a cell in the ambient of another,
/// restricted to the open cells: the cell whose relative interior contains
/// the class of x, and the coordinates there.
struct OpenPoint {
  int cell = -1;
  RatVector coords;
  friend bool operator==(const OpenPoint& a, const OpenPoint& b) { return a.cell == b.cell && a.coords == b.coords; }
  friend bool operator<(const OpenPoint& a, const OpenPoint& b) {
    return a.cell != b.cell ? a.cell < b.cell : a.coords < b.coords;
  }
};

/// Precomputed lookup for walking the gluing relation: forward images along
/// maps out of a cell and preimages along maps into it.
class GluingIndex {
 public:
  explicit GluingIndex(const StackyFan& f);
  const StackyFan& fan() const noexcept { return *fan_; }

  /// Calls visit(cell, coords) for every point glued to (cell, x) by one map,
  /// in either direction.
  template <typename F>
  void for_each_neighbor(int cell, const RatVector& x, F&& visit) const {
    for (std::size_t k : by_source_[cell]) visit(fan_->maps[k].target, rat_[k] * x);
    for (std::size_t k : by_target_[cell])
      if (auto y = preimage(k, x)) visit(fan_->maps[k].source, std::move(*y));
  }

 private:
  std::optional<RatVector> preimage(std::size_t k, const RatVector& x) const;

  const StackyFan* fan_;
  std::vector<std::vector<std::size_t>> by_source_, by_target_;
  std::vector<RatMatrix> rat_;
  std::vector<std::vector<std::size_t>> pivot_rows_;  // independent rows per map
  std::vector<RatMatrix> row_inverse_;                // inverse on those rows
};

/// All open-cell representatives (cell, coords) equivalent to x under the
/// gluing. Throws Error("orbit_bound").
std::vector<OpenPoint> open_representatives(const GluingIndex& index, int cell, const RatVector& x,
                                            std::size_t bound = 20000);

}  // namespace tropmod
