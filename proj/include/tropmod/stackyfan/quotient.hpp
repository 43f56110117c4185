#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tropmod/stackyfan/stacky_fan.hpp"

namespace tropmod {

/// Generator `generator` carries cell `source` isomorphically onto cell
/// `target` through `matrix`. A finite fan may carry only part of an infinite
/// group action; moves are then recorded wherever the image cell is present.
struct ActionMove {
  int generator = 0;
  int source = 0;
  int target = 0;
  IntMatrix matrix;
};

struct AdmissibleAction {
  std::size_t num_generators = 0;
  std::vector<ActionMove> moves;
};

/// Throws Error("not_admissible") unless every move is a lattice isomorphism
/// between the two cones that respects removed faces.
void check_action(const StackyFan& f, const AdmissibleAction& act);

/// Action of ambient lattice automorphisms preserving the cone on fan_of_cone.
AdmissibleAction induced_action(const ConeFan& cf, const IdealCone& cone, const std::vector<IntMatrix>& generators);

struct QuotientOptions {
  /// Picks the (rotation mod orbit size)-th member of each orbit, in index
  /// order, as its representative.
  std::size_t rotation = 0;
  /// Maximum number of cells; 0 reads TROPMOD_CELL_BUDGET or uses 100000.
  std::size_t cell_budget = 0;
};

struct Quotient {
  StackyFan fan;
  std::vector<int> cell_class;       ///< original cell -> quotient cell
  std::vector<int> representative;   ///< quotient cell -> original cell
  std::vector<IntMatrix> transport;  ///< original cell i -> its representative
  std::vector<std::vector<IntMatrix>> self_maps;  ///< group of each quotient cell
};

/// Orbit representatives with composite gluing maps T_b L T_a^{-1} for every
/// face map L : a -> b and T_t M T_s^{-1} for every move M : s -> t.
Quotient stratified_quotient(const StackyFan& f, const AdmissibleAction& act, const QuotientOptions& opts = {});

/// The isomorphism between two quotients of the same fan and action that
/// differ only in their representatives.
FanIsomorphism quotient_isomorphism(const Quotient& a, const Quotient& b);

struct SamplePoint {
  int cell = 0;
  RatVector coords;
};

/// Random points on retained faces; about half are images of earlier samples
/// under random moves, so orbit-mates occur.
std::vector<SamplePoint> sample_points(const StackyFan& f, const AdmissibleAction& act, std::size_t count,
                                       std::uint64_t seed);

/// The quotient cell and lexicographically least coordinates of the image of
/// x under the self-maps of that cell.
OpenPoint quotient_point(const GluingIndex& index, const Quotient& q, int cell, const RatVector& x);

struct BijectionReport {
  bool ok = true;
  std::size_t samples = 0;
  std::size_t orbits = 0;
  std::string witness;
};

/// Verifies that two samples have the same quotient point iff they lie in the
/// same orbit (computed by closing under gluing and moves, up to `bound`
/// points per orbit).
BijectionReport quotient_point_bijection_check(const StackyFan& f, const AdmissibleAction& act, const Quotient& q,
                                               const std::vector<SamplePoint>& samples, std::size_t bound = 20000);

}  // namespace tropmod
