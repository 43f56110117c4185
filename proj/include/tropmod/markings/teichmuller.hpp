#pragma once

#include <string>
#include <vector>

#include "tropmod/markings/equivalence.hpp"
#include "tropmod/markings/nielsen.hpp"
#include "tropmod/stackyfan/quotient.hpp"

namespace tropmod {

struct MarkedCell {
  Marking marking;
  std::string key;  ///< canonical key of the base graph
};

/// A finite piece of the marked-cell complex: orthant cells over marked
/// graphs identified up to weak equivalence, glued along specializations,
/// with moves between marked cells over isomorphic graphs. Every move carries
/// the explicit free-group automorphism realizing it.
struct TeichmullerPatch {
  std::vector<MarkedCell> cells;
  StackyFan fan;
  AdmissibleAction action;
  std::vector<std::vector<Word>> move_words;  ///< per move: images in the source petals
};

struct PatchOptions {
  /// Seeds are the standard markings of every maximal pure class and their
  /// images under elementary Nielsen moves up to this word length.
  int depth = 1;
};

/// Generating set used for seeding: every inversion, adjacent swap and
/// multiplication x_i <- x_i x_j.
std::vector<NielsenMove> elementary_moves(int g);

/// Closes the seed cells under specialization and links every cell to the
/// first cell of its isomorphism class through each base isomorphism.
/// Throws Error("internal") if a computed automorphism fails its check.
TeichmullerPatch teichmuller_patch(int g, const PatchOptions& opts = {});

}  // namespace tropmod
