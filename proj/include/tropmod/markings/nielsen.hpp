#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tropmod/markings/marking.hpp"
#include "tropmod/markings/word.hpp"

namespace tropmod {

/// Elementary Nielsen move acting on a generating tuple (x_1..x_g), indices
/// from zero: swap exchanges x_i and x_j, invert replaces x_i by x_i^{-1},
/// multiply replaces x_i by x_i x_j (i != j).
struct NielsenMove {
  enum class Kind { swap, invert, multiply };
  Kind kind = Kind::invert;
  int i = 0;
  int j = 0;
  friend bool operator==(const NielsenMove&, const NielsenMove&) = default;
};

/// Moves applied left to right to the tuple. Running `a` and then `b` is the
/// automorphism of the concatenated sequence a ++ b.
using NielsenAuto = std::vector<NielsenMove>;

/// Images of the generators: the tuple obtained by running the moves on
/// (x_1..x_g). Throws Error("bad_move") on out-of-range or equal indices.
std::vector<Word> auto_images(const NielsenAuto& a, int g);

/// Row k is the abelianization of the k-th image, so that
/// h1_matrix(apply_auto(m, a)) = abelianization(a, g) * h1_matrix(m) and
/// abelianization(a ++ b) = abelianization(b) * abelianization(a).
IntMatrix abelianization(const NielsenAuto& a, int g);

/// Runs the moves on an arbitrary tuple of words (auto_images runs them on
/// the free basis).
std::vector<Word> run_moves(std::vector<Word> tuple, const NielsenAuto& a);

/// Substitutes the petal paths into the image words and tightens.
Marking apply_auto(const Marking& m, const NielsenAuto& a);
/// Same with the images given directly as words in the petals.
Marking apply_words(const Marking& m, const std::vector<Word>& images);

/// Moves taking `tuple` to signed single letters, found by exhaustive search
/// over length-non-increasing Nielsen transformations (complete for bases of
/// F_g by Nielsen reduction). Empty optional when `tuple` is not a basis.
/// Throws Error("too_large") past `max_states` visited tuples.
std::optional<NielsenAuto> nielsen_reduction(const std::vector<Word>& tuple, std::size_t max_states = 200000);

/// Rewrites each target word in the letters of `basis` (a basis of F_g given
/// as words): letter k+1 of the result stands for basis[k]. Throws
/// Error("not_a_basis").
std::vector<Word> express_in_basis(const std::vector<Word>& basis, const std::vector<Word>& targets);

/// Uniform random moves; only inversions when g = 1, nothing when g = 0.
NielsenAuto random_nielsen(int g, int length, std::mt19937_64& rng);

/// "swap(0,1)", "inv(0)", "mul(0,1)".
std::string to_string(const NielsenMove& m);

}  // namespace tropmod
