#include "tropmod/markings/nielsen.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "tropmod/error.hpp"

namespace tropmod {

std::vector<Word> run_moves(std::vector<Word> t, const NielsenAuto& a) {
  const int g = static_cast<int>(t.size());
  for (const auto& mv : a) {
    const bool two = mv.kind != NielsenMove::Kind::invert;
    if (mv.i < 0 || mv.i >= g || (two && (mv.j < 0 || mv.j >= g || mv.j == mv.i)))
      throw Error("bad_move", "Nielsen move " + to_string(mv) + " is out of range for rank " + std::to_string(g));
    switch (mv.kind) {
      case NielsenMove::Kind::swap:
        std::swap(t[mv.i], t[mv.j]);
        break;
      case NielsenMove::Kind::invert:
        t[mv.i] = inverse(t[mv.i]);
        break;
      case NielsenMove::Kind::multiply:
        t[mv.i] = concat(t[mv.i], t[mv.j]);
        break;
    }
  }
  return t;
}

std::vector<Word> auto_images(const NielsenAuto& a, int g) {
  std::vector<Word> t;
  for (int k = 0; k < g; ++k) t.push_back({k + 1});
  return run_moves(std::move(t), a);
}

IntMatrix abelianization(const NielsenAuto& a, int g) {
  const auto images = auto_images(a, g);
  IntMatrix m(g, g);
  for (int k = 0; k < g; ++k)
    for (int letter : images[k]) m(k, std::abs(letter) - 1) += letter > 0 ? 1 : -1;
  return m;
}

Marking apply_words(const Marking& m, const std::vector<Word>& images) {
  Marking out{m.target, m.basepoint, {}};
  for (const auto& w : images) {
    Path p;
    for (int letter : w) {
      const Path& petal = m.petals[std::abs(letter) - 1];
      const Path piece = letter > 0 ? petal : reverse_path(petal);
      p.insert(p.end(), piece.begin(), piece.end());
    }
    out.petals.push_back(tighten(p));
  }
  return out;
}

Marking apply_auto(const Marking& m, const NielsenAuto& a) {
  return apply_words(m, auto_images(a, static_cast<int>(m.rank())));
}

namespace {

using Kind = NielsenMove::Kind;

// x_i <- x_j^s x_i (left) or x_i x_j^s (right) as elementary moves.
NielsenAuto multiply_by(int i, int j, int s, bool left) {
  const NielsenMove inv_i{Kind::invert, i, 0}, inv_j{Kind::invert, j, 0}, mul{Kind::multiply, i, j};
  if (!left) return s > 0 ? NielsenAuto{mul} : NielsenAuto{inv_j, mul, inv_j};
  return s > 0 ? NielsenAuto{inv_i, inv_j, mul, inv_i, inv_j} : NielsenAuto{inv_i, mul, inv_i};
}

std::size_t total_length(const std::vector<Word>& t) {
  std::size_t n = 0;
  for (const auto& w : t) n += w.size();
  return n;
}

bool all_letters(const std::vector<Word>& t) {
  return std::all_of(t.begin(), t.end(), [](const Word& w) { return w.size() == 1; });
}

}  // namespace

std::optional<NielsenAuto> nielsen_reduction(const std::vector<Word>& tuple, std::size_t max_states) {
  const int g = static_cast<int>(tuple.size());
  std::vector<Word> start;
  for (const auto& w : tuple) start.push_back(reduce(w));
  const std::size_t cap = total_length(start);
  std::map<std::vector<Word>, std::pair<std::vector<Word>, NielsenAuto>> parent;
  parent.emplace(start, std::make_pair(std::vector<Word>{}, NielsenAuto{}));
  std::deque<std::vector<Word>> queue{start};
  while (!queue.empty()) {
    const std::vector<Word> t = queue.front();
    queue.pop_front();
    if (all_letters(t)) {
      std::vector<NielsenAuto> pieces;
      for (auto cur = t; cur != start; cur = parent.at(cur).first) pieces.push_back(parent.at(cur).second);
      NielsenAuto out;
      for (auto it = pieces.rbegin(); it != pieces.rend(); ++it) out.insert(out.end(), it->begin(), it->end());
      return out;
    }
    for (int i = 0; i < g; ++i)
      for (int j = 0; j < g; ++j) {
        if (i == j) continue;
        for (int s : {1, -1})
          for (bool left : {false, true}) {
            const NielsenAuto step = multiply_by(i, j, s, left);
            std::vector<Word> next = run_moves(t, step);
            if (next[i].empty() || total_length(next) > cap) continue;
            if (parent.try_emplace(next, std::make_pair(t, step)).second) {
              if (parent.size() > max_states) throw Error("too_large", "Nielsen reduction search exceeded its budget");
              queue.push_back(std::move(next));
            }
          }
      }
  }
  return std::nullopt;
}

std::vector<Word> express_in_basis(const std::vector<Word>& basis, const std::vector<Word>& targets) {
  const int g = static_cast<int>(basis.size());
  const auto r = nielsen_reduction(basis);
  if (!r) throw Error("not_a_basis", "words do not form a basis of the free group");
  std::vector<Word> symbols;
  for (int k = 0; k < g; ++k) symbols.push_back({k + 1});
  // Running r on the basis gives letters; running it on formal symbols gives
  // those letters written in the basis.
  const std::vector<Word> letters = run_moves(basis, *r);
  const std::vector<Word> formal = run_moves(symbols, *r);
  std::vector<Word> letter_word(g + 1);
  for (int j = 0; j < g; ++j) {
    const int l = letters[j][0];
    letter_word[std::abs(l)] = l > 0 ? formal[j] : inverse(formal[j]);
  }
  std::vector<Word> out;
  for (const auto& y : targets) {
    Word w;
    for (int l : y) {
      const Word& piece = letter_word[std::abs(l)];
      if (l > 0)
        w.insert(w.end(), piece.begin(), piece.end());
      else {
        const Word inv = inverse(piece);
        w.insert(w.end(), inv.begin(), inv.end());
      }
    }
    out.push_back(reduce(w));
  }
  return out;
}

NielsenAuto random_nielsen(int g, int length, std::mt19937_64& rng) {
  NielsenAuto a;
  if (g <= 0) return a;
  std::uniform_int_distribution<int> kind(0, g >= 2 ? 2 : 0), index(0, g - 1), other(0, g - 2 < 0 ? 0 : g - 2);
  for (int k = 0; k < length; ++k) {
    NielsenMove mv;
    const int c = kind(rng);
    mv.kind = c == 0 ? NielsenMove::Kind::invert : c == 1 ? NielsenMove::Kind::swap : NielsenMove::Kind::multiply;
    mv.i = index(rng);
    if (mv.kind != NielsenMove::Kind::invert) {
      mv.j = other(rng);
      if (mv.j >= mv.i) ++mv.j;
    }
    a.push_back(mv);
  }
  return a;
}

std::string to_string(const NielsenMove& m) {
  switch (m.kind) {
    case NielsenMove::Kind::swap:
      return "swap(" + std::to_string(m.i) + "," + std::to_string(m.j) + ")";
    case NielsenMove::Kind::invert:
      return "inv(" + std::to_string(m.i) + ")";
    case NielsenMove::Kind::multiply:
      return "mul(" + std::to_string(m.i) + "," + std::to_string(m.j) + ")";
  }
  return {};
}

}  // namespace tropmod
