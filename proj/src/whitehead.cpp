#include "limitkit/whitehead.hpp"

#include <algorithm>
#include <numeric>

namespace limitkit {

namespace {

// Membership of a letter of generator `g` (g != multiplier gen) in the cut.
bool in_cut(const WhiteheadMove& m, std::size_t g, int sign) {
  std::size_t k = g < letter_gen(m.multiplier) ? g : g - 1;
  return (m.cut >> (2 * k + (sign < 0 ? 1 : 0))) & 1u;
}

}  // namespace

FreeMap WhiteheadMove::to_map(std::size_t rank) const {
  std::vector<Word> imgs;
  imgs.reserve(rank);
  if (kind == Kind::permutation) {
    for (std::size_t i = 0; i < rank; ++i) imgs.push_back(Word({permutation.at(i)}));
    return FreeMap(rank, rank, std::move(imgs));
  }
  const Word a({multiplier});
  const Word a_inv = a.inverse();
  for (std::size_t g = 0; g < rank; ++g) {
    Word x = Word::generator(g);
    if (g == letter_gen(multiplier)) {
      imgs.push_back(x);
      continue;
    }
    bool pos = in_cut(*this, g, 1), neg = in_cut(*this, g, -1);
    Word img = x;
    if (pos) img = img * a;
    if (neg) img = a_inv * img;
    imgs.push_back(img);
  }
  return FreeMap(rank, rank, std::move(imgs));
}

WhiteheadMove WhiteheadMove::inverse() const {
  WhiteheadMove inv = *this;
  if (kind == Kind::multiplier) {
    inv.multiplier = -multiplier;
    return inv;
  }
  for (std::size_t i = 0; i < permutation.size(); ++i) {
    Letter img = permutation[i];
    inv.permutation[letter_gen(img)] = make_letter(i, letter_sign(img));
  }
  return inv;
}

std::string WhiteheadMove::describe(const Alphabet& alphabet) const {
  auto letter_name = [&](Letter l) {
    return alphabet.name(letter_gen(l)) + (l < 0 ? "^-1" : "");
  };
  std::string out;
  if (kind == Kind::permutation) {
    out = "perm(";
    for (std::size_t i = 0; i < permutation.size(); ++i) {
      if (i) out += ", ";
      out += alphabet.name(i) + "->" + letter_name(permutation[i]);
    }
    return out + ")";
  }
  out = "mult(" + letter_name(multiplier) + "; {" + letter_name(multiplier);
  for (std::size_t g = 0; g < alphabet.rank(); ++g) {
    if (g == letter_gen(multiplier)) continue;
    if (in_cut(*this, g, 1)) out += ", " + letter_name(make_letter(g, 1));
    if (in_cut(*this, g, -1)) out += ", " + letter_name(make_letter(g, -1));
  }
  return out + "})";
}

bool move_less(const WhiteheadMove& a, const WhiteheadMove& b) {
  if (a.kind != b.kind) return a.kind == WhiteheadMove::Kind::permutation;
  if (a.kind == WhiteheadMove::Kind::permutation) {
    return std::lexicographical_compare(
        a.permutation.begin(), a.permutation.end(), b.permutation.begin(), b.permutation.end(),
        [](Letter x, Letter y) { return letter_rank(x) < letter_rank(y); });
  }
  if (a.multiplier != b.multiplier) return letter_rank(a.multiplier) < letter_rank(b.multiplier);
  return a.cut < b.cut;
}

std::vector<WhiteheadMove> multiplier_moves(std::size_t rank) {
  std::vector<WhiteheadMove> out;
  if (rank < 2) return out;
  const std::uint32_t masks = 1u << (2 * (rank - 1));
  for (std::uint32_t r = 0; r < 2 * rank; ++r) {
    for (std::uint32_t cut = 1; cut < masks; ++cut) {
      WhiteheadMove m;
      m.kind = WhiteheadMove::Kind::multiplier;
      m.multiplier = letter_from_rank(r);
      m.cut = cut;
      out.push_back(m);
    }
  }
  return out;
}

std::vector<WhiteheadMove> whitehead_moves(std::size_t rank) {
  std::vector<WhiteheadMove> out;
  if (rank >= 1 && rank <= 6) {
    std::vector<std::size_t> perm(rank);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<WhiteheadMove> type1;
    do {
      for (std::uint32_t signs = 0; signs < (1u << rank); ++signs) {
        WhiteheadMove m;
        m.kind = WhiteheadMove::Kind::permutation;
        bool identity = true;
        for (std::size_t i = 0; i < rank; ++i) {
          int s = (signs >> i) & 1u ? -1 : 1;
          m.permutation.push_back(make_letter(perm[i], s));
          identity = identity && perm[i] == i && s == 1;
        }
        if (!identity) type1.push_back(std::move(m));
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::sort(type1.begin(), type1.end(), move_less);
    out = std::move(type1);
  }
  auto type2 = multiplier_moves(rank);
  out.insert(out.end(), type2.begin(), type2.end());
  return out;
}

namespace {

std::vector<std::size_t> image_lengths(const Word& core, const std::vector<FreeMap>& maps, Exec exec) {
  return map_indices<std::size_t>(
      maps.size(), [&](std::size_t i) { return cyclic_length(maps[i].apply(core)); }, exec);
}

}  // namespace

WhiteheadResult whitehead_minimize(const Word& w, std::size_t rank, Exec exec) {
  if (w.span_rank() > rank) throw InputError("word uses a generator outside the alphabet");
  // Type I moves preserve length, so only type II moves can descend.
  const auto moves = multiplier_moves(rank);
  std::vector<FreeMap> maps;
  maps.reserve(moves.size());
  for (const auto& m : moves) maps.push_back(m.to_map(rank));

  WhiteheadResult res;
  Word current = cyclic_reduce(w).core;
  bool first = true;
  while (true) {
    auto lengths = image_lengths(current, maps, exec);
    std::size_t best = npos_index;
    std::size_t best_len = current.length();
    for (std::size_t i = 0; i < lengths.size(); ++i) {
      if (lengths[i] < best_len) {
        best_len = lengths[i];
        best = i;
      }
    }
    if (first) res.input_was_reduced = best == npos_index;
    first = false;
    if (best == npos_index) break;
    current = cyclic_reduce(maps[best].apply(current)).core;
    res.moves.push_back(moves[best]);
  }
  res.minimal = std::move(current);
  return res;
}

bool is_whitehead_reduced(const Word& w, std::size_t rank, Exec exec) {
  const Word core = cyclic_reduce(w).core;
  const auto moves = whitehead_moves(rank);
  auto hit = first_index_where(
      moves.size(),
      [&](std::size_t i) { return cyclic_length(moves[i].to_map(rank).apply(core)) < core.length(); },
      exec);
  return hit == npos_index;
}

}  // namespace limitkit
