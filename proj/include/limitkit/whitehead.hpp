#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "limitkit/parallel.hpp"
#include "limitkit/word.hpp"

namespace limitkit {

/// One Whitehead automorphism of a free group of fixed rank.
///
/// Type I (permutation): generator i maps to the letter `permutation[i]`.
/// Type II (multiplier): a multiplier letter `a` and a cut set A of letters
/// with a ∈ A, a^-1 ∉ A. Every other generator x maps to
///   x        if x ∉ A, x^-1 ∉ A
///   x a      if x ∈ A, x^-1 ∉ A
///   a^-1 x   if x ∉ A, x^-1 ∈ A
///   a^-1 x a if x ∈ A, x^-1 ∈ A
/// and a is fixed. The cut set is stored as a bitmask over the other
/// generators: bit 2k is "x_k ∈ A", bit 2k+1 is "x_k^-1 ∈ A", where k counts
/// generators in order skipping the multiplier's generator.
struct WhiteheadMove {
  enum class Kind { permutation, multiplier };

  Kind kind = Kind::multiplier;
  std::vector<Letter> permutation;
  Letter multiplier = 0;
  std::uint32_t cut = 0;

  FreeMap to_map(std::size_t rank) const;
  WhiteheadMove inverse() const;
  std::string describe(const Alphabet& alphabet) const;

  bool operator==(const WhiteheadMove&) const = default;
};

/// Canonical ordering: type I before type II; type II by multiplier
/// letter_rank, then cut mask.
bool move_less(const WhiteheadMove& a, const WhiteheadMove& b);

/// Every non-identity Whitehead automorphism of F(rank), canonically ordered.
/// Type I moves are included only for rank <= 6.
std::vector<WhiteheadMove> whitehead_moves(std::size_t rank);
std::vector<WhiteheadMove> multiplier_moves(std::size_t rank);

struct WhiteheadResult {
  Word minimal;                      // cyclically reduced
  std::vector<WhiteheadMove> moves;  // applied in order
  bool input_was_reduced = false;    // no single move shortened the input
};

/// Greedy steepest descent on cyclic length. Each step takes the move of
/// largest decrease; ties go to the canonically least move.
WhiteheadResult whitehead_minimize(const Word& w, std::size_t rank, Exec exec = Exec::parallel);

/// True iff no Whitehead automorphism of F(rank) strictly decreases the
/// cyclic length of w. Checks every move, type I included.
bool is_whitehead_reduced(const Word& w, std::size_t rank, Exec exec = Exec::parallel);

}  // namespace limitkit
