#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "limitkit/errors.hpp"

namespace limitkit {

// A letter is a nonzero code: +(i+1) is generator i, -(i+1) its inverse.
using Letter = std::int32_t;

constexpr Letter make_letter(std::size_t gen, int sign) {
  return sign > 0 ? static_cast<Letter>(gen + 1) : -static_cast<Letter>(gen + 1);
}
constexpr std::size_t letter_gen(Letter l) { return static_cast<std::size_t>(l > 0 ? l : -l) - 1; }
constexpr int letter_sign(Letter l) { return l > 0 ? 1 : -1; }

// Total order on letters used by every shortlex comparison in the library:
// a < a^-1 < b < b^-1 < ...
constexpr std::uint32_t letter_rank(Letter l) {
  return static_cast<std::uint32_t>(2 * letter_gen(l) + (l < 0 ? 1 : 0));
}
constexpr Letter letter_from_rank(std::uint32_t r) {
  return make_letter(r / 2, (r % 2) ? -1 : 1);
}

/// Ordered list of distinct generator names. The order fixes letter_rank().
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names);
  Alphabet(std::initializer_list<std::string> names)
      : Alphabet(std::vector<std::string>(names)) {}

  /// Generators named prefix1..prefixN.
  static Alphabet numbered(const std::string& prefix, std::size_t n);

  std::size_t rank() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  bool contains(std::string_view name) const;
  std::size_t index_of(std::string_view name) const;  // throws InputError

  /// Appends a generator if absent; returns its index.
  std::size_t intern(const std::string& name);

  bool operator==(const Alphabet& other) const { return names_ == other.names_; }

  static bool valid_name(std::string_view name);

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Freely reduced word. Reduction is eager: every constructor and operation
/// returns a reduced word, so group equality is sequence equality.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters);
  Word(std::initializer_list<Letter> letters) : Word(std::vector<Letter>(letters)) {}

  static Word generator(std::size_t i, int sign = 1) { return Word({make_letter(i, sign)}); }

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  Letter front() const { return letters_.front(); }
  Letter back() const { return letters_.back(); }

  Word inverse() const;
  Word pow(long long n) const;
  Word operator*(const Word& rhs) const;
  Word& operator*=(const Word& rhs);

  /// Largest generator index used plus one (0 for the empty word).
  std::size_t span_rank() const;

  bool operator==(const Word& o) const { return letters_ == o.letters_; }
  bool operator!=(const Word& o) const { return letters_ != o.letters_; }

 private:
  struct Trusted {};
  Word(std::vector<Letter> letters, Trusted) : letters_(std::move(letters)) {}
  std::vector<Letter> letters_;
};

/// Shortlex order: length first, then letter_rank lexicographically.
bool shortlex_less(const Word& a, const Word& b);

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

/// Reduces an arbitrary letter sequence; checks every letter against `rank`.
Word free_reduce(std::span<const Letter> raw, std::size_t rank);

inline Word commutator(const Word& a, const Word& b) {
  return a * b * a.inverse() * b.inverse();
}

struct CyclicReduction {
  Word core;
  Word conjugator;  // w == conjugator * core * conjugator^-1
};
CyclicReduction cyclic_reduce(const Word& w);
inline std::size_t cyclic_length(const Word& w) { return cyclic_reduce(w).core.length(); }
/// Every freely reduced word of length <= max_len, in shortlex order.
std::vector<Word> words_up_to(std::size_t rank, std::size_t max_len);
/// Number of freely reduced words of length exactly len.
std::size_t reduced_word_count(std::size_t rank, std::size_t len);

/// Shortlex-least rotation of the cyclic core of w or w^-1: equal exactly
/// for words that are conjugate up to inversion.
Word cyclic_canonical(const Word& w);

struct PrimitiveRoot {
  Word root;
  long long exponent = 0;  // w == root^exponent, exponent maximal and positive
};
/// Throws InputError on the empty word.
PrimitiveRoot primitive_root(const Word& w);
inline bool is_proper_power(const Word& w) { return primitive_root(w).exponent > 1; }

/// Exponent of w as a power of the primitive word `root`, if w is one.
/// The empty word is root^0.
bool power_of(const Word& w, const Word& root, long long& exponent);

std::size_t occurrence_count(const Word& w, std::size_t gen);

/// Exponent sum of each generator (the image in the abelianization).
std::vector<long long> exponent_sums(const Word& w, std::size_t rank);

// ---------------------------------------------------------------------------
// Text syntax: whitespace separated tokens `g` or `g^n`; "1" is the identity.

Word parse_word(std::string_view text, const Alphabet& alphabet);
/// Parses, interning unseen generator names into `alphabet`.
Word parse_word_interning(std::string_view text, Alphabet& alphabet);
std::string format_word(const Word& w, const Alphabet& alphabet);

// ---------------------------------------------------------------------------

/// Homomorphism between free groups given by generator images.
class FreeMap {
 public:
  FreeMap() = default;
  FreeMap(std::size_t domain_rank, std::size_t target_rank, std::vector<Word> images);

  static FreeMap identity(std::size_t rank);

  std::size_t domain_rank() const { return images_.size(); }
  std::size_t target_rank() const { return target_rank_; }
  const std::vector<Word>& images() const { return images_; }
  const Word& image(std::size_t gen) const { return images_.at(gen); }

  Word apply(const Word& w) const;
  /// (this ∘ inner): first inner, then this.
  FreeMap after(const FreeMap& inner) const;

  bool operator==(const FreeMap& o) const {
    return target_rank_ == o.target_rank_ && images_ == o.images_;
  }

 private:
  std::size_t target_rank_ = 0;
  std::vector<Word> images_;
};

/// Substitutes generator images into w. Throws InputError if w uses a
/// generator outside `images`.
Word substitute(std::span<const Word> images, const Word& w);

inline Word apply_map(const FreeMap& m, const Word& w) { return m.apply(w); }

}  // namespace limitkit
