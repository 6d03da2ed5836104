#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "limitkit/word.hpp"

namespace limitkit::testing {

constexpr std::uint64_t kSeed = 20240611;

inline Word random_word(std::mt19937_64& rng, std::size_t rank, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<std::uint32_t> letter(0, static_cast<std::uint32_t>(2 * rank - 1));
  std::vector<Letter> raw;
  std::size_t n = len(rng);
  for (std::size_t i = 0; i < n; ++i) raw.push_back(letter_from_rank(letter(rng)));
  return Word(std::move(raw));
}

/// Freely reduced random word of exactly `len` letters.
inline Word random_reduced_word(std::mt19937_64& rng, std::size_t rank, std::size_t len) {
  std::uniform_int_distribution<std::uint32_t> letter(0, static_cast<std::uint32_t>(2 * rank - 1));
  std::vector<Letter> raw;
  while (raw.size() < len) {
    Letter l = letter_from_rank(letter(rng));
    if (!raw.empty() && raw.back() == -l) continue;
    raw.push_back(l);
  }
  return Word(std::move(raw));
}

/// All freely reduced words of length <= max_len over `rank` generators,
/// shortlex ordered.
inline std::vector<Word> all_words(std::size_t rank, std::size_t max_len) {
  std::vector<Word> out{Word{}};
  std::vector<std::vector<Letter>> layer{{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::vector<Letter>> next;
    for (const auto& w : layer)
      for (std::uint32_t r = 0; r < 2 * rank; ++r) {
        Letter l = letter_from_rank(r);
        if (!w.empty() && w.back() == -l) continue;
        auto v = w;
        v.push_back(l);
        next.push_back(std::move(v));
      }
    for (const auto& w : next) out.emplace_back(w);
    layer = std::move(next);
  }
  return out;
}

}  // namespace limitkit::testing
