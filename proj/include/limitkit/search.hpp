#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "limitkit/parallel.hpp"
#include "limitkit/presentation.hpp"
#include "limitkit/splitting.hpp"

namespace limitkit {

/// Bounds for hom enumeration. `max_len` caps the total image length
/// Σ|f(g_i)|; `max_candidates` caps the number of tuples examined.
struct SearchBudget {
  std::size_t max_len = 8;
  std::size_t rank = 2;
  std::size_t max_candidates = 20'000'000;
};

/// Target alphabet used by the searches: x, y, z for rank <= 3, else x1..xn.
Alphabet search_target(std::size_t rank);

struct HomSearchResult {
  std::optional<GroupHom> witness;
  std::size_t candidates = 0;     // tuples examined
  std::size_t total_length = 0;   // of the witness, or the last length searched
  bool exhausted = false;         // every tuple within max_len was examined
};

/// Number of freely reduced words of length `len` over `rank` generators and
/// the i-th of them in lexicographic letter_rank order.
Word reduced_word_at(std::size_t rank, std::size_t len, std::size_t index);

/// First generator-image tuple, by total length then lexicographically with
/// shortlex components, that kills every relator and separates X.
HomSearchResult orf_witness_search(const Presentation& p, const std::vector<Word>& X, const SearchBudget& b,
                                   Exec exec = Exec::parallel);

/// Same enumeration with the single constraint f(g) != 1.
HomSearchResult residually_free_probe(const Presentation& p, const Word& g, const SearchBudget& b,
                                      Exec exec = Exec::parallel);

/// Independent re-checks of search witnesses.
bool separates(const GroupHom& f, const std::vector<Word>& X);
bool kills_relators(const Presentation& p, const std::vector<Word>& images);

struct TwistFamily {
  GroupHom f;
  TwistAutomorphism alpha;
  long long first = 0;
  long long last = 10;
};

enum class StableKind { all_trivial, all_nontrivial, eventually_constant, mixed };
std::string to_string(StableKind k);

struct StableProbe {
  std::vector<long long> indices;
  std::vector<Word> images;  // f(α^i(g))
  std::vector<bool> trivial;
  StableKind kind = StableKind::mixed;
  std::optional<long long> from;       // start of the final constant run
  std::optional<bool> eventual_trivial;  // value of that run
  std::string label() const;             // e.g. "eventually-constant-from(1)"
};

/// f_i(g) = f(α^i(g)) over the family's range; classification is over the
/// computed range only.
StableProbe stable_kernel_probe(const TwistFamily& fam, const Word& g);

/// Smallest i in the range at or after `from` with f(α^i(x)) pairwise
/// distinct over X.
std::optional<long long> first_separating_index(const TwistFamily& fam, const std::vector<Word>& X,
                                                long long from = 0);

}  // namespace limitkit
