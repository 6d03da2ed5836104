#include "limitkit/search.hpp"

#include <algorithm>
#include <functional>
#include <unordered_set>

#include "limitkit/errors.hpp"

namespace limitkit {

Alphabet search_target(std::size_t rank) {
  static const char* small[] = {"x", "y", "z"};
  if (rank <= 3) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < rank; ++i) names.emplace_back(small[i]);
    return Alphabet(std::move(names));
  }
  return Alphabet::numbered("x", rank);
}

Word reduced_word_at(std::size_t rank, std::size_t len, std::size_t index) {
  if (len == 0) return Word{};
  const std::size_t letters = 2 * rank;
  std::vector<std::uint32_t> digits(len);
  for (std::size_t k = len; k-- > 1;) {
    digits[k] = static_cast<std::uint32_t>(index % (letters - 1));
    index /= letters - 1;
  }
  digits[0] = static_cast<std::uint32_t>(index);
  std::vector<Letter> out;
  std::uint32_t prev = digits[0];
  out.push_back(letter_from_rank(prev));
  for (std::size_t k = 1; k < len; ++k) {
    const std::uint32_t forbidden = prev ^ 1u;
    const std::uint32_t code = digits[k] < forbidden ? digits[k] : digits[k] + 1;
    out.push_back(letter_from_rank(code));
    prev = code;
  }
  return Word(std::move(out));
}

bool kills_relators(const Presentation& p, const std::vector<Word>& images) {
  for (const auto& r : p.relators())
    if (!substitute(images, r).empty()) return false;
  return true;
}

bool separates(const GroupHom& f, const std::vector<Word>& X) {
  std::unordered_set<Word, WordHash> seen;
  for (const auto& x : X)
    if (!seen.insert(f.apply(x)).second) return false;
  return true;
}

namespace {

using Tuple = std::vector<Word>;

// Emits generator-image tuples of total length exactly L in lexicographic
// order with shortlex components. Stops when emit returns false.
class TupleEnumerator {
 public:
  TupleEnumerator(std::size_t n, std::size_t rank) : n_(n), rank_(rank), tuple_(n) {}

  bool run(std::size_t L, const std::function<bool(const Tuple&)>& emit) { return rec(0, L, emit); }

 private:
  bool rec(std::size_t k, std::size_t remaining, const std::function<bool(const Tuple&)>& emit) {
    if (k + 1 == n_) return component(k, remaining, [&] { return emit(tuple_); });
    for (std::size_t l = 0; l <= remaining; ++l)
      if (!component(k, l, [&] { return rec(k + 1, remaining - l, emit); })) return false;
    return true;
  }

  template <typename Next>
  bool component(std::size_t k, std::size_t len, Next&& next) {
    const std::size_t count = reduced_word_count(rank_, len);
    for (std::size_t i = 0; i < count; ++i) {
      tuple_[k] = reduced_word_at(rank_, len, i);
      if (!next()) return false;
    }
    return true;
  }

  std::size_t n_, rank_;
  Tuple tuple_;
};

template <typename Accept>
HomSearchResult search(const Presentation& p, const SearchBudget& b, Accept&& accept, Exec exec) {
  if (b.rank == 0) throw InputError("target rank must be positive");
  const Presentation target = Presentation::free(search_target(b.rank));
  HomSearchResult res;
  constexpr std::size_t batch_size = 4096;
  std::vector<Tuple> batch;
  batch.reserve(batch_size);

  // Evaluates the pending batch; true once a witness is found.
  auto flush = [&]() {
    auto hit = first_index_where(
        batch.size(), [&](std::size_t i) { return kills_relators(p, batch[i]) && accept(batch[i]); }, exec);
    if (hit == npos_index) {
      res.candidates += batch.size();
      batch.clear();
      return false;
    }
    res.candidates += hit + 1;
    res.witness = GroupHom{p, target, batch[hit], HomStatus::verified};
    batch.clear();
    return true;
  };

  if (p.rank() == 0) {
    res.exhausted = true;
    if (accept(Tuple{})) res.witness = GroupHom{p, target, {}, HomStatus::verified};
    res.candidates = 1;
    return res;
  }
  TupleEnumerator en(p.rank(), b.rank);
  bool capped = false;
  for (std::size_t L = 0; L <= b.max_len; ++L) {
    res.total_length = L;
    const bool finished = en.run(L, [&](const Tuple& t) {
      if (res.candidates + batch.size() >= b.max_candidates) {
        capped = true;
        return false;
      }
      batch.push_back(t);
      if (batch.size() == batch_size && flush()) return false;
      return true;
    });
    if (!res.witness && !batch.empty()) flush();
    if (res.witness || capped || !finished) break;
  }
  res.exhausted = !res.witness && !capped;
  return res;
}

void check_words(const Presentation& p, const std::vector<Word>& ws) {
  for (const auto& w : ws)
    if (w.span_rank() > p.rank()) throw InputError("word uses a generator outside the presentation");
}

}  // namespace

HomSearchResult orf_witness_search(const Presentation& p, const std::vector<Word>& X, const SearchBudget& b,
                                   Exec exec) {
  check_words(p, X);
  std::unordered_set<Word, WordHash> distinct(X.begin(), X.end());
  if (distinct.size() != X.size()) throw InputError("subset elements must be pairwise distinct");
  return search(
      p, b,
      [&](const Tuple& t) {
        std::unordered_set<Word, WordHash> seen;
        for (const auto& x : X)
          if (!seen.insert(substitute(t, x)).second) return false;
        return true;
      },
      exec);
}

HomSearchResult residually_free_probe(const Presentation& p, const Word& g, const SearchBudget& b, Exec exec) {
  check_words(p, {g});
  if (g.empty()) throw InputError("the probed word must be nontrivial as a reduced word");
  return search(p, b, [&](const Tuple& t) { return !substitute(t, g).empty(); }, exec);
}

std::string to_string(StableKind k) {
  switch (k) {
    case StableKind::all_trivial: return "all-trivial-in-range";
    case StableKind::all_nontrivial: return "all-nontrivial-in-range";
    case StableKind::eventually_constant: return "eventually-constant-from";
    case StableKind::mixed: return "mixed";
  }
  return "?";
}

std::string StableProbe::label() const {
  if (kind == StableKind::eventually_constant) return to_string(kind) + "(" + std::to_string(*from) + ")";
  return to_string(kind);
}

namespace {

void check_family(const TwistFamily& fam) {
  if (fam.f.status != HomStatus::verified) throw PreconditionError("the family needs a verified base hom");
  if (!(fam.alpha.group == fam.f.domain)) throw InputError("the twist acts on a different group");
  if (fam.first > fam.last) throw InputError("empty index range");
}

// Calls visit(i, α^i(u)) for i over the family's range.
template <typename Visit>
void iterate(const TwistFamily& fam, const Word& u, Visit&& visit) {
  Word cur = u;
  if (fam.first < 0)
    for (long long i = 0; i < -fam.first; ++i) cur = fam.alpha.apply_inverse(cur);
  else
    for (long long i = 0; i < fam.first; ++i) cur = fam.alpha.apply(cur);
  for (long long i = fam.first;; ++i) {
    if (!visit(i, cur)) return;
    if (i == fam.last) return;
    cur = fam.alpha.apply(cur);
  }
}

}  // namespace

StableProbe stable_kernel_probe(const TwistFamily& fam, const Word& g) {
  check_family(fam);
  if (g.span_rank() > fam.f.domain.rank()) throw InputError("word uses a generator outside the domain");
  StableProbe out;
  iterate(fam, g, [&](long long i, const Word& u) {
    out.indices.push_back(i);
    out.images.push_back(fam.f.apply(u));
    out.trivial.push_back(out.images.back().empty());
    return true;
  });
  const auto& t = out.trivial;
  if (std::all_of(t.begin(), t.end(), [](bool b) { return b; })) {
    out.kind = StableKind::all_trivial;
  } else if (std::none_of(t.begin(), t.end(), [](bool b) { return b; })) {
    out.kind = StableKind::all_nontrivial;
  } else {
    std::size_t start = t.size() - 1;
    while (start > 0 && t[start - 1] == t.back()) --start;
    if (t.size() - start >= 2) {
      out.kind = StableKind::eventually_constant;
      out.from = out.indices[start];
      out.eventual_trivial = t.back();
    }
  }
  return out;
}

std::optional<long long> first_separating_index(const TwistFamily& fam, const std::vector<Word>& X, long long from) {
  check_family(fam);
  std::vector<std::vector<Word>> per_index;
  for (const auto& x : X) {
    std::size_t k = 0;
    iterate(fam, x, [&](long long, const Word& u) {
      if (per_index.size() <= k) per_index.emplace_back();
      per_index[k++].push_back(fam.f.apply(u));
      return true;
    });
  }
  for (std::size_t k = 0; k < per_index.size(); ++k) {
    const long long i = fam.first + static_cast<long long>(k);
    if (i < from) continue;
    std::unordered_set<Word, WordHash> seen(per_index[k].begin(), per_index[k].end());
    if (seen.size() == X.size()) return i;
  }
  return std::nullopt;
}

}  // namespace limitkit
