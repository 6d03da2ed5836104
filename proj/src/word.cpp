#include "limitkit/word.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

namespace limitkit {

// ----------------------------------------------------------------- Alphabet

Alphabet::Alphabet(std::vector<std::string> names) {
  for (auto& n : names) {
    if (!valid_name(n)) throw InputError("invalid generator name '" + n + "'");
    if (index_.count(n)) throw InputError("duplicate generator name '" + n + "'");
    index_.emplace(n, names_.size());
    names_.push_back(std::move(n));
  }
}

Alphabet Alphabet::numbered(const std::string& prefix, std::size_t n) {
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) names.push_back(prefix + std::to_string(i));
  return Alphabet(std::move(names));
}

bool Alphabet::valid_name(std::string_view name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0]))) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

bool Alphabet::contains(std::string_view name) const {
  return index_.count(std::string(name)) != 0;
}

std::size_t Alphabet::index_of(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) throw InputError("unknown generator '" + std::string(name) + "'");
  return it->second;
}

std::size_t Alphabet::intern(const std::string& name) {
  auto it = index_.find(name);
  if (it != index_.end()) return it->second;
  if (!valid_name(name)) throw InputError("invalid generator name '" + name + "'");
  index_.emplace(name, names_.size());
  names_.push_back(name);
  return names_.size() - 1;
}

// --------------------------------------------------------------------- Word

namespace {

void push_reduced(std::vector<Letter>& out, Letter l) {
  if (!out.empty() && out.back() == -l) {
    out.pop_back();
  } else {
    out.push_back(l);
  }
}

}  // namespace

Word::Word(std::vector<Letter> letters) {
  letters_.reserve(letters.size());
  for (Letter l : letters) {
    if (l == 0) throw InputError("letter code 0 is not a generator");
    push_reduced(letters_, l);
  }
}

Word Word::inverse() const {
  std::vector<Letter> out(letters_.rbegin(), letters_.rend());
  for (auto& l : out) l = -l;
  return Word(std::move(out), Trusted{});
}

Word Word::pow(long long n) const {
  if (n == 0 || empty()) return {};
  if (n < 0) return inverse().pow(-n);
  auto [core, conj] = cyclic_reduce(*this);
  std::vector<Letter> out(conj.letters_);
  out.reserve(conj.length() * 2 + core.length() * static_cast<std::size_t>(n));
  for (long long i = 0; i < n; ++i)
    out.insert(out.end(), core.letters_.begin(), core.letters_.end());
  for (auto it = conj.letters_.rbegin(); it != conj.letters_.rend(); ++it) out.push_back(-*it);
  return Word(std::move(out), Trusted{});
}

Word Word::operator*(const Word& rhs) const {
  Word out(*this);
  out *= rhs;
  return out;
}

Word& Word::operator*=(const Word& rhs) {
  std::size_t k = 0;
  while (k < rhs.letters_.size() && !letters_.empty() && letters_.back() == -rhs.letters_[k]) {
    letters_.pop_back();
    ++k;
  }
  letters_.insert(letters_.end(), rhs.letters_.begin() + static_cast<std::ptrdiff_t>(k),
                  rhs.letters_.end());
  return *this;
}

std::size_t Word::span_rank() const {
  std::size_t r = 0;
  for (Letter l : letters_) r = std::max(r, letter_gen(l) + 1);
  return r;
}

bool shortlex_less(const Word& a, const Word& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  for (std::size_t i = 0; i < a.length(); ++i) {
    auto ra = letter_rank(a[i]), rb = letter_rank(b[i]);
    if (ra != rb) return ra < rb;
  }
  return false;
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (Letter l : w.letters()) {
    h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(l));
    h *= 1099511628211ull;
  }
  return h;
}

Word free_reduce(std::span<const Letter> raw, std::size_t rank) {
  for (Letter l : raw) {
    if (l == 0 || letter_gen(l) >= rank)
      throw InputError("letter code " + std::to_string(l) + " outside alphabet of rank " +
                       std::to_string(rank));
  }
  return Word(std::vector<Letter>(raw.begin(), raw.end()));
}

CyclicReduction cyclic_reduce(const Word& w) {
  const auto& L = w.letters();
  std::size_t i = 0, j = L.size();
  while (j - i >= 2 && L[i] == -L[j - 1]) {
    ++i;
    --j;
  }
  return {Word(std::vector<Letter>(L.begin() + static_cast<std::ptrdiff_t>(i),
                                   L.begin() + static_cast<std::ptrdiff_t>(j))),
          Word(std::vector<Letter>(L.begin(), L.begin() + static_cast<std::ptrdiff_t>(i)))};
}

PrimitiveRoot primitive_root(const Word& w) {
  if (w.empty()) throw InputError("the identity has no primitive root");
  auto [core, conj] = cyclic_reduce(w);
  const auto& c = core.letters();
  const std::size_t n = c.size();
  for (std::size_t p = 1; p <= n; ++p) {
    if (n % p) continue;
    bool periodic = true;
    for (std::size_t i = p; i < n && periodic; ++i) periodic = c[i] == c[i - p];
    if (periodic) {
      Word root = conj * Word(std::vector<Letter>(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(p))) *
                  conj.inverse();
      return {std::move(root), static_cast<long long>(n / p)};
    }
  }
  return {w, 1};  // unreachable: p == n always succeeds
}

bool power_of(const Word& w, const Word& root, long long& exponent) {
  if (w.empty()) {
    exponent = 0;
    return true;
  }
  if (root.empty()) return false;
  auto pr = primitive_root(w);
  if (pr.root == root) {
    exponent = pr.exponent;
    return true;
  }
  if (pr.root == root.inverse()) {
    exponent = -pr.exponent;
    return true;
  }
  return false;
}

std::size_t occurrence_count(const Word& w, std::size_t gen) {
  return static_cast<std::size_t>(std::count_if(
      w.letters().begin(), w.letters().end(), [gen](Letter l) { return letter_gen(l) == gen; }));
}

std::vector<long long> exponent_sums(const Word& w, std::size_t rank) {
  std::vector<long long> out(rank, 0);
  for (Letter l : w.letters()) {
    auto g = letter_gen(l);
    if (g >= rank) throw InputError("word uses a generator outside the alphabet");
    out[g] += letter_sign(l);
  }
  return out;
}

// -------------------------------------------------------------- text syntax

namespace {

template <typename Resolve>
Word parse_impl(std::string_view text, Resolve&& resolve) {
  std::vector<Letter> raw;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    if (tok == "1") continue;
    auto caret = tok.find('^');
    std::string name = tok.substr(0, caret);
    long long exp = 1;
    if (caret != std::string::npos) {
      std::string e = tok.substr(caret + 1);
      const char* first = e.data();
      const char* last = e.data() + e.size();
      if (!e.empty() && *first == '+') ++first;
      auto [ptr, ec] = std::from_chars(first, last, exp);
      if (e.empty() || ec != std::errc{} || ptr != last)
        throw InputError("bad exponent in token '" + tok + "'");
    }
    if (!Alphabet::valid_name(name)) throw InputError("bad token '" + tok + "'");
    std::size_t g = resolve(name);
    Letter l = make_letter(g, exp < 0 ? -1 : 1);
    for (long long i = 0; i < (exp < 0 ? -exp : exp); ++i) raw.push_back(l);
  }
  return Word(std::move(raw));
}

}  // namespace

Word parse_word(std::string_view text, const Alphabet& alphabet) {
  return parse_impl(text, [&](const std::string& n) { return alphabet.index_of(n); });
}

Word parse_word_interning(std::string_view text, Alphabet& alphabet) {
  return parse_impl(text, [&](const std::string& n) { return alphabet.intern(n); });
}

std::string format_word(const Word& w, const Alphabet& alphabet) {
  if (w.empty()) return "1";
  std::string out;
  const auto& L = w.letters();
  for (std::size_t i = 0; i < L.size();) {
    std::size_t j = i;
    while (j < L.size() && L[j] == L[i]) ++j;
    long long e = static_cast<long long>(j - i) * letter_sign(L[i]);
    if (!out.empty()) out += ' ';
    out += alphabet.name(letter_gen(L[i]));
    if (e != 1) out += "^" + std::to_string(e);
    i = j;
  }
  return out;
}

// ------------------------------------------------------------------ FreeMap

FreeMap::FreeMap(std::size_t domain_rank, std::size_t target_rank, std::vector<Word> images)
    : target_rank_(target_rank), images_(std::move(images)) {
  if (images_.size() != domain_rank)
    throw InputError("free map needs one image per domain generator");
  for (const auto& w : images_)
    if (w.span_rank() > target_rank_) throw InputError("image outside the target alphabet");
}

FreeMap FreeMap::identity(std::size_t rank) {
  std::vector<Word> imgs;
  for (std::size_t i = 0; i < rank; ++i) imgs.push_back(Word::generator(i));
  return FreeMap(rank, rank, std::move(imgs));
}

Word substitute(std::span<const Word> images, const Word& w) {
  Word out;
  for (Letter l : w.letters()) {
    auto g = letter_gen(l);
    if (g >= images.size()) throw InputError("word uses a generator outside the map's domain");
    out *= letter_sign(l) > 0 ? images[g] : images[g].inverse();
  }
  return out;
}

Word FreeMap::apply(const Word& w) const { return substitute(images_, w); }

FreeMap FreeMap::after(const FreeMap& inner) const {
  if (inner.target_rank() != domain_rank())
    throw InputError("cannot compose free maps: rank mismatch");
  std::vector<Word> imgs;
  imgs.reserve(inner.domain_rank());
  for (const auto& w : inner.images()) imgs.push_back(apply(w));
  return FreeMap(inner.domain_rank(), target_rank_, std::move(imgs));
}

Word cyclic_canonical(const Word& w) {
  Word core = cyclic_reduce(w).core;
  Word best = core;
  for (const Word& base : {core, core.inverse()}) {
    const auto& L = base.letters();
    for (std::size_t s = 0; s < L.size(); ++s) {
      std::vector<Letter> rot(L.begin() + static_cast<std::ptrdiff_t>(s), L.end());
      rot.insert(rot.end(), L.begin(), L.begin() + static_cast<std::ptrdiff_t>(s));
      Word r(std::move(rot));
      if (shortlex_less(r, best)) best = r;
    }
  }
  return best;
}

std::vector<Word> words_up_to(std::size_t rank, std::size_t max_len) {
  std::vector<Word> out{Word{}};
  if (rank == 0) return out;
  std::size_t layer_begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    const std::size_t layer_end = out.size();
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      const std::vector<Letter> prefix = out[i].letters();
      for (std::uint32_t r = 0; r < 2 * rank; ++r) {
        Letter l = letter_from_rank(r);
        if (!prefix.empty() && prefix.back() == -l) continue;
        std::vector<Letter> v = prefix;
        v.push_back(l);
        out.emplace_back(std::move(v));
      }
    }
    layer_begin = layer_end;
  }
  return out;
}

std::size_t reduced_word_count(std::size_t rank, std::size_t len) {
  if (len == 0) return 1;
  if (rank == 0) return 0;
  std::size_t n = 2 * rank;
  for (std::size_t i = 1; i < len; ++i) n *= 2 * rank - 1;
  return n;
}

}  // namespace limitkit
