#pragma once

// Brute-force reference implementations shared by unit and acceptance tests.
// They never call into the library algorithms they are checking.

#include <array>
#include <cstdlib>
#include <numeric>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "limitkit/word.hpp"
#include "test_support.hpp"

namespace limitkit::oracle {

using Vec = std::vector<long long>;

// Stack-based free reduction of a raw letter sequence.
inline std::vector<Letter> reduce(const std::vector<Letter>& raw) {
  std::vector<Letter> out;
  for (Letter l : raw) {
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

inline std::vector<Letter> inverse(const std::vector<Letter>& w) {
  std::vector<Letter> out(w.rbegin(), w.rend());
  for (auto& l : out) l = -l;
  return out;
}

// Letter-by-letter substitution of generator images, then reduction.
inline std::vector<Letter> substitute(const std::vector<std::vector<Letter>>& images,
                                      const std::vector<Letter>& w) {
  std::vector<Letter> raw;
  for (Letter l : w) {
    const auto& img = images.at(static_cast<std::size_t>(l > 0 ? l : -l) - 1);
    const auto piece = l > 0 ? img : inverse(img);
    raw.insert(raw.end(), piece.begin(), piece.end());
  }
  return reduce(raw);
}

inline std::vector<Letter> power(const std::vector<Letter>& w, long long e) {
  std::vector<Letter> raw;
  const auto base = e >= 0 ? w : inverse(w);
  for (long long i = 0; i < (e >= 0 ? e : -e); ++i) raw.insert(raw.end(), base.begin(), base.end());
  return reduce(raw);
}

// Determinant by cofactor expansion; fine for the small matrices used here.
inline long long small_det(const std::vector<Vec>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  long long out = 0;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Vec> minor;
    for (std::size_t i = 1; i < n; ++i) {
      Vec row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(m[i][c]);
      minor.push_back(row);
    }
    out += (j % 2 ? -1 : 1) * m[0][j] * small_det(minor);
  }
  return out;
}

// gcd of all k x k minors of m (the k-th determinantal divisor).
inline long long determinantal_divisor(const std::vector<Vec>& m, std::size_t k) {
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  long long g = 0;
  std::vector<std::size_t> r(k), c(k);
  auto next = [](std::vector<std::size_t>& idx, std::size_t n) {
    std::size_t k = idx.size();
    for (std::size_t i = k; i-- > 0;) {
      if (idx[i] < n - k + i) {
        ++idx[i];
        for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        return true;
      }
    }
    return false;
  };
  std::iota(r.begin(), r.end(), 0);
  do {
    std::iota(c.begin(), c.end(), 0);
    do {
      std::vector<Vec> sub(k, Vec(k));
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) sub[i][j] = m[r[i]][c[j]];
      g = std::gcd(g, small_det(sub));
    } while (next(c, cols));
  } while (next(r, rows));
  return g;
}

inline std::size_t cyclic_length(std::vector<Letter> w) {
  w = reduce(w);
  std::size_t i = 0, j = w.size();
  while (j - i >= 2 && w[i] == -w[j - 1]) ++i, --j;
  return j - i;
}

inline long long dot(const Vec& a, const Vec& b) {
  long long s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Rank of at most three vectors of length at most three, by minors.
inline int small_rank(const std::vector<Vec>& vs, std::size_t n) {
  auto det2 = [](const Vec& a, const Vec& b, std::size_t i, std::size_t j) {
    return a[i] * b[j] - a[j] * b[i];
  };
  auto det3 = [](const Vec& a, const Vec& b, const Vec& c) {
    return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
           a[2] * (b[0] * c[1] - b[1] * c[0]);
  };
  int best = 0;
  for (const auto& v : vs)
    for (auto x : v)
      if (x) best = 1;
  if (best == 0) return 0;
  for (std::size_t p = 0; p < vs.size(); ++p)
    for (std::size_t q = p + 1; q < vs.size(); ++q)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (det2(vs[p], vs[q], i, j)) best = 2;
  if (best < 2 || n < 3) return best;
  for (std::size_t p = 0; p < vs.size(); ++p)
    for (std::size_t q = p + 1; q < vs.size(); ++q)
      for (std::size_t r = q + 1; r < vs.size(); ++r)
        if (det3(vs[p], vs[q], vs[r])) return 3;
  return best;
}

// Integer functionals with entries in [-box, box] killing every generator,
// reduced to a maximal independent subset. The closure of the lattice is the
// common kernel of these functionals.
struct FunctionalOracle {
  std::size_t n = 0;
  std::vector<Vec> killers;  // independent

  FunctionalOracle(const std::vector<Vec>& gens, std::size_t ambient, long long box) : n(ambient) {
    Vec f(n, -box);
    while (true) {
      bool kills = true;
      for (const auto& g : gens)
        if (dot(f, g) != 0) {
          kills = false;
          break;
        }
      if (kills) {
        auto trial = killers;
        trial.push_back(f);
        if (small_rank(trial, n) > static_cast<int>(killers.size())) killers = std::move(trial);
      }
      std::size_t i = 0;
      while (i < n && f[i] == box) f[i++] = -box;
      if (i == n) break;
      ++f[i];
    }
  }

  bool in_closure(const Vec& v) const {
    for (const auto& f : killers)
      if (dot(f, v) != 0) return false;
    return true;
  }
  std::size_t closure_rank() const { return n - killers.size(); }
};

// Box size large enough that the functionals in the box span the
// annihilator for generators with entries in [-3, 3].
inline long long functional_box(std::size_t ambient) {
  return ambient <= 1 ? 1 : ambient == 2 ? 3 : 18;
}

// gcd of the r x r minors of the generator matrix, r = rank. Equals the
// index of the lattice in its saturation.
inline long long minor_gcd(const std::vector<Vec>& gens, std::size_t n) {
  int r = small_rank(gens, n);
  if (r == 0) return 1;
  long long g = 0;
  const std::size_t m = gens.size();
  if (r == 1) {
    for (const auto& v : gens)
      for (auto x : v) g = std::gcd(g, std::llabs(x));
  } else if (r == 2) {
    for (std::size_t p = 0; p < m; ++p)
      for (std::size_t q = p + 1; q < m; ++q)
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = i + 1; j < n; ++j)
            g = std::gcd(g, std::llabs(gens[p][i] * gens[q][j] - gens[p][j] * gens[q][i]));
  } else {
    for (std::size_t p = 0; p < m; ++p)
      for (std::size_t q = p + 1; q < m; ++q)
        for (std::size_t s = q + 1; s < m; ++s) {
          const auto &a = gens[p], &b = gens[q], &c = gens[s];
          long long d = a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
                        a[2] * (b[0] * c[1] - b[1] * c[0]);
          g = std::gcd(g, std::llabs(d));
        }
  }
  return g;
}

// Words of length <= max_len that are products of at most `factors`
// conjugates c·ρ·c^-1, where ρ is a rotation of the relator or its inverse
// and |c| <= conj_len. Every such word is trivial in the one-relator group.
inline std::unordered_set<Word, WordHash> relator_products(const Word& relator, std::size_t rank,
                                                           std::size_t conj_len, int factors,
                                                           std::size_t max_len) {
  std::unordered_set<Word, WordHash> single_set;
  const auto conj = testing::all_words(rank, conj_len);
  for (const Word& base : {relator, relator.inverse()}) {
    const auto& L = base.letters();
    for (std::size_t s = 0; s < L.size(); ++s) {
      std::vector<Letter> rot(L.begin() + static_cast<std::ptrdiff_t>(s), L.end());
      rot.insert(rot.end(), L.begin(), L.begin() + static_cast<std::ptrdiff_t>(s));
      Word rho(std::move(rot));
      for (const auto& c : conj) single_set.insert(c * rho * c.inverse());
    }
  }
  std::vector<Word> single(single_set.begin(), single_set.end());
  std::unordered_set<Word, WordHash> out{Word{}};
  for (const auto& x : single)
    if (x.length() <= max_len) out.insert(x);
  if (factors < 2) return out;

  std::unordered_set<Word, WordHash> pairs;
  for (const auto& x : single)
    for (const auto& y : single) pairs.insert(x * y);
  for (const auto& p : pairs)
    if (p.length() <= max_len) out.insert(p);
  if (factors < 3) return out;

  // Third factor: z must cancel enough of p's suffix; index singles by
  // (length, overlap, prefix).
  auto key = [](std::size_t m, std::size_t k, const Letter* first) {
    std::string s;
    s.push_back(static_cast<char>(m));
    s.push_back(static_cast<char>(k));
    for (std::size_t i = 0; i < k; ++i) s.push_back(static_cast<char>(first[i] + 64));
    return s;
  };
  std::unordered_map<std::string, std::vector<const Word*>> by_prefix;
  std::size_t longest = 0;
  for (const auto& z : single) {
    longest = std::max(longest, z.length());
    for (std::size_t k = 0; k <= z.length(); ++k)
      by_prefix[key(z.length(), k, z.letters().data())].push_back(&z);
  }
  std::vector<Letter> inv_suffix;
  for (const auto& p : pairs) {
    const auto& P = p.letters();
    for (std::size_t m = 1; m <= longest; ++m) {
      const long long need = (static_cast<long long>(P.size() + m) - static_cast<long long>(max_len) + 1) / 2;
      const std::size_t k = need > 0 ? static_cast<std::size_t>(need) : 0;
      if (k > m || k > P.size()) continue;
      inv_suffix.clear();
      for (std::size_t i = 0; i < k; ++i) inv_suffix.push_back(-P[P.size() - 1 - i]);
      auto it = by_prefix.find(key(m, k, inv_suffix.data()));
      if (it == by_prefix.end()) continue;
      for (const Word* z : it->second) {
        Word t = p * *z;
        if (t.length() <= max_len) out.insert(std::move(t));
      }
    }
  }
  return out;
}

}  // namespace limitkit::oracle
