#include "doctest.h"
#include "test_support.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <unordered_set>

#include "limitkit/stallings.hpp"

using namespace limitkit;

namespace {

const Alphabet ab{"a", "b"};
Word W(const char* s) { return parse_word(s, ab); }

std::vector<Word> index2_H() { return {W("a"), W("b^2"), W("b a b^-1")}; }

// Every product of at most `depth` generators and inverses.
std::unordered_set<Word, WordHash> products(const std::vector<Word>& gens, int depth) {
  std::vector<Word> letters;
  for (const auto& g : gens) {
    letters.push_back(g);
    letters.push_back(g.inverse());
  }
  std::unordered_set<Word, WordHash> seen{Word{}};
  std::vector<Word> frontier{Word{}};
  for (int d = 0; d < depth; ++d) {
    std::vector<Word> next;
    for (const auto& w : frontier)
      for (const auto& l : letters) {
        Word v = w * l;
        if (seen.insert(v).second) next.push_back(v);
      }
    frontier = std::move(next);
  }
  return seen;
}

}  // namespace

TEST_CASE("fold_core_graph examples") {
  auto whole = fold_core_graph({W("a"), W("b")}, 2);
  CHECK(whole.vertex_count() == 1);
  CHECK(whole.edges().size() == 2);

  auto trivial = fold_core_graph({}, 2);
  CHECK(trivial.vertex_count() == 1);
  CHECK(trivial.edges().empty());

  auto H = fold_core_graph(index2_H(), 2);
  CHECK(H.vertex_count() == 2);
  CHECK(H.edges().size() == 4);
  CHECK(H.subgroup_rank() == 3);
}

TEST_CASE("folded graphs are folded and core") {
  std::mt19937_64 rng(testing::kSeed + 20);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Word> gens;
    for (int i = 0; i < 3; ++i) gens.push_back(testing::random_word(rng, 2, 7));
    auto g = fold_core_graph(gens, 2);
    std::vector<int> degree(g.vertex_count(), 0);
    std::set<std::pair<std::size_t, std::size_t>> out, in;
    for (const auto& e : g.edges()) {
      CHECK(out.insert({e.source, e.label}).second);
      CHECK(in.insert({e.target, e.label}).second);
      ++degree[e.source];
      ++degree[e.target];
    }
    for (std::size_t v = 1; v < g.vertex_count(); ++v) CHECK(degree[v] >= 2);
  }
}

TEST_CASE("member_and_rewrite on an index-2 subgroup") {
  auto H = fold_core_graph(index2_H(), 2);
  auto basis = subgroup_basis(H);
  REQUIRE(basis.generators.size() == 3);
  CHECK(basis.generators[0] == W("a"));
  CHECK(basis.generators[1] == W("b^2"));
  CHECK(basis.generators[2] == W("b a b^-1"));

  Word g = W("a^2 b^2 a^-2 b^-1");
  CHECK_FALSE(member_and_rewrite(H, g).has_value());

  auto rw = member_and_rewrite(H, g * g);
  REQUIRE(rw.has_value());
  const Alphabet xyz{"x", "y", "z"};
  CHECK(format_word(*rw, xyz) == "x^2 y x^-2 y^-1 z^2 y z^-2");

  auto e = member_and_rewrite(H, Word{});
  REQUIRE(e.has_value());
  CHECK(e->empty());
}

TEST_CASE("membership agrees with brute-force products") {
  std::mt19937_64 rng(testing::kSeed + 21);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Word> gens;
    std::uniform_int_distribution<int> count(1, 3);
    int k = count(rng);
    for (int i = 0; i < k; ++i) gens.push_back(testing::random_word(rng, 2, 4));
    auto g = fold_core_graph(gens, 2);
    auto basis = subgroup_basis(g);
    auto members = products(gens, 4);
    for (const auto& w : members) {
      auto rw = member_and_rewrite(g, basis, w);
      REQUIRE(rw.has_value());
      CHECK(substitute(basis.generators, *rw) == w);
    }
    // Words found non-members by the graph never occur among the products.
    for (int i = 0; i < 200; ++i) {
      Word w = testing::random_word(rng, 2, 8);
      auto rw = member_and_rewrite(g, basis, w);
      if (!rw) {
        CHECK(members.count(w) == 0);
      } else {
        CHECK(substitute(basis.generators, *rw) == w);
      }
    }
  }
}

TEST_CASE("subgroup_index examples") {
  CHECK(subgroup_index(fold_core_graph({W("a"), W("b")}, 2)) == std::optional<std::size_t>(1));
  CHECK(subgroup_index(fold_core_graph(index2_H(), 2)) == std::optional<std::size_t>(2));
  CHECK_FALSE(subgroup_index(fold_core_graph({W("a")}, 2)).has_value());
  CHECK_FALSE(subgroup_index(fold_core_graph({}, 2)).has_value());
}

TEST_CASE("subgroup_index matches orbit-stabilizer on permutation actions") {
  // H = Stab(0) for random permutations; Schreier generators give H, and the
  // index is the orbit size.
  std::mt19937_64 rng(testing::kSeed + 22);
  for (int trial = 0; trial < 60; ++trial) {
    std::uniform_int_distribution<int> size(1, 7);
    const std::size_t n = static_cast<std::size_t>(size(rng));
    std::vector<std::vector<std::size_t>> perm(2, std::vector<std::size_t>(n));
    for (auto& p : perm) {
      std::iota(p.begin(), p.end(), 0);
      std::shuffle(p.begin(), p.end(), rng);
    }
    std::vector<std::vector<std::size_t>> inv(2, std::vector<std::size_t>(n));
    for (int g = 0; g < 2; ++g)
      for (std::size_t i = 0; i < n; ++i) inv[g][perm[g][i]] = i;
    auto act = [&](std::size_t pt, Letter l) {
      return l > 0 ? perm[letter_gen(l)][pt] : inv[letter_gen(l)][pt];
    };
    std::vector<std::optional<Word>> transversal(n);
    transversal[0] = Word{};
    std::deque<std::size_t> q{0};
    while (!q.empty()) {
      auto p = q.front();
      q.pop_front();
      for (Letter l : {1, -1, 2, -2}) {
        auto t = act(p, l);
        if (!transversal[t]) {
          transversal[t] = *transversal[p] * Word({l});
          q.push_back(t);
        }
      }
    }
    std::size_t orbit = 0;
    std::vector<Word> schreier;
    for (std::size_t p = 0; p < n; ++p) {
      if (!transversal[p]) continue;
      ++orbit;
      for (Letter l : {1, 2}) {
        Word s = *transversal[p] * Word({l}) * transversal[act(p, l)]->inverse();
        if (!s.empty()) schreier.push_back(s);
      }
    }
    auto g = fold_core_graph(schreier, 2);
    auto idx = subgroup_index(g);
    REQUIRE(idx.has_value());
    CHECK(*idx == orbit);
  }
}

TEST_CASE("subgroup_basis round trip") {
  auto whole = subgroup_basis(fold_core_graph({W("a"), W("b")}, 2));
  CHECK(whole.generators == std::vector<Word>{W("a"), W("b")});
  CHECK(subgroup_basis(fold_core_graph({}, 2)).generators.empty());

  auto H = fold_core_graph(index2_H(), 2);
  auto b = subgroup_basis(H);
  CHECK(b.generators.size() == H.edges().size() - H.vertex_count() + 1);
  CHECK(fold_core_graph(b.generators, 2) == H);

  std::mt19937_64 rng(testing::kSeed + 23);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Word> gens;
    for (int i = 0; i < 3; ++i) gens.push_back(testing::random_word(rng, 3, 6));
    auto g = fold_core_graph(gens, 3);
    auto basis = subgroup_basis(g);
    CHECK(basis.generators.size() == g.subgroup_rank());
    CHECK(fold_core_graph(basis.generators, 3) == g);
    for (const auto& w : gens) {
      auto rw = member_and_rewrite(g, basis, w);
      REQUIRE(rw.has_value());
      CHECK(substitute(basis.generators, *rw) == w);
    }
  }
}

TEST_CASE("folding is confluent") {
  std::mt19937_64 rng(testing::kSeed + 24);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Word> gens;
    for (int i = 0; i < 4; ++i) gens.push_back(testing::random_word(rng, 2, 6));
    auto canonical = fold_core_graph(gens, 2);
    for (std::uint64_t s = 0; s < 5; ++s) CHECK(fold_core_graph_shuffled(gens, 2, rng() + s) == canonical);
  }
}

TEST_CASE("hom_injectivity") {
  const Alphabet xy{"x", "y"};
  CHECK(hom_injectivity(FreeMap::identity(2)));
  CHECK_FALSE(hom_injectivity(FreeMap(2, 2, {parse_word("x", xy), parse_word("x", xy)})));
  CHECK(hom_injectivity(FreeMap(2, 2, {parse_word("x^2", xy), parse_word("y^3", xy)})));
  CHECK_FALSE(hom_injectivity(FreeMap(2, 2, {parse_word("x", xy), Word{}})));
  // Three elements of F_2 can never be a basis of a rank-3 subgroup image
  // when they generate a rank-2 subgroup.
  CHECK_FALSE(hom_injectivity(FreeMap(3, 2, {parse_word("x", xy), parse_word("y", xy), parse_word("x y", xy)})));
  CHECK(hom_injectivity(FreeMap(3, 2, {parse_word("x^2", xy), parse_word("y", xy), parse_word("x y x^-1", xy)})));
}
