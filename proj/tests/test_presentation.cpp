#include "doctest.h"
#include "test_support.hpp"

#include "limitkit/presentation.hpp"

using namespace limitkit;

namespace {

const Alphabet ab{"a", "b"};
const Alphabet xy{"x", "y"};
Word W(const char* s, const Alphabet& a = ab) { return parse_word(s, a); }

}  // namespace

TEST_CASE("presentations store cyclically reduced relators") {
  Presentation p(ab, {W("b a b^-1"), W("a a^-1")});
  REQUIRE(p.relators().size() == 1);
  CHECK(p.relators()[0] == W("a"));
  CHECK(Presentation::free_abelian(ab).is_free_abelian());
  CHECK(Presentation(ab, {W("b a b^-1 a^-1")}).is_free_abelian());
  CHECK_FALSE(Presentation(ab, {W("a^2")}).is_free_abelian());
  CHECK(Presentation::free_abelian(Alphabet{"a"}).is_free_abelian());
  CHECK_THROWS_AS(Presentation(Alphabet{"a"}, {W("b")}), InputError);
}

TEST_CASE("decide_trivial") {
  auto F = Presentation::free(ab);
  CHECK(*decide_trivial(F, Word{}));
  CHECK_FALSE(*decide_trivial(F, W("a b a^-1 b^-1")));
  auto Z2 = Presentation::free_abelian(ab);
  CHECK(*decide_trivial(Z2, W("a b a^-1 b^-1")));
  CHECK(*decide_trivial(Z2, W("a b^2 a^-1 b^-2")));
  CHECK_FALSE(*decide_trivial(Z2, W("a b")));
  Presentation T(Alphabet{"a"}, {parse_word("a^2", Alphabet{"a"})});
  CHECK_FALSE(*decide_trivial(T, parse_word("a", Alphabet{"a"})));
  CHECK_FALSE(decide_trivial(T, parse_word("a^2", Alphabet{"a"})).has_value());
}

TEST_CASE("validate_hom") {
  auto Z2 = Presentation::free_abelian(ab);
  auto ok = validate_hom_to_free(Z2, xy, {W("x^3", xy), W("x^5", xy)});
  CHECK(ok.verified());
  auto bad = validate_hom_to_free(Z2, xy, {W("x", xy), W("y", xy)});
  CHECK_FALSE(bad.hom.has_value());
  CHECK(bad.violated_relators == std::vector<std::size_t>{0});
  CHECK_THROWS_AS(validate_hom_to_free(Z2, xy, {W("x", xy)}), InputError);

  Presentation T(Alphabet{"a"}, {parse_word("a^2", Alphabet{"a"})});
  auto into_torsion = validate_hom(Presentation::free(Alphabet{"a"}), T, {parse_word("a", Alphabet{"a"})});
  CHECK(into_torsion.verified());  // free domain has no relators
  auto undecided = validate_hom(T, T, {parse_word("a^3", Alphabet{"a"})});
  REQUIRE(undecided.hom.has_value());
  CHECK(undecided.hom->status == HomStatus::asserted);
  CHECK(undecided.undecided_relators.size() == 1);

  CHECK(hom_length(*ok.hom) == 5);
  CHECK_THROWS_AS(hom_length(*undecided.hom), PreconditionError);
}

TEST_CASE("surface_family") {
  for (int g = 2; g <= 5; ++g) {
    auto s = surface_family(g, true);
    CHECK(s.group.rank() == static_cast<std::size_t>(2 * g));
    REQUIRE(s.retraction.has_value());
    CHECK(s.retraction->status == HomStatus::verified);
    for (const auto& r : s.group.relators()) CHECK(s.retraction->apply(r).empty());
    auto abz = abelianization_quotient(s.group);
    CHECK(abz.rank == static_cast<std::size_t>(2 * g));
    CHECK(abz.torsion.empty());
  }
  auto n = surface_family(3, false);
  CHECK_FALSE(n.retraction.has_value());
  auto abz = abelianization_quotient(n.group);
  CHECK(abz.rank == 2);
  CHECK(abz.torsion == std::vector<Integer>{2});
  CHECK_THROWS_AS(surface_family(1, true), InputError);
  CHECK_THROWS_AS(surface_family(0, false), InputError);
}

TEST_CASE("abelianization_quotient") {
  Presentation p(Alphabet{"a", "b", "c"}, {parse_word("a^2 b^4", Alphabet{"a", "b", "c"})});
  auto A = abelianization_quotient(p);
  CHECK(A.rank == 2);
  CHECK(A.torsion == std::vector<Integer>{2});
  REQUIRE(A.torsion_words.size() == 1);
  // Torsion words vanish in the torsion-free quotient.
  IntVector zero(A.rank);
  CHECK(A.image(A.torsion_words[0]) == zero);
  CHECK(A.image(p.relators()[0]) == zero);
  CHECK(A.image(parse_word("c", p.generators())) != zero);

  auto Z2 = abelianization_quotient(Presentation::free_abelian(ab));
  CHECK(Z2.rank == 2);
  auto F = abelianization_quotient(Presentation::free(ab));
  CHECK(F.generator_images == IntMatrix::identity(2));

  // Images of relators always vanish.
  std::mt19937_64 rng(testing::kSeed + 40);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Word> rels;
    for (int i = 0; i < 2; ++i) rels.push_back(testing::random_word(rng, 3, 6));
    Presentation q(Alphabet{"a", "b", "c"}, rels);
    auto Q = abelianization_quotient(q);
    IntVector z(Q.rank);
    for (const auto& r : q.relators()) CHECK(Q.image(r) == z);
    CHECK(Q.generator_images.rows() == 3);
  }
}

TEST_CASE("factors_through") {
  auto Z2 = Presentation::free_abelian(ab);
  auto f = validate_hom_to_free(Z2, xy, {W("x", xy), Word{}});
  REQUIRE(f.verified());
  QuotientMap q{Z2, {W("b")}, "kill b"};
  auto w = factors_through(*f.hom, q);
  REQUIRE(w.has_value());
  CHECK(w->status == HomStatus::verified);
  CHECK(w->domain == q.codomain());

  auto g = validate_hom_to_free(Z2, xy, {W("x", xy), W("x^2", xy)});
  CHECK_FALSE(factors_through(*g.hom, q).has_value());

  GroupHom unverified = *g.hom;
  unverified.status = HomStatus::asserted;
  CHECK_THROWS_AS(factors_through(unverified, q), PreconditionError);
}

TEST_CASE("abelian_factorization examples") {
  std::vector<Word> imgs{W("x^3", xy), W("x^5", xy)};
  auto r = abelian_factorization(imgs);
  CHECK(r.root == W("x", xy));
  CHECK(r.d == 1);
  CHECK(r.alpha == IntMatrix{{2, 5}, {-1, -3}});
  auto comp = compose_with_matrix(imgs, r.alpha);
  CHECK(comp[0] == W("x", xy));
  CHECK(comp[1].empty());

  std::vector<Word> trivial{Word{}, Word{}};
  auto t = abelian_factorization(trivial);
  CHECK(t.d == 0);
  CHECK(t.alpha == IntMatrix::identity(2));

  std::vector<Word> noncommuting{W("x", xy), W("y", xy)};
  CHECK_THROWS_AS(abelian_factorization(noncommuting), PreconditionError);
}

TEST_CASE("abelian_factorization on seeded commuting images") {
  std::mt19937_64 rng(testing::kSeed + 41);
  std::uniform_int_distribution<std::size_t> n_dist(1, 4), len(1, 4);
  std::uniform_int_distribution<long long> e(-9, 9);
  for (int trial = 0; trial < 200; ++trial) {
    Word w;
    while (w.empty()) w = testing::random_reduced_word(rng, 2, len(rng));
    const std::size_t n = n_dist(rng);
    std::vector<Word> imgs;
    Integer g = 0;
    for (std::size_t i = 0; i < n; ++i) {
      long long k = e(rng);
      g = gcd(g, Integer(static_cast<long>(k)));
      imgs.push_back(w.pow(k));
    }
    auto r = abelian_factorization(imgs);
    CHECK(is_unimodular(r.alpha));
    auto comp = compose_with_matrix(imgs, r.alpha);
    for (std::size_t i = 1; i < n; ++i) CHECK(comp[i].empty());
    if (g == 0) {
      CHECK(comp[0].empty());
    } else {
      // w may itself be a proper power of the primitive root.
      auto wr = primitive_root(w);
      const bool flipped = r.root == wr.root.inverse();
      CHECK((r.root == wr.root || flipped));
      CHECK(r.d == g * to_integer(wr.exponent));
      CHECK(comp[0] == w.pow(flipped ? -g.get_si() : g.get_si()));
      CHECK(comp[0] == r.root.pow(r.d.get_si()));
    }
  }
}
