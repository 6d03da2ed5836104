#pragma once

// Shared groups, homs and twists used by unit and acceptance tests.

#include <random>
#include <vector>

#include "limitkit/clg.hpp"
#include "limitkit/diagram.hpp"
#include "limitkit/splitting.hpp"
#include "test_support.hpp"

namespace limitkit::fixtures {

inline const Alphabet& ab() {
  static const Alphabet a{"a", "b"};
  return a;
}
inline const Alphabet& cd() {
  static const Alphabet a{"c", "d"};
  return a;
}
inline const Alphabet& xy() {
  static const Alphabet a{"x", "y"};
  return a;
}

inline CyclicAmalgam commutator_double() {
  return CyclicAmalgam::double_of(ab(), cd(), parse_word("a b a^-1 b^-1", ab()));
}

// Retraction of the double onto F(x, y): a, c -> x and b, d -> y.
inline GroupHom double_retraction(const CyclicAmalgam& D) {
  const Word x = Word::generator(0), y = Word::generator(1);
  auto v = validate_hom_to_free(D.group(), xy(), {x, y, x, y});
  return *v.hom;
}

// Elementary transvections of Z^2 = ⟨a, b⟩ realized as HNN Dehn twists:
// b -> b a and a -> a b.
inline std::vector<TwistAutomorphism> z2_transvections() {
  const auto Z2 = Presentation::free_abelian(ab());
  std::vector<TwistAutomorphism> out;
  for (std::size_t t : {1, 0}) {
    OneEdgeSplitting s;
    s.form = OneEdgeSplitting::Form::hnn;
    s.group = Z2;
    s.a_generators = {1 - t};
    s.stable_letter = t;
    s.edge = Word::generator(1 - t);
    s.partner = s.edge;
    s.a_side = OneEdgeSplitting::Side::free;
    auto tw = dehn_twist(s, s.edge);
    tw.label = t == 1 ? "b->ba" : "a->ab";
    out.push_back(std::move(tw));
  }
  return out;
}

// f: Z^2 -> F(x, y), a -> w^p, b -> w^q.
inline GroupHom z2_power_hom(const Word& w, long long p, long long q) {
  auto v = validate_hom_to_free(Presentation::free_abelian(ab()), xy(), {w.pow(p), w.pow(q)});
  return *v.hom;
}

// Random hom Z^n -> F_2 with commuting images: powers of one random root.
inline GroupHom random_commuting_hom(std::mt19937_64& rng, std::size_t n, std::size_t max_root_len,
                                     long long max_exp) {
  std::uniform_int_distribution<std::size_t> len(1, max_root_len);
  std::uniform_int_distribution<long long> e(-max_exp, max_exp);
  const Word w = testing::random_reduced_word(rng, 2, len(rng));
  std::vector<Word> images;
  for (std::size_t i = 0; i < n; ++i) images.push_back(w.pow(e(rng)));
  auto v = validate_hom_to_free(Presentation::free_abelian(Alphabet::numbered("e", n)), xy(), images);
  return *v.hom;
}

// One-point GAD for Z^n with ρ to the trivial group.
inline ClgCertificate zn_certificate(std::size_t n) {
  const auto names = Alphabet::numbered("e", n);
  Gad g;
  g.group = Presentation::free_abelian(names);
  GadVertex A;
  A.kind = GadVertex::Kind::abelian;
  A.name = "A";
  for (std::size_t i = 0; i < n; ++i) A.marking.push_back(Word::generator(i));
  g.vertices = {A};
  return ClgCertificate::step(g, std::vector<Word>(n), ClgCertificate::free(Alphabet{}));
}

// Z^2 = ⟨a, b⟩ with two cyclic rigid satellites ⟨a⟩ and ⟨b⟩ glued along the
// coordinate axes, so P(A) = Z^2, and ρ: a, b -> x.
inline ClgCertificate zn_rank2_peripheral() {
  Gad g;
  g.group = Presentation::free_abelian(ab());
  GadVertex A;
  A.kind = GadVertex::Kind::abelian;
  A.name = "A";
  A.marking = {Word::generator(0), Word::generator(1)};
  g.vertices = {A};
  for (std::size_t i = 0; i < 2; ++i) {
    GadVertex R;
    R.kind = GadVertex::Kind::rigid;
    R.name = i == 0 ? "Ra" : "Rb";
    R.free_marked = true;
    R.marking = {Word::generator(i)};
    g.vertices.push_back(R);
    GadEdge e;
    e.source = 0;
    e.target = i + 1;
    e.generator = Word::generator(i);
    e.source_tuple = i == 0 ? make_int_vector({1, 0}) : make_int_vector({0, 1});
    e.target_word = Word::generator(0);
    g.edges.push_back(e);
  }
  const Word x = Word::generator(0);
  return ClgCertificate::step(g, {x, x}, ClgCertificate::free(Alphabet{"x"}));
}

// Genus-2 surface as two punctured tori over the curve [a1, b1]. `rho` maps
// a1, b1, a2, b2 into F(x1, x2).
inline Gad genus2_gad() {
  Gad g;
  g.group = surface_family(2, true).group;
  const Word a1 = Word::generator(0), b1 = Word::generator(1), a2 = Word::generator(2),
             b2 = Word::generator(3);
  for (int i = 0; i < 2; ++i) {
    GadVertex T;
    T.kind = GadVertex::Kind::qh;
    T.name = i == 0 ? "T1" : "T2";
    T.genus = 1;
    T.boundary = 1;
    T.marking = i == 0 ? std::vector<Word>{a1, b1} : std::vector<Word>{a2, b2};
    g.vertices.push_back(T);
  }
  GadEdge e;
  e.source = 0;
  e.target = 1;
  e.generator = commutator(a1, b1);
  e.source_word = commutator(Word::generator(0), Word::generator(1));
  e.target_word = commutator(Word::generator(1), Word::generator(0));
  g.edges = {e};
  return g;
}

inline ClgCertificate genus2_certificate(const char* rho_text = "x1 x2 x2 x1") {
  const Alphabet x12{"x1", "x2"};
  std::vector<Word> rho;
  std::string text(rho_text);
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find(' ', pos);
    if (end == std::string::npos) end = text.size();
    const auto tok = text.substr(pos, end - pos);
    rho.push_back(tok == "1" ? Word{} : parse_word(tok, x12));
    pos = end + 1;
  }
  return ClgCertificate::step(genus2_gad(), rho, ClgCertificate::free(x12));
}

// F(a, b, c) as F(a, b) *_⟨a⟩ F(a, c) with two rigid vertices; ρ into F(x, y).
inline ClgCertificate rigid_amalgam_certificate(const Word& rho_c) {
  Gad g;
  g.group = Presentation::free(Alphabet{"a", "b", "c"});
  const Word a = Word::generator(0), b = Word::generator(1), c = Word::generator(2);
  GadVertex B1, B2;
  B1.kind = B2.kind = GadVertex::Kind::rigid;
  B1.free_marked = B2.free_marked = true;
  B1.name = "B1";
  B2.name = "B2";
  B1.marking = {a, b};
  B2.marking = {a, c};
  g.vertices = {B1, B2};
  GadEdge e;
  e.source = 0;
  e.target = 1;
  e.generator = a;
  e.source_word = Word::generator(0);
  e.target_word = Word::generator(0);
  g.edges = {e};
  return ClgCertificate::step(g, {Word::generator(0), Word::generator(1), rho_c}, ClgCertificate::free(xy()));
}

// The double along [a, b] with both vertices rigid and ρ its retraction.
inline ClgCertificate double_certificate() {
  auto D = commutator_double();
  Gad g;
  g.group = D.group();
  GadVertex L, R;
  L.kind = R.kind = GadVertex::Kind::rigid;
  L.free_marked = R.free_marked = true;
  L.name = "L";
  R.name = "R";
  L.marking = {Word::generator(0), Word::generator(1)};
  R.marking = {Word::generator(2), Word::generator(3)};
  g.vertices = {L, R};
  GadEdge e;
  e.source = 0;
  e.target = 1;
  e.generator = D.w(0);
  e.source_word = commutator(Word::generator(0), Word::generator(1));
  e.target_word = e.source_word;
  g.edges = {e};
  return ClgCertificate::step(g, double_retraction(D).images, ClgCertificate::free(xy()));
}

}  // namespace limitkit::fixtures
