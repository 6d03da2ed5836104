#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "limitkit/intlinalg.hpp"
#include "limitkit/word.hpp"

namespace limitkit {

/// Finite presentation. Relators are stored cyclically reduced; trivial
/// relators are dropped.
class Presentation {
 public:
  Presentation() = default;
  Presentation(Alphabet generators, std::vector<Word> relators);

  static Presentation free(Alphabet generators) { return Presentation(std::move(generators), {}); }
  /// ⟨g_1..g_n | [g_i, g_j], i < j⟩
  static Presentation free_abelian(Alphabet generators);

  const Alphabet& generators() const { return generators_; }
  std::size_t rank() const { return generators_.rank(); }
  const std::vector<Word>& relators() const { return relators_; }

  bool is_free() const { return relators_.empty(); }
  /// Recognizes the standard commutator presentation of Z^n (any relator
  /// order, cyclic rotation or inversion).
  bool is_free_abelian() const;

  Word parse(std::string_view text) const { return parse_word(text, generators_); }
  std::string format(const Word& w) const { return format_word(w, generators_); }

  bool operator==(const Presentation& o) const {
    return generators_ == o.generators_ && relators_ == o.relators_;
  }

 private:
  Alphabet generators_;
  std::vector<Word> relators_;
};

/// Word problem where it is decidable here: free and free abelian
/// presentations exactly; otherwise only a nonzero abelianization image
/// proves nontriviality. nullopt means undecided.
std::optional<bool> decide_trivial(const Presentation& p, const Word& w);

enum class HomStatus { verified, asserted };
std::string to_string(HomStatus s);

/// Homomorphism given by generator images. `verified` means every domain
/// relator was checked to map to the identity of the target.
struct GroupHom {
  Presentation domain;
  Presentation target;
  std::vector<Word> images;
  HomStatus status = HomStatus::asserted;

  Word apply(const Word& w) const { return substitute(images, w); }
  bool target_is_free() const { return target.is_free(); }
};

struct HomValidation {
  std::optional<GroupHom> hom;               // set unless a relator is refuted
  std::vector<std::size_t> violated_relators;
  std::vector<std::size_t> undecided_relators;
  bool verified() const { return hom && hom->status == HomStatus::verified; }
};

/// Checks every domain relator against the target. Throws InputError on an
/// arity mismatch or an image outside the target alphabet.
HomValidation validate_hom(const Presentation& domain, const Presentation& target,
                           std::vector<Word> images);
inline HomValidation validate_hom_to_free(const Presentation& domain, const Alphabet& target,
                                          std::vector<Word> images) {
  return validate_hom(domain, Presentation::free(target), std::move(images));
}

/// max over generators of |f(g)|. Requires a verified hom to a free group.
std::size_t hom_length(const GroupHom& f);

struct Abelianization {
  std::size_t rank = 0;              // torsion-free rank r
  std::vector<Integer> torsion;      // invariant factors > 1
  IntMatrix generator_images;        // n x r; row i is the image of generator i
  std::vector<Word> torsion_words;   // one domain word per torsion factor

  IntVector image(const Word& w) const;
};

/// Torsion-free abelianization G -> Z^r via the Smith form of the relator
/// exponent matrix.
Abelianization abelianization_quotient(const Presentation& p);

/// The quotient of `domain` by the normal closure of `added`.
struct QuotientMap {
  Presentation domain;
  std::vector<Word> added;
  std::string label;

  Presentation codomain() const;
};

/// Witness hom on q's codomain (same images) when f kills every added
/// relator, else nullopt. f must be verified.
std::optional<GroupHom> factors_through(const GroupHom& f, const QuotientMap& q);

struct AbelianFactorization {
  IntMatrix alpha;  // automorphism of Z^n; column j is the image of e_j
  Word root;        // primitive, empty in the degenerate case
  IntVector exponents;
  Integer d;        // gcd of exponents; 0 in the degenerate case
};

/// For commuting images f(e_1..e_n) in a free group, finds alpha in GL_n(Z)
/// with (f∘alpha)(e_1) = root^d and (f∘alpha)(e_i) = 1 for i >= 2.
/// Throws PreconditionError when the images do not commute.
AbelianFactorization abelian_factorization(std::span<const Word> images);

/// Image of e_j under f∘alpha: the product over i of f(e_i)^alpha(i, j).
std::vector<Word> compose_with_matrix(std::span<const Word> images, const IntMatrix& alpha);

struct SurfaceFamily {
  Presentation group;
  std::optional<GroupHom> retraction;  // absent for non-orientable surfaces
};

/// Orientable genus g >= 2: ⟨a1,b1,..,ag,bg | Π[ai,bi]⟩ with the verified
/// retraction ai -> xi, bi -> 1. Non-orientable genus g >= 1:
/// ⟨a1..ag | a1^2..ag^2⟩ with no retraction.
SurfaceFamily surface_family(int genus, bool orientable);

}  // namespace limitkit
