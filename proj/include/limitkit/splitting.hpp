#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "limitkit/intlinalg.hpp"
#include "limitkit/presentation.hpp"
#include "limitkit/word.hpp"

namespace limitkit {

/// Vertex of a generalized abelian decomposition. Every vertex carries a
/// marking: the images of its local generators in the total group. Local
/// words (edge inclusions) use the local generator indices.
struct GadVertex {
  enum class Kind { qh, abelian, rigid };

  Kind kind = Kind::rigid;
  std::string name;

  // qh: surface data. With at least one boundary component the vertex group
  // is free on the marking.
  int genus = 0;
  int boundary = 0;
  bool orientable = true;

  // abelian: extra generators of P(A) besides incident edge tuples.
  std::vector<IntVector> peripheral;

  // rigid: the vertex group is free on its marking.
  bool free_marked = false;

  std::vector<std::string> generator_names;
  std::vector<Word> marking;

  std::size_t local_rank() const { return marking.size(); }
  bool is_free() const {
    return (kind == Kind::qh && boundary > 0) || (kind == Kind::rigid && free_marked);
  }
  /// Euler characteristic of a qh surface.
  int euler_characteristic() const {
    return orientable ? 2 - 2 * genus - boundary : 2 - genus - boundary;
  }
};

std::string to_string(GadVertex::Kind k);

/// Cyclic edge. The inclusion into an abelian endpoint is a tuple, into any
/// other endpoint a local word.
struct GadEdge {
  std::size_t source = 0;
  std::size_t target = 0;
  Word generator;  // marking in the total group
  Word source_word, target_word;
  IntVector source_tuple, target_tuple;
};

struct Gad {
  Presentation group;
  std::vector<GadVertex> vertices;
  std::vector<GadEdge> edges;
};

/// Checks the structural invariants; throws InputError with a description of
/// the first violation.
void validate_gad(const Gad& gad);

/// Total-group word for a local word or tuple of vertex v.
Word vertex_word(const GadVertex& v, const Word& local);
Word vertex_tuple_word(const GadVertex& v, const IntVector& tuple);
/// Total-group word of the inclusion of edge e into its source (side 0) or
/// target (side 1).
Word edge_side_word(const Gad& gad, const GadEdge& e, int side);

/// P(A) for an abelian vertex: its peripheral tuples and every incident edge
/// tuple.
Lattice peripheral_lattice(const Gad& gad, std::size_t vertex);

/// P̄(A) and the index [P̄(A) : P(A)]. Throws PreconditionError unless the
/// vertex is abelian.
Saturation peripheral_closure(const Gad& gad, std::size_t vertex);

struct OneEdgeSplitting {
  enum class Form { amalgam, hnn };
  enum class Side { free, abelian, general };

  Form form = Form::amalgam;
  Presentation group;
  std::vector<std::size_t> a_generators;
  std::vector<std::size_t> b_generators;  // amalgam only
  std::size_t stable_letter = 0;          // hnn only
  Word edge;     // edge generator as a word in A
  Word partner;  // amalgam: the same element as a word in B; hnn: φ(edge)
  Side a_side = Side::general;
  Side b_side = Side::general;
};

/// Throws InputError when the generator sets do not partition the group's
/// generators, a word leaves its side, or the hnn relation is missing.
void validate_splitting(const OneEdgeSplitting& s);

/// Automorphism given by a generator image table, with its inverse table.
struct TwistAutomorphism {
  enum class Kind { dehn, generalized, inner };

  Kind kind = Kind::dehn;
  Presentation group;
  std::vector<Word> images;
  std::vector<Word> inverse_images;
  HomStatus status = HomStatus::verified;
  std::string label;
  Word z;  // twisting element or conjugator

  Word apply(const Word& w) const { return substitute(images, w); }
  Word apply_inverse(const Word& w) const { return substitute(inverse_images, w); }
  TwistAutomorphism inverse() const;
  /// Image table of the n-th power (negative n uses the inverse).
  std::vector<Word> power_images(long long n) const;
};

std::string to_string(TwistAutomorphism::Kind k);

/// Dehn twist in z. Amalgam: A fixed, b -> z b z^-1. HNN: A fixed, t -> t z.
/// Throws PreconditionError when z provably fails to centralize the edge.
TwistAutomorphism dehn_twist(const OneEdgeSplitting& s, const Word& z);

/// Generalized Dehn twist: the generators of the abelian vertex A are
/// transformed by M (column j is the image of generator j), the rest fixed.
/// `peripheral` spans P(A). Throws PreconditionError unless M fixes P̄(A)
/// pointwise and det M = 1.
TwistAutomorphism generalized_dehn_twist(const Presentation& group,
                                         const std::vector<std::size_t>& a_generators,
                                         const std::vector<IntVector>& peripheral,
                                         const IntMatrix& M);

/// g -> c g c^-1 for every generator.
TwistAutomorphism inner_automorphism(const Presentation& group, const Word& c);

/// F(X) *_{w_left = w_right} F(Y). Total generators are X followed by Y.
class CyclicAmalgam {
 public:
  /// Throws InputError when either word is empty or a proper power.
  CyclicAmalgam(Alphabet left, Alphabet right, Word w_left, Word w_right);

  /// The double of F(X) along w: the right copy uses `right` names.
  static CyclicAmalgam double_of(const Alphabet& left, const Alphabet& right, const Word& w);

  const Presentation& group() const { return group_; }
  std::size_t left_rank() const { return left_rank_; }
  /// Edge word on the left (side 0) or right (side 1), in total indices.
  const Word& w(int side) const { return w_[side]; }
  int side_of(std::size_t generator) const { return generator < left_rank_ ? 0 : 1; }

  OneEdgeSplitting splitting() const;

 private:
  Presentation group_;
  std::size_t left_rank_ = 0;
  Word w_[2];
};

struct AmalgamSyllable {
  int side = 0;
  Word word;  // coset representative, total indices
};

/// u = s_1 ⋯ s_k · w^edge_power with alternating sides and each s_i the
/// shortest (then shortlex least) element of its coset s_i⟨w⟩.
struct AmalgamNormalForm {
  long long edge_power = 0;
  std::vector<AmalgamSyllable> syllables;
  bool trivial() const { return syllables.empty() && edge_power == 0; }
  bool operator==(const AmalgamNormalForm& o) const;
};

AmalgamNormalForm amalgam_normal_form(const CyclicAmalgam& d, const Word& u);
inline bool equal_in_amalgam(const CyclicAmalgam& d, const Word& u, const Word& v) {
  return amalgam_normal_form(d, u * v.inverse()).trivial();
}

}  // namespace limitkit
