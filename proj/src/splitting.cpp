#include "limitkit/splitting.hpp"

#include <algorithm>
#include <numeric>

namespace limitkit {

namespace {

bool uses_only(const Word& w, const std::vector<bool>& allowed) {
  for (Letter l : w.letters())
    if (!allowed[letter_gen(l)]) return false;
  return true;
}

std::vector<bool> membership_mask(const std::vector<std::size_t>& gens, std::size_t rank) {
  std::vector<bool> mask(rank, false);
  for (auto g : gens) {
    if (g >= rank) throw InputError("generator index out of range");
    mask[g] = true;
  }
  return mask;
}

bool has_relator(const Presentation& p, const Word& r) {
  Word key = cyclic_canonical(r);
  return std::any_of(p.relators().begin(), p.relators().end(),
                     [&](const Word& x) { return cyclic_canonical(x) == key; });
}

long long exponent_of(const Integer& x) {
  if (!x.fits_slong_p()) throw InputError("exponent does not fit in a machine integer");
  return x.get_si();
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

}  // namespace

std::string to_string(GadVertex::Kind k) {
  switch (k) {
    case GadVertex::Kind::qh: return "qh";
    case GadVertex::Kind::abelian: return "abelian";
    case GadVertex::Kind::rigid: return "rigid";
  }
  return "rigid";
}

std::string to_string(TwistAutomorphism::Kind k) {
  switch (k) {
    case TwistAutomorphism::Kind::dehn: return "dehn";
    case TwistAutomorphism::Kind::generalized: return "generalized";
    case TwistAutomorphism::Kind::inner: return "inner";
  }
  return "dehn";
}

Word vertex_word(const GadVertex& v, const Word& local) {
  if (local.span_rank() > v.local_rank()) throw InputError("local word outside vertex " + v.name);
  return substitute(v.marking, local);
}

Word vertex_tuple_word(const GadVertex& v, const IntVector& tuple) {
  if (tuple.size() != v.local_rank()) throw InputError("tuple length does not match vertex " + v.name);
  Word out;
  for (std::size_t i = 0; i < tuple.size(); ++i) out *= v.marking[i].pow(exponent_of(tuple[i]));
  return out;
}

Word edge_side_word(const Gad& gad, const GadEdge& e, int side) {
  const auto& v = gad.vertices.at(side == 0 ? e.source : e.target);
  if (v.kind == GadVertex::Kind::abelian)
    return vertex_tuple_word(v, side == 0 ? e.source_tuple : e.target_tuple);
  return vertex_word(v, side == 0 ? e.source_word : e.target_word);
}

void validate_gad(const Gad& gad) {
  const std::size_t n = gad.vertices.size();
  const std::size_t rank = gad.group.rank();
  if (n == 0) throw InputError("GAD has no vertices");
  for (const auto& v : gad.vertices) {
    const std::string where = "vertex " + v.name + ": ";
    if (!v.generator_names.empty() && v.generator_names.size() != v.marking.size())
      throw InputError(where + "generator names and marking differ in length");
    for (const auto& m : v.marking)
      if (m.span_rank() > rank) throw InputError(where + "marking uses an unknown generator");
    switch (v.kind) {
      case GadVertex::Kind::qh: {
        if (v.genus < 0 || v.boundary < 0) throw InputError(where + "negative surface data");
        const int chi = v.euler_characteristic();
        const bool punctured_torus = v.orientable && v.genus == 1 && v.boundary == 1;
        if (!punctured_torus && chi > -2)
          throw InputError(where + "qh surface needs chi <= -2 or a once-punctured torus");
        const std::size_t expected =
            v.boundary > 0 ? static_cast<std::size_t>(1 - chi)
                           : static_cast<std::size_t>(v.orientable ? 2 * v.genus : v.genus);
        if (v.marking.size() != expected)
          throw InputError(where + "qh marking needs " + std::to_string(expected) + " generators");
        break;
      }
      case GadVertex::Kind::abelian: {
        if (v.marking.size() < 2) throw InputError(where + "abelian vertices must be non-cyclic");
        for (const auto& p : v.peripheral)
          if (p.size() != v.marking.size()) throw InputError(where + "peripheral tuple has wrong length");
        for (std::size_t i = 0; i < v.marking.size(); ++i)
          for (std::size_t j = i + 1; j < v.marking.size(); ++j)
            if (decide_trivial(gad.group, commutator(v.marking[i], v.marking[j])) == false)
              throw InputError(where + "abelian vertex generators do not commute");
        break;
      }
      case GadVertex::Kind::rigid: break;
    }
  }
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t k = 0; k < gad.edges.size(); ++k) {
    const auto& e = gad.edges[k];
    const std::string where = "edge " + std::to_string(k) + ": ";
    if (e.source >= n || e.target >= n) throw InputError(where + "endpoint out of range");
    if (e.generator.empty()) throw InputError(where + "edge generator is trivial");
    if (e.generator.span_rank() > rank) throw InputError(where + "edge generator uses an unknown generator");
    for (int side = 0; side < 2; ++side) {
      const auto& v = gad.vertices[side == 0 ? e.source : e.target];
      if (v.kind == GadVertex::Kind::abelian) {
        const auto& t = side == 0 ? e.source_tuple : e.target_tuple;
        if (t.size() != v.local_rank()) throw InputError(where + "tuple length does not match " + v.name);
        if (std::all_of(t.begin(), t.end(), [](const Integer& x) { return x == 0; }))
          throw InputError(where + "edge tuple is zero");
      } else if ((side == 0 ? e.source_word : e.target_word).empty()) {
        throw InputError(where + "edge inclusion word is trivial");
      }
      Word inc = edge_side_word(gad, e, side);
      if (decide_trivial(gad.group, e.generator * inc.inverse()) == false)
        throw InputError(where + "inclusion into " + v.name + " disagrees with the edge marking");
    }
    parent[find_root(parent, e.source)] = find_root(parent, e.target);
  }
  for (std::size_t v = 1; v < n; ++v)
    if (find_root(parent, v) != find_root(parent, 0)) throw InputError("GAD graph is not connected");
}

Lattice peripheral_lattice(const Gad& gad, std::size_t vertex) {
  const auto& v = gad.vertices.at(vertex);
  if (v.kind != GadVertex::Kind::abelian) throw PreconditionError("vertex " + v.name + " is not abelian");
  Lattice L{v.local_rank(), v.peripheral};
  for (const auto& e : gad.edges) {
    if (e.source == vertex) L.generators.push_back(e.source_tuple);
    if (e.target == vertex) L.generators.push_back(e.target_tuple);
  }
  return L;
}

Saturation peripheral_closure(const Gad& gad, std::size_t vertex) {
  return saturation(peripheral_lattice(gad, vertex));
}

void validate_splitting(const OneEdgeSplitting& s) {
  const std::size_t rank = s.group.rank();
  auto a = membership_mask(s.a_generators, rank);
  std::vector<bool> covered = a;
  std::vector<bool> b(rank, false);
  if (s.form == OneEdgeSplitting::Form::amalgam) {
    b = membership_mask(s.b_generators, rank);
    for (std::size_t g = 0; g < rank; ++g) {
      if (a[g] && b[g]) throw InputError("generator " + s.group.generators().name(g) + " lies on both sides");
      covered[g] = a[g] || b[g];
    }
  } else {
    if (s.stable_letter >= rank) throw InputError("stable letter out of range");
    if (a[s.stable_letter]) throw InputError("stable letter lies in the vertex group");
    covered[s.stable_letter] = true;
  }
  for (std::size_t g = 0; g < rank; ++g)
    if (!covered[g]) throw InputError("generator " + s.group.generators().name(g) + " is on no side");
  if (s.edge.empty()) throw InputError("edge word is trivial");
  if (!uses_only(s.edge, a)) throw InputError("edge word leaves the vertex group A");
  if (s.form == OneEdgeSplitting::Form::amalgam) {
    if (!uses_only(s.partner, b)) throw InputError("partner word leaves the vertex group B");
    if (!has_relator(s.group, s.edge * s.partner.inverse()))
      throw InputError("the amalgamating relation is not a relator of the group");
  } else {
    if (!uses_only(s.partner, a)) throw InputError("partner word leaves the vertex group A");
    Word t = Word::generator(s.stable_letter);
    if (!has_relator(s.group, t * s.edge * t.inverse() * s.partner.inverse()))
      throw InputError("the relation t c t^-1 = phi(c) is not a relator of the group");
  }
}

TwistAutomorphism TwistAutomorphism::inverse() const {
  TwistAutomorphism out = *this;
  std::swap(out.images, out.inverse_images);
  out.z = z.inverse();
  out.label = label + "^-1";
  return out;
}

std::vector<Word> TwistAutomorphism::power_images(long long n) const {
  const auto& base = n >= 0 ? images : inverse_images;
  std::vector<Word> cur;
  for (std::size_t g = 0; g < group.rank(); ++g) cur.push_back(Word::generator(g));
  for (long long k = 0; k < (n >= 0 ? n : -n); ++k)
    for (auto& w : cur) w = substitute(base, w);
  return cur;
}

TwistAutomorphism dehn_twist(const OneEdgeSplitting& s, const Word& z) {
  validate_splitting(s);
  const std::size_t rank = s.group.rank();
  if (z.span_rank() > rank) throw InputError("twisting element uses an unknown generator");
  auto a = membership_mask(s.a_generators, rank);
  auto b = membership_mask(s.b_generators, rank);

  // Centralizer check on the side that contains z.
  HomStatus status = HomStatus::verified;
  if (!z.empty()) {
    const bool hnn = s.form == OneEdgeSplitting::Form::hnn;
    int side = uses_only(z, a) ? 0 : (!hnn && uses_only(z, b)) ? 1 : -1;
    if (hnn && side != 0) throw PreconditionError("HNN twisting element must lie in the vertex group");
    const Word& c = side == 1 ? s.partner : s.edge;
    const auto kind = side == 0 ? s.a_side : side == 1 ? s.b_side : OneEdgeSplitting::Side::general;
    if (kind == OneEdgeSplitting::Side::free) {
      long long k = 0;
      if (!power_of(z, primitive_root(c).root, k))
        throw PreconditionError("twisting element does not centralize the edge group");
    } else if (kind == OneEdgeSplitting::Side::general) {
      auto verdict = decide_trivial(s.group, commutator(z, c));
      if (verdict == false) throw PreconditionError("twisting element does not centralize the edge group");
      if (!verdict) status = HomStatus::asserted;
    }
  }

  TwistAutomorphism out;
  out.kind = TwistAutomorphism::Kind::dehn;
  out.group = s.group;
  out.status = status;
  out.z = z;
  for (std::size_t g = 0; g < rank; ++g) {
    Word x = Word::generator(g);
    if (s.form == OneEdgeSplitting::Form::amalgam && b[g]) {
      out.images.push_back(z * x * z.inverse());
      out.inverse_images.push_back(z.inverse() * x * z);
    } else if (s.form == OneEdgeSplitting::Form::hnn && g == s.stable_letter) {
      out.images.push_back(x * z);
      out.inverse_images.push_back(x * z.inverse());
    } else {
      out.images.push_back(x);
      out.inverse_images.push_back(x);
    }
  }
  out.label = "twist(" + s.group.format(z) + ")";
  return out;
}

TwistAutomorphism generalized_dehn_twist(const Presentation& group,
                                         const std::vector<std::size_t>& a_generators,
                                         const std::vector<IntVector>& peripheral, const IntMatrix& M) {
  const std::size_t r = a_generators.size();
  membership_mask(a_generators, group.rank());
  if (M.rows() != r || M.cols() != r) throw InputError("matrix size does not match the abelian vertex");
  for (const auto& p : peripheral)
    if (p.size() != r) throw InputError("peripheral tuple has wrong length");
  auto closure = saturation(Lattice{r, peripheral}).closure;
  for (const auto& p : closure.generators)
    if (mat_vec(M, p) != p) throw PreconditionError("matrix moves the peripheral closure");
  if (determinant(M) != 1)
    throw PreconditionError("induced map on the quotient by the peripheral closure has determinant -1");

  auto table = [&](const IntMatrix& m) {
    std::vector<Word> imgs;
    for (std::size_t g = 0; g < group.rank(); ++g) imgs.push_back(Word::generator(g));
    for (std::size_t j = 0; j < r; ++j) {
      Word w;
      for (std::size_t i = 0; i < r; ++i) w *= Word::generator(a_generators[i]).pow(exponent_of(m(i, j)));
      imgs[a_generators[j]] = w;
    }
    return imgs;
  };
  TwistAutomorphism out;
  out.kind = TwistAutomorphism::Kind::generalized;
  out.group = group;
  out.images = table(M);
  out.inverse_images = table(unimodular_inverse(M));
  auto check = validate_hom(group, group, out.images);
  if (!check.hom) throw PreconditionError("matrix does not preserve the relators");
  out.status = check.hom->status;
  out.label = "gtwist" + M.to_string();
  return out;
}

TwistAutomorphism inner_automorphism(const Presentation& group, const Word& c) {
  if (c.span_rank() > group.rank()) throw InputError("conjugator uses an unknown generator");
  TwistAutomorphism out;
  out.kind = TwistAutomorphism::Kind::inner;
  out.group = group;
  out.z = c;
  for (std::size_t g = 0; g < group.rank(); ++g) {
    Word x = Word::generator(g);
    out.images.push_back(c * x * c.inverse());
    out.inverse_images.push_back(c.inverse() * x * c);
  }
  out.label = "inner(" + group.format(c) + ")";
  return out;
}

CyclicAmalgam::CyclicAmalgam(Alphabet left, Alphabet right, Word w_left, Word w_right)
    : left_rank_(left.rank()) {
  if (w_left.empty() || w_right.empty()) throw InputError("amalgamating words must be nontrivial");
  if (w_left.span_rank() > left.rank() || w_right.span_rank() > right.rank())
    throw InputError("amalgamating word uses an unknown generator");
  if (is_proper_power(w_left) || is_proper_power(w_right))
    throw InputError("amalgamating word is a proper power");
  std::vector<std::string> names = left.names();
  names.insert(names.end(), right.names().begin(), right.names().end());
  std::vector<Letter> shifted;
  for (Letter l : w_right.letters())
    shifted.push_back(make_letter(letter_gen(l) + left_rank_, letter_sign(l)));
  w_[0] = std::move(w_left);
  w_[1] = Word(std::move(shifted));
  group_ = Presentation(Alphabet(std::move(names)), {w_[0] * w_[1].inverse()});
}

CyclicAmalgam CyclicAmalgam::double_of(const Alphabet& left, const Alphabet& right, const Word& w) {
  if (left.rank() != right.rank()) throw InputError("a double needs alphabets of equal rank");
  return CyclicAmalgam(left, right, w, w);
}

OneEdgeSplitting CyclicAmalgam::splitting() const {
  OneEdgeSplitting s;
  s.form = OneEdgeSplitting::Form::amalgam;
  s.group = group_;
  for (std::size_t g = 0; g < group_.rank(); ++g) (g < left_rank_ ? s.a_generators : s.b_generators).push_back(g);
  s.edge = w_[0];
  s.partner = w_[1];
  s.a_side = s.b_side = OneEdgeSplitting::Side::free;
  return s;
}

bool AmalgamNormalForm::operator==(const AmalgamNormalForm& o) const {
  if (edge_power != o.edge_power || syllables.size() != o.syllables.size()) return false;
  for (std::size_t i = 0; i < syllables.size(); ++i)
    if (syllables[i].side != o.syllables[i].side || syllables[i].word != o.syllables[i].word) return false;
  return true;
}

AmalgamNormalForm amalgam_normal_form(const CyclicAmalgam& d, const Word& u) {
  if (u.span_rank() > d.group().rank()) throw InputError("word uses an unknown generator");
  struct Syl {
    int side;
    Word w;
  };
  std::vector<Syl> syl;
  for (Letter l : u.letters()) {
    int side = d.side_of(letter_gen(l));
    if (syl.empty() || syl.back().side != side) syl.push_back({side, Word{}});
    syl.back().w *= Word({l});
  }

  AmalgamNormalForm out;
  // Push syllables lying in the edge group across to the other side until
  // none remain (or a single one does).
  while (true) {
    std::size_t hit = syl.size();
    long long k = 0;
    for (std::size_t i = 0; i < syl.size(); ++i)
      if (power_of(syl[i].w, d.w(syl[i].side), k)) {
        hit = i;
        break;
      }
    if (hit == syl.size()) break;
    if (syl.size() == 1) {
      out.edge_power = k;
      return out;
    }
    Word moved = d.w(1 - syl[hit].side).pow(k);
    std::vector<Syl> next;
    for (std::size_t i = 0; i < syl.size(); ++i) {
      Syl s = i == hit ? Syl{1 - syl[i].side, moved} : syl[i];
      if (!next.empty() && next.back().side == s.side)
        next.back().w *= s.w;
      else
        next.push_back(std::move(s));
    }
    std::erase_if(next, [](const Syl& s) { return s.w.empty(); });
    // Erasing may leave equal sides adjacent.
    syl.clear();
    for (auto& s : next) {
      if (!syl.empty() && syl.back().side == s.side) {
        syl.back().w *= s.w;
        if (syl.back().w.empty()) syl.pop_back();
      } else {
        syl.push_back(std::move(s));
      }
    }
    if (syl.empty()) return out;
  }

  // Right coset representatives from left to right: g = r · w^j with r the
  // shortest (then shortlex least) element of g⟨w⟩.
  long long carry = 0;
  for (const auto& s : syl) {
    const Word& w = d.w(s.side);
    Word g = w.pow(carry) * s.w;
    auto cr = cyclic_reduce(w);
    const long long window =
        static_cast<long long>((2 * g.length() + 2 * cr.conjugator.length()) / cr.core.length()) + 1;
    Word best = g;
    long long best_j = 0;
    for (long long j = -window; j <= window; ++j) {
      Word r = g * w.pow(-j);
      if (shortlex_less(r, best)) {
        best = std::move(r);
        best_j = j;
      }
    }
    out.syllables.push_back({s.side, std::move(best)});
    carry = best_j;
  }
  out.edge_power = carry;
  return out;
}

}  // namespace limitkit
