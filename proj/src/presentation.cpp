#include "limitkit/presentation.hpp"

#include <algorithm>
#include <limits>

namespace limitkit {

Presentation::Presentation(Alphabet generators, std::vector<Word> relators)
    : generators_(std::move(generators)) {
  for (auto& r : relators) {
    if (r.span_rank() > generators_.rank()) throw InputError("relator uses an unknown generator");
    Word core = cyclic_reduce(r).core;
    if (!core.empty()) relators_.push_back(std::move(core));
  }
}

Presentation Presentation::free_abelian(Alphabet generators) {
  std::vector<Word> rels;
  for (std::size_t i = 0; i < generators.rank(); ++i)
    for (std::size_t j = i + 1; j < generators.rank(); ++j)
      rels.push_back(commutator(Word::generator(i), Word::generator(j)));
  return Presentation(std::move(generators), std::move(rels));
}

bool Presentation::is_free_abelian() const {
  const std::size_t n = rank();
  if (relators_.size() != n * (n - (n ? 1 : 0)) / 2) return false;
  std::vector<Word> have, want;
  for (const auto& r : relators_) have.push_back(cyclic_canonical(r));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      want.push_back(cyclic_canonical(commutator(Word::generator(i), Word::generator(j))));
  std::sort(have.begin(), have.end(), shortlex_less);
  std::sort(want.begin(), want.end(), shortlex_less);
  return have == want;
}

std::optional<bool> decide_trivial(const Presentation& p, const Word& w) {
  if (w.empty()) return true;
  if (p.is_free()) return false;
  auto sums = exponent_sums(w, p.rank());
  if (p.is_free_abelian())
    return std::all_of(sums.begin(), sums.end(), [](long long x) { return x == 0; });
  Lattice rel{p.rank(), {}};
  for (const auto& r : p.relators()) {
    IntVector v;
    for (long long x : exponent_sums(r, p.rank())) v.push_back(to_integer(x));
    rel.generators.push_back(std::move(v));
  }
  IntVector v;
  for (long long x : sums) v.push_back(to_integer(x));
  if (!rel.contains(v)) return false;
  return std::nullopt;
}

std::string to_string(HomStatus s) { return s == HomStatus::verified ? "verified" : "asserted"; }

HomValidation validate_hom(const Presentation& domain, const Presentation& target,
                           std::vector<Word> images) {
  if (images.size() != domain.rank())
    throw InputError("expected " + std::to_string(domain.rank()) + " generator images, got " +
                     std::to_string(images.size()));
  for (const auto& w : images)
    if (w.span_rank() > target.rank()) throw InputError("image uses a generator outside the target");
  HomValidation out;
  for (std::size_t i = 0; i < domain.relators().size(); ++i) {
    auto verdict = decide_trivial(target, substitute(images, domain.relators()[i]));
    if (!verdict)
      out.undecided_relators.push_back(i);
    else if (!*verdict)
      out.violated_relators.push_back(i);
  }
  if (out.violated_relators.empty()) {
    out.hom = GroupHom{domain, target, std::move(images),
                       out.undecided_relators.empty() ? HomStatus::verified : HomStatus::asserted};
  }
  return out;
}

std::size_t hom_length(const GroupHom& f) {
  if (f.status != HomStatus::verified || !f.target.is_free())
    throw PreconditionError("hom_length needs a verified hom to a free group");
  std::size_t len = 0;
  for (const auto& w : f.images) len = std::max(len, w.length());
  return len;
}

IntVector Abelianization::image(const Word& w) const {
  auto sums = exponent_sums(w, generator_images.rows());
  IntVector out(rank);
  for (std::size_t i = 0; i < sums.size(); ++i)
    for (std::size_t j = 0; j < rank; ++j) out[j] += to_integer(sums[i]) * generator_images(i, j);
  return out;
}

Abelianization abelianization_quotient(const Presentation& p) {
  const std::size_t n = p.rank();
  Abelianization ab;
  if (p.relators().empty()) {
    ab.rank = n;
    ab.generator_images = IntMatrix::identity(n);
    return ab;
  }
  IntMatrix R(p.relators().size(), n);
  for (std::size_t i = 0; i < p.relators().size(); ++i) {
    auto sums = exponent_sums(p.relators()[i], n);
    for (std::size_t j = 0; j < n; ++j) R(i, j) = to_integer(sums[j]);
  }
  auto snf = smith_normal_form(R);
  ab.rank = n - snf.rank;
  ab.generator_images = IntMatrix(n, ab.rank);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < ab.rank; ++j) ab.generator_images(i, j) = snf.V_inv(i, snf.rank + j);
  for (std::size_t j = 0; j < snf.rank; ++j) {
    if (snf.D(j, j) == 1) continue;
    ab.torsion.push_back(snf.D(j, j));
    Word w;
    for (std::size_t i = 0; i < n; ++i) w *= Word::generator(i).pow(to_exponent(snf.V(j, i)));
    ab.torsion_words.push_back(std::move(w));
  }
  return ab;
}

Presentation QuotientMap::codomain() const {
  std::vector<Word> rels = domain.relators();
  rels.insert(rels.end(), added.begin(), added.end());
  return Presentation(domain.generators(), std::move(rels));
}

std::optional<GroupHom> factors_through(const GroupHom& f, const QuotientMap& q) {
  if (f.status != HomStatus::verified) throw PreconditionError("factors_through needs a verified hom");
  if (!(f.domain == q.domain)) throw InputError("hom and quotient have different domains");
  for (const auto& r : q.added) {
    auto verdict = decide_trivial(f.target, f.apply(r));
    if (!verdict || !*verdict) return std::nullopt;
  }
  auto check = validate_hom(q.codomain(), f.target, f.images);
  if (!check.verified()) return std::nullopt;
  return check.hom;
}

std::vector<Word> compose_with_matrix(std::span<const Word> images, const IntMatrix& alpha) {
  if (alpha.rows() != images.size() || alpha.cols() != images.size())
    throw InputError("matrix size does not match the number of images");
  std::vector<Word> out;
  for (std::size_t j = 0; j < alpha.cols(); ++j) {
    Word w;
    for (std::size_t i = 0; i < alpha.rows(); ++i) w *= images[i].pow(to_exponent(alpha(i, j)));
    out.push_back(std::move(w));
  }
  return out;
}

AbelianFactorization abelian_factorization(std::span<const Word> images) {
  const std::size_t n = images.size();
  if (n == 0) throw InputError("abelian_factorization needs at least one image");
  AbelianFactorization out;
  out.exponents.assign(n, Integer(0));
  auto first = std::find_if(images.begin(), images.end(), [](const Word& w) { return !w.empty(); });
  if (first == images.end()) {
    out.alpha = IntMatrix::identity(n);
    out.d = 0;
    return out;
  }
  // Centralizers in a free group are cyclic: commuting images share a root.
  out.root = primitive_root(*first).root;
  for (std::size_t i = 0; i < n; ++i) {
    long long e = 0;
    if (!power_of(images[i], out.root, e))
      throw PreconditionError("images do not commute: image " + std::to_string(i + 1) +
                              " is not a power of the common root");
    out.exponents[i] = to_integer(e);
  }
  auto ext = unimodular_extend(out.exponents);
  out.alpha = std::move(ext.alpha);
  out.d = ext.d;
  return out;
}

SurfaceFamily surface_family(int genus, bool orientable) {
  if (orientable) {
    if (genus < 2) throw InputError("orientable surface family needs genus >= 2");
    std::vector<std::string> names;
    for (int i = 1; i <= genus; ++i) {
      names.push_back("a" + std::to_string(i));
      names.push_back("b" + std::to_string(i));
    }
    Word rel;
    for (int i = 0; i < genus; ++i)
      rel *= commutator(Word::generator(2 * static_cast<std::size_t>(i)),
                        Word::generator(2 * static_cast<std::size_t>(i) + 1));
    Presentation group(Alphabet(std::move(names)), {rel});
    std::vector<Word> imgs;
    for (int i = 0; i < genus; ++i) {
      imgs.push_back(Word::generator(static_cast<std::size_t>(i)));
      imgs.emplace_back();
    }
    auto check = validate_hom_to_free(group, Alphabet::numbered("x", static_cast<std::size_t>(genus)),
                                      std::move(imgs));
    return {group, check.hom};
  }
  if (genus < 1) throw InputError("non-orientable surface family needs genus >= 1");
  Word rel;
  for (int i = 0; i < genus; ++i) rel *= Word::generator(static_cast<std::size_t>(i)).pow(2);
  return {Presentation(Alphabet::numbered("a", static_cast<std::size_t>(genus)), {rel}), std::nullopt};
}

}  // namespace limitkit
