#include "limitkit/diagram.hpp"

#include <algorithm>
#include <limits>

#include "limitkit/errors.hpp"
#include "limitkit/stallings.hpp"

namespace limitkit {

namespace {

std::vector<Word> identity_images(std::size_t rank) {
  std::vector<Word> out;
  for (std::size_t g = 0; g < rank; ++g) out.push_back(Word::generator(g));
  return out;
}

std::vector<Word> substitute_all(std::span<const Word> images, const std::vector<Word>& words) {
  std::vector<Word> out;
  out.reserve(words.size());
  for (const auto& w : words) out.push_back(substitute(images, w));
  return out;
}

// Automorphism test where it is decidable: on a free node the images must
// generate (index 1, full rank), on Z^n the exponent matrix must be
// unimodular. nullopt elsewhere.
std::optional<bool> is_automorphism(const Presentation& p, const std::vector<Word>& images) {
  const std::size_t n = p.rank();
  if (p.is_free()) {
    auto g = fold_core_graph(images, n);
    auto idx = subgroup_index(g);
    return idx && *idx == 1 && g.subgroup_rank() == n;
  }
  if (p.is_free_abelian()) {
    IntMatrix m(n, n);
    for (std::size_t j = 0; j < n; ++j) {
      auto sums = exponent_sums(images[j], n);
      for (std::size_t i = 0; i < n; ++i) m(i, j) = to_integer(sums[i]);
    }
    return is_unimodular(m);
  }
  return std::nullopt;
}

std::string describe_relators(const std::vector<std::size_t>& idx) {
  std::string s;
  for (auto i : idx) s += (s.empty() ? "" : ",") + std::to_string(i);
  return s;
}

void check_twists(const Presentation& domain, std::span<const TwistAutomorphism> modgens) {
  for (const auto& t : modgens) {
    if (!(t.group == domain)) throw InputError("twist " + t.label + " acts on a different group");
    if (t.images.size() != domain.rank() || t.inverse_images.size() != domain.rank())
      throw InputError("twist " + t.label + " has the wrong arity");
  }
}

}  // namespace

bool MrDiagram::is_leaf(std::size_t node) const {
  return std::none_of(edges.begin(), edges.end(), [&](const MrEdge& e) { return e.parent == node; });
}

const MrEdge* MrDiagram::edge_between(std::size_t parent, std::size_t child) const {
  for (const auto& e : edges)
    if (e.parent == parent && e.child == child) return &e;
  return nullptr;
}

void validate_mr_diagram(const MrDiagram& d) {
  const std::size_t n = d.nodes.size();
  if (n == 0) throw InputError("diagram has no nodes");
  if (d.root >= n) throw InputError("root index out of range");
  if (d.edges.size() != n - 1) throw InputError("a tree on " + std::to_string(n) + " nodes needs " +
                                                std::to_string(n - 1) + " edges");
  std::vector<int> parents(n, 0);
  for (const auto& e : d.edges) {
    if (e.parent >= n || e.child >= n) throw InputError("edge endpoint out of range");
    if (e.child == d.root) throw InputError("the root cannot be a child");
    if (++parents[e.child] > 1) throw InputError("node " + std::to_string(e.child) + " has two parents");
    if (e.images.size() != d.nodes[e.parent].rank())
      throw InputError("edge " + std::to_string(e.parent) + "->" + std::to_string(e.child) +
                       " needs one image per parent generator");
    for (const auto& w : e.images)
      if (w.span_rank() > d.nodes[e.child].rank()) throw InputError("edge image outside the child alphabet");
    for (const auto& w : e.added)
      if (w.span_rank() > d.nodes[e.parent].rank()) throw InputError("added relator outside the parent alphabet");
  }
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> stack{d.root};
  seen[d.root] = true;
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    for (const auto& e : d.edges)
      if (e.parent == v && !seen[e.child]) {
        seen[e.child] = true;
        stack.push_back(e.child);
      }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) throw InputError("diagram is not connected");
  for (std::size_t v = 0; v < n; ++v)
    if (d.is_leaf(v) && !d.nodes[v].is_free())
      throw InputError("leaf " + std::to_string(v) + " is not a free presentation");
}

MrReport verify_mr_factoring(const GroupHom& f, const MrDiagram& d, const BranchWitness& w) {
  validate_mr_diagram(d);
  if (f.status != HomStatus::verified) throw PreconditionError("verify_mr_factoring needs a verified hom");
  if (!f.target.is_free()) throw PreconditionError("the hom must map to a free group");
  if (!(f.domain == d.nodes[d.root])) throw InputError("hom domain differs from the root presentation");
  if (w.path.empty() || w.path.front() != d.root) throw InputError("branch must start at the root");
  if (!d.is_leaf(w.path.back())) throw InputError("branch must end at a leaf");
  for (std::size_t i = 0; i + 1 < w.path.size(); ++i)
    if (!d.edge_between(w.path[i], w.path[i + 1])) throw InputError("branch leaves the tree");
  if (w.automorphisms.size() + 1 != w.path.size())
    throw InputError("need one automorphism per non-leaf node of the branch");
  for (std::size_t i = 0; i < w.automorphisms.size(); ++i)
    if (w.automorphisms[i].size() != d.nodes[w.path[i]].rank())
      throw InputError("automorphism " + std::to_string(i) + " has the wrong arity");
  const Presentation& leaf = d.nodes[w.path.back()];
  if (w.terminal.size() != leaf.rank()) throw InputError("terminal hom has the wrong arity");

  MrReport rep;
  std::vector<Word> current = identity_images(f.domain.rank());
  auto stage = [&](std::string name, std::size_t node, bool ok, std::string detail) {
    rep.stages.push_back({std::move(name), node, ok, std::move(detail)});
    rep.ok = rep.ok && ok;
  };

  for (std::size_t i = 0; i + 1 < w.path.size(); ++i) {
    const std::size_t node = w.path[i];
    const Presentation& p = d.nodes[node];
    const auto& alpha = w.automorphisms[i];
    const std::string an = "alpha" + std::to_string(i);

    auto hv = validate_hom(p, p, alpha);
    if (!hv.undecided_relators.empty() && hv.violated_relators.empty())
      throw PreconditionError(an + ": cannot decide relators " + describe_relators(hv.undecided_relators));
    if (!hv.violated_relators.empty()) {
      stage(an, node, false, "relators " + describe_relators(hv.violated_relators) + " not preserved");
    } else if (i == 0 && !d.root_is_limit && alpha != identity_images(p.rank())) {
      stage(an, node, false, "root is declared non-limit, so alpha must be the identity");
    } else {
      auto aut = is_automorphism(p, alpha);
      if (aut && !*aut)
        stage(an, node, false, "not an automorphism");
      else
        stage(an, node, true, aut ? "automorphism" : "endomorphism; bijectivity asserted");
    }
    current = substitute_all(alpha, current);

    const MrEdge& e = *d.edge_between(node, w.path[i + 1]);
    const Presentation& child = d.nodes[e.child];
    const std::string qn = "q" + std::to_string(i);
    auto qv = validate_hom(p, child, e.images);
    std::vector<std::size_t> unkilled, undecided;
    for (std::size_t k = 0; k < e.added.size(); ++k) {
      auto t = decide_trivial(child, substitute(e.images, e.added[k]));
      if (!t)
        undecided.push_back(k);
      else if (!*t)
        unkilled.push_back(k);
    }
    if ((!qv.undecided_relators.empty() || !undecided.empty()) && qv.violated_relators.empty() &&
        unkilled.empty())
      throw PreconditionError(qn + ": cannot decide the quotient map");
    if (!qv.violated_relators.empty())
      stage(qn, node, false, "relators " + describe_relators(qv.violated_relators) + " not preserved");
    else if (!unkilled.empty())
      stage(qn, node, false, "added relators " + describe_relators(unkilled) + " not killed");
    else
      stage(qn, node, true, e.label);
    current = substitute_all(e.images, current);
  }

  auto tv = validate_hom(leaf, f.target, w.terminal);
  stage("terminal", w.path.back(), tv.verified(), tv.verified() ? "" : "terminal hom not verified");
  rep.composite = substitute_all(w.terminal, current);
  for (std::size_t g = 0; g < rep.composite.size(); ++g)
    if (rep.composite[g] != f.images[g]) rep.mismatched_generators.push_back(g);
  if (!rep.mismatched_generators.empty()) rep.ok = false;
  return rep;
}

MrPipeline abelian_mr_pipeline(const GroupHom& f) {
  if (!f.domain.is_free_abelian()) throw InputError("abelian_mr_pipeline needs a free abelian domain");
  const std::size_t n = f.domain.rank();
  if (n == 0) throw InputError("abelian_mr_pipeline needs at least one generator");
  auto fac = abelian_factorization(f.images);

  MrPipeline out;
  auto& d = out.diagram;
  d.nodes = {f.domain, Presentation::free(Alphabet{f.domain.generators().name(0)})};
  MrEdge e{0, 1, {}, {Word::generator(0)}, "kill"};
  for (std::size_t g = 1; g < n; ++g) {
    e.added.push_back(Word::generator(g));
    e.images.push_back(Word{});
    e.label += " " + f.domain.generators().name(g);
  }
  d.edges = {e};
  out.witness.path = {0, 1};
  out.witness.automorphisms = {compose_with_matrix(identity_images(n), unimodular_inverse(fac.alpha))};
  out.witness.terminal = {fac.root.pow(to_exponent(fac.d))};
  return out;
}

std::string to_string(ProperStatus s) {
  switch (s) {
    case ProperStatus::verified: return "verified";
    case ProperStatus::asserted: return "asserted";
    case ProperStatus::failed: return "failed";
  }
  return "?";
}

FactorSet assemble_factor_set(const Presentation& domain, const std::vector<Word>& kernel_words,
                              bool include_abelianization) {
  FactorSet fs;
  fs.domain = domain;
  for (const auto& k : kernel_words) {
    if (k.empty()) throw InputError("kernel words must be nonempty");
    if (k.span_rank() > domain.rank()) throw InputError("kernel word outside the domain alphabet");
  }
  auto certify = [&](const Word& w) {
    ProperCertificate c;
    c.witness = w;
    auto t = decide_trivial(domain, w);
    c.status = !t ? ProperStatus::asserted : *t ? ProperStatus::failed : ProperStatus::verified;
    return c;
  };

  if (include_abelianization) {
    QuotientMap ab{domain, {}, "Ab"};
    for (std::size_t i = 0; i < domain.rank(); ++i)
      for (std::size_t j = i + 1; j < domain.rank(); ++j)
        ab.added.push_back(commutator(Word::generator(i), Word::generator(j)));
    const auto abel = abelianization_quotient(domain);
    ab.added.insert(ab.added.end(), abel.torsion_words.begin(), abel.torsion_words.end());

    // The first added word not known to be trivial witnesses properness.
    ProperCertificate best;
    best.status = ProperStatus::failed;
    for (const auto& w : ab.added) {
      auto c = certify(w);
      if (c.status == ProperStatus::verified) {
        best = c;
        break;
      }
      if (c.status == ProperStatus::asserted && best.status == ProperStatus::failed) best = c;
    }
    fs.abelianization = 0;
    fs.maps.push_back(std::move(ab));
    fs.properness.push_back(best);
  }
  for (std::size_t i = 0; i < kernel_words.size(); ++i) {
    fs.maps.push_back(QuotientMap{domain, {kernel_words[i]}, "k" + std::to_string(i + 1)});
    fs.properness.push_back(certify(kernel_words[i]));
  }
  return fs;
}

std::string format_sequence(const TwistSequence& s, std::span<const TwistAutomorphism> modgens) {
  if (s.empty()) return "id";
  std::string out;
  for (const auto& [g, sign] : s) {
    if (!out.empty()) out += " ";
    std::string name = g < modgens.size() && !modgens[g].label.empty() ? modgens[g].label
                                                                        : "m" + std::to_string(g + 1);
    out += name + (sign < 0 ? "^-1" : "");
  }
  return out;
}

std::vector<Word> compose_sequence(const TwistSequence& s, std::span<const TwistAutomorphism> modgens,
                                   std::size_t rank) {
  std::vector<Word> h = identity_images(rank);
  for (const auto& [g, sign] : s) {
    if (g >= modgens.size()) throw InputError("twist index out of range");
    const auto& m = sign > 0 ? modgens[g].images : modgens[g].inverse_images;
    h = substitute_all(h, m);
  }
  return h;
}

std::size_t sequence_count(std::size_t generators, std::size_t depth) {
  if (depth == 0) return 1;
  if (generators == 0) return 0;
  constexpr std::size_t cap = std::size_t{1} << 40;
  std::size_t n = 2 * generators;
  for (std::size_t i = 1; i < depth; ++i) {
    if (n > cap / (2 * generators - 1)) throw InputError("search space too large for the depth bound");
    n *= 2 * generators - 1;
  }
  return n;
}

TwistSequence sequence_at(std::size_t generators, std::size_t depth, std::size_t index) {
  TwistSequence s;
  if (depth == 0) return s;
  const std::size_t letters = 2 * generators;
  std::vector<std::size_t> digits(depth);
  for (std::size_t k = depth; k-- > 1;) {
    digits[k] = index % (letters - 1);
    index /= letters - 1;
  }
  digits[0] = index;
  std::size_t prev = digits[0];
  s.emplace_back(prev / 2, prev % 2 ? -1 : 1);
  for (std::size_t k = 1; k < depth; ++k) {
    const std::size_t forbidden = prev ^ 1;
    std::size_t code = digits[k] < forbidden ? digits[k] : digits[k] + 1;
    s.emplace_back(code / 2, code % 2 ? -1 : 1);
    prev = code;
  }
  return s;
}

namespace {

struct Candidate {
  std::vector<Word> alpha;
  std::vector<Word> f_alpha;
};

Candidate modular_candidate(const GroupHom& f, std::span<const TwistAutomorphism> modgens,
                                           const TwistSequence& s) {
  Candidate c;
  c.alpha = compose_sequence(s, modgens, f.domain.rank());
  c.f_alpha = substitute_all(f.images, c.alpha);
  return c;
}

std::optional<std::pair<std::size_t, GroupHom>> first_factor(const GroupHom& f, std::span<const QuotientMap> factors,
                                                             const std::vector<Word>& f_alpha) {
  auto hv = validate_hom(f.domain, f.target, f_alpha);
  if (!hv.verified()) return std::nullopt;
  for (std::size_t i = 0; i < factors.size(); ++i)
    if (auto h = factors_through(*hv.hom, factors[i])) return std::make_pair(i, std::move(*h));
  return std::nullopt;
}

}  // namespace

ModularSearchResult search_modular_factorization(const GroupHom& f, std::span<const QuotientMap> factors,
                                                 std::span<const TwistAutomorphism> modgens,
                                                 std::size_t depth, Exec exec) {
  if (f.status != HomStatus::verified) throw PreconditionError("search needs a verified hom");
  check_twists(f.domain, modgens);
  for (const auto& q : factors)
    if (!(q.domain == f.domain)) throw InputError("factor " + q.label + " has a different domain");

  ModularSearchResult res;
  res.depth_bound = depth;
  for (std::size_t k = 0; k <= depth; ++k) {
    const std::size_t count = sequence_count(modgens.size(), k);
    auto hit = first_index_where(
        count,
        [&](std::size_t i) {
          auto c = modular_candidate(f, modgens, sequence_at(modgens.size(), k, i));
          return first_factor(f, factors, c.f_alpha).has_value();
        },
        exec);
    if (hit == npos_index) {
      res.candidates += count;
      continue;
    }
    res.candidates += hit + 1;
    ModularWitness w;
    w.sequence = sequence_at(modgens.size(), k, hit);
    auto c = modular_candidate(f, modgens, w.sequence);
    auto ff = first_factor(f, factors, c.f_alpha);
    w.alpha = std::move(c.alpha);
    w.f_alpha = std::move(c.f_alpha);
    w.factor = ff->first;
    w.factored = std::move(ff->second);
    res.witness = std::move(w);
    return res;
  }
  return res;
}

bool verify_modular_witness(const GroupHom& f, std::span<const QuotientMap> factors,
                            std::span<const TwistAutomorphism> modgens, const ModularWitness& w) {
  if (w.factor >= factors.size()) return false;
  if (compose_sequence(w.sequence, modgens, f.domain.rank()) != w.alpha) return false;
  // Evaluate f(alpha(x)) letter by letter rather than through substitute_all.
  for (std::size_t g = 0; g < f.domain.rank(); ++g) {
    Word img;
    for (Letter l : w.alpha[g].letters()) {
      const Word& x = f.images[letter_gen(l)];
      img *= letter_sign(l) > 0 ? x : x.inverse();
    }
    if (img != w.f_alpha[g]) return false;
  }
  const QuotientMap& q = factors[w.factor];
  for (const auto& r : q.added)
    if (!substitute(w.f_alpha, r).empty()) return false;
  auto hv = validate_hom(q.codomain(), f.target, w.f_alpha);
  return hv.verified() && w.factored.images == w.f_alpha;
}

ShortenResult shorten_hom(const GroupHom& f, std::span<const TwistAutomorphism> modgens, std::size_t depth,
                          std::size_t conjugator_cap, Exec exec) {
  check_twists(f.domain, modgens);
  ShortenResult res;
  res.hom = f;
  res.input_length = hom_length(f);
  res.output_length = res.input_length;
  res.conjugator_bound = std::min(2 * res.input_length, conjugator_cap);
  res.depth_bound = depth;
  if (res.input_length == 0) return res;

  const auto conjugators = words_up_to(f.target.rank(), res.conjugator_bound);
  auto first_conjugator = [&](const std::vector<Word>& fa) -> std::size_t {
    for (std::size_t j = 0; j < conjugators.size(); ++j) {
      const Word& c = conjugators[j];
      const Word ci = c.inverse();
      bool shorter = true;
      for (const auto& x : fa)
        if ((c * x * ci).length() >= res.input_length) {
          shorter = false;
          break;
        }
      if (shorter) return j;
    }
    return npos_index;
  };

  for (std::size_t k = 0; k <= depth; ++k) {
    const std::size_t count = sequence_count(modgens.size(), k);
    auto hit = first_index_where(
        count,
        [&](std::size_t i) {
          auto c = modular_candidate(f, modgens, sequence_at(modgens.size(), k, i));
          return first_conjugator(c.f_alpha) != npos_index;
        },
        exec);
    if (hit == npos_index) continue;
    res.sequence = sequence_at(modgens.size(), k, hit);
    auto c = modular_candidate(f, modgens, res.sequence);
    const std::size_t j = first_conjugator(c.f_alpha);
    res.conjugator = conjugators[j];
    std::vector<Word> imgs;
    for (const auto& x : c.f_alpha) imgs.push_back(res.conjugator * x * res.conjugator.inverse());
    auto hv = validate_hom(f.domain, f.target, imgs);
    if (!hv.hom) throw PreconditionError("twist list does not act by automorphisms");
    res.hom = std::move(*hv.hom);
    res.shortened = true;
    res.output_length = 0;
    for (const auto& x : res.hom.images) res.output_length = std::max(res.output_length, x.length());
    return res;
  }
  return res;
}

}  // namespace limitkit
