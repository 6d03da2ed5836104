#include "limitkit/clg.hpp"

#include <algorithm>
#include <numeric>

#include "limitkit/errors.hpp"
#include "limitkit/stallings.hpp"

namespace limitkit {

std::string to_string(ClgStatus s) {
  switch (s) {
    case ClgStatus::failed: return "failed";
    case ClgStatus::unverifiable: return "unverifiable";
    case ClgStatus::sampled: return "sampled";
    case ClgStatus::verified: return "verified";
  }
  return "?";
}

std::string to_string(ClgCertificate::Kind k) {
  switch (k) {
    case ClgCertificate::Kind::free: return "free";
    case ClgCertificate::Kind::free_product: return "free_product";
    case ClgCertificate::Kind::step: return "step";
  }
  return "?";
}

int exit_code(ClgStatus s) {
  switch (s) {
    case ClgStatus::verified: return 0;
    case ClgStatus::failed: return 1;
    default: return 3;
  }
}

namespace {

Word shift(const Word& w, std::size_t offset) {
  std::vector<Letter> out;
  for (Letter l : w.letters()) out.push_back(make_letter(letter_gen(l) + offset, letter_sign(l)));
  return Word(std::move(out));
}

Presentation product_presentation(const Presentation& l, const Presentation& r) {
  auto names = l.generators().names();
  for (const auto& n : r.generators().names()) names.push_back(n);
  auto rels = l.relators();
  for (const auto& w : r.relators()) rels.push_back(shift(w, l.rank()));
  return Presentation(Alphabet(std::move(names)), std::move(rels));
}

}  // namespace

ClgCertificate ClgCertificate::free(const Alphabet& generators) {
  ClgCertificate c;
  c.kind = Kind::free;
  c.group = Presentation::free(generators);
  return c;
}

ClgCertificate ClgCertificate::free_product(ClgCertificate left, ClgCertificate right) {
  ClgCertificate c;
  c.kind = Kind::free_product;
  c.group = product_presentation(left.group, right.group);
  c.children = {std::move(left), std::move(right)};
  return c;
}

ClgCertificate ClgCertificate::step(Gad gad, std::vector<Word> rho, ClgCertificate lower) {
  ClgCertificate c;
  c.kind = Kind::step;
  c.group = gad.group;
  c.gad = std::move(gad);
  c.rho = std::move(rho);
  c.children = {std::move(lower)};
  return c;
}

const ClgCondition* ClgReport::condition(const std::string& name) const {
  for (const auto& c : conditions)
    if (c.name == name) return &c;
  return nullptr;
}

namespace {

// Evaluates questions about the lower group Γ'. Exact when Γ' is free or free
// abelian; otherwise decide_trivial and the verification homs give one-sided
// answers.
class Lower {
 public:
  Lower(const Presentation& g, const std::vector<GroupHom>& homs) : g_(g), homs_(homs) {}

  bool free() const { return g_.is_free(); }

  // true: provably nontrivial; false: provably trivial; nullopt: unknown.
  std::optional<bool> nontrivial(const Word& v) const {
    auto t = decide_trivial(g_, v);
    if (t) return !*t;
    for (const auto& h : homs_)
      if (!h.apply(v).empty()) return true;
    return std::nullopt;
  }

  // Images of v in the free groups available: v itself when Γ' is free,
  // otherwise its images under the verification homs.
  std::vector<Word> free_images(const Word& v) const {
    if (free()) return {v};
    std::vector<Word> out;
    for (const auto& h : homs_) out.push_back(h.apply(v));
    return out;
  }

  // Injectivity of ⟨words⟩ ≅ F(k) into Γ' where decidable. true only when
  // some free image is injective.
  std::optional<bool> injective_free(const std::vector<Word>& words) const {
    if (free()) return hom_injectivity(FreeMap(words.size(), g_.rank(), words));
    for (const auto& h : homs_) {
      std::vector<Word> img;
      for (const auto& w : words) img.push_back(h.apply(w));
      if (hom_injectivity(FreeMap(words.size(), h.target.rank(), img))) return true;
    }
    return std::nullopt;
  }

  const Presentation& group() const { return g_; }

 private:
  const Presentation& g_;
  const std::vector<GroupHom>& homs_;
};

void finish(ClgCondition& c) {
  for (const auto& it : c.items) c.status = weakest(c.status, it.status);
}

ClgStatus from_nontrivial(std::optional<bool> v) {
  return !v ? ClgStatus::unverifiable : *v ? ClgStatus::verified : ClgStatus::failed;
}

ClgCondition check_rho(const ClgCertificate& cert, const Lower& lower) {
  ClgCondition c{"rho", ClgStatus::verified, 0, {}};
  auto hv = validate_hom(cert.group, lower.group(), cert.rho);
  for (auto i : hv.violated_relators)
    c.items.push_back({"relator " + std::to_string(i), ClgStatus::failed, "image is nontrivial"});
  for (auto i : hv.undecided_relators) {
    auto nt = lower.nontrivial(substitute(cert.rho, cert.group.relators()[i]));
    if (nt && *nt)
      c.items.push_back({"relator " + std::to_string(i), ClgStatus::failed, "image is nontrivial"});
    else
      c.items.push_back({"relator " + std::to_string(i), ClgStatus::unverifiable, "image undecided"});
  }
  finish(c);
  return c;
}

ClgCondition check_peripheral(const ClgCertificate& cert, const Lower& lower) {
  ClgCondition c{"peripheral", ClgStatus::verified, 0, {}};
  const auto& gad = cert.gad;
  for (std::size_t v = 0; v < gad.vertices.size(); ++v) {
    const auto& V = gad.vertices[v];
    if (V.kind != GadVertex::Kind::abelian) continue;
    auto sat = peripheral_closure(gad, v);
    const std::size_t r = sat.closure.generators.size();
    ClgItem it{V.name, ClgStatus::verified, "closure rank " + std::to_string(r)};
    if (r == 1) {
      const Word g = substitute(cert.rho, vertex_tuple_word(V, sat.closure.generators[0]));
      it.status = from_nontrivial(lower.nontrivial(g));
      it.detail += it.status == ClgStatus::failed ? ", generator maps to 1" : "";
    } else if (r >= 2) {
      if (lower.free()) {
        it.status = ClgStatus::failed;
        it.detail += ", free abelian of rank >= 2 cannot embed in a free group";
      } else if (lower.group().is_free_abelian()) {
        IntMatrix m(r, lower.group().rank());
        for (std::size_t i = 0; i < r; ++i) {
          auto sums = exponent_sums(substitute(cert.rho, vertex_tuple_word(V, sat.closure.generators[i])),
                                    lower.group().rank());
          for (std::size_t j = 0; j < sums.size(); ++j) m(i, j) = to_integer(sums[j]);
        }
        it.status = smith_normal_form(m).rank == r ? ClgStatus::verified : ClgStatus::failed;
      } else {
        it.status = ClgStatus::unverifiable;
      }
    }
    c.items.push_back(std::move(it));
  }
  finish(c);
  return c;
}

// Vertex sets of the one-edged splitting induced by edge k.
std::vector<std::vector<std::size_t>> edge_sides(const Gad& gad, std::size_t k) {
  const std::size_t n = gad.vertices.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (std::size_t j = 0; j < gad.edges.size(); ++j)
    if (j != k) parent[find(gad.edges[j].source)] = find(gad.edges[j].target);
  const auto& e = gad.edges[k];
  std::vector<std::vector<std::size_t>> sides;
  if (find(e.source) == find(e.target)) {
    sides.resize(1);
    for (std::size_t v = 0; v < n; ++v) sides[0].push_back(v);
  } else {
    sides.resize(2);
    for (std::size_t v = 0; v < n; ++v) {
      if (find(v) == find(e.source)) sides[0].push_back(v);
      if (find(v) == find(e.target)) sides[1].push_back(v);
    }
  }
  return sides;
}

const Word& local_word(const GadEdge& e, int side) { return side == 0 ? e.source_word : e.target_word; }

ClgCondition check_edges(const ClgCertificate& cert, const Lower& lower) {
  ClgCondition c{"edges", ClgStatus::verified, 0, {}};
  const auto& gad = cert.gad;
  for (std::size_t k = 0; k < gad.edges.size(); ++k) {
    const auto& e = gad.edges[k];
    const std::string name = "edge " + std::to_string(k);
    const Word img = substitute(cert.rho, e.generator);
    ClgItem inj{name + " injective", from_nontrivial(lower.nontrivial(img)), ""};
    if (inj.status == ClgStatus::failed) inj.detail = "edge generator maps to 1";
    c.items.push_back(inj);

    // Maximal abelian in at least one vertex group of the induced splitting.
    const auto sides = edge_sides(gad, k);
    ClgItem max{name + " maximal abelian", ClgStatus::failed, ""};
    for (std::size_t s = 0; s < sides.size(); ++s)
      for (int end = 0; end < 2; ++end) {
        const std::size_t v = end == 0 ? e.source : e.target;
        if (std::find(sides[s].begin(), sides[s].end(), v) == sides[s].end()) continue;
        const auto& V = gad.vertices[v];
        ClgStatus st;
        std::string why;
        if (sides[s].size() == 1 && V.is_free()) {
          const bool power = is_proper_power(local_word(e, end));
          st = power ? ClgStatus::failed : ClgStatus::verified;
          why = V.name + (power ? ": inclusion is a proper power" : ": inclusion has no proper root");
        } else if (sides[s].size() == 1 && V.kind == GadVertex::Kind::abelian) {
          st = ClgStatus::failed;
          why = V.name + ": a cyclic subgroup of a non-cyclic abelian group";
        } else {
          // Evidence only: a proper root in the side would make every image a
          // proper power.
          st = ClgStatus::unverifiable;
          why = V.name + ": image is a proper power";
          for (const auto& w : lower.free_images(img))
            if (!w.empty() && !is_proper_power(w)) {
              st = ClgStatus::sampled;
              why = V.name + ": image has no proper root";
            }
        }
        if (max.detail.empty() || st > max.status) {
          max.status = st;
          max.detail = why;
        }
      }
    c.items.push_back(max);
  }
  finish(c);
  return c;
}

ClgCondition check_qh(const ClgCertificate& cert, const Lower& lower) {
  ClgCondition c{"qh", ClgStatus::verified, 0, {}};
  for (const auto& V : cert.gad.vertices) {
    if (V.kind != GadVertex::Kind::qh) continue;
    std::vector<Word> imgs;
    for (const auto& m : V.marking) imgs.push_back(substitute(cert.rho, m));
    ClgItem it{V.name, ClgStatus::failed, "all commutators of images are trivial"};
    bool unknown = false;
    for (std::size_t i = 0; i < imgs.size() && it.status != ClgStatus::verified; ++i)
      for (std::size_t j = i + 1; j < imgs.size(); ++j) {
        auto nt = lower.nontrivial(commutator(imgs[i], imgs[j]));
        if (nt && *nt) {
          it.status = ClgStatus::verified;
          it.detail = "commutator of generators " + std::to_string(i) + ", " + std::to_string(j) + " survives";
          break;
        }
        unknown = unknown || !nt;
      }
    if (it.status == ClgStatus::failed && unknown) {
      it.status = ClgStatus::unverifiable;
      it.detail = "no commutator provably survives";
    }
    c.items.push_back(std::move(it));
  }
  finish(c);
  return c;
}

ClgCondition check_envelope(const ClgCertificate& cert, const Lower& lower) {
  ClgCondition c{"envelope", ClgStatus::verified, 0, {}};
  const auto& gad = cert.gad;
  for (std::size_t b = 0; b < gad.vertices.size(); ++b) {
    const auto& B = gad.vertices[b];
    if (B.kind != GadVertex::Kind::rigid) continue;
    std::vector<Word> env = B.marking;
    std::size_t added = 0;
    bool complete = true;
    for (const auto& e : gad.edges)
      for (int end = 0; end < 2; ++end) {
        if ((end == 0 ? e.source : e.target) != b) continue;
        const std::size_t u = end == 0 ? e.target : e.source;
        const auto& U = gad.vertices[u];
        if (U.kind == GadVertex::Kind::abelian) {
          for (const auto& t : peripheral_closure(gad, u).closure.generators) {
            env.push_back(vertex_tuple_word(U, t));
            ++added;
          }
        } else if (U.is_free()) {
          auto root = primitive_root(local_word(e, 1 - end));
          if (root.exponent > 1) {
            env.push_back(vertex_word(U, root.root));
            ++added;
          }
        } else {
          complete = false;
        }
      }
    ClgItem it{B.name, ClgStatus::verified, ""};
    std::vector<Word> imgs;
    for (const auto& w : env) imgs.push_back(substitute(cert.rho, w));

    if (B.free_marked && added == 0 && complete) {
      auto inj = lower.injective_free(imgs);
      if (inj && *inj) {
        it.detail = "marking images generate a free group of full rank";
        c.items.push_back(std::move(it));
        continue;
      }
      if (inj && !*inj) {
        it.status = ClgStatus::failed;
        it.detail = "marking images are not a free basis";
        c.items.push_back(std::move(it));
        continue;
      }
    }

    // Ball search over words in the envelope generators.
    std::size_t checked = 0, unknown = 0;
    std::optional<Word> refuted;
    for (const auto& u : words_up_to(env.size(), cert.radius)) {
      if (u.empty()) continue;
      const Word v = substitute(env, u);
      if (v.empty()) continue;
      ++checked;
      auto nt = lower.nontrivial(substitute(cert.rho, v));
      if (nt && *nt) continue;
      if (nt) {
        auto t = decide_trivial(cert.group, v);
        if (t && *t) continue;
        if (t) {
          refuted = v;
          break;
        }
      }
      ++unknown;
    }
    if (refuted) {
      it.status = ClgStatus::failed;
      it.detail = "nontrivial element " + cert.group.format(*refuted) + " maps to 1";
    } else {
      it.status = ClgStatus::sampled;
      c.radius = cert.radius;
      it.detail = std::to_string(checked) + " words up to length " + std::to_string(cert.radius) + ", " +
                  std::to_string(unknown) + " undecided" + (complete ? "" : ", far-side centralizers omitted");
    }
    c.items.push_back(std::move(it));
  }
  finish(c);
  return c;
}

ClgReport check(const ClgCertificate& cert) {
  ClgReport rep;
  rep.kind = cert.kind;
  for (const auto& child : cert.children) rep.children.push_back(check(child));
  for (const auto& ch : rep.children) rep.status = weakest(rep.status, ch.status);

  switch (cert.kind) {
    case ClgCertificate::Kind::free:
      if (!cert.group.is_free()) throw InputError("free certificate with relators");
      if (!cert.children.empty()) throw InputError("free certificate with children");
      rep.level = 0;
      break;
    case ClgCertificate::Kind::free_product: {
      if (cert.children.size() != 2) throw InputError("free product certificate needs two factors");
      if (!(cert.group == product_presentation(cert.children[0].group, cert.children[1].group)))
        throw InputError("free product factors do not concatenate to the group");
      rep.level = std::max(rep.children[0].level, rep.children[1].level) + 1;
      break;
    }
    case ClgCertificate::Kind::step: {
      if (cert.children.size() != 1) throw InputError("step certificate needs one lower node");
      if (!(cert.gad.group == cert.group)) throw InputError("GAD is for a different group");
      if (cert.rho.size() != cert.group.rank()) throw InputError("rho needs one image per generator");
      validate_gad(cert.gad);
      const auto& low = cert.children[0].group;
      for (const auto& h : cert.verification_homs) {
        if (!(h.domain == low)) throw InputError("verification hom has the wrong domain");
        if (!h.target.is_free()) throw InputError("verification homs must map to free groups");
        if (!validate_hom(h.domain, h.target, h.images).verified())
          throw InputError("verification hom does not respect the lower relators");
      }
      Lower lower(low, cert.verification_homs);
      rep.level = rep.children[0].level + 1;
      rep.conditions.push_back(check_rho(cert, lower));
      rep.conditions.push_back(check_peripheral(cert, lower));
      rep.conditions.push_back(check_edges(cert, lower));
      rep.conditions.push_back(check_qh(cert, lower));
      rep.conditions.push_back(check_envelope(cert, lower));
      for (const auto& c : rep.conditions) rep.status = weakest(rep.status, c.status);
      break;
    }
  }
  if (cert.level) {
    if (cert.kind == ClgCertificate::Kind::free && *cert.level != 0)
      throw InputError("free certificates have level 0");
    for (std::size_t i = 0; i < cert.children.size(); ++i) {
      const int child = cert.children[i].level.value_or(rep.children[i].level);
      if (*cert.level <= child) throw InputError("declared levels must decrease toward the leaves");
    }
    rep.level = *cert.level;
  }
  return rep;
}

}  // namespace

ClgReport check_clg(const ClgCertificate& cert) { return check(cert); }

}  // namespace limitkit
