#include "limitkit/json_io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "limitkit/errors.hpp"

namespace limitkit {

namespace {

const Json& need(const Json& j, const char* key) {
  if (!j.is_object()) throw InputError(std::string("expected an object with field '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(std::string("missing field '") + key + "'");
  return *it;
}

const Json* maybe(const Json& j, const char* key) {
  if (!j.is_object()) return nullptr;
  auto it = j.find(key);
  return it == j.end() || it->is_null() ? nullptr : &*it;
}

std::string str(const Json& j, const char* what) {
  if (!j.is_string()) throw InputError(std::string(what) + " must be a string");
  return j.get<std::string>();
}

const Json& arr(const Json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be an array");
  return j;
}

std::size_t index_value(const Json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    throw InputError(std::string(what) + " must be a non-negative integer");
  return j.get<std::size_t>();
}

long long int_value(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw InputError(std::string(what) + " must be an integer");
  return j.get<long long>();
}

bool bool_value(const Json& j, const char* what) {
  if (!j.is_boolean()) throw InputError(std::string(what) + " must be a boolean");
  return j.get<bool>();
}

Word word_from(const Json& j, const Alphabet& a) { return parse_word(str(j, "word"), a); }

HomStatus status_from(const Json& j) {
  const auto s = str(j, "status");
  if (s == "verified") return HomStatus::verified;
  if (s == "asserted") return HomStatus::asserted;
  throw InputError("unknown hom status '" + s + "'");
}

GadVertex::Kind vertex_kind(const std::string& s) {
  if (s == "qh") return GadVertex::Kind::qh;
  if (s == "abelian") return GadVertex::Kind::abelian;
  if (s == "rigid") return GadVertex::Kind::rigid;
  throw InputError("unknown vertex kind '" + s + "'");
}

Alphabet local_alphabet(const GadVertex& v) {
  if (!v.generator_names.empty()) return Alphabet(v.generator_names);
  return Alphabet::numbered("g", v.local_rank());
}

OneEdgeSplitting::Side side_from(const std::string& s) {
  if (s == "free") return OneEdgeSplitting::Side::free;
  if (s == "abelian") return OneEdgeSplitting::Side::abelian;
  if (s == "general") return OneEdgeSplitting::Side::general;
  throw InputError("unknown side kind '" + s + "'");
}

std::string side_name(OneEdgeSplitting::Side s) {
  switch (s) {
    case OneEdgeSplitting::Side::free: return "free";
    case OneEdgeSplitting::Side::abelian: return "abelian";
    case OneEdgeSplitting::Side::general: return "general";
  }
  return "general";
}

std::vector<std::size_t> generator_indices(const Json& j, const Alphabet& a) {
  std::vector<std::size_t> out;
  for (const auto& x : arr(j, "generator list")) out.push_back(a.index_of(str(x, "generator name")));
  return out;
}

Json generator_names(const std::vector<std::size_t>& idx, const Alphabet& a) {
  Json out = Json::array();
  for (auto i : idx) out.push_back(a.name(i));
  return out;
}

std::size_t vertex_ref(const Json& j, const std::vector<GadVertex>& vs) {
  if (j.is_string()) {
    const auto name = j.get<std::string>();
    for (std::size_t i = 0; i < vs.size(); ++i)
      if (vs[i].name == name) return i;
    throw InputError("unknown vertex '" + name + "'");
  }
  const auto i = index_value(j, "vertex reference");
  if (i >= vs.size()) throw InputError("vertex index out of range");
  return i;
}

}  // namespace

Json read_json_file(const std::filesystem::path& path) {
  try {
    if (path == "-") return Json::parse(std::cin);
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------

Json integer_to_json(const Integer& x) {
  if (x.fits_slong_p()) return Json(x.get_si());
  return Json(x.get_str());
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return to_integer(j.get<long long>());
  if (j.is_string()) {
    Integer x;
    if (x.set_str(j.get<std::string>(), 10) != 0) throw InputError("malformed integer '" + j.get<std::string>() + "'");
    return x;
  }
  throw InputError("integers must be JSON integers or decimal strings");
}

Json vector_to_json(const IntVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(integer_to_json(x));
  return out;
}

IntVector vector_from_json(const Json& j) {
  IntVector out;
  for (const auto& x : arr(j, "integer vector")) out.push_back(integer_from_json(x));
  return out;
}

Json matrix_to_json(const IntMatrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(vector_to_json(m.row(r)));
  return out;
}

IntMatrix matrix_from_json(const Json& j) {
  std::vector<IntVector> rows;
  for (const auto& r : arr(j, "matrix")) rows.push_back(vector_from_json(r));
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (const auto& r : rows)
    if (r.size() != cols) throw InputError("matrix rows differ in length");
  return IntMatrix::from_rows(rows, cols);
}

Json lattice_to_json(const Lattice& l) {
  Json gens = Json::array();
  for (const auto& g : l.generators) gens.push_back(vector_to_json(g));
  return Json{{"ambient", l.ambient}, {"generators", gens}};
}

Lattice lattice_from_json(const Json& j) {
  Lattice l;
  if (j.is_array()) {
    for (const auto& g : j) l.generators.push_back(vector_from_json(g));
    if (l.generators.empty()) throw InputError("a bare generator list needs at least one vector");
    l.ambient = l.generators[0].size();
  } else {
    l.ambient = index_value(need(j, "ambient"), "ambient");
    for (const auto& g : arr(need(j, "generators"), "generators")) l.generators.push_back(vector_from_json(g));
  }
  for (const auto& g : l.generators)
    if (g.size() != l.ambient) throw InputError("lattice generator has the wrong length");
  return l;
}

Json smith_to_json(const SmithForm& s) {
  Json diag = Json::array();
  for (const auto& d : s.diagonal()) diag.push_back(integer_to_json(d));
  return Json{{"U", matrix_to_json(s.U)}, {"D", matrix_to_json(s.D)}, {"V", matrix_to_json(s.V)},
              {"rank", s.rank},          {"diagonal", diag}};
}

// ---------------------------------------------------------------------------

Json alphabet_to_json(const Alphabet& a) { return Json(a.names()); }

Alphabet alphabet_from_json(const Json& j) {
  std::vector<std::string> names;
  for (const auto& n : arr(j, "generators")) names.push_back(str(n, "generator name"));
  return Alphabet(std::move(names));
}

Json words_to_json(const std::vector<Word>& ws, const Alphabet& a) {
  Json out = Json::array();
  for (const auto& w : ws) out.push_back(format_word(w, a));
  return out;
}

std::vector<Word> words_from_json(const Json& j, const Alphabet& a) {
  std::vector<Word> out;
  for (const auto& w : arr(j, "word list")) out.push_back(word_from(w, a));
  return out;
}

Json images_to_json(const std::vector<Word>& images, const Alphabet& domain, const Alphabet& target) {
  Json out = Json::object();
  for (std::size_t i = 0; i < images.size(); ++i) out[domain.name(i)] = format_word(images[i], target);
  return out;
}

std::vector<Word> images_from_json(const Json& j, const Alphabet& domain, const Alphabet& target) {
  if (j.is_array()) {
    auto ws = words_from_json(j, target);
    if (ws.size() != domain.rank()) throw InputError("image table has the wrong number of entries");
    return ws;
  }
  if (!j.is_object()) throw InputError("image table must be an object or an array");
  std::vector<Word> out(domain.rank());
  std::vector<bool> seen(domain.rank(), false);
  for (auto it = j.begin(); it != j.end(); ++it) {
    const auto i = domain.index_of(it.key());
    out[i] = word_from(it.value(), target);
    seen[i] = true;
  }
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (!seen[i]) throw InputError("image table misses generator '" + domain.name(i) + "'");
  return out;
}

Json core_graph_to_json(const CoreGraph& g, const Alphabet& a) {
  Json edges = Json::array();
  for (const auto& e : g.edges()) edges.push_back(Json::array({e.source, a.name(e.label), e.target}));
  return Json{{"vertices", g.vertex_count()}, {"base", g.base()}, {"edges", edges}};
}

// ---------------------------------------------------------------------------

Json presentation_to_json(const Presentation& p) {
  return Json{{"generators", alphabet_to_json(p.generators())},
              {"relators", words_to_json(p.relators(), p.generators())}};
}

Presentation presentation_from_json(const Json& j) {
  Alphabet a = alphabet_from_json(need(j, "generators"));
  std::vector<Word> rels;
  if (auto r = maybe(j, "relators")) rels = words_from_json(*r, a);
  return Presentation(std::move(a), std::move(rels));
}

Json hom_to_json(const GroupHom& f, bool with_domain) {
  Json out = Json::object();
  if (with_domain) out["domain"] = presentation_to_json(f.domain);
  if (f.target.is_free())
    out["target"] = alphabet_to_json(f.target.generators());
  else
    out["target"] = presentation_to_json(f.target);
  out["images"] = images_to_json(f.images, f.domain.generators(), f.target.generators());
  out["status"] = to_string(f.status);
  return out;
}

GroupHom hom_from_json(const Json& j, const Presentation* domain) {
  GroupHom f;
  if (auto d = maybe(j, "domain"))
    f.domain = presentation_from_json(*d);
  else if (domain)
    f.domain = *domain;
  else
    throw InputError("hom needs a domain");
  const Json& t = need(j, "target");
  f.target = t.is_array() ? Presentation::free(alphabet_from_json(t)) : presentation_from_json(t);
  f.images = images_from_json(need(j, "images"), f.domain.generators(), f.target.generators());
  if (auto s = maybe(j, "status")) f.status = status_from(*s);
  return f;
}

GroupHom verified_hom_from_json(const Json& j, const Presentation* domain) {
  GroupHom f = hom_from_json(j, domain);
  auto v = validate_hom(f.domain, f.target, f.images);
  if (!v.violated_relators.empty()) throw PreconditionError("the given map does not respect the domain relators");
  if (!v.verified()) throw PreconditionError("the given map cannot be verified on the target presentation");
  return *v.hom;
}

// ---------------------------------------------------------------------------

Json gad_to_json(const Gad& g) {
  Json vs = Json::array();
  for (const auto& v : g.vertices) {
    Json o{{"name", v.name}, {"kind", to_string(v.kind)}};
    const Alphabet local = local_alphabet(v);
    o["generators"] = alphabet_to_json(local);
    o["marking"] = images_to_json(v.marking, local, g.group.generators());
    switch (v.kind) {
      case GadVertex::Kind::qh:
        o["genus"] = v.genus;
        o["boundary"] = v.boundary;
        o["orientable"] = v.orientable;
        break;
      case GadVertex::Kind::abelian: {
        Json p = Json::array();
        for (const auto& t : v.peripheral) p.push_back(vector_to_json(t));
        o["peripheral"] = p;
        break;
      }
      case GadVertex::Kind::rigid: o["free"] = v.free_marked; break;
    }
    vs.push_back(o);
  }
  Json es = Json::array();
  for (const auto& e : g.edges) {
    Json o{{"source", g.vertices[e.source].name},
           {"target", g.vertices[e.target].name},
           {"generator", g.group.format(e.generator)}};
    for (int side = 0; side < 2; ++side) {
      const auto& v = g.vertices[side == 0 ? e.source : e.target];
      const char* key = side == 0 ? "source_inclusion" : "target_inclusion";
      if (v.kind == GadVertex::Kind::abelian)
        o[key] = vector_to_json(side == 0 ? e.source_tuple : e.target_tuple);
      else
        o[key] = format_word(side == 0 ? e.source_word : e.target_word, local_alphabet(v));
    }
    es.push_back(o);
  }
  return Json{{"group", presentation_to_json(g.group)}, {"vertices", vs}, {"edges", es}};
}

Gad gad_from_json(const Json& j, const Presentation* group) {
  Gad g;
  if (auto p = maybe(j, "group"))
    g.group = presentation_from_json(*p);
  else if (group)
    g.group = *group;
  else
    throw InputError("GAD needs a group");
  for (const auto& o : arr(need(j, "vertices"), "vertices")) {
    GadVertex v;
    v.name = str(need(o, "name"), "vertex name");
    v.kind = vertex_kind(str(need(o, "kind"), "vertex kind"));
    const Json& m = need(o, "marking");
    if (auto names = maybe(o, "generators")) {
      v.generator_names = alphabet_from_json(*names).names();
      v.marking = images_from_json(m, Alphabet(v.generator_names), g.group.generators());
    } else if (m.is_object()) {
      for (auto it = m.begin(); it != m.end(); ++it) {
        v.generator_names.push_back(it.key());
        v.marking.push_back(word_from(it.value(), g.group.generators()));
      }
    } else {
      v.marking = words_from_json(m, g.group.generators());
    }
    switch (v.kind) {
      case GadVertex::Kind::qh:
        v.genus = static_cast<int>(int_value(need(o, "genus"), "genus"));
        v.boundary = static_cast<int>(int_value(need(o, "boundary"), "boundary"));
        if (auto x = maybe(o, "orientable")) v.orientable = bool_value(*x, "orientable");
        break;
      case GadVertex::Kind::abelian:
        if (auto p = maybe(o, "peripheral"))
          for (const auto& t : arr(*p, "peripheral")) v.peripheral.push_back(vector_from_json(t));
        break;
      case GadVertex::Kind::rigid:
        if (auto x = maybe(o, "free")) v.free_marked = bool_value(*x, "free");
        break;
    }
    g.vertices.push_back(std::move(v));
  }
  if (auto es = maybe(j, "edges")) {
    for (const auto& o : arr(*es, "edges")) {
      GadEdge e;
      e.source = vertex_ref(need(o, "source"), g.vertices);
      e.target = vertex_ref(need(o, "target"), g.vertices);
      e.generator = word_from(need(o, "generator"), g.group.generators());
      for (int side = 0; side < 2; ++side) {
        const auto& v = g.vertices[side == 0 ? e.source : e.target];
        const Json& inc = need(o, side == 0 ? "source_inclusion" : "target_inclusion");
        if (v.kind == GadVertex::Kind::abelian)
          (side == 0 ? e.source_tuple : e.target_tuple) = vector_from_json(inc);
        else
          (side == 0 ? e.source_word : e.target_word) = word_from(inc, local_alphabet(v));
      }
      g.edges.push_back(std::move(e));
    }
  }
  validate_gad(g);
  return g;
}

Json splitting_to_json(const OneEdgeSplitting& s) {
  const Alphabet& a = s.group.generators();
  Json out{{"form", s.form == OneEdgeSplitting::Form::amalgam ? "amalgam" : "hnn"},
           {"group", presentation_to_json(s.group)},
           {"a", generator_names(s.a_generators, a)}};
  if (s.form == OneEdgeSplitting::Form::amalgam)
    out["b"] = generator_names(s.b_generators, a);
  else
    out["stable_letter"] = a.name(s.stable_letter);
  out["edge"] = s.group.format(s.edge);
  out["partner"] = s.group.format(s.partner);
  out["a_side"] = side_name(s.a_side);
  if (s.form == OneEdgeSplitting::Form::amalgam) out["b_side"] = side_name(s.b_side);
  return out;
}

OneEdgeSplitting splitting_from_json(const Json& j) {
  OneEdgeSplitting s;
  const auto form = str(need(j, "form"), "form");
  if (form == "amalgam")
    s.form = OneEdgeSplitting::Form::amalgam;
  else if (form == "hnn")
    s.form = OneEdgeSplitting::Form::hnn;
  else
    throw InputError("splitting form must be 'amalgam' or 'hnn'");
  s.group = presentation_from_json(need(j, "group"));
  const Alphabet& a = s.group.generators();
  s.a_generators = generator_indices(need(j, "a"), a);
  if (s.form == OneEdgeSplitting::Form::amalgam)
    s.b_generators = generator_indices(need(j, "b"), a);
  else
    s.stable_letter = a.index_of(str(need(j, "stable_letter"), "stable letter"));
  s.edge = word_from(need(j, "edge"), a);
  s.partner = word_from(need(j, "partner"), a);
  if (auto x = maybe(j, "a_side")) s.a_side = side_from(str(*x, "a_side"));
  if (auto x = maybe(j, "b_side")) s.b_side = side_from(str(*x, "b_side"));
  validate_splitting(s);
  return s;
}

Json twist_to_json(const TwistAutomorphism& t) {
  const Alphabet& a = t.group.generators();
  Json out{{"kind", to_string(t.kind)}, {"label", t.label}, {"status", to_string(t.status)}};
  out["group"] = presentation_to_json(t.group);
  if (!t.z.empty() || t.kind != TwistAutomorphism::Kind::generalized) out["z"] = t.group.format(t.z);
  out["images"] = images_to_json(t.images, a, a);
  out["inverse_images"] = images_to_json(t.inverse_images, a, a);
  return out;
}

TwistAutomorphism twist_from_json(const Json& j, const Presentation* group) {
  TwistAutomorphism t;
  if (auto s = maybe(j, "splitting")) {
    const OneEdgeSplitting sp = splitting_from_json(*s);
    t = dehn_twist(sp, word_from(need(j, "z"), sp.group.generators()));
  } else {
    Presentation g;
    if (auto p = maybe(j, "group"))
      g = presentation_from_json(*p);
    else if (group)
      g = *group;
    else
      throw InputError("twist needs a group");
    const Alphabet& a = g.generators();
    if (auto c = maybe(j, "inner")) {
      t = inner_automorphism(g, word_from(*c, a));
    } else if (auto m = maybe(j, "matrix")) {
      std::vector<IntVector> per;
      if (auto p = maybe(j, "peripheral"))
        for (const auto& v : arr(*p, "peripheral")) per.push_back(vector_from_json(v));
      t = generalized_dehn_twist(g, generator_indices(need(j, "a"), a), per, matrix_from_json(*m));
    } else {
      t.group = g;
      t.kind = TwistAutomorphism::Kind::dehn;
      if (auto k = maybe(j, "kind")) {
        const auto s = str(*k, "kind");
        if (s == "generalized") t.kind = TwistAutomorphism::Kind::generalized;
        else if (s == "inner") t.kind = TwistAutomorphism::Kind::inner;
        else if (s != "dehn") throw InputError("unknown twist kind '" + s + "'");
      }
      t.images = images_from_json(need(j, "images"), a, a);
      t.inverse_images = images_from_json(need(j, "inverse_images"), a, a);
      if (auto z = maybe(j, "z")) t.z = word_from(*z, a);
      // A table pair is only trusted once both composites are checked.
      bool all = true;
      for (std::size_t i = 0; i < a.rank(); ++i) {
        for (const Word& c : {substitute(t.images, t.inverse_images[i]), substitute(t.inverse_images, t.images[i])}) {
          auto v = decide_trivial(g, c * Word::generator(i).inverse());
          if (v == false) throw InputError("twist tables are not mutually inverse");
          if (!v) all = false;
        }
      }
      auto h = validate_hom(g, g, t.images);
      if (!h.violated_relators.empty()) throw InputError("twist table does not respect the relators");
      t.status = all && h.verified() ? HomStatus::verified : HomStatus::asserted;
    }
  }
  if (auto l = maybe(j, "label")) t.label = str(*l, "label");
  return t;
}

// ---------------------------------------------------------------------------

Json mr_diagram_to_json(const MrDiagram& d) {
  Json nodes = Json::array();
  for (const auto& p : d.nodes) nodes.push_back(presentation_to_json(p));
  Json edges = Json::array();
  for (const auto& e : d.edges) {
    const Alphabet& pa = d.nodes[e.parent].generators();
    edges.push_back(Json{{"parent", e.parent},
                         {"child", e.child},
                         {"label", e.label},
                         {"added", words_to_json(e.added, pa)},
                         {"images", images_to_json(e.images, pa, d.nodes[e.child].generators())}});
  }
  return Json{{"root", d.root}, {"root_is_limit", d.root_is_limit}, {"nodes", nodes}, {"edges", edges}};
}

MrDiagram mr_diagram_from_json(const Json& j) {
  MrDiagram d;
  for (const auto& n : arr(need(j, "nodes"), "nodes")) d.nodes.push_back(presentation_from_json(n));
  if (auto r = maybe(j, "root")) d.root = index_value(*r, "root");
  if (auto r = maybe(j, "root_is_limit")) d.root_is_limit = bool_value(*r, "root_is_limit");
  if (d.root >= d.nodes.size()) throw InputError("root index out of range");
  if (auto es = maybe(j, "edges")) {
    for (const auto& o : arr(*es, "edges")) {
      MrEdge e;
      e.parent = index_value(need(o, "parent"), "parent");
      e.child = index_value(need(o, "child"), "child");
      if (e.parent >= d.nodes.size() || e.child >= d.nodes.size()) throw InputError("edge endpoint out of range");
      const Alphabet& pa = d.nodes[e.parent].generators();
      if (auto a = maybe(o, "added")) e.added = words_from_json(*a, pa);
      e.images = images_from_json(need(o, "images"), pa, d.nodes[e.child].generators());
      if (auto l = maybe(o, "label")) e.label = str(*l, "label");
      d.edges.push_back(std::move(e));
    }
  }
  validate_mr_diagram(d);
  return d;
}

Json branch_witness_to_json(const BranchWitness& w, const MrDiagram& d, const Alphabet& target) {
  Json autos = Json::array();
  for (std::size_t i = 0; i < w.automorphisms.size() && i < w.path.size(); ++i) {
    const Alphabet& a = d.nodes[w.path[i]].generators();
    autos.push_back(images_to_json(w.automorphisms[i], a, a));
  }
  Json terminal = w.path.empty() ? Json::object()
                                 : images_to_json(w.terminal, d.nodes[w.path.back()].generators(), target);
  return Json{{"path", w.path}, {"automorphisms", autos}, {"terminal", terminal}};
}

BranchWitness branch_witness_from_json(const Json& j, const MrDiagram& d, const Alphabet& target) {
  BranchWitness w;
  for (const auto& n : arr(need(j, "path"), "path")) {
    w.path.push_back(index_value(n, "path node"));
    if (w.path.back() >= d.nodes.size()) throw InputError("path node out of range");
  }
  if (w.path.empty()) throw InputError("empty branch path");
  const auto& autos = arr(need(j, "automorphisms"), "automorphisms");
  if (autos.size() + 1 != w.path.size()) throw InputError("need one automorphism per non-leaf path node");
  for (std::size_t i = 0; i < autos.size(); ++i) {
    const Alphabet& a = d.nodes[w.path[i]].generators();
    w.automorphisms.push_back(images_from_json(autos[i], a, a));
  }
  w.terminal = images_from_json(need(j, "terminal"), d.nodes[w.path.back()].generators(), target);
  return w;
}

Json mr_report_to_json(const MrReport& r, const Presentation& root, const Alphabet& target) {
  Json stages = Json::array();
  for (const auto& s : r.stages)
    stages.push_back(Json{{"stage", s.stage}, {"node", s.node}, {"ok", s.ok}, {"detail", s.detail}});
  Json mism = Json::array();
  for (auto g : r.mismatched_generators) mism.push_back(root.generators().name(g));
  Json out{{"ok", r.ok}, {"stages", stages}};
  out["composite"] = r.composite.size() == root.rank() ? images_to_json(r.composite, root.generators(), target)
                                                      : Json(nullptr);
  out["mismatched_generators"] = mism;
  return out;
}

// ---------------------------------------------------------------------------

Json quotient_to_json(const QuotientMap& q) {
  return Json{{"label", q.label}, {"added", words_to_json(q.added, q.domain.generators())}};
}

QuotientMap quotient_from_json(const Json& j, const Presentation& domain) {
  QuotientMap q;
  q.domain = domain;
  q.added = words_from_json(need(j, "added"), domain.generators());
  if (auto l = maybe(j, "label")) q.label = str(*l, "label");
  return q;
}

Json factor_set_to_json(const FactorSet& f) {
  const Alphabet& a = f.domain.generators();
  Json maps = Json::array();
  for (const auto& q : f.maps) maps.push_back(quotient_to_json(q));
  Json props = Json::array();
  for (const auto& c : f.properness)
    props.push_back(Json{{"witness", c.witness ? Json(format_word(*c.witness, a)) : Json(nullptr)},
                         {"status", to_string(c.status)}});
  return Json{{"domain", presentation_to_json(f.domain)},
              {"maps", maps},
              {"properness", props},
              {"abelianization", f.abelianization ? Json(*f.abelianization) : Json(nullptr)}};
}

FactorSet factor_set_from_json(const Json& j) {
  FactorSet f;
  f.domain = presentation_from_json(need(j, "domain"));
  for (const auto& q : arr(need(j, "maps"), "maps")) f.maps.push_back(quotient_from_json(q, f.domain));
  if (auto p = maybe(j, "properness")) {
    for (const auto& c : arr(*p, "properness")) {
      ProperCertificate pc;
      if (auto w = maybe(c, "witness")) pc.witness = word_from(*w, f.domain.generators());
      const auto s = str(need(c, "status"), "status");
      if (s == "verified") pc.status = ProperStatus::verified;
      else if (s == "asserted") pc.status = ProperStatus::asserted;
      else if (s == "failed") pc.status = ProperStatus::failed;
      else throw InputError("unknown properness status '" + s + "'");
      f.properness.push_back(pc);
    }
  }
  if (auto a = maybe(j, "abelianization")) {
    f.abelianization = index_value(*a, "abelianization");
    if (*f.abelianization >= f.maps.size()) throw InputError("abelianization index out of range");
  }
  return f;
}

Json sequence_to_json(const TwistSequence& s, std::span<const TwistAutomorphism> modgens) {
  Json out = Json::array();
  for (const auto& [g, e] : s) {
    Json o{{"generator", g}, {"power", e}};
    if (g < modgens.size() && !modgens[g].label.empty()) o["label"] = modgens[g].label;
    out.push_back(o);
  }
  return out;
}

Json modular_search_to_json(const ModularSearchResult& r, const GroupHom& f,
                            std::span<const QuotientMap> factors, std::span<const TwistAutomorphism> modgens) {
  Json out{{"found", r.witness.has_value()}, {"depth_bound", r.depth_bound}, {"candidates", r.candidates}};
  if (!r.witness) {
    out["witness"] = nullptr;
    return out;
  }
  const auto& w = *r.witness;
  const Alphabet& a = f.domain.generators();
  out["witness"] = Json{{"sequence", sequence_to_json(w.sequence, modgens)},
                        {"sequence_text", format_sequence(w.sequence, modgens)},
                        {"alpha", images_to_json(w.alpha, a, a)},
                        {"f_alpha", images_to_json(w.f_alpha, a, f.target.generators())},
                        {"factor", w.factor},
                        {"factor_label", factors[w.factor].label},
                        {"factored", hom_to_json(w.factored)}};
  return out;
}

Json shorten_to_json(const ShortenResult& r, std::span<const TwistAutomorphism> modgens) {
  Json out{{"shortened", r.shortened},
           {"input_length", r.input_length},
           {"output_length", r.output_length},
           {"conjugator_bound", r.conjugator_bound},
           {"depth_bound", r.depth_bound}};
  if (r.shortened) {
    out["sequence"] = sequence_to_json(r.sequence, modgens);
    out["sequence_text"] = format_sequence(r.sequence, modgens);
    out["conjugator"] = r.hom.target.format(r.conjugator);
    out["hom"] = hom_to_json(r.hom, false);
  }
  return out;
}

// ---------------------------------------------------------------------------

Json clg_certificate_to_json(const ClgCertificate& c) {
  Json out{{"kind", to_string(c.kind)}};
  if (c.level) out["level"] = *c.level;
  switch (c.kind) {
    case ClgCertificate::Kind::free: out["group"] = presentation_to_json(c.group); break;
    case ClgCertificate::Kind::free_product:
      out["left"] = clg_certificate_to_json(c.children.at(0));
      out["right"] = clg_certificate_to_json(c.children.at(1));
      break;
    case ClgCertificate::Kind::step: {
      const auto& lower = c.children.at(0).group;
      out["gad"] = gad_to_json(c.gad);
      out["rho"] = images_to_json(c.rho, c.group.generators(), lower.generators());
      out["lower"] = clg_certificate_to_json(c.children.at(0));
      Json vh = Json::array();
      for (const auto& h : c.verification_homs) vh.push_back(hom_to_json(h, false));
      out["verification_homs"] = vh;
      out["radius"] = c.radius;
      break;
    }
  }
  return out;
}

ClgCertificate clg_certificate_from_json(const Json& j) {
  const auto kind = str(need(j, "kind"), "kind");
  ClgCertificate c;
  if (kind == "free") {
    const Json& g = need(j, "group");
    c = ClgCertificate::free(g.is_array() ? alphabet_from_json(g) : alphabet_from_json(need(g, "generators")));
    if (g.is_object()) c.group = presentation_from_json(g);
  } else if (kind == "free_product") {
    c = ClgCertificate::free_product(clg_certificate_from_json(need(j, "left")),
                                     clg_certificate_from_json(need(j, "right")));
    if (auto g = maybe(j, "group")) c.group = presentation_from_json(*g);
  } else if (kind == "step") {
    ClgCertificate lower = clg_certificate_from_json(need(j, "lower"));
    Gad gad = gad_from_json(need(j, "gad"));
    auto rho = images_from_json(need(j, "rho"), gad.group.generators(), lower.group.generators());
    std::vector<GroupHom> vh;
    if (auto v = maybe(j, "verification_homs"))
      for (const auto& h : arr(*v, "verification_homs")) vh.push_back(hom_from_json(h, &lower.group));
    c = ClgCertificate::step(std::move(gad), std::move(rho), std::move(lower));
    c.verification_homs = std::move(vh);
    if (auto r = maybe(j, "radius")) c.radius = index_value(*r, "radius");
  } else {
    throw InputError("certificate kind must be 'free', 'free_product' or 'step'");
  }
  if (auto l = maybe(j, "level")) c.level = static_cast<int>(int_value(*l, "level"));
  return c;
}

Json clg_report_to_json(const ClgReport& r) {
  Json conds = Json::array();
  for (const auto& c : r.conditions) {
    Json items = Json::array();
    for (const auto& i : c.items)
      items.push_back(Json{{"subject", i.subject}, {"status", to_string(i.status)}, {"detail", i.detail}});
    Json o{{"name", c.name}, {"status", to_string(c.status)}};
    if (c.radius) o["radius"] = c.radius;
    o["items"] = items;
    conds.push_back(o);
  }
  Json children = Json::array();
  for (const auto& ch : r.children) children.push_back(clg_report_to_json(ch));
  return Json{{"kind", to_string(r.kind)},
              {"level", r.level},
              {"status", to_string(r.status)},
              {"conditions", conds},
              {"children", children}};
}

// ---------------------------------------------------------------------------

Json hom_search_to_json(const HomSearchResult& r, const SearchBudget& b) {
  Json out{{"found", r.witness.has_value()},
           {"result", r.witness ? "witness" : (r.exhausted ? "none-in-budget" : "budget-cut")},
           {"budget", Json{{"max_len", b.max_len}, {"rank", b.rank}, {"max_candidates", b.max_candidates}}},
           {"candidates", r.candidates},
           {"total_length", r.total_length},
           {"exhausted", r.exhausted}};
  out["witness"] = r.witness ? hom_to_json(*r.witness, false) : Json(nullptr);
  return out;
}

Json stable_probe_to_json(const StableProbe& p, const TwistFamily& fam) {
  Json imgs = Json::array();
  for (std::size_t i = 0; i < p.indices.size(); ++i)
    imgs.push_back(Json{{"i", p.indices[i]},
                        {"image", fam.f.target.format(p.images[i])},
                        {"trivial", static_cast<bool>(p.trivial[i])}});
  return Json{{"evidence", "finite-range"},
              {"range", Json::array({fam.first, fam.last})},
              {"classification", p.label()},
              {"kind", to_string(p.kind)},
              {"from", p.from ? Json(*p.from) : Json(nullptr)},
              {"eventual_trivial", p.eventual_trivial ? Json(*p.eventual_trivial) : Json(nullptr)},
              {"images", imgs}};
}

}  // namespace limitkit
