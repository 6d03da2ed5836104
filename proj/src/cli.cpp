#include "limitkit/cli.hpp"

#include <CLI11.hpp>

#include <functional>
#include <map>
#include <sstream>

#include "limitkit/clg.hpp"
#include "limitkit/diagram.hpp"
#include "limitkit/errors.hpp"
#include "limitkit/intlinalg.hpp"
#include "limitkit/json_io.hpp"
#include "limitkit/presentation.hpp"
#include "limitkit/search.hpp"
#include "limitkit/splitting.hpp"
#include "limitkit/stallings.hpp"
#include "limitkit/whitehead.hpp"

namespace limitkit {

namespace {

// Inline JSON when the text starts with '{' or '[', otherwise a file path
// (an optional leading '@' is stripped).
Json json_source(const std::string& s) {
  if (!s.empty() && (s[0] == '{' || s[0] == '[')) {
    try {
      return Json::parse(s);
    } catch (const Json::parse_error& e) {
      throw InputError(std::string("inline JSON: ") + e.what());
    }
  }
  return read_json_file(!s.empty() && s[0] == '@' ? s.substr(1) : s);
}

// A word on the command line is token syntax, or @file holding a JSON string
// (or an object with a "word" field).
std::string word_text(const std::string& s) {
  if (s.empty() || s[0] != '@') return s;
  Json j = read_json_file(s.substr(1));
  if (j.is_object() && j.contains("word")) j = j["word"];
  if (!j.is_string()) throw InputError(s + ": expected a JSON string word");
  return j.get<std::string>();
}

Word word_arg(const std::string& s, const Alphabet& a) { return parse_word(word_text(s), a); }

std::vector<Word> word_args(const std::vector<std::string>& ss, const Alphabet& a) {
  std::vector<Word> out;
  for (const auto& s : ss) out.push_back(word_arg(s, a));
  return out;
}

std::vector<std::string> names_arg(const std::vector<std::string>& tokens) {
  std::vector<std::string> out;
  for (const auto& t : tokens) {
    std::istringstream in(t);
    for (std::string n; in >> n;) out.push_back(n);
  }
  return out;
}

// Explicit alphabet, or one interned from the words in order of appearance.
struct Interned {
  Alphabet alphabet;
  std::vector<Word> words;
};

Interned intern_words(const std::vector<std::string>& alphabet, const std::vector<std::string>& texts) {
  Interned r;
  if (!alphabet.empty()) {
    r.alphabet = Alphabet(names_arg(alphabet));
    for (const auto& t : texts) r.words.push_back(word_arg(t, r.alphabet));
    return r;
  }
  std::vector<std::string> raw;
  for (const auto& t : texts) raw.push_back(word_text(t));
  for (const auto& t : raw) parse_word_interning(t, r.alphabet);
  for (const auto& t : raw) r.words.push_back(parse_word(t, r.alphabet));
  return r;
}

std::pair<long long, long long> parse_range(const std::string& s) {
  for (const char* sep : {"..", ":", ","}) {
    const auto pos = s.find(sep);
    if (pos == std::string::npos || pos == 0) continue;
    try {
      std::size_t used = 0;
      const long long a = std::stoll(s.substr(0, pos), &used);
      if (used != pos) break;
      const std::string rest = s.substr(pos + std::char_traits<char>::length(sep));
      const long long b = std::stoll(rest, &used);
      if (used != rest.size()) break;
      return {a, b};
    } catch (const std::logic_error&) {
      break;
    }
  }
  throw InputError("range must look like FIRST..LAST");
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string matrix_text(const IntMatrix& m) { return matrix_to_json(m).dump(); }

std::string images_text(const std::vector<Word>& images, const Alphabet& domain, const Alphabet& target) {
  std::string out;
  for (std::size_t i = 0; i < images.size(); ++i)
    out += "  " + domain.name(i) + " -> " + format_word(images[i], target) + "\n";
  return out;
}

void clg_text(const ClgReport& r, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  out += pad + to_string(r.kind) + " level " + std::to_string(r.level) + ": " + to_string(r.status) + "\n";
  for (const auto& c : r.conditions) {
    out += pad + "  " + c.name + ": " + to_string(c.status);
    if (c.radius) out += " (radius " + std::to_string(c.radius) + ")";
    out += "\n";
    for (const auto& i : c.items)
      if (i.status != ClgStatus::verified)
        out += pad + "    " + i.subject + ": " + to_string(i.status) + (i.detail.empty() ? "" : " - " + i.detail) + "\n";
  }
  for (const auto& ch : r.children) clg_text(ch, out, indent + 2);
}

std::vector<TwistAutomorphism> twists_from(const Json& j, const Presentation& group) {
  const Json* list = &j;
  if (j.is_object()) {
    if (!j.contains("twists")) return {twist_from_json(j, &group)};
    list = &j["twists"];
  }
  if (!list->is_array()) throw InputError("twists must be an array of twist objects");
  std::vector<TwistAutomorphism> out;
  for (const auto& t : *list) out.push_back(twist_from_json(t, &group));
  return out;
}

std::vector<QuotientMap> factors_from(const Json& j, const Presentation& domain) {
  if (j.is_object() && j.contains("domain")) return factor_set_from_json(j).maps;
  const Json* list = &j;
  if (j.is_object()) {
    if (!j.contains("maps")) throw InputError("factor file needs a 'maps' list");
    list = &j["maps"];
  }
  if (!list->is_array()) throw InputError("factors must be an array of quotient objects");
  std::vector<QuotientMap> out;
  for (const auto& q : *list) out.push_back(quotient_from_json(q, domain));
  return out;
}

struct Cli {
  std::ostream& out;
  bool json = false;

  int emit(const Json& j, const std::string& text, int code) {
    if (json)
      out << j.dump(2) << '\n';
    else
      out << text;
    return code;
  }
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Cli io{out};
  CLI::App app{"Algorithms on free groups, limit groups and their certificates", "limitkit"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_flag("--json", io.json, "Print JSON instead of text");

  std::map<const CLI::App*, std::function<int()>> handlers;
  auto group = [&](const std::string& name, const std::string& desc) {
    auto* g = app.add_subcommand(name, desc);
    g->require_subcommand(1);
    g->fallthrough();
    return g;
  };

  // Option storage shared by the subcommands; only one runs per invocation.
  std::string word_s, gen_s, pres_s, hom_s, file_s, z_s, range_s = "0..10", second_s;
  std::vector<std::string> alphabet_v, words_v, names_v, names2_v;
  std::size_t count_n = 0, depth_n = 8, cap_n = 6;
  int genus = 2;
  bool flag = false;
  SearchBudget budget;

  // word -------------------------------------------------------------------
  auto* word = group("word", "Free reduction, roots, Whitehead minimization, counting");
  auto add_word = [&](CLI::App* s) {
    s->add_option("--word", word_s, "Word in token syntax, or @file.json")->required();
    s->add_option("--alphabet", alphabet_v, "Generator order (default: order of appearance)");
  };
  {
    auto* s = word->add_subcommand("reduce", "Freely reduce a word");
    add_word(s);
    handlers[s] = [&] {
      auto in = intern_words(alphabet_v, {word_s});
      const auto text = format_word(in.words[0], in.alphabet);
      return io.emit(Json{{"alphabet", alphabet_to_json(in.alphabet)}, {"word", text}}, text + "\n", exit_ok);
    };
  }
  {
    auto* s = word->add_subcommand("root", "Primitive root and exponent");
    add_word(s);
    handlers[s] = [&] {
      auto in = intern_words(alphabet_v, {word_s});
      auto r = primitive_root(in.words[0]);
      const auto root = format_word(r.root, in.alphabet);
      return io.emit(Json{{"root", root}, {"exponent", r.exponent}, {"proper_power", r.exponent > 1}},
                     root + " ^ " + std::to_string(r.exponent) + "\n", exit_ok);
    };
  }
  {
    auto* s = word->add_subcommand("whitehead", "Whitehead minimization of the cyclic word");
    add_word(s);
    s->add_option("--rank", count_n, "Rank of the ambient free group (default: alphabet size)");
    handlers[s] = [&] {
      auto in = intern_words(alphabet_v, {word_s});
      const std::size_t rank = std::max(count_n, in.alphabet.rank());
      if (count_n > 0 && count_n < in.alphabet.rank()) throw InputError("--rank is smaller than the alphabet");
      for (std::size_t k = 1; in.alphabet.rank() < rank; ++k) in.alphabet.intern("g" + std::to_string(k));
      auto r = whitehead_minimize(in.words.at(0), rank);
      const bool reduced = is_whitehead_reduced(in.words[0], rank);
      Json moves = Json::array();
      for (const auto& m : r.moves) moves.push_back(m.describe(in.alphabet));
      const auto minimal = format_word(r.minimal, in.alphabet);
      Json j{{"rank", rank},
             {"cyclic_length", cyclic_length(in.words[0])},
             {"minimal", minimal},
             {"minimal_length", r.minimal.length()},
             {"moves", moves},
             {"whitehead_reduced", reduced}};
      return io.emit(j,
                     "minimal: " + minimal + "\nmoves: " + std::to_string(r.moves.size()) +
                         "\nwhitehead-reduced: " + yes_no(reduced) + "\n",
                     exit_ok);
    };
  }
  {
    auto* s = word->add_subcommand("count", "Occurrences of a generator (either sign)");
    add_word(s);
    s->add_option("--gen", gen_s, "Generator name")->required();
    handlers[s] = [&] {
      auto in = intern_words(alphabet_v, {word_s});
      const std::size_t c = occurrence_count(in.words[0], in.alphabet.index_of(gen_s));
      return io.emit(Json{{"generator", gen_s}, {"count", c}}, std::to_string(c) + "\n", exit_ok);
    };
  }

  // stallings -------------------------------------------------------------
  auto* st = group("stallings", "Subgroups of free groups via folded core graphs");
  auto add_gens = [&](CLI::App* s) {
    s->add_option("--gens", words_v, "Subgroup generators")->required();
    s->add_option("--alphabet", alphabet_v, "Generator order of the ambient free group");
  };
  auto basis_names = [](std::size_t n) { return search_target(n); };
  {
    auto* s = st->add_subcommand("fold", "Folded core graph");
    add_gens(s);
    handlers[s] = [&] {
      auto in = intern_words(alphabet_v, words_v);
      auto g = fold_core_graph(in.words, in.alphabet.rank());
      Json j = core_graph_to_json(g, in.alphabet);
      j["subgroup_rank"] = g.subgroup_rank();
      std::string text = "vertices: " + std::to_string(g.vertex_count()) + "\nbase: 0\nrank: " +
                         std::to_string(g.subgroup_rank()) + "\n";
      for (const auto& e : g.edges())
        text += std::to_string(e.source) + " -" + in.alphabet.name(e.label) + "-> " + std::to_string(e.target) + "\n";
      return io.emit(j, text, exit_ok);
    };
  }
  {
    auto* s = st->add_subcommand("member", "Membership with a rewrite over the free basis");
    add_gens(s);
    s->add_option("--word", word_s, "Element to test")->required();
    handlers[s] = [&] {
      auto all = words_v;
      all.push_back(word_s);
      auto in = intern_words(alphabet_v, all);
      const Word w = in.words.back();
      in.words.pop_back();
      auto g = fold_core_graph(in.words, in.alphabet.rank());
      auto basis = subgroup_basis(g);
      const Alphabet names = basis_names(basis.generators.size());
      auto rw = member_and_rewrite(g, basis, w);
      Json j{{"member", rw.has_value()},
             {"rewrite", rw ? Json(format_word(*rw, names)) : Json(nullptr)},
             {"basis", images_to_json(basis.generators, names, in.alphabet)}};
      return io.emit(j, rw ? format_word(*rw, names) + "\n" : "not-a-member\n", rw ? exit_ok : exit_false);
    };
  }
  {
    auto* s = st->add_subcommand("index", "Index in the ambient free group");
    add_gens(s);
    handlers[s] = [&] {
      auto in = intern_words(alphabet_v, words_v);
      auto idx = subgroup_index(fold_core_graph(in.words, in.alphabet.rank()));
      return io.emit(Json{{"finite", idx.has_value()}, {"index", idx ? Json(*idx) : Json(nullptr)}},
                     (idx ? std::to_string(*idx) : std::string("infinite")) + "\n", exit_ok);
    };
  }
  {
    auto* s = st->add_subcommand("basis", "Free basis read off a spanning tree");
    add_gens(s);
    handlers[s] = [&] {
      auto in = intern_words(alphabet_v, words_v);
      auto basis = subgroup_basis(fold_core_graph(in.words, in.alphabet.rank()));
      const Alphabet names = basis_names(basis.generators.size());
      return io.emit(Json{{"rank", basis.generators.size()},
                          {"basis", images_to_json(basis.generators, names, in.alphabet)}},
                     images_text(basis.generators, names, in.alphabet), exit_ok);
    };
  }

  // lattice ---------------------------------------------------------------
  auto* lat = group("lattice", "Exact integer linear algebra");
  {
    auto* s = lat->add_subcommand("snf", "Smith normal form M = U D V");
    s->add_option("--matrix", file_s, "Row-major nested arrays, inline or a file")->required();
    handlers[s] = [&] {
      auto sf = smith_normal_form(matrix_from_json(json_source(file_s)));
      Json j = smith_to_json(sf);
      return io.emit(j,
                     "diagonal: " + j["diagonal"].dump() + "\nU: " + matrix_text(sf.U) + "\nD: " + matrix_text(sf.D) +
                         "\nV: " + matrix_text(sf.V) + "\n",
                     exit_ok);
    };
  }
  {
    auto* s = lat->add_subcommand("saturate", "Saturation of a sublattice and its index");
    s->add_option("--lattice", file_s, "Generator list, or {ambient, generators}")->required();
    handlers[s] = [&] {
      auto sat = saturation(lattice_from_json(json_source(file_s)));
      Json j{{"closure", lattice_to_json(sat.closure)}, {"index", integer_to_json(sat.index)}};
      return io.emit(j, "closure: " + j["closure"]["generators"].dump() + "\nindex: " + sat.index.get_str() + "\n",
                     exit_ok);
    };
  }
  {
    auto* s = lat->add_subcommand("extend", "Unimodular matrix with first column pairing to gcd");
    s->add_option("--vector", file_s, "Integer vector, inline or a file")->required();
    handlers[s] = [&] {
      auto ext = unimodular_extend(vector_from_json(json_source(file_s)));
      return io.emit(Json{{"alpha", matrix_to_json(ext.alpha)}, {"d", integer_to_json(ext.d)}},
                     "d: " + ext.d.get_str() + "\nalpha: " + matrix_text(ext.alpha) + "\n", exit_ok);
    };
  }

  // pres ------------------------------------------------------------------
  auto* pr = group("pres", "Presentations and homomorphisms");
  {
    auto* s = pr->add_subcommand("validate", "Parse a presentation and optionally check a hom on it");
    s->add_option("--pres", pres_s, "Presentation JSON")->required();
    s->add_option("--hom", hom_s, "Hom JSON whose domain defaults to the presentation");
    handlers[s] = [&] {
      const Presentation p = presentation_from_json(json_source(pres_s));
      Json j{{"presentation", presentation_to_json(p)}};
      std::string text = "generators: " + std::to_string(p.rank()) + "\nrelators: " +
                         std::to_string(p.relators().size()) + "\n";
      if (hom_s.empty()) return io.emit(j, text, exit_ok);
      const GroupHom f = hom_from_json(json_source(hom_s), &p);
      if (!(f.domain == p)) throw InputError("hom domain differs from the presentation");
      auto v = validate_hom(f.domain, f.target, f.images);
      const std::string status = !v.violated_relators.empty() ? "violated" : v.verified() ? "verified" : "undecided";
      j["hom"] = Json{{"status", status},
                      {"violated_relators", v.violated_relators},
                      {"undecided_relators", v.undecided_relators}};
      text += "hom: " + status + "\n";
      return io.emit(j, text, status == "verified" ? exit_ok : status == "violated" ? exit_false : exit_degraded);
    };
  }
  {
    auto* s = pr->add_subcommand("abelianize", "Abelianization Z^r x torsion");
    s->add_option("--pres", pres_s, "Presentation JSON")->required();
    handlers[s] = [&] {
      const Presentation p = presentation_from_json(json_source(pres_s));
      auto ab = abelianization_quotient(p);
      Json tors = Json::array();
      std::string text = "Z^" + std::to_string(ab.rank);
      for (const auto& t : ab.torsion) {
        tors.push_back(integer_to_json(t));
        text += " x Z/" + t.get_str();
      }
      Json j{{"rank", ab.rank},
             {"torsion", tors},
             {"generator_images", matrix_to_json(ab.generator_images)},
             {"torsion_words", words_to_json(ab.torsion_words, p.generators())}};
      return io.emit(j, text + "\n", exit_ok);
    };
  }
  {
    auto* s = pr->add_subcommand("surface", "Closed surface group and its retraction");
    s->add_option("--genus", genus, "Genus")->required();
    s->add_flag("--non-orientable", flag, "Non-orientable surface (no retraction)");
    handlers[s] = [&] {
      auto sf = surface_family(genus, !flag);
      Json j{{"group", presentation_to_json(sf.group)},
             {"retraction", sf.retraction ? hom_to_json(*sf.retraction, false) : Json(nullptr)},
             {"abelianization_rank", abelianization_quotient(sf.group).rank}};
      std::string text = "relator: " + sf.group.format(sf.group.relators().at(0)) + "\n";
      if (flag) {
        text = "relators:";
        for (const auto& r : sf.group.relators()) text += " " + sf.group.format(r);
        text += "\n";
      }
      if (sf.retraction)
        text += "retraction (" + to_string(sf.retraction->status) + "):\n" +
                images_text(sf.retraction->images, sf.group.generators(), sf.retraction->target.generators());
      return io.emit(j, text, exit_ok);
    };
  }
  {
    auto* s = pr->add_subcommand("factor-abelian", "Reparametrize Z^n -> F so one generator carries the image");
    s->add_option("--images", words_v, "Images of e1..en");
    s->add_option("--hom", hom_s, "Hom JSON from a free abelian group");
    s->add_option("--alphabet", alphabet_v, "Target generator order");
    handlers[s] = [&] {
      std::vector<Word> images;
      Alphabet target;
      if (!hom_s.empty()) {
        const GroupHom f = hom_from_json(json_source(hom_s));
        if (!f.domain.is_free_abelian() && f.domain.rank() > 1) throw InputError("domain must be free abelian");
        images = f.images;
        target = f.target.generators();
      } else {
        if (words_v.empty()) throw InputError("give --images or --hom");
        auto in = intern_words(alphabet_v, words_v);
        images = in.words;
        target = in.alphabet;
      }
      auto fac = abelian_factorization(images);
      const auto fa = compose_with_matrix(images, fac.alpha);
      const Alphabet dom = Alphabet::numbered("e", images.size());
      Json j{{"alpha", matrix_to_json(fac.alpha)},
             {"root", format_word(fac.root, target)},
             {"exponents", vector_to_json(fac.exponents)},
             {"d", integer_to_json(fac.d)},
             {"f_alpha", images_to_json(fa, dom, target)}};
      return io.emit(j,
                     "root: " + format_word(fac.root, target) + "\nd: " + fac.d.get_str() +
                         "\nalpha: " + matrix_text(fac.alpha) + "\nf∘alpha:\n" + images_text(fa, dom, target),
                     exit_ok);
    };
  }

  // gad -------------------------------------------------------------------
  auto* gd = group("gad", "Decompositions, twists and amalgam normal forms");
  {
    auto* s = gd->add_subcommand("peripheral", "P(A), its closure and the index for an abelian vertex");
    s->add_option("--gad", file_s, "GAD JSON")->required();
    s->add_option("--vertex", gen_s, "Vertex name")->required();
    handlers[s] = [&] {
      const Gad g = gad_from_json(json_source(file_s));
      std::size_t v = g.vertices.size();
      for (std::size_t i = 0; i < g.vertices.size(); ++i)
        if (g.vertices[i].name == gen_s) v = i;
      if (v == g.vertices.size()) throw InputError("unknown vertex '" + gen_s + "'");
      if (g.vertices[v].kind != GadVertex::Kind::abelian) throw InputError("vertex is not abelian");
      auto P = peripheral_lattice(g, v);
      auto sat = peripheral_closure(g, v);
      Json j{{"vertex", gen_s},
             {"peripheral", lattice_to_json(P)},
             {"closure", lattice_to_json(sat.closure)},
             {"index", integer_to_json(sat.index)}};
      return io.emit(j,
                     "P: " + j["peripheral"]["generators"].dump() + "\nclosure: " +
                         j["closure"]["generators"].dump() + "\nindex: " + sat.index.get_str() + "\n",
                     exit_ok);
    };
  }
  auto twist_out = [&](const TwistAutomorphism& t) {
    const Alphabet& a = t.group.generators();
    return io.emit(twist_to_json(t),
                   to_string(t.kind) + " twist (" + to_string(t.status) + ")\n" + images_text(t.images, a, a), exit_ok);
  };
  {
    auto* s = gd->add_subcommand("twist", "Dehn twist of a one-edge splitting");
    s->add_option("--splitting", file_s, "Splitting JSON")->required();
    s->add_option("--z", z_s, "Twisting element")->required();
    handlers[s] = [&] {
      const OneEdgeSplitting sp = splitting_from_json(json_source(file_s));
      return twist_out(dehn_twist(sp, word_arg(z_s, sp.group.generators())));
    };
  }
  {
    auto* s = gd->add_subcommand("gtwist", "Generalized Dehn twist at an abelian vertex");
    s->add_option("--pres", pres_s, "Presentation JSON")->required();
    s->add_option("--a", names_v, "Generators of the abelian vertex")->required();
    s->add_option("--peripheral", hom_s, "Generators of P(A), nested arrays");
    s->add_option("--matrix", file_s, "Action on the vertex generators, column j = image of generator j")
        ->required();
    handlers[s] = [&] {
      const Presentation p = presentation_from_json(json_source(pres_s));
      std::vector<std::size_t> a;
      for (const auto& n : names_arg(names_v)) a.push_back(p.generators().index_of(n));
      std::vector<IntVector> per;
      if (!hom_s.empty())
        for (const auto& v : json_source(hom_s)) per.push_back(vector_from_json(v));
      return twist_out(generalized_dehn_twist(p, a, per, matrix_from_json(json_source(file_s))));
    };
  }
  {
    auto* s = gd->add_subcommand("double-nf", "Normal form in the double of F(left) along w");
    s->add_option("--left", names_v, "Left generators")->required();
    s->add_option("--right", names2_v, "Right generators")->required();
    s->add_option("--w", z_s, "Amalgamating word over the left generators")->required();
    s->add_option("--word", word_s, "Element of the double")->required();
    s->add_option("--equal", second_s, "Compare with this element instead");
    handlers[s] = [&] {
      const Alphabet left(names_arg(names_v)), right(names_arg(names2_v));
      const auto D = CyclicAmalgam::double_of(left, right, word_arg(z_s, left));
      const Alphabet& a = D.group().generators();
      const Word u = word_arg(word_s, a);
      if (!second_s.empty()) {
        const bool eq = equal_in_amalgam(D, u, word_arg(second_s, a));
        return io.emit(Json{{"equal", eq}}, std::string(eq ? "equal" : "different") + "\n",
                       eq ? exit_ok : exit_false);
      }
      auto nf = amalgam_normal_form(D, u);
      Json syl = Json::array();
      std::string text;
      for (const auto& sy : nf.syllables) {
        syl.push_back(Json{{"side", sy.side == 0 ? "left" : "right"}, {"word", format_word(sy.word, a)}});
        text += "[" + format_word(sy.word, a) + "] ";
      }
      text += "w^" + std::to_string(nf.edge_power) + "\n";
      return io.emit(Json{{"syllables", syl}, {"edge_power", nf.edge_power}, {"trivial", nf.trivial()}}, text,
                     exit_ok);
    };
  }

  // mr --------------------------------------------------------------------
  auto* mr = group("mr", "MR diagrams, modular factorization and shortening");
  {
    auto* s = mr->add_subcommand("verify", "Check f = f' q α ... q α along a branch");
    s->add_option("--hom", hom_s, "Hom JSON (domain = diagram root)")->required();
    s->add_option("--diagram", file_s, "MR diagram JSON");
    s->add_option("--witness", second_s, "Branch witness JSON");
    s->add_flag("--abelian", flag, "Use the two-node pipeline for a hom from Z^n");
    handlers[s] = [&] {
      const GroupHom f = verified_hom_from_json(json_source(hom_s));
      MrDiagram d;
      BranchWitness w;
      if (flag) {
        auto pipe = abelian_mr_pipeline(f);
        d = pipe.diagram;
        w = pipe.witness;
      } else {
        if (file_s.empty() || second_s.empty()) throw InputError("give --diagram and --witness, or --abelian");
        d = mr_diagram_from_json(json_source(file_s));
        w = branch_witness_from_json(json_source(second_s), d, f.target.generators());
      }
      auto r = verify_mr_factoring(f, d, w);
      Json j = mr_report_to_json(r, f.domain, f.target.generators());
      if (flag) {
        j["diagram"] = mr_diagram_to_json(d);
        j["witness"] = branch_witness_to_json(w, d, f.target.generators());
      }
      std::string text = std::string(r.ok ? "verified" : "failed") + "\n";
      for (const auto& st : r.stages)
        text += "  " + st.stage + " @" + std::to_string(st.node) + ": " + (st.ok ? "ok" : "FAIL") +
                (st.detail.empty() ? "" : " - " + st.detail) + "\n";
      return io.emit(j, text, r.ok ? exit_ok : exit_false);
    };
  }
  {
    auto* s = mr->add_subcommand("search", "Least twist sequence α with fα factoring through a quotient");
    s->add_option("--hom", hom_s, "Hom JSON")->required();
    s->add_option("--factors", file_s, "Factor set JSON or list of quotients")->required();
    s->add_option("--twists", second_s, "List of twist JSON objects")->required();
    s->add_option("--depth", depth_n, "Maximal sequence length")->capture_default_str();
    handlers[s] = [&] {
      const GroupHom f = verified_hom_from_json(json_source(hom_s));
      const auto factors = factors_from(json_source(file_s), f.domain);
      const auto twists = twists_from(json_source(second_s), f.domain);
      auto r = search_modular_factorization(f, factors, twists, depth_n);
      Json j = modular_search_to_json(r, f, factors, twists);
      std::string text;
      if (r.witness)
        text = "found: " + format_sequence(r.witness->sequence, twists) + " through " +
               factors[r.witness->factor].label + "\n" +
               images_text(r.witness->f_alpha, f.domain.generators(), f.target.generators());
      else
        text = "none within depth " + std::to_string(depth_n) + "\n";
      return io.emit(j, text, r.witness ? exit_ok : exit_false);
    };
  }
  {
    auto* s = mr->add_subcommand("shorten", "Shorten a hom by twists and a conjugation");
    s->add_option("--hom", hom_s, "Hom JSON to a free group")->required();
    s->add_option("--twists", second_s, "List of twist JSON objects")->required();
    s->add_option("--depth", depth_n, "Maximal sequence length")->capture_default_str();
    s->add_option("--cap", cap_n, "Conjugator length cap")->capture_default_str();
    handlers[s] = [&] {
      const GroupHom f = verified_hom_from_json(json_source(hom_s));
      const auto twists = twists_from(json_source(second_s), f.domain);
      auto r = shorten_hom(f, twists, depth_n, cap_n);
      std::string text = r.shortened ? "shortened " + std::to_string(r.input_length) + " -> " +
                                           std::to_string(r.output_length) + "\n" +
                                           images_text(r.hom.images, f.domain.generators(), f.target.generators())
                                     : "no shorter hom in the searched ball\n";
      return io.emit(shorten_to_json(r, twists), text, r.shortened ? exit_ok : exit_false);
    };
  }
  {
    auto* s = mr->add_subcommand("factorset", "Assemble quotients with properness certificates");
    s->add_option("--pres", pres_s, "Domain presentation JSON")->required();
    s->add_option("--kernel", words_v, "One word per quotient");
    s->add_flag("--no-abelianization", flag, "Omit the abelianization quotient");
    handlers[s] = [&] {
      const Presentation p = presentation_from_json(json_source(pres_s));
      auto fs = assemble_factor_set(p, word_args(words_v, p.generators()), !flag);
      std::string text;
      for (std::size_t i = 0; i < fs.maps.size(); ++i)
        text += fs.maps[i].label + ": " + to_string(fs.properness[i].status) + "\n";
      return io.emit(factor_set_to_json(fs), text, exit_ok);
    };
  }

  // clg -------------------------------------------------------------------
  auto* cg = group("clg", "Constructible limit group certificates");
  {
    auto* s = cg->add_subcommand("check", "Check a certificate; exit code reflects the weakest status");
    s->add_option("--cert", file_s, "Certificate JSON")->required();
    handlers[s] = [&] {
      auto r = check_clg(clg_certificate_from_json(json_source(file_s)));
      std::string text;
      clg_text(r, text, 0);
      return io.emit(clg_report_to_json(r), text, exit_code(r.status));
    };
  }

  // probe -----------------------------------------------------------------
  auto* pb = group("probe", "Bounded searches for homs to free groups and twist-family probes");
  auto add_budget = [&](CLI::App* s) {
    s->add_option("--pres", pres_s, "Presentation JSON")->required();
    s->add_option("--max-len", budget.max_len, "Bound on the total image length")->capture_default_str();
    s->add_option("--rank", budget.rank, "Rank of the free target")->capture_default_str();
    s->add_option("--max-candidates", budget.max_candidates, "Cap on tuples examined")->capture_default_str();
  };
  auto search_out = [&](const HomSearchResult& r) {
    std::string text;
    if (r.witness)
      text = "witness (total length " + std::to_string(r.total_length) + "):\n" +
             images_text(r.witness->images, r.witness->domain.generators(), r.witness->target.generators());
    else
      text = std::string(r.exhausted ? "none-in-budget" : "budget-cut") + " after " + std::to_string(r.candidates) +
             " candidates\n";
    return io.emit(hom_search_to_json(r, budget), text,
                   r.witness ? exit_ok : r.exhausted ? exit_false : exit_degraded);
  };
  {
    auto* s = pb->add_subcommand("orf", "Hom to a free group injective on a finite subset");
    add_budget(s);
    s->add_option("--subset", words_v, "Pairwise distinct elements")->required();
    handlers[s] = [&] {
      const Presentation p = presentation_from_json(json_source(pres_s));
      return search_out(orf_witness_search(p, word_args(words_v, p.generators()), budget));
    };
  }
  {
    auto* s = pb->add_subcommand("rf", "Hom to a free group not killing one element");
    add_budget(s);
    s->add_option("--word", word_s, "Element to keep alive")->required();
    handlers[s] = [&] {
      const Presentation p = presentation_from_json(json_source(pres_s));
      return search_out(residually_free_probe(p, word_arg(word_s, p.generators()), budget));
    };
  }
  {
    auto* s = pb->add_subcommand("stable", "f∘α^i over a finite range of i");
    s->add_option("--hom", hom_s, "Hom JSON to a free group")->required();
    s->add_option("--twist", file_s, "Twist JSON on the hom's domain");
    s->add_option("--splitting", pres_s, "Splitting JSON (with --z) instead of --twist");
    s->add_option("--z", z_s, "Twisting element for --splitting");
    s->add_option("--range", range_s, "FIRST..LAST")->capture_default_str();
    s->add_option("--word", word_s, "Element whose images are classified");
    s->add_option("--subset", words_v, "Report the first index separating these elements");
    handlers[s] = [&] {
      const GroupHom f = verified_hom_from_json(json_source(hom_s));
      TwistAutomorphism alpha;
      if (!file_s.empty()) {
        alpha = twist_from_json(json_source(file_s), &f.domain);
      } else {
        if (pres_s.empty() || z_s.empty()) throw InputError("give --twist, or --splitting with --z");
        const OneEdgeSplitting sp = splitting_from_json(json_source(pres_s));
        alpha = dehn_twist(sp, word_arg(z_s, sp.group.generators()));
      }
      const auto [first, last] = parse_range(range_s);
      TwistFamily fam{f, alpha, first, last};
      const Alphabet& a = f.domain.generators();
      if (!words_v.empty()) {
        auto i = first_separating_index(fam, word_args(words_v, a), first);
        Json j{{"evidence", "finite-range"},
               {"range", Json::array({first, last})},
               {"first_separating_index", i ? Json(*i) : Json(nullptr)}};
        return io.emit(j, (i ? "separated at i = " + std::to_string(*i) : std::string("not separated in range")) + "\n",
                       i ? exit_ok : exit_false);
      }
      if (word_s.empty()) throw InputError("give --word or --subset");
      auto p = stable_kernel_probe(fam, word_arg(word_s, a));
      std::string text = p.label() + " (range " + std::to_string(first) + ".." + std::to_string(last) + ")\n";
      for (std::size_t k = 0; k < p.indices.size(); ++k)
        text += "  " + std::to_string(p.indices[k]) + ": " + f.target.format(p.images[k]) + "\n";
      return io.emit(stable_probe_to_json(p, fam), text, exit_ok);
    };
  }

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code == 0) return exit_ok;
    err << app.help();
    return exit_input;
  }

  const CLI::App* leaf = &app;
  while (!leaf->get_subcommands().empty()) leaf = leaf->get_subcommands().front();
  auto it = handlers.find(leaf);
  if (it == handlers.end()) {
    err << app.help();
    return exit_input;
  }
  try {
    return it->second();
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
  } catch (const PreconditionError& e) {
    err << "precondition failed: " << e.what() << '\n';
  } catch (const nlohmann::json::exception& e) {
    err << "input error: " << e.what() << '\n';
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << '\n';
  }
  return exit_input;
}

}  // namespace limitkit
