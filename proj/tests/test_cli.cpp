#include "doctest.h"
#include "fixtures.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "limitkit/cli.hpp"
#include "limitkit/json_io.hpp"

using namespace limitkit;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
  Json json() const { return Json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("limitkit_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string write(const std::string& name, const Json& j) const {
    const auto p = path_ / name;
    std::ofstream(p) << j.dump(2);
    return p.string();
  }

 private:
  fs::path path_;
};

Json twists_json(const std::vector<TwistAutomorphism>& ts) {
  Json a = Json::array();
  for (const auto& t : ts) a.push_back(twist_to_json(t));
  return a;
}

}  // namespace

TEST_CASE("documented command examples") {
  auto r = run({"word", "count", "--word", "x^2 y x^-2 y^-1 z^2 y z^-2", "--gen", "y"});
  CHECK(r.code == 0);
  CHECK(r.out == "3\n");

  r = run({"stallings", "index", "--gens", "a", "b^2", "b a b^-1"});
  CHECK(r.code == 0);
  CHECK(r.out == "2\n");

  TempDir tmp;
  const auto z2 = tmp.write("z2.json", presentation_to_json(Presentation::free_abelian(fixtures::ab())));
  r = run({"probe", "orf", "--pres", z2, "--subset", "a", "b", "a b", "--json"});
  CHECK(r.code == 0);
  auto j = r.json();
  CHECK(j["found"] == true);
  CHECK(j["witness"]["images"]["a"] == "x");
  CHECK(j["witness"]["images"]["b"] == "x^-1");
}

TEST_CASE("usage and input errors exit with 2") {
  auto r = run({"frobnicate"});
  CHECK(r.code == 2);
  CHECK(r.err.find("Usage") != std::string::npos);
  CHECK(run({}).code == 2);
  CHECK(run({"word"}).code == 2);
  CHECK(run({"word", "reduce"}).code == 2);  // missing --word
  CHECK(run({"word", "count", "--word", "a^", "--gen", "a"}).code == 2);
  CHECK(run({"word", "root", "--word", "1"}).code == 2);
  CHECK(run({"lattice", "snf", "--matrix", "[[1, 2], [3]]"}).code == 2);
  CHECK(run({"probe", "rf", "--pres", "/nonexistent.json", "--word", "a"}).code == 2);
  CHECK(run({"pres", "factor-abelian", "--images", "x", "y"}).code == 2);  // images do not commute
  auto h = run({"word", "count", "--help"});
  CHECK(h.code == 0);
  CHECK(h.out.find("--gen") != std::string::npos);
}

TEST_CASE("word and stallings subcommands") {
  CHECK(run({"word", "reduce", "--word", "a b b^-1 a"}).out == "a^2\n");
  CHECK(run({"word", "root", "--word", "a b a b a b"}).out == "a b ^ 3\n");
  auto w = run({"word", "whitehead", "--word", "x^2 y x^-2 y^-1 z^2 y z^-2", "--json"}).json();
  CHECK(w["rank"] == 3);
  CHECK(w["whitehead_reduced"] == true);
  CHECK(run({"word", "whitehead", "--word", "a b a^-1", "--json"}).json()["minimal"] == "b");

  const std::vector<std::string> gens{"a", "b^2", "b a b^-1"};
  auto m = run({"stallings", "member", "--gens", gens[0], gens[1], gens[2], "--word", "a^2 b^2 a^-2 b^-1"});
  CHECK(m.code == 1);
  CHECK(m.out == "not-a-member\n");
  m = run({"stallings", "member", "--gens", gens[0], gens[1], gens[2], "--word",
           "a^2 b^2 a^-2 b^-1 a^2 b^2 a^-2 b^-1"});
  CHECK(m.code == 0);
  CHECK(m.out == "x^2 y x^-2 y^-1 z^2 y z^-2\n");
  auto b = run({"stallings", "basis", "--gens", gens[0], gens[1], gens[2], "--json"}).json();
  CHECK(b["basis"]["x"] == "a");
  CHECK(b["basis"]["y"] == "b^2");
  CHECK(b["basis"]["z"] == "b a b^-1");
  CHECK(run({"stallings", "index", "--gens", "a", "--alphabet", "a b"}).out == "infinite\n");
  CHECK(run({"stallings", "index", "--gens", "a"}).out == "1\n");

  // The CLI output equals the library serialization of the same call.
  const Alphabet ab = fixtures::ab();
  std::vector<Word> ws;
  for (const auto& g : gens) ws.push_back(parse_word(g, ab));
  auto fold = run({"stallings", "fold", "--gens", gens[0], gens[1], gens[2], "--json"}).json();
  Json direct = core_graph_to_json(fold_core_graph(ws, 2), ab);
  direct["subgroup_rank"] = 3;
  CHECK(fold == direct);
}

TEST_CASE("lattice subcommands") {
  auto s = run({"lattice", "saturate", "--lattice", "[[2, 0]]", "--json"}).json();
  CHECK(s["index"] == 2);
  CHECK(s["closure"]["generators"] == Json::parse("[[1, 0]]"));
  auto snf = run({"lattice", "snf", "--matrix", "[[2, 4], [6, 8]]", "--json"}).json();
  CHECK(snf["diagonal"] == Json::parse("[2, 4]"));
  CHECK(snf == smith_to_json(smith_normal_form(IntMatrix{{2, 4}, {6, 8}})));
  auto big = run({"lattice", "snf", "--matrix", "[[\"100000000000000000000\", 0], [0, 1]]", "--json"}).json();
  CHECK(big["diagonal"][1] == "100000000000000000000");
  auto e = run({"lattice", "extend", "--vector", "[3, 5]", "--json"}).json();
  CHECK(e["d"] == 1);
  CHECK(run({"lattice", "extend", "--vector", "[0, 0]"}).code == 2);
}

TEST_CASE("pres subcommands") {
  TempDir tmp;
  auto s = run({"pres", "surface", "--genus", "3", "--json"}).json();
  CHECK(s["abelianization_rank"] == 6);
  CHECK(s["retraction"]["status"] == "verified");
  const auto surf = tmp.write("s.json", s["group"]);
  CHECK(run({"pres", "abelianize", "--pres", surf}).out == "Z^6\n");

  const Alphabet a{"a"};
  const auto tor = tmp.write("t.json", presentation_to_json(Presentation(a, {parse_word("a^2", a)})));
  CHECK(run({"pres", "abelianize", "--pres", tor}).out == "Z^0 x Z/2\n");

  const auto z2 = tmp.write("z2.json", presentation_to_json(Presentation::free_abelian(fixtures::ab())));
  CHECK(run({"pres", "validate", "--pres", z2, "--hom", R"({"target": ["x"], "images": {"a": "x", "b": "x^2"}})"})
            .code == 0);
  CHECK(run({"pres", "validate", "--pres", z2, "--hom", R"({"target": ["x", "y"], "images": ["x", "y"]})"}).code ==
        1);
  const auto z2t = R"({"target": {"generators": ["x", "y"], "relators": ["x^3"]}, "images": ["x", "y"]})";
  CHECK(run({"pres", "validate", "--pres", z2, "--hom", z2t}).code == 3);

  auto f = run({"pres", "factor-abelian", "--images", "x y", "x y x y", "--json"}).json();
  CHECK(f["f_alpha"]["e1"] == "x y");
  CHECK(f["f_alpha"]["e2"] == "1");
}

TEST_CASE("gad subcommands") {
  TempDir tmp;
  auto r = run({"gad", "double-nf", "--left", "a b", "--right", "c d", "--w", "a b a^-1 b^-1", "--word",
                "a b a^-1 b^-1 d c d^-1 c^-1", "--json"});
  CHECK(r.json()["trivial"] == true);
  r = run({"gad", "double-nf", "--left", "a", "b", "--right", "c", "d", "--w", "a b a^-1 b^-1", "--word", "a",
           "--equal", "c"});
  CHECK(r.code == 1);

  const auto D = fixtures::commutator_double();
  const auto sp = tmp.write("sp.json", splitting_to_json(D.splitting()));
  auto t = run({"gad", "twist", "--splitting", sp, "--z", "a b a^-1 b^-1", "--json"}).json();
  CHECK(t == twist_to_json(dehn_twist(D.splitting(), D.w(0))));

  // P = ⟨(2, 0)⟩ in Z^2 with index 2 in its closure.
  const auto gad = fixtures::rigid_amalgam_certificate(Word::generator(1)).gad;
  const auto g = tmp.write("g.json", gad_to_json(gad));
  CHECK(run({"gad", "peripheral", "--gad", g, "--vertex", "B1"}).code == 2);  // not abelian

  Gad ag;
  const Alphabet abc{"a", "b", "c"};
  ag.group = Presentation(abc, {parse_word("a b a^-1 b^-1", abc), parse_word("a^2 c^-1", abc)});
  GadVertex A;
  A.kind = GadVertex::Kind::abelian;
  A.name = "A";
  A.marking = {Word::generator(0), Word::generator(1)};
  GadVertex R;
  R.name = "R";
  R.free_marked = true;
  R.marking = {Word::generator(2)};
  ag.vertices = {A, R};
  GadEdge e;
  e.source = 0;
  e.target = 1;
  e.generator = parse_word("a^2", abc);
  e.source_tuple = make_int_vector({2, 0});
  e.target_word = Word::generator(0);
  ag.edges = {e};
  const auto agf = tmp.write("ag.json", gad_to_json(ag));
  auto p = run({"gad", "peripheral", "--gad", agf, "--vertex", "A", "--json"}).json();
  CHECK(p["index"] == 2);
  CHECK(p["closure"]["generators"] == Json::parse("[[1, 0]]"));

  const auto z3 = tmp.write("z3.json", presentation_to_json(Presentation::free_abelian(Alphabet{"a", "b", "c"})));
  auto gt = run({"gad", "gtwist", "--pres", z3, "--a", "a b c", "--peripheral", "[[1, 0, 0]]", "--matrix",
                 "[[1, 0, 0], [0, 1, 1], [0, 0, 1]]", "--json"});
  CHECK(gt.code == 0);
  CHECK(gt.json()["images"]["c"] == "b c");
  CHECK(run({"gad", "gtwist", "--pres", z3, "--a", "a b c", "--peripheral", "[[0, 0, 1]]", "--matrix",
             "[[1, 0, 0], [0, 1, 1], [0, 0, 1]]"})
            .code == 2);
}

TEST_CASE("mr subcommands agree with library calls") {
  TempDir tmp;
  const auto f = fixtures::z2_power_hom(parse_word("x y", fixtures::xy()), 3, 5);
  const auto hom = tmp.write("f.json", hom_to_json(f));
  const auto twists = fixtures::z2_transvections();
  const auto tw = tmp.write("tw.json", twists_json(twists));
  const auto fs = assemble_factor_set(f.domain, {parse_word("b", fixtures::ab())}, false);
  const auto fsf = tmp.write("fs.json", factor_set_to_json(fs));

  auto r = run({"mr", "search", "--hom", hom, "--factors", fsf, "--twists", tw, "--depth", "8", "--json"});
  CHECK(r.code == 0);
  auto direct = search_modular_factorization(f, fs.maps, twists, 8);
  CHECK(r.json() == modular_search_to_json(direct, f, fs.maps, twists));
  CHECK(run({"mr", "search", "--hom", hom, "--factors", fsf, "--twists", tw, "--depth", "2"}).code == 1);

  auto v = run({"mr", "verify", "--hom", hom, "--abelian", "--json"});
  CHECK(v.code == 0);
  auto vj = v.json();
  CHECK(vj["ok"] == true);
  const auto dia = tmp.write("d.json", vj["diagram"]);
  const auto wit = tmp.write("w.json", vj["witness"]);
  CHECK(run({"mr", "verify", "--hom", hom, "--diagram", dia, "--witness", wit}).code == 0);
  vj["witness"]["terminal"]["a"] = "x";
  const auto bad = tmp.write("bad.json", vj["witness"]);
  CHECK(run({"mr", "verify", "--hom", hom, "--diagram", dia, "--witness", bad}).code == 1);

  auto fset = run({"mr", "factorset", "--pres", tmp.write("p.json", presentation_to_json(f.domain)), "--kernel", "b",
                   "--no-abelianization", "--json"});
  CHECK(fset.json() == factor_set_to_json(fs));
  CHECK(run({"mr", "factorset", "--pres", tmp.write("p.json", presentation_to_json(f.domain)), "--json"})
            .json()["abelianization"] == 0);

  auto sh = run({"mr", "shorten", "--hom", hom, "--twists", tw, "--depth", "2", "--json"});
  auto sd = shorten_hom(f, twists, 2);
  CHECK(sh.json() == shorten_to_json(sd, twists));
  CHECK(sh.code == (sd.shortened ? 0 : 1));

  // A hom that does not respect the relators is an input problem.
  const auto nh = tmp.write("nh.json", Json::parse(R"({"domain": {"generators": ["a", "b"], "relators": ["a b a^-1 b^-1"]},
                                                       "target": ["x", "y"], "images": ["x", "y"]})"));
  CHECK(run({"mr", "search", "--hom", nh, "--factors", fsf, "--twists", tw}).code == 2);
}

TEST_CASE("clg check exit codes follow the weakest status") {
  TempDir tmp;
  auto check = [&](const ClgCertificate& c) {
    const auto path = tmp.write("c.json", clg_certificate_to_json(c));
    auto r = run({"clg", "check", "--cert", path, "--json"});
    CHECK(r.json() == clg_report_to_json(check_clg(clg_certificate_from_json(read_json_file(path)))));
    return r;
  };
  CHECK(check(fixtures::genus2_certificate()).code == 0);
  CHECK(check(fixtures::genus2_certificate("x1 1 x2 1")).code == 1);
  CHECK(check(fixtures::zn_rank2_peripheral()).code == 1);
  CHECK(check(fixtures::double_certificate()).code == 0);
  CHECK(check(ClgCertificate::free_product(fixtures::zn_certificate(2), ClgCertificate::free(Alphabet{"w"}))).code ==
        0);
  auto text = run({"clg", "check", "--cert", tmp.write("g.json", clg_certificate_to_json(fixtures::genus2_certificate()))});
  CHECK(text.out.find("qh: verified") != std::string::npos);
}

TEST_CASE("probe subcommands") {
  TempDir tmp;
  const Alphabet a{"a"};
  const auto tor = tmp.write("t.json", presentation_to_json(Presentation(a, {parse_word("a^2", a)})));
  auto r = run({"probe", "rf", "--pres", tor, "--word", "a", "--max-len", "12", "--json"});
  CHECK(r.code == 1);
  CHECK(r.json()["result"] == "none-in-budget");
  CHECK(run({"probe", "rf", "--pres", tor, "--word", "a", "--max-len", "12", "--max-candidates", "10"}).code == 3);

  const auto D = fixtures::commutator_double();
  const auto mu = fixtures::double_retraction(D);
  const auto hom = tmp.write("mu.json", hom_to_json(mu));
  const auto sp = tmp.write("sp.json", splitting_to_json(D.splitting()));
  auto s = run({"probe", "stable", "--hom", hom, "--splitting", sp, "--z", "a b a^-1 b^-1", "--range", "0..10",
                "--word", "a c a^-1 c^-1", "--json"});
  CHECK(s.code == 0);
  CHECK(s.json()["classification"] == "eventually-constant-from(1)");
  CHECK(s.json()["evidence"] == "finite-range");
  const auto tw = tmp.write("tw.json", twist_to_json(dehn_twist(D.splitting(), D.w(0))));
  auto s2 = run({"probe", "stable", "--hom", hom, "--twist", tw, "--range", "0..10", "--word", "a c a^-1 c^-1",
                 "--json"});
  CHECK(s2.out == s.out);
  auto sep = run({"probe", "stable", "--hom", hom, "--twist", tw, "--subset", "a", "c", "--json"});
  CHECK(sep.json()["first_separating_index"] == 1);
  CHECK(run({"probe", "stable", "--hom", hom, "--twist", tw, "--range", "5", "--word", "a"}).code == 2);
}

TEST_CASE("JSON round trips") {
  auto same = [](const Json& j, const Json& k) { CHECK(j.dump() == k.dump()); };
  const auto D = fixtures::commutator_double();
  same(presentation_to_json(presentation_from_json(presentation_to_json(D.group()))), presentation_to_json(D.group()));
  const auto mu = fixtures::double_retraction(D);
  same(hom_to_json(hom_from_json(hom_to_json(mu))), hom_to_json(mu));
  same(splitting_to_json(splitting_from_json(splitting_to_json(D.splitting()))), splitting_to_json(D.splitting()));
  for (const auto& t : fixtures::z2_transvections()) same(twist_to_json(twist_from_json(twist_to_json(t))), twist_to_json(t));
  for (const auto& c : {fixtures::genus2_certificate(), fixtures::double_certificate(), fixtures::zn_rank2_peripheral(),
                        fixtures::rigid_amalgam_certificate(Word::generator(1))}) {
    const Json j = clg_certificate_to_json(c);
    same(clg_certificate_to_json(clg_certificate_from_json(j)), j);
    same(gad_to_json(gad_from_json(gad_to_json(c.gad))), gad_to_json(c.gad));
  }
  auto pipe = abelian_mr_pipeline(fixtures::z2_power_hom(parse_word("x y", fixtures::xy()), 3, 5));
  const Json dj = mr_diagram_to_json(pipe.diagram);
  const auto d2 = mr_diagram_from_json(dj);
  same(mr_diagram_to_json(d2), dj);
  const Json wj = branch_witness_to_json(pipe.witness, d2, fixtures::xy());
  same(branch_witness_to_json(branch_witness_from_json(wj, d2, fixtures::xy()), d2, fixtures::xy()), wj);
  const auto fs = assemble_factor_set(D.group(), {parse_word("a", D.group().generators())});
  same(factor_set_to_json(factor_set_from_json(factor_set_to_json(fs))), factor_set_to_json(fs));
  const IntMatrix m{{1, -2}, {0, 3}};
  CHECK(matrix_from_json(matrix_to_json(m)) == m);
  Integer big;
  big.set_str("-123456789012345678901234567890", 10);
  CHECK(integer_from_json(integer_to_json(big)) == big);

  CHECK_THROWS_AS(presentation_from_json(Json::parse(R"({"relators": []})")), InputError);
  CHECK_THROWS_AS(hom_from_json(Json::parse(R"({"domain": {"generators": ["a"]}, "target": ["x"], "images": {"b": "x"}})")),
                  InputError);
  CHECK_THROWS_AS(twist_from_json(Json::parse(R"({"group": {"generators": ["a", "b"]},
                                                 "images": ["a b", "b"], "inverse_images": ["a", "b"]})")),
                  InputError);
}
