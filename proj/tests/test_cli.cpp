#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>

#include "cli.hpp"
#include "equipkit/corpus.hpp"
#include "equipkit/json_io.hpp"

using namespace equipkit;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
  json report() const { return json::parse(out); }
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "equipkit");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

// the real binary, for exit statuses and the environment
int run_binary(const std::string& args) {
  int status = std::system((std::string(EQUIPKIT_EXE) + " " + args + " >/dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

class Fixtures {
 public:
  Fixtures() : dir_(fs::temp_directory_path() / ("equipkit_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(dir_);
  }
  ~Fixtures() { fs::remove_all(dir_); }

  std::string put(const std::string& name, const json& j) {
    auto p = dir_ / name;
    std::ofstream(p) << j.dump(2);
    return p.string();
  }
  std::string put_text(const std::string& name, const std::string& text) {
    auto p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  fs::path path(const std::string& name) const { return dir_ / name; }

 private:
  fs::path dir_;
};

Fixtures& fx() {
  static Fixtures f;
  return f;
}

json with_site(json j, const char* site) {
  j["site"] = site;
  return j;
}

json pushout_diagram() {
  auto d0 = share(delta_category(0)), d1 = share(delta_category(1));
  auto sp = share(span_category());
  VerticalDiagram<CatSite> D{sp, {d0, d1, d1}, {}};
  for (auto& m : sp->morphisms) {
    if (m.id == "a") D.edges.push_back(functor_by_ids(d0, d1, {{"0", "1"}}, {}));
    else if (m.id == "b") D.edges.push_back(functor_by_ids(d0, d1, {{"0", "0"}}, {}));
    else D.edges.push_back(identity_functor(D.nodes[m.src]));
  }
  return with_site(to_json(D), "cat");
}

json interval_diagram() {
  auto d0 = share(std_simplex(0)), d1 = share(std_simplex(1));
  auto f = to_point(d1);
  f.dst = d0;
  auto J = share(delta_category(1));
  VerticalDiagram<SSetSite> F{J, {d1, d0}, {}};
  for (int a = 0; a < J->num_morphisms(); ++a) F.edges.push_back(J->is_identity(a) ? identity_map(F.nodes[J->src(a)]) : f);
  return with_site(to_json(F), "sset");
}

// a 2-simplex boundary on the cat site with no 0 -> 2 arrow to fill
json incompatible_boundary() {
  auto disc = share(discrete_category({"p", "q", "r"}));
  CatSlice x{disc, 2, {0, 1, 2}};
  json faces = json::array(), maps = json::array();
  for (int i = 0; i <= 2; ++i) {
    auto d = face_slice(x, i).obj;
    bool cross = i != 1;
    auto y = share(corpus::poset_category(2, [&](int a, int b) { return cross && a < b; }, "y" + std::to_string(i)));
    faces.push_back(to_json(CatSlice{y, 1, {0, 1}}));
    maps.push_back(to_json(functor_by_ids(d.carrier, y, {{d.carrier->objects[0], y->objects[0]}, {d.carrier->objects[1], y->objects[1]}}, {})));
  }
  return {{"site", "cat"}, {"x", to_json(x)}, {"faces", faces}, {"maps", maps}};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("construct tensor over a terminal middle", "[cli]") {
  auto one = share(terminal_category());
  auto two = share(discrete_category({"p", "q"}));
  auto three = share(discrete_category({"r", "s", "t"}));
  auto u = fx().put("u.json", to_json(corpus::relation_profunctor(two, one, {{1}, {1}})));
  auto v = fx().put("v.json", to_json(corpus::relation_profunctor(one, three, {{1, 1, 1}})));
  auto r = run({"construct", "tensor", u, v});
  REQUIRE(r.code == 0);
  CHECK(r.report()["elements"] == 6);
  CHECK(r.report()["provenance"]["operations"] == json::array({"tensor"}));
  CHECK(profunctor_from_json(r.report()["result"]).size() == 6);
  // the wrong way round does not compose
  CHECK(run({"construct", "tensor", v, u}).code == 2);
}

TEST_CASE("construct homology of the boundary of a triangle", "[cli]") {
  auto p = fx().put("bd2.json", to_json(boundary(2)));
  auto r = run({"construct", "homology", p});
  REQUIRE(r.code == 0);
  CHECK(r.report()["homology"] == "(Z, Z)");
}

TEST_CASE("construct gro over a point echoes the category", "[cli]") {
  corpus::Rng rng(71);
  auto C = share(corpus::random_category(rng, 3, "c"));
  auto J = share(delta_category(0));
  VerticalDiagram<CatSite> F{J, {C}, {identity_functor(C)}};
  auto p = fx().put("gro0.json", with_site(to_json(F), "cat"));
  auto r = run({"construct", "gro", p});
  REQUIRE(r.code == 0);
  auto back = share(category_from_json(r.report()["result"]));
  CHECK(back->num_objects() == C->num_objects());
  CHECK(back->num_morphisms() == C->num_morphisms());
  CHECK(cat_iso(back, C).has_value());
}

TEST_CASE("other constructions", "[cli]") {
  corpus::Rng rng(72);
  auto u = corpus::profunctors(rng, 1)[0];
  auto pu = fx().put("prof.json", to_json(*u));
  auto c = run({"construct", "collage", pu});
  REQUIRE(c.code == 0);
  CHECK(category_from_json(c.report()["result"]).num_objects() == u->src->num_objects() + u->dst->num_objects());

  auto chain = fx().put("chain.json", to_json(corpus::random_sset_chain(rng, 1)));
  CHECK(run({"construct", "companion", chain}).code == 0);
  auto F = corpus::random_functor(rng, share(corpus::random_poset(rng, 2, "a")), share(corpus::random_poset(rng, 2, "b")));
  auto pf = fx().put("functor.json", {{"src", to_json(*F.src)}, {"dst", to_json(*F.dst)}, {"functor", to_json(F)}});
  auto cf = run({"construct", "companion", pf});
  REQUIRE(cf.code == 0);
  CHECK(cf.report()["elements"] == companion(F).size());

  auto slice = fx().put("slice.json", to_json(SliceObject(corpus::random_sset_slice(rng))));
  CHECK(run({"construct", "cotab", slice}).code == 0);

  auto interval = fx().put("interval.json", interval_diagram());
  auto hc = run({"construct", "hocolim", interval});
  REQUIRE(hc.code == 0);
  CHECK(hc.report()["summary"]["simplices"] == "[3,4,2]");
  auto dc = run({"construct", "dcolim", interval});
  REQUIRE(dc.code == 0);
  CHECK(dc.report()["summary"]["simplices"] == "[3,4,2]");
  auto hl = run({"construct", "holim", interval});
  REQUIRE(hl.code == 0);
  CHECK(hl.report()["truncated_at"] == 2);
  // holim is sset-only
  CHECK(run({"--site", "cat", "construct", "holim", interval}).code == 2);
}

TEST_CASE("check thm1 on a pushout", "[cli]") {
  auto p = fx().put("pushout.json", pushout_diagram());
  auto r = run({"check", "thm1", p});
  REQUIRE(r.code == 0);
  auto j = r.report();
  CHECK(j["status"] == "pass");
  CHECK_FALSE(j["iso"].is_null());
  CHECK(j.contains("lhs"));
  CHECK(j.contains("rhs"));
}

TEST_CASE("check thm2 on the interval", "[cli]") {
  auto p = fx().put("interval.json", interval_diagram());
  auto r = run({"check", "thm2", p});
  REQUIRE(r.code == 0);
  auto j = r.report();
  CHECK(j["lhs_summary"]["simplices"] == "[3,4,2]");
  CHECK(j["rhs_summary"]["simplices"] == "[3,4,2]");
  CHECK(j["homology"] == json::array({"(Z)", "(Z)"}));
  CHECK_FALSE(j["iso"].is_null());
}

TEST_CASE("check equipment with an incompatible boundary", "[cli]") {
  auto p = fx().put("niche.json", incompatible_boundary());
  auto r = run({"check", "equipment", p});
  CHECK(r.code == 1);
  auto j = r.report();
  CHECK(j["status"] == "fail");
  CHECK(j["error"]["error"] == "IncompatibleBoundary");
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("the remaining checks", "[cli]") {
  corpus::Rng rng(73);
  auto slice = fx().put("slice2.json", to_json(SliceObject(corpus::random_cat_slice(rng))));
  CHECK(run({"check", "simplicial-identities", slice}).code == 0);
  CHECK(run({"check", "axioms", slice}).code == 0);

  auto d1 = std_simplex(1);
  auto pair = fx().put("pair.json", {{"site", "sset"}, {"x", to_json(d1)}, {"y", to_json(d1)}, {"n", 1}});
  auto a = run({"check", "adjunction", pair});
  REQUIRE(a.code == 0);
  CHECK(a.report()["levels"][0]["ev"] == 3);

  auto d0 = share(std_simplex(0)), sd1 = share(std_simplex(1));
  auto f = to_point(sd1);
  f.dst = d0;
  auto chain = fx().put("collapse.json", to_json(make_chain<SSetSite>({sd1, d0}, {f})));
  auto lr = run({"check", "lr-companions", chain});
  REQUIRE(lr.code == 0);
  CHECK(lr.report()["left"] == "[3,4,2]");
  CHECK(lr.report()["right"] == "[3,3,1]");
  CHECK(lr.report()["isomorphic"] == false);

  // a category missing a composite fails its axioms
  auto bad = fx().put_text("bad_cat.json", R"({"objects": ["a", "b"],
    "morphisms": [{"id": "f", "src": "a", "dst": "b"}, {"id": "g", "src": "b", "dst": "a"}]})");
  auto ax = run({"check", "axioms", bad});
  CHECK(ax.code == 1);
  CHECK(ax.report()["error"]["error"] == "MissingComposite");
}

TEST_CASE("input errors exit 2", "[cli]") {
  auto nojson = fx().put_text("broken.json", "{ not json");
  auto r = run({"construct", "homology", nojson});
  CHECK(r.code == 2);
  CHECK(r.report()["error"]["error"] == "ParseError");
  CHECK(run({"construct", "homology", fx().path("missing.json").string()}).code == 2);
  CHECK(run({"construct", "teleport", nojson}).code == 2);
  CHECK(run({"--format", "yaml", "construct", "homology", nojson}).code == 2);
  CHECK(run({"--site", "top", "construct", "homology", nojson}).code == 2);
  CHECK(run({"--dim-bound", "0", "construct", "homology", nojson}).code == 2);
  // the input names its site and --site disagrees
  auto interval = fx().put("interval.json", interval_diagram());
  auto s = run({"--site", "cat", "check", "thm2", interval});
  CHECK(s.code == 2);
  CHECK(s.report()["error"]["error"] == "ValidationError");
}

TEST_CASE("budgets", "[cli]") {
  auto pushout = fx().put("pushout.json", pushout_diagram());
  auto r = run({"--iso-budget", "1", "check", "thm1", pushout});
  CHECK(r.code == 3);
  // the congruence budget bounds colimits of categories
  CHECK(run({"--budget", "1", "construct", "dcolim", pushout}).code == 3);

  // the environment overrides the flag
  CHECK(run_binary("--budget 100000 construct hocolim " + pushout) == 0);
  CHECK(run_binary("construct hocolim " + pushout) == 0);
  ::setenv("EQUIPKIT_BUDGET", "1", 1);
  CHECK(run_binary("--budget 100000 construct hocolim " + pushout) == 3);
  CHECK(run({"--budget", "100000", "construct", "hocolim", pushout}).code == 3);
  ::setenv("EQUIPKIT_BUDGET", "lots", 1);
  CHECK(run_binary("construct hocolim " + pushout) == 2);
  ::unsetenv("EQUIPKIT_BUDGET");
}

TEST_CASE("text output and --out", "[cli]") {
  auto p = fx().put("bd2.json", to_json(boundary(2)));
  auto t = run({"--format", "text", "construct", "homology", p});
  REQUIRE(t.code == 0);
  CHECK(t.out.starts_with("pass"));
  CHECK(t.out.find("homology: (Z, Z)") != std::string::npos);

  auto dest = fx().path("report.json");
  auto o = run({"--out", dest.string(), "construct", "homology", p});
  REQUIRE(o.code == 0);
  CHECK(o.out.empty());
  CHECK(json::parse(slurp(dest))["homology"] == "(Z, Z)");
}

TEST_CASE("corpus generation is reproducible", "[cli]") {
  auto a = fx().path("corpus_a"), b = fx().path("corpus_b");
  REQUIRE(run({"--seed", "0", "--out", a.string(), "corpus", "generate", "--size", "3"}).code == 0);
  REQUIRE(run({"--seed", "0", "--out", b.string(), "corpus", "generate", "--size", "3"}).code == 0);
  auto manifest = json::parse(slurp(a / "manifest.json"));
  auto files = manifest["files"].get<std::vector<std::string>>();
  // nine families of three
  CHECK(files.size() == 27);
  for (auto& f : files) {
    INFO(f);
    CHECK(slurp(a / f) == slurp(b / f));
  }
  // every generated file is accepted by the axioms check
  for (auto& f : files) {
    if (f.starts_with("pairs/") || f.starts_with("chains/")) continue;
    INFO(f);
    CHECK(run({"check", "axioms", (a / f).string()}).code == 0);
  }
  // generated chains feed the companion construction
  CHECK(run({"construct", "companion", (a / "chains/sset_002.json").string()}).code == 0);
  CHECK(run({"construct", "companion", (a / "chains/cat_002.json").string()}).code == 0);

  auto c = fx().path("corpus_c");
  REQUIRE(run({"--seed", "1", "--out", c.string(), "corpus", "generate", "--size", "3"}).code == 0);
  bool differs = false;
  for (auto& f : files) differs = differs || slurp(a / f) != slurp(c / f);
  CHECK(differs);
  CHECK(run({"--out", c.string(), "corpus", "generate", "--size", "0"}).code == 2);
}
