#include <catch_amalgamated.hpp>

#include "equipkit/checks.hpp"
#include "equipkit/corpus.hpp"
#include "equipkit/sharp.hpp"

using namespace equipkit;

namespace {

SSetSlice simplex_slice(int n) {
  auto d = share(std_simplex(n));
  return sset_slice(identity_map(d), n);
}

SimplicialMap collapse(const SSetPtr& x, const SSetPtr& point) {
  auto f = to_point(x);
  f.dst = point;
  return f;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::ParseError;
}

}  // namespace

TEST_CASE("faces and degeneracies of the simplex", "[sharp]") {
  auto x = simplex_slice(2);
  validate(x);
  for (int i = 0; i <= 2; ++i) {
    auto d = face_slice(x, i).obj;
    CHECK(d.n == 1);
    CHECK(slice_iso(d, simplex_slice(1)).has_value());
  }
  // s_j of the simplex is the (j, j+1)-chain of the prism Δ² × Δ¹: a 3-simplex
  for (int j = 0; j <= 2; ++j) {
    auto s = degeneracy_slice(x, j).obj;
    CHECK(s.n == 3);
    CHECK(slice_iso(s, simplex_slice(3)).has_value());
  }
  CHECK_THROWS_AS(face_slice(x, 3), Error);
  CHECK_THROWS_AS(degeneracy_slice(x, 3), Error);
}

TEST_CASE("degeneracies of level-0 objects are products", "[sharp]") {
  for (auto& x : corpus::small_ssets(4)) {
    auto s = iterated_degeneracy<SSetSite>(x, 2).obj;
    CHECK(sset_iso(s.carrier, product_with_simplex(x, 2).obj()).has_value());
  }
}

TEST_CASE("simplicial identities hold on every site", "[sharp][property]") {
  corpus::Rng rng(41);
  for (Site site : {Site::Cat, Site::SSet, Site::Cospan})
    for (auto& x : corpus::slice_objects(rng, site, 12)) {
      auto r = check_simplicial_identities(x);
      INFO(to_string(site));
      CHECK(r.ok());
      CHECK(r.checked > 0);
    }
}

TEST_CASE("a mislabelled slice is rejected", "[sharp]") {
  auto x = simplex_slice(1);
  std::swap(x.label[0], x.label[1]);
  CHECK(slice_violation(x).has_value());
  CHECK(code_of([&] { validate(x); }) == ErrorCode::ValidationError);
}

TEST_CASE("companion of a simplicial map is its mapping cylinder", "[sharp]") {
  corpus::Rng rng(6);
  auto sets = corpus::small_ssets(5);
  for (int k = 0; k < 10; ++k) {
    auto A = corpus::choose(rng, sets), B = corpus::choose(rng, sets);
    auto f = corpus::random_sset_map(rng, A, B);
    auto comp = companion_simplex(make_chain<SSetSite>({A, B}, {f})).y;
    auto mc = mapping_cylinder(f);
    CHECK(slice_iso(comp, sset_slice(mc.to_interval, 1)).has_value());
  }
  auto d1 = share(std_simplex(1));
  auto d0 = share(std_simplex(0));
  auto mf = companion_simplex(make_chain<SSetSite>({d1, d0}, {collapse(d1, d0)})).y;
  CHECK(mf.carrier->nondegenerate_counts() == std::vector<size_t>{3, 4, 2});
}

TEST_CASE("companion of a functor is the collage of its companion profunctor", "[sharp]") {
  corpus::Rng rng(7);
  for (int k = 0; k < 10; ++k) {
    auto A = share(corpus::random_category(rng, 3, "a"));
    auto B = share(corpus::random_category(rng, 3, "b"));
    auto F = corpus::random_functor(rng, A, B);
    auto comp = companion_simplex(make_chain<CatSite>({A, B}, {F})).y;
    CHECK(cat_iso(comp.carrier, collage_of(companion(F)).carrier).has_value());
  }
}

TEST_CASE("companions: faces by ids, tower and oplax comparisons", "[sharp][property]") {
  corpus::Rng rng(13);
  auto run = [&](auto gen) {
    for (int len = 1; len <= 3; ++len)
      for (int rep = 0; rep < 3; ++rep) {
        auto c = gen(rng, len, 3);
        using S = std::decay_t<decltype(c.objects[0])>;
        (void)sizeof(S);
        auto check_chain = [&](auto& b) {
          const auto& e = b.build(c);
          validate(e.obj);
          CHECK(e.obj.n == len);
          for (int i = 0; i <= len; ++i) CHECK(same_by_ids(face_slice(e.obj, i).obj, b.build(b.face(c, i)).obj));
          CHECK(slice_iso(tower_representation(c), e.obj).has_value());
          if (len <= 2)
            for (int i = 0; i <= len; ++i) CHECK(alpha_comparison(c, i).isomorphic);
        };
        if constexpr (std::is_same_v<decltype(c), Chain<CatSite>>) {
          CompanionBuilder<CatSite> b;
          check_chain(b);
        } else {
          CompanionBuilder<SSetSite> b;
          check_chain(b);
        }
      }
  };
  run(corpus::random_cat_chain);
  run(corpus::random_sset_chain);
}

TEST_CASE("chain faces compose the inner arrows", "[sharp]") {
  corpus::Rng rng(19);
  auto c = corpus::random_sset_chain(rng, 2);
  CompanionBuilder<SSetSite> b;
  auto d1 = b.face(c, 1);
  REQUIRE(d1.dim() == 1);
  CHECK(d1.arrows[0].map == compose(c.arrows[1].map, c.arrows[0].map));
  CHECK(b.face(c, 0).object_names == std::vector<std::string>{"x1", "x2"});
  CHECK_THROWS_AS(b.face(c, 3), Error);
}

TEST_CASE("cotabulator forgets the labels", "[sharp]") {
  corpus::Rng rng(3);
  for (int k = 0; k < 6; ++k) {
    auto x = corpus::random_sset_slice(rng);
    auto c = cotabulator(x);
    CHECK(c.obj == x.carrier);
    c.eta.validate();
    for (int v : x.carrier->cells_of(0)) CHECK(c.cylinder.coord[c.eta(v).base] == x.label[v]);
  }
}

TEST_CASE("cat boundary without a filler", "[sharp]") {
  // discrete 2-collage whose faces ask for 0 -> 1 and 1 -> 2 but no 0 -> 2
  auto disc = share(discrete_category({"p", "q", "r"}));
  CatSlice x{disc, 2, {0, 1, 2}};
  std::vector<CatSlice> ys;
  std::vector<FinFunctor> fs;
  for (int i = 0; i <= 2; ++i) {
    auto r = face_slice(x, i);
    bool cross = i != 1;
    auto d1 = share(corpus::poset_category(2, [&](int a, int b) { return cross && a < b; }, "y" + std::to_string(i)));
    ys.push_back({d1, 1, {0, 1}});
    fs.push_back(functor_by_ids(r.obj.carrier, d1, {{r.obj.carrier->objects[0], d1->objects[0]}, {r.obj.carrier->objects[1], d1->objects[1]}}, {}));
  }
  CHECK(code_of([&] { equipment_extend(x, ys, fs, "e:"); }) == ErrorCode::IncompatibleBoundary);
}

TEST_CASE("cospan faces, degeneracies and fillers", "[sharp]") {
  CospanSlice x{1, {"t", "u"}, {{"a", "b"}, {"c"}}, {{0, 1}, {1}}};
  x.validate();
  auto d0 = face_cospan(x, 0);
  CHECK(d0.legs == std::vector<std::vector<std::string>>{{"c"}});
  auto s1 = degeneracy_cospan(x, 1);
  CHECK(s1.n == 2);
  CHECK(face_cospan(s1, 1) == x);
  CHECK(face_cospan(s1, 2) == x);

  // fill a level-1 boundary: the apex is a pushout
  CospanSlice y0{0, {"p"}, {{"c"}}, {{0}}};
  CospanSlice y1{0, {"q", "r"}, {{"a", "b"}}, {{0, 1}}};
  CospanSlice base{1, {"z"}, {{"a", "b"}, {"c"}}, {{0, 0}, {0}}};
  std::vector<CospanMorphism> fs{{{{0}}, {0}}, {{{0, 1}}, {0}}};
  // face 1 keeps leg 0 (a, b) whose apex map is not constant: not natural
  CHECK(code_of([&] { equipment_extend(base, {y0, y1}, fs); }) == ErrorCode::IncompatibleBoundary);
  CospanSlice y1c{0, {"q"}, {{"a", "b"}}, {{0, 0}}};
  auto e = equipment_extend(base, {y0, y1c}, fs);
  e.y.validate();
  CHECK(e.y.apex.size() == 1);
  CHECK(face_cospan(e.y, 0) == y0);
  // the apex is the pushout, named after y^0
  CHECK(face_cospan(e.y, 1).legs == y1c.legs);
  CHECK(e.f.apex == std::vector<int>{0});
}

TEST_CASE("sites parse", "[sharp]") {
  CHECK(parse_site("cat") == Site::Cat);
  CHECK(parse_site("sset") == Site::SSet);
  CHECK(parse_site("cospan") == Site::Cospan);
  CHECK(std::string(to_string(Site::SSet)) == "sset");
  CHECK_THROWS_AS(parse_site("top"), Error);
}
