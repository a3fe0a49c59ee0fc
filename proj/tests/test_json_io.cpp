#include <catch_amalgamated.hpp>

#include "equipkit/corpus.hpp"
#include "equipkit/json_io.hpp"

using namespace equipkit;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::ValidationError;
}

// through text, so the parser sees what a file would hold
json reparse(const json& j) { return json::parse(j.dump()); }

}  // namespace

TEST_CASE("categories and functors round trip", "[json]") {
  corpus::Rng rng(61);
  for (int k = 0; k < 10; ++k) {
    auto C = share(corpus::random_category(rng, 3, "c"));
    auto D = share(corpus::random_category(rng, 3, "d"));
    auto back = category_from_json(reparse(to_json(*C)));
    CHECK(back == *C);
    auto F = corpus::random_functor(rng, C, D);
    CHECK(functor_from_json(reparse(to_json(F)), C, D) == F);
  }
}

TEST_CASE("identities and their composites may be omitted", "[json]") {
  auto j = json::parse(R"({"objects": ["a", "b"], "morphisms": [{"id": "f", "src": "a", "dst": "b"}]})");
  auto c = category_from_json(j);
  CHECK(c.num_morphisms() == 3);
  CHECK(cat_iso(share(c), share(delta_category(1))).has_value());
}

TEST_CASE("profunctors round trip", "[json]") {
  corpus::Rng rng(62);
  for (auto& u : corpus::profunctors(rng, 10)) {
    auto back = profunctor_from_json(reparse(to_json(*u)));
    CHECK(back == *u);
  }
}

TEST_CASE("simplicial sets and maps round trip", "[json]") {
  corpus::Rng rng(63);
  auto sets = corpus::small_ssets(6);
  for (auto& x : sets) {
    auto j = to_json(*x);
    auto back = share(sset_from_json(reparse(j)));
    CHECK(to_json(*back) == j);
    CHECK(sset_iso(back, x).has_value());
  }
  for (int k = 0; k < 10; ++k) {
    auto A = corpus::choose(rng, sets), B = corpus::choose(rng, sets);
    auto f = corpus::random_sset_map(rng, A, B);
    CHECK(sset_map_from_json(reparse(to_json(f)), A, B) == f);
  }
}

TEST_CASE("diagrams round trip", "[json]") {
  corpus::Rng rng(64);
  for (auto& F : corpus::sset_diagrams(rng, 6)) {
    auto j = to_json(F);
    CHECK(to_json(diagram_from_json<SSetSite>(reparse(j))) == j);
  }
  for (auto& F : corpus::cat_diagrams(rng, 6)) {
    auto j = to_json(to_vertical(F));
    CHECK(to_json(diagram_from_json<CatSite>(reparse(j))) == j);
  }
}

TEST_CASE("slices round trip on every site", "[json]") {
  corpus::Rng rng(65);
  for (Site site : {Site::Cat, Site::SSet, Site::Cospan})
    for (auto& x : corpus::slice_objects(rng, site, 8)) {
      auto j = to_json(x);
      CHECK(to_json(slice_object_from_json(reparse(j))) == j);
      CHECK(to_json(slice_object_from_json(reparse(j), site)) == j);
    }
}

TEST_CASE("chains round trip", "[json]") {
  corpus::Rng rng(66);
  for (int len = 0; len <= 3; ++len) {
    auto cs = corpus::random_sset_chain(rng, len);
    auto js = to_json(cs);
    CHECK(to_json(chain_from_json<SSetSite>(reparse(js))) == js);
    auto cc = corpus::random_cat_chain(rng, len);
    auto jc = to_json(cc);
    CHECK(to_json(chain_from_json<CatSite>(reparse(jc))) == jc);
  }
}

TEST_CASE("cospan morphisms round trip", "[json]") {
  CospanMorphism f{{{0, 1}, {2}}, {0, 0, 1}};
  auto back = cospan_morphism_from_json(reparse(to_json(f)));
  CHECK(back.legs == f.legs);
  CHECK(back.apex == f.apex);
}

TEST_CASE("malformed input", "[json]") {
  CHECK(code_of([] { category_from_json(json::parse(R"({"morphisms": []})")); }) == ErrorCode::ParseError);
  CHECK(code_of([] { category_from_json(json::parse(R"({"objects": "a"})")); }) == ErrorCode::ParseError);
  // f . g needed but not listed
  CHECK(code_of([] {
          category_from_json(json::parse(R"({"objects": ["a", "b"],
            "morphisms": [{"id": "f", "src": "a", "dst": "b"}, {"id": "g", "src": "b", "dst": "a"}]})"));
        }) == ErrorCode::MissingComposite);
  CHECK(code_of([] {
          profunctor_from_json(json::parse(R"({"src": {"objects": ["a"]}, "dst": {"objects": ["b"]},
            "elements": {"ab": ["e"]}})"));
        }) == ErrorCode::ParseError);
  CHECK(code_of([] { chain_from_json<SSetSite>(json::parse(R"({"objects": [], "maps": []})")); }) ==
        ErrorCode::ParseError);
  CHECK_THROWS_AS(slice_object_from_json(json::parse(R"({"site": "top"})")), Error);
  CHECK_THROWS_AS(sset_from_json(json::parse(R"({"cells": {"0": ["a"], "1": ["f"]}, "faces": {"f": ["a", "z"]}})")),
                  Error);
  CHECK(code_of([] { read_json_file("/nonexistent/equipkit.json"); }) == ErrorCode::ParseError);
}
